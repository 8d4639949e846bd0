#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "weaklab/core_model.hpp"

using namespace weaklab;

TEST_CASE("interval overlap length") {
  CHECK(overlap_length({2, 3}, {0, 10}) == 1.0);
  CHECK(overlap_length({0, 1}, {1, 2}) == 0.0);  // touching does not overlap
  CHECK(overlap_length({0, 3}, {2, 5}) == 1.0);
  CHECK(overlap_length({0, 10}, {2, 3}) == 1.0);  // symmetric
  CHECK(overlap_length({0, 1}, {5, 6}) == 0.0);
}

TEST_CASE("interval construction rejects empty and inverted spans") {
  CHECK_THROWS_AS(TimeInterval(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeInterval(2.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(TimeInterval(-5.0, -4.0));
}

TEST_CASE("presence criterion range") {
  CHECK_THROWS_AS(PresenceCriterion(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PresenceCriterion(1.0001), std::invalid_argument);
  CHECK_THROWS_AS(PresenceCriterion(-0.5), std::invalid_argument);
  CHECK_NOTHROW(PresenceCriterion(1.0));
  CHECK_NOTHROW(PresenceCriterion(1e-9));
}

TEST_CASE("event fraction") {
  const Event e(2, 4);
  const QuerySegment q(0, 3);
  CHECK(event_fraction(e, q) == 0.5);
  CHECK(event_fraction(Event(5, 6), q) == 0.0);
  CHECK(event_fraction(Event(1, 2), QuerySegment(0, 10)) == 1.0);
}

TEST_CASE("presence label is inclusive at the threshold") {
  const std::vector<Event> events{Event(2, 4)};
  const QuerySegment q(0, 3);  // h = 0.5
  CHECK(presence_label(events, q, PresenceCriterion(0.5)) ==
        BinaryLabel::presence);
  CHECK(presence_label(events, q, PresenceCriterion(0.51)) ==
        BinaryLabel::absence);
  CHECK(presence_label({}, q, PresenceCriterion(0.5)) == BinaryLabel::absence);
}

TEST_CASE("segment label accuracy for both labels") {
  const std::vector<Event> events{Event(2, 4)};
  const QuerySegment q(0, 3);
  CHECK(segment_label_accuracy(events, q, BinaryLabel::presence) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(segment_label_accuracy(events, q, BinaryLabel::absence) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("union overlap merges overlapping events") {
  const std::vector<Event> events{Event(0, 1), Event(0.5, 1.5)};
  const QuerySegment q(0, 2);
  CHECK(union_overlap_length(events, q.interval) == doctest::Approx(1.5));
  CHECK(segment_label_accuracy(events, q, BinaryLabel::presence) ==
        doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("merge_intervals coalesces overlapping and touching spans") {
  auto merged = merge_intervals({{4, 5}, {0, 1}, {1, 2}, {4.5, 6}});
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].start == 0.0);
  CHECK(merged[0].end == 2.0);
  CHECK(merged[1].start == 4.0);
  CHECK(merged[1].end == 6.0);
}

TEST_CASE("annotate_segment ties label, accuracy and overlap flag together") {
  const std::vector<Event> events{Event(4, 5)};
  const PresenceCriterion half(0.5);
  const LabeledSegment hit = annotate_segment(events, QuerySegment(4, 6), half);
  CHECK(hit.label == BinaryLabel::presence);
  CHECK(hit.accuracy == doctest::Approx(0.5));
  CHECK(hit.overlaps_event);
  const LabeledSegment miss =
      annotate_segment(events, QuerySegment(2, 4), half);
  CHECK(miss.label == BinaryLabel::absence);
  CHECK(miss.accuracy == doctest::Approx(1.0));
  CHECK_FALSE(miss.overlaps_event);
}

TEST_CASE("accuracy at offset: endpoints and frozen spot values") {
  const PresenceCriterion half(0.5);
  CHECK(accuracy_at_offset(1, 1, half, 0.0) == 1.0);
  CHECK(accuracy_at_offset(1, 1, half, 2.0) == 1.0);
  // Just below the jump at t = gamma * d_e the absence branch gives
  // (d_q - gamma d_e) / d_q.
  CHECK(accuracy_at_offset(1, 1, half, 0.5 - 1e-9) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(accuracy_at_offset(2, 1, PresenceCriterion(0.25), 1.5) == 1.0);
}

TEST_CASE("accuracy at offset rejects t outside the sliding range") {
  const PresenceCriterion half(0.5);
  CHECK_THROWS_AS(accuracy_at_offset(1, 1, half, -0.01), std::domain_error);
  CHECK_THROWS_AS(accuracy_at_offset(1, 1, half, 2.01), std::domain_error);
  CHECK_THROWS_AS(accuracy_at_offset(0.0, 1, half, 0.5),
                  std::invalid_argument);
}

TEST_CASE("offset curve is symmetric and label accuracies are complementary") {
  std::mt19937_64 rng(7151);
  std::uniform_real_distribution<double> unit(0.02, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double d_e = 5.0 * unit(rng);
    const double d_q = 5.0 * unit(rng);
    const PresenceCriterion c(unit(rng));
    const double span = d_e + d_q;
    for (int k = 0; k < 25; ++k) {
      const double t = span * unit(rng);
      CHECK(accuracy_at_offset(d_e, d_q, c, t) ==
            doctest::Approx(accuracy_at_offset(d_e, d_q, c, span - t))
                .epsilon(1e-12));
    }
    const QuerySegment q(0.0, d_q);
    const std::vector<Event> events{Event(-0.3 * d_e, 0.7 * d_e)};
    const double p = segment_label_accuracy(events, q, BinaryLabel::presence);
    const double a = segment_label_accuracy(events, q, BinaryLabel::absence);
    CHECK(p + a == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("merged output is sorted and disjoint for random inputs") {
  std::mt19937_64 rng(40612);
  std::uniform_real_distribution<double> pos(0.0, 50.0);
  std::uniform_real_distribution<double> len(0.01, 4.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TimeInterval> raw;
    for (int i = 0; i < 30; ++i) {
      const double a = pos(rng);
      raw.emplace_back(a, a + len(rng));
    }
    double total_raw = 0.0;
    for (const auto& iv : raw) total_raw += iv.duration();
    const auto merged = merge_intervals(raw);
    double total_merged = 0.0;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      total_merged += merged[i].duration();
      if (i > 0) CHECK(merged[i].start > merged[i - 1].end);
    }
    CHECK(total_merged <= total_raw + 1e-9);
  }
}
