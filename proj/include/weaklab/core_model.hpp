#pragma once

#include <stdexcept>
#include <vector>

namespace weaklab {

/// Half-open-free time interval in seconds. Strictly positive duration;
/// start may be negative (events slid across a query live on the whole line).
struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  TimeInterval() = default;
  TimeInterval(double start_s, double end_s) : start(start_s), end(end_s) {
    if (!(end > start))
      throw std::invalid_argument("TimeInterval: end must exceed start");
  }

  double duration() const { return end - start; }
};

/// A sound event with duration d_e.
struct Event {
  TimeInterval interval;

  Event() = default;
  explicit Event(TimeInterval iv) : interval(iv) {}
  Event(double start_s, double end_s) : interval(start_s, end_s) {}

  double duration() const { return interval.duration(); }
};

/// A query segment presented to an annotator, duration d_q.
struct QuerySegment {
  TimeInterval interval;

  QuerySegment() = default;
  explicit QuerySegment(TimeInterval iv) : interval(iv) {}
  QuerySegment(double start_s, double end_s) : interval(start_s, end_s) {}

  double duration() const { return interval.duration(); }
};

/// Fraction gamma in (0, 1] of an event that must fall inside a segment
/// before the annotator marks the class present.
struct PresenceCriterion {
  double gamma = 1.0;

  PresenceCriterion() = default;
  explicit PresenceCriterion(double g) : gamma(g) {
    if (!(g > 0.0) || !(g <= 1.0))
      throw std::invalid_argument("PresenceCriterion: gamma must lie in (0, 1]");
  }
};

enum class BinaryLabel { absence, presence };

/// A query segment together with the label an annotator would assign and
/// the per-segment label accuracy.
struct LabeledSegment {
  QuerySegment segment;
  BinaryLabel label = BinaryLabel::absence;
  double accuracy = 0.0;
  bool overlaps_event = false;
};

/// Length of the intersection of two intervals; 0 when disjoint or touching.
double overlap_length(const TimeInterval& a, const TimeInterval& b);

/// Merge a set of intervals: overlapping or touching intervals coalesce.
/// Result is sorted and pairwise disjoint with positive gaps.
std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals);

/// Total length of (union of events) ∩ segment.
double union_overlap_length(const std::vector<Event>& events,
                            const TimeInterval& segment);

/// h(e, q) = |e ∩ q| / d_e, in [0, 1].
double event_fraction(const Event& e, const QuerySegment& q);

/// Presence iff any event has h(e, q) >= gamma (inclusive at equality).
BinaryLabel presence_label(const std::vector<Event>& events,
                           const QuerySegment& q, PresenceCriterion c);

/// Accuracy of `label` on segment q: covered fraction for presence,
/// uncovered fraction for absence, using the union overlap.
double segment_label_accuracy(const std::vector<Event>& events,
                              const QuerySegment& q, BinaryLabel label);

/// Label the segment as an annotator would, then score that label.
LabeledSegment annotate_segment(const std::vector<Event>& events,
                                const QuerySegment& q, PresenceCriterion c);

/// Accuracy F(t) for an event of length d_e whose right edge sits at offset
/// t relative to the start of a segment (0, d_q). Defined for t in
/// [0, d_e + d_q]; anything else is rejected.
double accuracy_at_offset(double d_e, double d_q, PresenceCriterion c,
                          double t);

}  // namespace weaklab
