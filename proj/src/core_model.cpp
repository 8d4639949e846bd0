#include "weaklab/core_model.hpp"

#include <algorithm>

namespace weaklab {

double overlap_length(const TimeInterval& a, const TimeInterval& b) {
  const double lo = std::max(a.start, b.start);
  const double hi = std::min(a.end, b.end);
  return std::max(0.0, hi - lo);
}

std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals) {
  if (intervals.size() < 2) return intervals;
  std::sort(intervals.begin(), intervals.end(),
            [](const TimeInterval& a, const TimeInterval& b) {
              return a.start < b.start;
            });
  std::vector<TimeInterval> merged;
  merged.reserve(intervals.size());
  merged.push_back(intervals.front());
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    TimeInterval& last = merged.back();
    if (intervals[i].start <= last.end) {
      last.end = std::max(last.end, intervals[i].end);
    } else {
      merged.push_back(intervals[i]);
    }
  }
  return merged;
}

double union_overlap_length(const std::vector<Event>& events,
                            const TimeInterval& segment) {
  std::vector<TimeInterval> clipped;
  clipped.reserve(events.size());
  for (const Event& e : events) {
    if (overlap_length(e.interval, segment) > 0.0) {
      clipped.emplace_back(std::max(e.interval.start, segment.start),
                           std::min(e.interval.end, segment.end));
    }
  }
  double total = 0.0;
  for (const TimeInterval& iv : merge_intervals(std::move(clipped)))
    total += iv.duration();
  return total;
}

double event_fraction(const Event& e, const QuerySegment& q) {
  return overlap_length(e.interval, q.interval) / e.duration();
}

BinaryLabel presence_label(const std::vector<Event>& events,
                           const QuerySegment& q, PresenceCriterion c) {
  for (const Event& e : events) {
    if (event_fraction(e, q) >= c.gamma) return BinaryLabel::presence;
  }
  return BinaryLabel::absence;
}

double segment_label_accuracy(const std::vector<Event>& events,
                              const QuerySegment& q, BinaryLabel label) {
  const double covered = union_overlap_length(events, q.interval);
  const double d_q = q.duration();
  return label == BinaryLabel::presence ? covered / d_q
                                        : (d_q - covered) / d_q;
}

LabeledSegment annotate_segment(const std::vector<Event>& events,
                                const QuerySegment& q, PresenceCriterion c) {
  LabeledSegment out;
  out.segment = q;
  out.label = presence_label(events, q, c);
  out.accuracy = segment_label_accuracy(events, q, out.label);
  out.overlaps_event = union_overlap_length(events, q.interval) > 0.0;
  return out;
}

double accuracy_at_offset(double d_e, double d_q, PresenceCriterion c,
                          double t) {
  if (!(d_e > 0.0)) throw std::invalid_argument("accuracy_at_offset: d_e <= 0");
  if (!(d_q > 0.0)) throw std::invalid_argument("accuracy_at_offset: d_q <= 0");
  if (!(t >= 0.0) || !(t <= d_e + d_q))
    throw std::domain_error("accuracy_at_offset: t outside [0, d_e + d_q]");
  const QuerySegment q(0.0, d_q);
  // Event with its right edge at t. At t == 0 the event (-d_e, 0) only
  // touches the segment: zero overlap, a correct absence.
  const std::vector<Event> events{Event(t - d_e, t)};
  const BinaryLabel label = presence_label(events, q, c);
  return segment_label_accuracy(events, q, label);
}

}  // namespace weaklab
