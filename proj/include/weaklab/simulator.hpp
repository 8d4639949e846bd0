#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "weaklab/core_model.hpp"
#include "weaklab/distributions.hpp"

namespace weaklab {

/// A recording of length T holding merged (sorted, disjoint, non-touching)
/// events inside [0, T]. raw_event_count is the count before merging.
struct Recording {
  double duration = 0.0;
  std::vector<Event> events;
  std::size_t raw_event_count = 0;
};

/// Merge raw events (overlapping or touching coalesce) into a Recording.
Recording make_recording(double T, const std::vector<Event>& raw_events);

/// Sample M event lengths (lengths above T are resampled, capped), place
/// starts uniformly in [0, T - d_e], merge.
Recording generate_recording(double T, std::size_t M,
                             const EventLengthDistribution& dist,
                             RandomStream& rng);

/// Fixed-length tiling of [0, T]; the last segment is truncated at T.
std::vector<QuerySegment> fix_segments(double T, double d_q);

/// Oracle segmentation: alternating gap/event segments cut exactly at the
/// merged event boundaries; zero-length pieces are omitted.
std::vector<QuerySegment> orc_segments(const Recording& rec);

/// Label every FIX segment of the recording.
std::vector<LabeledSegment> annotate_fix(const Recording& rec, double d_q,
                                         PresenceCriterion c);

/// Mean label accuracy over FIX segments that overlap at least one event;
/// empty when no segment overlaps an event.
std::optional<double> overlap_conditional_accuracy(const Recording& rec,
                                                   double d_q,
                                                   PresenceCriterion c);

/// Mean label accuracy over all FIX segments of one recording.
double whole_recording_accuracy(const Recording& rec, double d_q,
                                PresenceCriterion c);

struct OrcResult {
  double accuracy = 1.0;   // oracle labels are exact by construction
  std::size_t query_count = 0;
};

/// Accuracy and query count of the oracle segmentation.
OrcResult orc_annotation(const Recording& rec);

enum class Averaging { macro, micro };

struct SimulationConfig {
  double duration = 100.0;
  std::size_t recordings = 1000;
  std::size_t events_per_recording = 1;
  EventLengthDistribution length_distribution = DeterministicLength{1.0};
  std::vector<double> gamma_grid;  // empty: 0.01, 0.02, ..., 0.99
  QueryLengthGrid d_q_grid;        // empty: default_query_grid(distribution)
  std::uint64_t master_seed = 0;
  Averaging averaging = Averaging::macro;
};

struct CurvePoint {
  double d_q = 0.0;
  double mean_accuracy = 0.0;
  double stderr_accuracy = 0.0;
  std::size_t n = 0;  // recordings (macro) or segments (micro) averaged
};

struct AccuracyCurve {
  double gamma = 0.0;
  std::vector<CurvePoint> points;
  double empirical_max = 0.0;
  double empirical_argmax = 0.0;  // smallest d_q attaining the max
};

struct SweepResult {
  std::vector<AccuracyCurve> curves;
  double mean_merged_events = 0.0;
  std::size_t min_merged_events = 0;
  std::size_t max_merged_events = 0;
};

/// Seeded sweep over (gamma, d_q). Each recording draws from its own RNG
/// stream derived from (master_seed, recording index) and results are folded
/// in recording order, so the output is identical at any thread count.
SweepResult run_sweep(const SimulationConfig& cfg, unsigned threads = 1);

}  // namespace weaklab
