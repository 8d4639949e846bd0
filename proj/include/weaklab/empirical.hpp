#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "weaklab/core_model.hpp"

namespace weaklab {

/// Labeled event lengths for one sound class.
struct EventLengthSample {
  std::string class_name;
  std::vector<double> lengths;
};

/// Read a `class,length_seconds` CSV. With a class filter only matching rows
/// are kept; otherwise all rows load and the name reflects the file content.
/// Malformed or non-positive rows fail with their row number.
EventLengthSample load_event_lengths(const std::filesystem::path& path,
                                     std::string_view class_filter = {});

/// One event observed under both annotation regimes: its strong length d_e
/// and the weak segment length d_q it was reported in.
struct StrongWeakPair {
  double d_q = 0.0;
  double d_e = 0.0;
};

/// Read a `d_q_seconds,d_e_seconds` CSV; row-numbered errors as above.
std::vector<StrongWeakPair> load_strong_weak_pairs(
    const std::filesystem::path& path);

/// Offsets b_q - a_e of every (event, overlapping fixed segment) pair after
/// normalizing each event to the median length (keeping starts), plus the
/// Kolmogorov-Smirnov distance of those offsets from Uniform(0, d_e + d_q).
struct OffsetUniformity {
  double median_event_length = 0.0;
  std::vector<double> offsets;
  double ks_statistic = 0.0;
};

OffsetUniformity offset_uniformity(const std::vector<Event>& events,
                                   double d_q);

/// One-sample KS distance of `samples` from Uniform(lo, hi).
double ks_statistic_uniform(std::vector<double> samples, double lo, double hi);

/// Asymptotic alpha = 0.01 critical value, about 1.63 / sqrt(n).
double ks_critical_value_alpha_01(std::size_t n);

/// Mean of min(d_e, d_q) / d_q: the accuracy ceiling when weak labels are
/// scored against strong ones; events longer than their segment clip to 1.
double weak_strong_accuracy(const std::vector<StrongWeakPair>& pairs);

/// How many pairs have d_e > d_q (reported alongside the mean).
std::size_t overlong_pair_count(const std::vector<StrongWeakPair>& pairs);

/// Expected accuracy of the closed form averaged over the sampled lengths;
/// identical to the Empirical length-law expectation.
double theoretical_mean_accuracy(const EventLengthSample& sample, double d_q,
                                 PresenceCriterion c);

/// All gamma in (0, 1] where theoretical_mean_accuracy crosses `target`:
/// a 0.001-step scan, each bracket refined by bisection until the accuracy
/// gap drops below 1e-6 (or the bracket collapses at a jump). Ascending.
std::vector<double> fit_presence_criterion(const EventLengthSample& sample,
                                           double d_q, double target);

}  // namespace weaklab
