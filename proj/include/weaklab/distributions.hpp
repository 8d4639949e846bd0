#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "weaklab/core_model.hpp"
#include "weaklab/random.hpp"

namespace weaklab {

/// Every event has the same length.
struct DeterministicLength {
  double length = 1.0;
};

/// Normal(mu, sigma) conditioned on exceeding `floor` by rejection.
struct TruncatedNormalLength {
  double mu = 1.0;
  double sigma = 0.1;
  double floor = 1e-3;
};

/// offset + Gamma(shape, scale).
struct OffsetGammaLength {
  double shape = 1.0;
  double scale = 1.0;
  double offset = 0.0;
};

/// Lengths drawn uniformly from a recorded sample.
struct EmpiricalLength {
  std::vector<double> samples;
};

using EventLengthDistribution =
    std::variant<DeterministicLength, TruncatedNormalLength, OffsetGammaLength,
                 EmpiricalLength>;

/// Throws std::invalid_argument when parameters are out of range
/// (non-positive lengths, sigma/scale/shape <= 0, empty samples, ...).
void validate(const EventLengthDistribution& dist);

/// Attempts allowed when rejection sampling (truncated normal) or when the
/// simulator rejects lengths longer than a recording.
inline constexpr std::size_t kMaxResampleAttempts = 1000000;

/// One event length; truncated-normal rejection is capped at
/// kMaxResampleAttempts and throws std::runtime_error beyond it.
double sample_length(const EventLengthDistribution& dist, RandomStream& rng);

/// Analytic mean: the length itself, the truncated-normal mean formula,
/// shape * scale + offset, or the arithmetic sample mean.
double mean_length(const EventLengthDistribution& dist);

/// Candidate segment lengths for grid searches; strictly increasing, > 0.
struct QueryLengthGrid {
  std::vector<double> values;
};

void validate(const QueryLengthGrid& grid);

QueryLengthGrid linspace_grid(double lo, double hi, std::size_t count);

/// Default search grid: 100 linear points from 0.05x the smallest typical
/// length to 5x the largest (sample extremes, or 1e-4 .. 1-1e-4 quantiles
/// for the parametric laws).
QueryLengthGrid default_query_grid(const EventLengthDistribution& dist);

/// Expected overlap accuracy averaged over the event-length law:
/// closed form for Deterministic (identical call path), sample mean for
/// Empirical, adaptive quadrature (absolute tolerance 1e-8, split at the
/// feasibility boundary d_e = d_q / gamma) for the parametric laws.
double expected_accuracy_over_lengths(const EventLengthDistribution& dist,
                                      double d_q, PresenceCriterion c);

struct GridOptimum {
  double d_q = 0.0;
  double accuracy = 0.0;
};

/// Grid search over expected_accuracy_over_lengths; ties resolve to the
/// smallest d_q.
GridOptimum optimal_query_length_over_lengths(
    const EventLengthDistribution& dist, PresenceCriterion c,
    const QueryLengthGrid& grid);

/// Plug the mean length into the fixed-length optimum: d_q*(mean, gamma).
double heuristic_query_length(const EventLengthDistribution& dist,
                              PresenceCriterion c);

}  // namespace weaklab
