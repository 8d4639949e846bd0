#include "weaklab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "weaklab/numeric.hpp"
#include "weaklab/theory.hpp"

namespace weaklab {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

struct Validator {
  void operator()(const DeterministicLength& d) const {
    if (!positive_finite(d.length))
      throw std::invalid_argument("DeterministicLength: length must be > 0");
  }
  void operator()(const TruncatedNormalLength& d) const {
    if (!std::isfinite(d.mu))
      throw std::invalid_argument("TruncatedNormalLength: mu must be finite");
    if (!positive_finite(d.sigma))
      throw std::invalid_argument("TruncatedNormalLength: sigma must be > 0");
    if (!positive_finite(d.floor))
      throw std::invalid_argument("TruncatedNormalLength: floor must be > 0");
  }
  void operator()(const OffsetGammaLength& d) const {
    if (!positive_finite(d.shape))
      throw std::invalid_argument("OffsetGammaLength: shape must be > 0");
    if (!positive_finite(d.scale))
      throw std::invalid_argument("OffsetGammaLength: scale must be > 0");
    if (!(d.offset >= 0.0) || !std::isfinite(d.offset))
      throw std::invalid_argument("OffsetGammaLength: offset must be >= 0");
  }
  void operator()(const EmpiricalLength& d) const {
    if (d.samples.empty())
      throw std::invalid_argument("EmpiricalLength: samples must be non-empty");
    for (double s : d.samples) {
      if (!positive_finite(s))
        throw std::invalid_argument(
            "EmpiricalLength: every sample must be > 0 and finite");
    }
  }
};

// Fraction of the untruncated normal mass kept by the floor truncation.
double truncation_mass(const TruncatedNormalLength& d) {
  return 1.0 - normal_cdf((d.floor - d.mu) / d.sigma);
}

// Typical smallest / largest lengths used for the default search grid.
std::pair<double, double> length_bounds(const EventLengthDistribution& dist) {
  struct Bounds {
    std::pair<double, double> operator()(const DeterministicLength& d) const {
      return {d.length, d.length};
    }
    std::pair<double, double> operator()(
        const TruncatedNormalLength& d) const {
      const double z = normal_quantile(1e-4);  // about -3.72
      return {std::max(d.floor, d.mu + d.sigma * z),
              d.mu - d.sigma * z};
    }
    std::pair<double, double> operator()(const OffsetGammaLength& d) const {
      return {d.offset + d.scale * gamma_quantile(d.shape, 1e-4),
              d.offset + d.scale * gamma_quantile(d.shape, 1.0 - 1e-4)};
    }
    std::pair<double, double> operator()(const EmpiricalLength& d) const {
      const auto [lo, hi] =
          std::minmax_element(d.samples.begin(), d.samples.end());
      return {*lo, *hi};
    }
  };
  return std::visit(Bounds{}, dist);
}

// Integrate f(d_e) * density(d_e) over [lo, hi], splitting at the
// feasibility boundary d_e = d_q / gamma where the accuracy jumps. The
// right-hand piece starts one ulp above the boundary so each piece only
// ever evaluates a single smooth branch.
template <class F>
double integrate_with_branch_split(const F& f, double lo, double hi,
                                   double boundary, double tol) {
  if (!(hi > lo)) return 0.0;
  if (boundary > lo && boundary < hi) {
    return adaptive_simpson(f, lo, boundary, 0.5 * tol) +
           adaptive_simpson(f, std::nextafter(boundary, hi), hi, 0.5 * tol);
  }
  return adaptive_simpson(f, lo, hi, tol);
}

constexpr double kQuadratureTol = 1e-8;
constexpr std::size_t kDefaultGridPoints = 100;

}  // namespace

void validate(const EventLengthDistribution& dist) {
  std::visit(Validator{}, dist);
}

double sample_length(const EventLengthDistribution& dist, RandomStream& rng) {
  validate(dist);
  struct Sampler {
    RandomStream& rng;
    double operator()(const DeterministicLength& d) const { return d.length; }
    double operator()(const TruncatedNormalLength& d) const {
      for (std::size_t i = 0; i < kMaxResampleAttempts; ++i) {
        const double x = rng.normal(d.mu, d.sigma);
        if (x > d.floor) return x;
      }
      throw std::runtime_error(
          "sample_length: truncated normal rejection cap exceeded; "
          "the floor cuts off essentially all mass");
    }
    double operator()(const OffsetGammaLength& d) const {
      return d.offset + rng.gamma(d.shape, d.scale);
    }
    double operator()(const EmpiricalLength& d) const {
      const std::size_t n = d.samples.size();
      std::size_t i = static_cast<std::size_t>(rng.uniform() * n);
      if (i >= n) i = n - 1;
      return d.samples[i];
    }
  };
  return std::visit(Sampler{rng}, dist);
}

double mean_length(const EventLengthDistribution& dist) {
  validate(dist);
  struct Mean {
    double operator()(const DeterministicLength& d) const { return d.length; }
    double operator()(const TruncatedNormalLength& d) const {
      const double alpha = (d.floor - d.mu) / d.sigma;
      const double mass = truncation_mass(d);
      if (!(mass > 1e-300))
        throw std::runtime_error(
            "mean_length: truncation removes essentially all mass");
      return d.mu + d.sigma * normal_pdf(alpha) / mass;
    }
    double operator()(const OffsetGammaLength& d) const {
      return d.shape * d.scale + d.offset;
    }
    double operator()(const EmpiricalLength& d) const {
      return std::accumulate(d.samples.begin(), d.samples.end(), 0.0) /
             static_cast<double>(d.samples.size());
    }
  };
  return std::visit(Mean{}, dist);
}

void validate(const QueryLengthGrid& grid) {
  if (grid.values.empty())
    throw std::invalid_argument("QueryLengthGrid: must be non-empty");
  double prev = 0.0;
  for (double v : grid.values) {
    if (!positive_finite(v) || v <= prev)
      throw std::invalid_argument(
          "QueryLengthGrid: values must be positive and strictly increasing");
    prev = v;
  }
}

QueryLengthGrid linspace_grid(double lo, double hi, std::size_t count) {
  if (count < 1) throw std::invalid_argument("linspace_grid: count must be >= 1");
  QueryLengthGrid grid;
  grid.values.reserve(count);
  if (count == 1) {
    grid.values.push_back(lo);
  } else {
    for (std::size_t i = 0; i < count; ++i)
      grid.values.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                     static_cast<double>(count - 1));
  }
  validate(grid);
  return grid;
}

QueryLengthGrid default_query_grid(const EventLengthDistribution& dist) {
  validate(dist);
  const auto [lo_len, hi_len] = length_bounds(dist);
  return linspace_grid(0.05 * lo_len, 5.0 * hi_len, kDefaultGridPoints);
}

double expected_accuracy_over_lengths(const EventLengthDistribution& dist,
                                      double d_q, PresenceCriterion c) {
  validate(dist);
  if (!(d_q > 0.0))
    throw std::invalid_argument("expected_accuracy_over_lengths: d_q <= 0");

  struct Expectation {
    double d_q;
    PresenceCriterion c;

    double operator()(const DeterministicLength& d) const {
      return expected_overlap_accuracy(d.length, d_q, c);
    }

    double operator()(const EmpiricalLength& d) const {
      double sum = 0.0;
      for (double len : d.samples)
        sum += expected_overlap_accuracy(len, d_q, c);
      return sum / static_cast<double>(d.samples.size());
    }

    double operator()(const TruncatedNormalLength& d) const {
      const double lo = std::max(d.floor, d.mu - 8.0 * d.sigma);
      const double hi = d.mu + 8.0 * d.sigma;
      if (!(hi > lo))
        throw std::runtime_error(
            "expected_accuracy_over_lengths: empty truncated-normal window");
      const double mass = truncation_mass(d);
      if (!(mass > 1e-300))
        throw std::runtime_error(
            "expected_accuracy_over_lengths: truncation removes all mass");
      const double dq = d_q;
      const PresenceCriterion crit = c;
      const auto integrand = [&d, mass, dq, crit](double x) {
        const double z = (x - d.mu) / d.sigma;
        const double density = normal_pdf(z) / (d.sigma * mass);
        return expected_overlap_accuracy(x, dq, crit) * density;
      };
      return integrate_with_branch_split(integrand, lo, hi, d_q / c.gamma,
                                         kQuadratureTol);
    }

    double operator()(const OffsetGammaLength& d) const {
      // Window holding all but 1e-10 of the gamma mass.
      const double y_hi = d.scale * gamma_quantile(d.shape, 1.0 - 1e-10);
      const double dq = d_q;
      const PresenceCriterion crit = c;
      const double y_break = dq / crit.gamma - d.offset;
      const double norm =
          std::lgamma(d.shape) + d.shape * std::log(d.scale);
      if (d.shape >= 1.0) {
        const auto integrand = [&d, dq, crit, norm](double y) {
          const double log_density =
              (d.shape - 1.0) * std::log(y) - y / d.scale - norm;
          return expected_overlap_accuracy(d.offset + y, dq, crit) *
                 std::exp(log_density);
        };
        // Shape 1 has density scale^-1 at y = 0; start a hair inside to
        // avoid log(0) while losing no measurable mass.
        const double lo = d.shape == 1.0 ? y_hi * 1e-14 : 0.0;
        return integrate_with_branch_split(integrand, std::max(lo, 0.0), y_hi,
                                           y_break, kQuadratureTol);
      }
      // shape < 1: substitute u = y^shape so the integrable singularity at
      // y = 0 disappears; p(y) dy = exp(-y/scale) / (Gamma(a) scale^a a) du.
      const double a = d.shape;
      const auto integrand_u = [&d, dq, crit, norm, a](double u) {
        const double y = std::pow(u, 1.0 / a);
        const double log_density = -y / d.scale - norm - std::log(a);
        return expected_overlap_accuracy(d.offset + y, dq, crit) *
               std::exp(log_density);
      };
      const double u_hi = std::pow(y_hi, a);
      const double u_break =
          y_break > 0.0 ? std::pow(y_break, a)
                        : -1.0;  // outside the window: no split
      return integrate_with_branch_split(integrand_u, 0.0, u_hi, u_break,
                                         kQuadratureTol);
    }
  };
  return std::visit(Expectation{d_q, c}, dist);
}

GridOptimum optimal_query_length_over_lengths(
    const EventLengthDistribution& dist, PresenceCriterion c,
    const QueryLengthGrid& grid) {
  validate(grid);
  GridOptimum best;
  best.accuracy = -1.0;
  for (double d_q : grid.values) {
    const double acc = expected_accuracy_over_lengths(dist, d_q, c);
    if (acc > best.accuracy) {
      best.accuracy = acc;
      best.d_q = d_q;
    }
  }
  return best;
}

double heuristic_query_length(const EventLengthDistribution& dist,
                              PresenceCriterion c) {
  return optimal_query_length(mean_length(dist), c);
}

}  // namespace weaklab
