#include "weaklab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "weaklab/random.hpp"
#include "weaklab/theory.hpp"

namespace weaklab {

namespace {

using ClosedForm =
    std::function<double(double d_e, double d_q, PresenceCriterion c)>;

/// Accumulates per-case errors and remembers the worst case's description.
class SuiteBuilder {
 public:
  SuiteBuilder(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  template <typename Describe>
  void observe(double error, Describe&& describe) {
    ++result_.cases;
    if (result_.cases == 1 || error > result_.max_error) {
      result_.max_error = error;
      result_.worst_case = describe();
    }
  }

  SuiteResult finish() {
    result_.passed = result_.max_error <= result_.tolerance;
    return result_;
  }

 private:
  SuiteResult result_;
};

std::string fmt_case(
    std::initializer_list<std::pair<const char*, double>> fields) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [key, value] : fields) {
    if (!first) os << ", ";
    os << key << "=" << value;
    first = false;
  }
  return os.str();
}

std::vector<double> gamma_grid_coarse() {
  std::vector<double> gammas;
  for (int k = 1; k <= 20; ++k) gammas.push_back(0.05 * k);
  return gammas;
}

std::vector<double> gamma_grid_fine() {
  std::vector<double> gammas;
  for (int k = 1; k <= 100; ++k) gammas.push_back(0.01 * k);
  return gammas;
}

/// 50 log-spaced ratios d_q / d_e covering (0.01, 10]: both closed-form
/// branches and both feasible breakpoint cases.
std::vector<double> ratio_grid() {
  std::vector<double> ratios;
  for (int i = 1; i <= 50; ++i)
    ratios.push_back(0.01 * std::pow(1000.0, static_cast<double>(i) / 50.0));
  return ratios;
}

SuiteResult theory_oracle_equivalence(const ClosedForm& cf) {
  SuiteBuilder suite("theory_oracle_equivalence", 1e-6);
  for (double gamma : gamma_grid_coarse()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 1.0, 2.0, 5.0}) {
      for (double ratio : ratio_grid()) {
        const double d_q = ratio * d_e;
        const double error =
            std::abs(cf(d_e, d_q, c) - oracle_expected_overlap_accuracy(d_e, d_q, c));
        suite.observe(error, [&] {
          return fmt_case({{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}});
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult breakpoint_area_identity(const ClosedForm& cf) {
  SuiteBuilder suite("breakpoint_area_identity", 1e-9);
  for (double gamma : gamma_grid_coarse()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 2.0}) {
      for (double ratio : ratio_grid()) {
        const double d_q = ratio * d_e;
        const double span = d_e + d_q;
        const double error =
            std::abs(overlap_breakpoints(d_e, d_q, c).area / span -
                     cf(d_e, d_q, c));
        suite.observe(error, [&] {
          return fmt_case({{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}});
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult optimal_length_global_max(const ClosedForm& cf) {
  SuiteBuilder suite("optimal_length_global_max", 1e-12);
  for (double gamma : gamma_grid_coarse()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 1.0, 2.0}) {
      const double best = cf(d_e, optimal_query_length(d_e, c), c);
      const double lo = 0.02 * d_e;
      const double hi = 6.0 * d_e;
      for (int i = 0; i < 800; ++i) {
        const double d_q = lo + (hi - lo) * i / 799.0;
        const double error = std::max(0.0, cf(d_e, d_q, c) - best);
        suite.observe(error, [&] {
          return fmt_case({{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}});
        });
      }
    }
  }
  return suite.finish();
}

SuiteResult max_accuracy_identity(const ClosedForm& cf) {
  SuiteBuilder suite("max_accuracy_identity", 1e-12);
  for (double gamma : gamma_grid_fine()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 1.0, 2.0, 5.0}) {
      const double error = std::abs(cf(d_e, optimal_query_length(d_e, c), c) -
                                    max_overlap_accuracy(c));
      suite.observe(error, [&] {
        return fmt_case({{"gamma", gamma}, {"d_e", d_e}});
      });
    }
  }
  return suite.finish();
}

SuiteResult boundary_identity(const ClosedForm& cf) {
  SuiteBuilder suite("boundary_identity", 1e-9);
  for (double gamma : gamma_grid_fine()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 1.0, 2.0, 5.0}) {
      const double boundary = gamma * d_e;
      // On the boundary the feasible branch applies and equals 1/(1+gamma);
      // one ulp below it the infeasible value d_q/(d_e+d_q) applies.
      double error = std::abs(cf(d_e, boundary, c) - 1.0 / (1.0 + gamma));
      const double below = std::nextafter(boundary, 0.0);
      error = std::max(
          error, std::abs(cf(d_e, below, c) - below / (d_e + below)));
      suite.observe(error, [&] {
        return fmt_case({{"gamma", gamma}, {"d_e", d_e}});
      });
    }
  }
  return suite.finish();
}

SuiteResult scale_invariance(const ClosedForm& cf) {
  SuiteBuilder suite("scale_invariance", 1e-12);
  RandomStream rng(derive_stream_seed(20260818, 1));
  for (int trial = 0; trial < 500; ++trial) {
    const double gamma = rng.uniform(0.05, 1.0);
    const PresenceCriterion c(gamma);
    const double d_e = rng.uniform(0.1, 10.0);
    const double d_q = d_e * std::exp(rng.uniform(std::log(0.011), std::log(10.0)));
    const double scale = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
    const double error =
        std::abs(cf(scale * d_e, scale * d_q, c) - cf(d_e, d_q, c));
    suite.observe(error, [&] {
      return fmt_case(
          {{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}, {"scale", scale}});
    });
  }
  return suite.finish();
}

SuiteResult fstar_monotone_decay() {
  SuiteBuilder suite("fstar_monotone_decay", 1e-12);
  double prev = 1.0;  // limit of f* as gamma -> 0
  for (double gamma : gamma_grid_fine()) {
    const double f_star = max_overlap_accuracy(PresenceCriterion(gamma));
    // Strictly decreasing, below 1, and ending at 7 - 2*sqrt(10).
    double error = std::max(0.0, f_star - prev);
    if (gamma == 1.0)
      error = std::max(error,
                       std::abs(f_star - (7.0 - 2.0 * std::sqrt(10.0))));
    suite.observe(error, [&] { return fmt_case({{"gamma", gamma}}); });
    prev = f_star;
  }
  return suite.finish();
}

SuiteResult optimal_length_feasible() {
  SuiteBuilder suite("optimal_length_feasible", 0.0);
  for (double gamma : gamma_grid_fine()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {0.5, 1.0, 2.0, 5.0}) {
      const double d_q_star = optimal_query_length(d_e, c);
      const double error = std::max(0.0, gamma * d_e - d_q_star);
      suite.observe(error, [&] {
        return fmt_case(
            {{"gamma", gamma}, {"d_e", d_e}, {"d_q_star", d_q_star}});
      });
    }
  }
  return suite.finish();
}

SuiteResult dimensionless_consistency(const ClosedForm& cf) {
  SuiteBuilder suite("dimensionless_consistency", 1e-12);
  RandomStream rng(derive_stream_seed(20260818, 2));
  for (int trial = 0; trial < 500; ++trial) {
    const double gamma = rng.uniform(0.05, 1.0);
    const PresenceCriterion c(gamma);
    const double d_e = rng.uniform(0.1, 10.0);
    const double ratio = std::exp(rng.uniform(std::log(0.011), std::log(10.0)));
    // f depends on (d_q / d_e, gamma) only; d_q* scales linearly with d_e.
    double error = std::abs(cf(d_e, ratio * d_e, c) - cf(1.0, ratio, c));
    error = std::max(error, std::abs(optimal_query_length(d_e, c) -
                                     d_e * optimal_ratio(c)));
    suite.observe(error, [&] {
      return fmt_case({{"gamma", gamma}, {"d_e", d_e}, {"ratio", ratio}});
    });
  }
  return suite.finish();
}

SuiteResult infeasible_branch_monotone(const ClosedForm& cf) {
  SuiteBuilder suite("infeasible_branch_monotone", 1e-12);
  for (double gamma : gamma_grid_coarse()) {
    const PresenceCriterion c(gamma);
    for (double d_e : {1.0, 3.0}) {
      double prev = 0.0;
      for (int i = 1; i <= 200; ++i) {
        // Stay strictly below the feasibility boundary gamma * d_e.
        const double d_q = gamma * d_e * (1.0 - 1e-9) * i / 200.0;
        const double f = cf(d_e, d_q, c);
        double error = std::abs(f - d_q / (d_e + d_q));
        error = std::max(error, std::max(0.0, prev - f));  // must increase
        suite.observe(error, [&] {
          return fmt_case({{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}});
        });
        prev = f;
      }
    }
  }
  return suite.finish();
}

SuiteResult offset_curve_symmetry() {
  SuiteBuilder suite("offset_curve_symmetry", 1e-12);
  RandomStream rng(derive_stream_seed(20260818, 3));
  for (int trial = 0; trial < 300; ++trial) {
    const double gamma = rng.uniform(0.05, 1.0);
    const PresenceCriterion c(gamma);
    const double d_e = rng.uniform(0.1, 5.0);
    const double d_q = rng.uniform(0.05, 5.0);
    const double span = d_e + d_q;
    for (int k = 0; k < 40; ++k) {
      const double t = rng.uniform(0.0, span);
      const double error = std::abs(accuracy_at_offset(d_e, d_q, c, t) -
                                    accuracy_at_offset(d_e, d_q, c, span - t));
      suite.observe(error, [&] {
        return fmt_case(
            {{"gamma", gamma}, {"d_e", d_e}, {"d_q", d_q}, {"t", t}});
      });
    }
  }
  return suite.finish();
}

SuiteResult label_complement() {
  SuiteBuilder suite("label_complement", 1e-12);
  RandomStream rng(derive_stream_seed(20260818, 4));
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Event> events;
    const int m = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
    for (int j = 0; j < m; ++j) {
      const double a = rng.uniform(0.0, 48.0);
      events.emplace_back(a, a + rng.uniform(0.1, 2.0));
    }
    const double s = rng.uniform(0.0, 45.0);
    const QuerySegment q(s, s + rng.uniform(0.2, 5.0));
    const double error =
        std::abs(segment_label_accuracy(events, q, BinaryLabel::presence) +
                 segment_label_accuracy(events, q, BinaryLabel::absence) - 1.0);
    suite.observe(error, [&] {
      return fmt_case({{"segment_start", s}, {"events", double(m)}});
    });
  }
  return suite.finish();
}

SuiteResult recording_accuracy_identity(const ClosedForm& cf) {
  SuiteBuilder suite("recording_accuracy_identity", 1e-11);
  RandomStream rng(derive_stream_seed(20260818, 5));
  for (int trial = 0; trial < 500; ++trial) {
    const double gamma = rng.uniform(0.05, 1.0);
    const PresenceCriterion c(gamma);
    const double d_e = rng.uniform(0.2, 3.0);
    const double d_q = d_e * rng.uniform(gamma, 3.0);
    const double m = 1.0 + std::floor(rng.uniform(0.0, 5.0));
    const double T = m * (d_e + d_q) * rng.uniform(1.2, 3.2);
    const double rho = rng.uniform(0.0, 0.5);
    // The recording-level accuracy is the overlap-sum identity
    // (A*M + T - M*(d_e + d_q)) / T scaled by the labeled fraction, with
    // A = (d_e + d_q) * f.
    const double a_sum = (d_e + d_q) * cf(d_e, d_q, c);
    const double identity =
        (1.0 - rho) * (a_sum * m + T - m * (d_e + d_q)) / T;
    const double error =
        std::abs(recording_accuracy(T, m, d_e, d_q, c, rho) - identity);
    suite.observe(error, [&] {
      return fmt_case({{"gamma", gamma},
                       {"d_e", d_e},
                       {"d_q", d_q},
                       {"M", m},
                       {"T", T},
                       {"rho", rho}});
    });
  }
  return suite.finish();
}

}  // namespace

std::vector<SuiteResult> run_property_suites(
    const VerificationOptions& options) {
  ClosedForm cf = options.closed_form;
  if (!cf)
    cf = [](double d_e, double d_q, PresenceCriterion c) {
      return expected_overlap_accuracy(d_e, d_q, c);
    };

  std::vector<SuiteResult> results;
  results.push_back(theory_oracle_equivalence(cf));
  results.push_back(breakpoint_area_identity(cf));
  results.push_back(optimal_length_global_max(cf));
  results.push_back(max_accuracy_identity(cf));
  results.push_back(boundary_identity(cf));
  results.push_back(scale_invariance(cf));
  results.push_back(fstar_monotone_decay());
  results.push_back(optimal_length_feasible());
  results.push_back(dimensionless_consistency(cf));
  results.push_back(infeasible_branch_monotone(cf));
  results.push_back(offset_curve_symmetry());
  results.push_back(label_complement());
  results.push_back(recording_accuracy_identity(cf));
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.passed; });
}

}  // namespace weaklab
