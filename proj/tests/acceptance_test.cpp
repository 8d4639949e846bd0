// Acceptance checks: one line per criterion, nonzero exit if any fail.
// Each check pins the documented tolerance and prints the measured worst case.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "weaklab/cost.hpp"
#include "weaklab/distributions.hpp"
#include "weaklab/empirical.hpp"
#include "weaklab/random.hpp"
#include "weaklab/simulator.hpp"
#include "weaklab/theory.hpp"

using namespace weaklab;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_started;

void begin() { g_started = std::chrono::steady_clock::now(); }

void report(int index, bool ok, const char* what, const std::string& detail) {
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    g_started)
          .count();
  std::printf("%s  criterion %2d: %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL",
              index, what, detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double grid_step(const std::vector<double>& grid) {
  double step = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    step = std::max(step, grid[i] - grid[i - 1]);
  return step;
}

// --------------------------------------------------------------------------

void criterion_1_theory_oracle() {
  begin();
  double worst = 0.0, worst_gamma = 0.0, worst_de = 0.0, worst_dq = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double gamma = 0.05 * k;
    const PresenceCriterion c(gamma);
    for (const double d_e : {0.5, 1.0, 2.0, 5.0}) {
      for (int i = 1; i <= 50; ++i) {
        const double d_q =
            d_e * 0.01 * std::pow(1000.0, static_cast<double>(i) / 50.0);
        const double err = std::abs(expected_overlap_accuracy(d_e, d_q, c) -
                                    oracle_expected_overlap_accuracy(d_e, d_q, c));
        if (err > worst) {
          worst = err;
          worst_gamma = gamma;
          worst_de = d_e;
          worst_dq = d_q;
        }
      }
    }
  }
  report(1, worst <= 1e-6, "closed form matches breakpoint quadrature",
         "max |f - oracle| = " + fmt(worst) + " at gamma=" + fmt(worst_gamma) +
             ", d_e=" + fmt(worst_de) + ", d_q=" + fmt(worst_dq) +
             " (tolerance 1e-6, 4000 grid points)");
}

void criterion_2_constants() {
  begin();
  const double f_half = max_overlap_accuracy(PresenceCriterion(0.5));
  const double dq_half = optimal_query_length(1.0, PresenceCriterion(0.5));
  const double dq_one = optimal_query_length(1.0, PresenceCriterion(1.0));
  const double e1 = std::abs(f_half - (3.0 - std::sqrt(5.0)));
  const double e2 = std::abs(dq_half - (1.0 + std::sqrt(5.0)) / 4.0);
  const double e3 = std::abs(dq_one - (2.0 + std::sqrt(10.0)) / 3.0);
  const bool rounded = std::abs(f_half - 0.76) < 0.005 &&
                       std::abs(dq_half - 0.81) < 0.005 &&
                       std::abs(dq_one - 1.72) < 0.005;
  report(2, e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 1e-9 && rounded,
         "headline constants",
         "f*(0.5)=" + fmt(f_half) + " vs 3-sqrt(5), d_q*(1,0.5)=" +
             fmt(dq_half) + " vs (1+sqrt(5))/4, d_q*(1,1)=" + fmt(dq_one) +
             " vs (2+sqrt(10))/3; worst dev " +
             fmt(std::max({e1, e2, e3})) + " (tolerance 1e-9)");
}

void criterion_3_simple_simulation() {
  begin();
  SimulationConfig cfg;
  cfg.duration = 100.0;
  cfg.recordings = 1000;
  cfg.events_per_recording = 1;
  cfg.length_distribution = DeterministicLength{1.0};
  for (int k = 1; k <= 9; ++k) cfg.gamma_grid.push_back(k / 10.0);
  cfg.master_seed = 0;
  // Segment-pooled averaging is the unbiased estimator of the uniform-offset
  // expectation; recording-weighted averaging shifts the flat peak.
  cfg.averaging = Averaging::micro;
  const SweepResult sweep = run_sweep(cfg, 4);
  const double step = grid_step(default_query_grid(cfg.length_distribution).values);
  double worst_acc = 0.0, worst_gap = 0.0, worst_arg = 0.0, worst_gamma = 0.0;
  for (const AccuracyCurve& curve : sweep.curves) {
    const PresenceCriterion c(curve.gamma);
    const double d_q_star = optimal_query_length(1.0, c);
    const double acc_err =
        std::abs(curve.empirical_max - max_overlap_accuracy(c));
    if (acc_err > worst_acc) {
      worst_acc = acc_err;
      worst_gamma = curve.gamma;
    }
    // The curve is flat near its peak relative to Monte Carlo noise, so the
    // raw argmax wanders a few grid points; require instead that the
    // theoretical optimum attains the empirical maximum within the same
    // tolerance, plus a coarse displacement guard against estimator bias.
    std::size_t nearest = 0;
    for (std::size_t j = 1; j < curve.points.size(); ++j)
      if (std::abs(curve.points[j].d_q - d_q_star) <
          std::abs(curve.points[nearest].d_q - d_q_star))
        nearest = j;
    worst_gap = std::max(
        worst_gap, curve.empirical_max - curve.points[nearest].mean_accuracy);
    worst_arg = std::max(worst_arg,
                         std::abs(curve.empirical_argmax - d_q_star));
  }
  report(3,
         worst_acc <= 0.02 && worst_gap <= 0.02 &&
             worst_arg <= 4.0 * step + 1e-12,
         "single-event sweep reproduces the theory curve",
         "max |emp max - f*| = " + fmt(worst_acc) + " (tol 0.02, worst gamma " +
             fmt(worst_gamma) + "); emp max - value at d_q* = " +
             fmt(worst_gap) + " (tol 0.02); |argmax - d_q*| = " +
             fmt(worst_arg) + " (guard 4 grid steps = " + fmt(4.0 * step) +
             ")");
}

void criterion_4_stochastic_lengths() {
  begin();
  bool ok = true;
  std::string detail;
  for (const double sigma : {0.1, 1.0}) {
    const EventLengthDistribution law = TruncatedNormalLength{3.0, sigma, 1e-3};
    const QueryLengthGrid grid = default_query_grid(law);
    const double step = grid_step(grid.values);
    for (const double gamma : {0.2, 0.5, 0.8}) {
      const PresenceCriterion c(gamma);
      const GridOptimum opt = optimal_query_length_over_lengths(law, c, grid);
      const double heuristic = heuristic_query_length(law, c);
      // Compare on the grid's resolution: the optimum must land on the grid
      // point nearest the heuristic or an adjacent one.
      double snapped = grid.values.front();
      for (const double v : grid.values)
        if (std::abs(v - heuristic) < std::abs(snapped - heuristic))
          snapped = v;
      const double dev = std::abs(opt.d_q - snapped);
      if (dev > step + 1e-9) {
        ok = false;
        detail += " TN(3," + fmt(sigma) + ") gamma=" + fmt(gamma) +
                  " off by " + fmt(dev) + ";";
      }
    }
  }
  const EventLengthDistribution skewed = OffsetGammaLength{0.2, 1.0, 0.5};
  const QueryLengthGrid sk_grid = default_query_grid(skewed);
  const double sk_step = grid_step(sk_grid.values);
  double max_under = 0.0;
  for (const double gamma : {0.2, 0.5, 0.8}) {
    const PresenceCriterion c(gamma);
    const GridOptimum opt = optimal_query_length_over_lengths(skewed, c, sk_grid);
    const double heuristic = heuristic_query_length(skewed, c);
    // The mean-length heuristic must not overshoot the true optimum.
    if (heuristic > opt.d_q + sk_step + 1e-9) {
      ok = false;
      detail += " OffsetGamma gamma=" + fmt(gamma) + " heuristic " +
                fmt(heuristic) + " > optimum " + fmt(opt.d_q) + ";";
    }
    max_under = std::max(max_under, opt.d_q - heuristic);
  }
  report(4, ok, "stochastic-length optima match the mean-length heuristic",
         detail.empty()
             ? "truncated-normal optima within one grid step; skewed-gamma "
               "heuristic underestimates by up to " +
                   fmt(max_under) + " s as expected"
             : detail);
}

void criterion_5_multi_event() {
  begin();
  // Random placement merges overlapping events, so each sweep realizes a
  // mixture of merged event lengths. The single-length theory bounds the
  // result from above; the quantitative prediction for the configuration
  // integrates the closed form over that mixture, weighting each merged
  // event by its expected overlapping-segment count (proportional to
  // L + d_q, the pooling the estimator applies).
  double worst_bound = -1.0, worst_pred = 0.0, worst_gamma = 0.0,
         worst_m = 0.0;
  for (const std::size_t m : {std::size_t{30}, std::size_t{50}}) {
    SimulationConfig cfg;
    cfg.duration = 100.0;
    cfg.recordings = 1000;
    cfg.events_per_recording = m;
    cfg.length_distribution = DeterministicLength{1.0};
    for (int k = 1; k <= 9; ++k) cfg.gamma_grid.push_back(k / 10.0);
    cfg.master_seed = 0;
    cfg.averaging = Averaging::micro;
    const SweepResult sweep = run_sweep(cfg, 4);

    // Merged lengths of the very recordings the sweep generated (streams are
    // derived from (master_seed, recording index)).
    std::vector<double> lengths;
    for (std::size_t r = 0; r < cfg.recordings; ++r) {
      RandomStream rng(derive_stream_seed(cfg.master_seed, r));
      const Recording rec =
          generate_recording(cfg.duration, m, cfg.length_distribution, rng);
      for (const Event& e : rec.events)
        lengths.push_back(e.interval.end - e.interval.start);
    }
    const QueryLengthGrid grid = default_query_grid(cfg.length_distribution);

    for (const AccuracyCurve& curve : sweep.curves) {
      const PresenceCriterion c(curve.gamma);
      worst_bound =
          std::max(worst_bound, curve.empirical_max - max_overlap_accuracy(c));
      double predicted = 0.0;
      for (const double d_q : grid.values) {
        double num = 0.0, den = 0.0;
        for (const double len : lengths) {
          const double w = len + d_q;
          num += w * expected_overlap_accuracy(len, d_q, c);
          den += w;
        }
        predicted = std::max(predicted, num / den);
      }
      const double err = std::abs(curve.empirical_max - predicted);
      if (err > worst_pred) {
        worst_pred = err;
        worst_gamma = curve.gamma;
        worst_m = static_cast<double>(m);
      }
    }
  }
  report(5, worst_bound <= 0.02 && worst_pred <= 0.05,
         "dense multi-event sweeps stay near the theory",
         "emp max - f* at most " + fmt(worst_bound) +
             " (upper bound, tol 0.02); max |emp max - mixture prediction| = " +
             fmt(worst_pred) + " at gamma=" + fmt(worst_gamma) + ", M=" +
             fmt(worst_m) + " (tolerance 0.05)");
}

void criterion_6_orc_invariants() {
  begin();
  struct ConfigCase {
    EventLengthDistribution law;
    std::size_t m;
    double T;
  };
  const std::vector<ConfigCase> cases = {
      {DeterministicLength{1.0}, 1, 100.0},
      {DeterministicLength{1.0}, 30, 100.0},
      {TruncatedNormalLength{3.0, 1.0, 1e-3}, 5, 100.0},
      {OffsetGammaLength{0.2, 1.0, 0.5}, 3, 60.0},
      {EmpiricalLength{{0.5, 1.5, 4.0}}, 2, 40.0},
  };
  std::size_t checked = 0;
  bool ok = true;
  std::string detail;
  for (std::size_t ci = 0; ci < cases.size() && ok; ++ci) {
    for (std::size_t rec_i = 0; rec_i < 200 && ok; ++rec_i) {
      RandomStream rng(derive_stream_seed(616, ci * 1000 + rec_i));
      const Recording rec =
          generate_recording(cases[ci].T, cases[ci].m, cases[ci].law, rng);
      const std::size_t merged = rec.events.size();
      const auto segments = orc_segments(rec);
      const OrcResult orc = orc_annotation(rec);
      if (orc.query_count != segments.size() ||
          segments.size() + 1 < 2 * merged ||  // count >= 2M' - 1
          segments.size() > 2 * merged + 1) {
        ok = false;
        detail = "query count " + fmt(double(segments.size())) +
                 " outside [2M'-1, 2M'+1] for M'=" + fmt(double(merged));
        break;
      }
      for (const QuerySegment& q : segments) {
        const LabeledSegment scored =
            annotate_segment(rec.events, q, PresenceCriterion(0.5));
        if (scored.accuracy != 1.0) {
          ok = false;
          detail = "oracle segment scored " + fmt(scored.accuracy) + " != 1";
          break;
        }
      }
      ++checked;
    }
  }
  report(6, ok, "oracle segments are exact on every recording",
         ok ? fmt(double(checked)) +
                  " recordings across 5 configurations: accuracy == 1 "
                  "exactly, query count within [2M'-1, 2M'+1]"
            : detail);
}

void criterion_7_cost_model() {
  begin();
  CostScenario sc;  // T=100, r=0.5, M=1, gamma=0.5, d_e=1, s=1
  const double ratio = fix_orc_cost_ratio(sc);
  const bool ratio_ok = std::abs(ratio - 2.171) <= 1e-3;

  int crossing = -1;
  for (int m = 1; m < 200; ++m) {
    CostScenario lo = sc, hi = sc;
    lo.events = m;
    hi.events = m + 1;
    if (fix_orc_cost_ratio(lo) > 1.0 && fix_orc_cost_ratio(hi) <= 1.0) {
      crossing = m;
      break;
    }
  }
  const bool crossing_ok = crossing >= 55 && crossing <= 65;

  CostScenario s8 = sc;
  s8.s = 8.0;
  s8.events = 10.0;
  const double ratio_m10 = fix_orc_cost_ratio(s8);
  s8.events = 1.0;
  const double ratio_m1 = fix_orc_cost_ratio(s8);
  report(7, ratio_ok && crossing_ok && ratio_m10 < 1.0 && ratio_m1 > 1.0,
         "annotation cost model",
         "default ratio " + fmt(ratio) + " (2.171 +/- 1e-3); M crossing at " +
             fmt(double(crossing)) + " in [55, 65]; s=8 ratios M=10: " +
             fmt(ratio_m10) + " < 1, M=1: " + fmt(ratio_m1) + " > 1");
}

void criterion_8_offset_uniformity() {
  begin();
  RandomStream rng(derive_stream_seed(8, 0));
  std::vector<Event> uniform_events;
  for (int i = 0; i < 6000; ++i) {
    const double a = rng.uniform(0.0, 6000.0);
    uniform_events.emplace_back(a, a + 1.0);
  }
  const OffsetUniformity uniform = offset_uniformity(uniform_events, 0.8);
  const double critical = ks_critical_value_alpha_01(uniform.offsets.size());

  std::vector<Event> locked;
  for (int i = 0; i < 2000; ++i) {
    const double a = 4.0 * 0.8 * i;
    locked.emplace_back(a, a + 1.0);
  }
  const OffsetUniformity degenerate = offset_uniformity(locked, 0.8);
  const double locked_critical =
      ks_critical_value_alpha_01(degenerate.offsets.size());

  report(8,
         uniform.offsets.size() >= 10000 && uniform.ks_statistic < critical &&
             degenerate.ks_statistic > locked_critical,
         "relative offsets are uniform exactly when placements are",
         fmt(double(uniform.offsets.size())) + " offsets: KS " +
             fmt(uniform.ks_statistic) + " < " + fmt(critical) +
             "; phase-locked KS " + fmt(degenerate.ks_statistic) + " > " +
             fmt(locked_critical));
}

void criterion_9_fit_round_trip() {
  begin();
  EventLengthSample sample;
  sample.lengths = {0.8, 1.0, 1.3};
  const double d_q = 1.0;
  double worst = -1.0, worst_gamma = 0.0;
  bool ok = true;
  for (int k = 1; k <= 9; ++k) {
    const double gamma = k / 10.0;
    const double target =
        theoretical_mean_accuracy(sample, d_q, PresenceCriterion(gamma));
    const auto candidates = fit_presence_criterion(sample, d_q, target);
    double best = 1e9;
    for (const double g : candidates) best = std::min(best, std::abs(g - gamma));
    if (best > worst) {
      worst = best;
      worst_gamma = gamma;
    }
    if (best > 1e-3) ok = false;
  }
  report(9, ok, "presence-criterion fit round-trips",
         "max |recovered - true| = " + fmt(worst) + " at gamma=" +
             fmt(worst_gamma) + " (tolerance 0.001, gammas 0.1..0.9)");
}

void criterion_10_thread_determinism() {
  begin();
  const fs::path dir =
      fs::temp_directory_path() / "weaklab_acceptance" / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string base = std::string(WEAKLAB_CLI_PATH) +
                           " simulate --recordings 200 --gamma 0.2,0.5,0.8 "
                           "--event-length 1 --seed 42 --out-dir ";
  const std::string quiet = " > /dev/null 2>&1";
  const int s1 =
      std::system((base + (dir / "t1").string() + " --threads 1" + quiet).c_str());
  const int s4 =
      std::system((base + (dir / "t4").string() + " --threads 4" + quiet).c_str());
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  const std::string sweep1 = slurp(dir / "t1" / "sweep.csv");
  const bool ok = WIFEXITED(s1) && WEXITSTATUS(s1) == 0 && WIFEXITED(s4) &&
                  WEXITSTATUS(s4) == 0 && !sweep1.empty() &&
                  sweep1 == slurp(dir / "t4" / "sweep.csv") &&
                  slurp(dir / "t1" / "summary.csv") ==
                      slurp(dir / "t4" / "summary.csv");
  report(10, ok, "simulate output is byte-identical across thread counts",
         ok ? "--threads 1 vs 4, 200 recordings, 3 gammas: sweep.csv and "
              "summary.csv identical"
            : "outputs differ or a run failed");
}

}  // namespace

int main() {
  std::printf("acceptance checks\n");
  criterion_1_theory_oracle();
  criterion_2_constants();
  criterion_3_simple_simulation();
  criterion_4_stochastic_lengths();
  criterion_5_multi_event();
  criterion_6_orc_invariants();
  criterion_7_cost_model();
  criterion_8_offset_uniformity();
  criterion_9_fit_round_trip();
  criterion_10_thread_determinism();
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
