// weaklab: command-line surface for the weak-labeling theory, simulation,
// cost, and empirical-analysis library. Every command is deterministic given
// (flags, config file, seed); --threads changes speed only, never results.
//
// Exit codes: 0 success, 1 verification property failure, 2 usage/config/file
// error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "weaklab/cost.hpp"
#include "weaklab/distributions.hpp"
#include "weaklab/empirical.hpp"
#include "weaklab/random.hpp"
#include "weaklab/simulator.hpp"
#include "weaklab/theory.hpp"
#include "weaklab/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace weaklab;

namespace {

constexpr const char* kToolVersion = "1.0.0";

/// 17 significant digits: every double round-trips through the CSVs.
std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

/// FNV-1a over the canonical (sorted-key) JSON dump of a resolved config.
std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_manifest(const fs::path& dir, const std::string& command_line,
                    const json& resolved_config, std::uint64_t master_seed,
                    const std::string& started_at) {
  json m;
  m["command"] = command_line;
  m["config_digest"] = fnv1a_hex(resolved_config.dump());
  m["master_seed"] = master_seed;
  m["tool_version"] = kToolVersion;
  m["started_at"] = started_at;
  m["finished_at"] = iso_utc_now();
  auto out = open_output(dir, "manifest.json");
  out << m.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Event-length distribution <-> JSON

json dist_to_json(const EventLengthDistribution& dist) {
  json j;
  if (const auto* d = std::get_if<DeterministicLength>(&dist)) {
    j["type"] = "deterministic";
    j["length"] = d->length;
  } else if (const auto* t = std::get_if<TruncatedNormalLength>(&dist)) {
    j["type"] = "truncated_normal";
    j["mu"] = t->mu;
    j["sigma"] = t->sigma;
    j["floor"] = t->floor;
  } else if (const auto* g = std::get_if<OffsetGammaLength>(&dist)) {
    j["type"] = "offset_gamma";
    j["shape"] = g->shape;
    j["scale"] = g->scale;
    j["offset"] = g->offset;
  } else {
    j["type"] = "empirical";
    j["lengths"] = std::get<EmpiricalLength>(dist).samples;
  }
  return j;
}

double require_number(const json& j, const char* key, const char* ctx) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw std::runtime_error(std::string(ctx) + ": field '" + key +
                             "' must be a number");
  return j.at(key).get<double>();
}

EventLengthDistribution dist_from_json(const json& j) {
  constexpr const char* ctx = "length_distribution";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw std::runtime_error(
        "length_distribution: expected an object with a 'type' string");
  const std::string type = j.at("type").get<std::string>();
  if (type == "deterministic")
    return DeterministicLength{require_number(j, "length", ctx)};
  if (type == "truncated_normal") {
    TruncatedNormalLength d;
    d.mu = require_number(j, "mu", ctx);
    d.sigma = require_number(j, "sigma", ctx);
    if (j.contains("floor")) d.floor = require_number(j, "floor", ctx);
    return d;
  }
  if (type == "offset_gamma") {
    OffsetGammaLength d;
    d.shape = require_number(j, "shape", ctx);
    d.scale = require_number(j, "scale", ctx);
    d.offset = require_number(j, "offset", ctx);
    return d;
  }
  if (type == "empirical") {
    EmpiricalLength d;
    if (j.contains("lengths")) {
      if (!j.at("lengths").is_array())
        throw std::runtime_error(
            "length_distribution: 'lengths' must be an array of numbers");
      d.samples = j.at("lengths").get<std::vector<double>>();
    } else if (j.contains("csv")) {
      const std::string cls = j.value("class", std::string{});
      d.samples =
          load_event_lengths(j.at("csv").get<std::string>(), cls).lengths;
    } else {
      throw std::runtime_error(
          "length_distribution: empirical needs 'lengths' or 'csv'");
    }
    return d;
  }
  throw std::runtime_error(
      "length_distribution: unknown type '" + type +
      "' (expected deterministic | truncated_normal | offset_gamma | "
      "empirical)");
}

// ---------------------------------------------------------------------------
// theory

struct TheoryArgs {
  std::vector<double> gammas;
  double d_e = 1.0;
  double duration = 100.0;
  std::vector<double> d_q_values;
};

json summary_to_json(const TheorySummary& s) {
  json j;
  j["gamma"] = s.gamma;
  j["d_e"] = s.d_e;
  j["t_total"] = s.t_total;
  j["d_q_star"] = s.d_q_star;
  j["delta_star"] = s.delta_star;
  j["f_star"] = s.f_star;
  j["b_fix_star"] = s.b_fix_star;
  return j;
}

void cmd_theory(const TheoryArgs& a, const fs::path& out_dir,
                const std::string& command_line) {
  const std::string started = iso_utc_now();
  std::vector<double> gammas = a.gammas.empty() ? std::vector<double>{0.5}
                                                : a.gammas;
  QueryLengthGrid grid{a.d_q_values};
  if (grid.values.empty())
    grid = default_query_grid(DeterministicLength{a.d_e});
  validate(grid);

  auto csv = open_output(out_dir, "theory_curve.csv");
  csv << "gamma,d_e,d_q,f,f_star,d_q_star,b_fix_star\n";
  json summaries = json::array();
  for (const double gamma : gammas) {
    const PresenceCriterion c(gamma);
    const TheorySummary s = make_theory_summary(a.duration, a.d_e, c);
    summaries.push_back(summary_to_json(s));
    for (const double d_q : grid.values) {
      csv << fmt17(gamma) << ',' << fmt17(a.d_e) << ',' << fmt17(d_q) << ','
          << fmt17(expected_overlap_accuracy(a.d_e, d_q, c)) << ','
          << fmt17(s.f_star) << ',' << fmt17(s.d_q_star) << ','
          << fmt17(s.b_fix_star) << '\n';
    }
  }

  json resolved;
  resolved["command"] = "theory";
  resolved["gamma"] = gammas;
  resolved["d_e"] = a.d_e;
  resolved["duration"] = a.duration;
  resolved["d_q_grid"] = grid.values;
  write_manifest(out_dir, command_line, resolved, 0, started);

  std::cout << (summaries.size() == 1 ? summaries.front() : summaries).dump(2)
            << "\n";
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  SimulationConfig cfg;
  // Flag values; applied over the config file when the flag was given.
  double duration = 100.0;
  std::uint64_t recordings = 1000;
  std::uint64_t events = 1;
  double event_length = 1.0;
  std::vector<double> gammas;
  std::vector<double> d_q_values;
  std::string averaging = "macro";
};

json simulate_resolved_json(const SimulationConfig& cfg) {
  json j;
  j["duration"] = cfg.duration;
  j["recordings"] = cfg.recordings;
  j["events_per_recording"] = cfg.events_per_recording;
  j["length_distribution"] = dist_to_json(cfg.length_distribution);
  j["gamma_grid"] = cfg.gamma_grid;
  j["d_q_grid"] = cfg.d_q_grid.values;
  j["master_seed"] = cfg.master_seed;
  j["averaging"] = cfg.averaging == Averaging::macro ? "macro" : "micro";
  return j;
}

SimulationConfig config_from_json(const json& j, const std::string& path) {
  SimulationConfig cfg;
  const auto ctx = [&](const char* field) {
    return path + ": field '" + std::string(field) + "'";
  };
  try {
    if (j.contains("duration")) cfg.duration = j.at("duration").get<double>();
    if (j.contains("recordings"))
      cfg.recordings = j.at("recordings").get<std::size_t>();
    if (j.contains("events_per_recording"))
      cfg.events_per_recording = j.at("events_per_recording").get<std::size_t>();
    if (j.contains("length_distribution"))
      cfg.length_distribution = dist_from_json(j.at("length_distribution"));
    if (j.contains("gamma_grid"))
      cfg.gamma_grid = j.at("gamma_grid").get<std::vector<double>>();
    if (j.contains("d_q_grid"))
      cfg.d_q_grid.values = j.at("d_q_grid").get<std::vector<double>>();
    if (j.contains("master_seed"))
      cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("averaging")) {
      const std::string mode = j.at("averaging").get<std::string>();
      if (mode == "macro")
        cfg.averaging = Averaging::macro;
      else if (mode == "micro")
        cfg.averaging = Averaging::micro;
      else
        throw std::runtime_error(ctx("averaging") +
                                 ": expected \"macro\" or \"micro\"");
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return cfg;
}

void cmd_simulate(SimulationConfig cfg, unsigned threads,
                  const fs::path& out_dir, const std::string& command_line) {
  const std::string started = iso_utc_now();
  // Resolve the default grids now so the manifest digest pins exactly what
  // ran; run_sweep would fill the same defaults.
  if (cfg.gamma_grid.empty())
    for (int k = 1; k <= 99; ++k) cfg.gamma_grid.push_back(k / 100.0);
  if (cfg.d_q_grid.values.empty())
    cfg.d_q_grid = default_query_grid(cfg.length_distribution);

  const SweepResult result = run_sweep(cfg, threads);

  auto sweep_csv = open_output(out_dir, "sweep.csv");
  sweep_csv << "gamma,d_q,mean_accuracy,stderr,n_recordings\n";
  for (const AccuracyCurve& curve : result.curves)
    for (const CurvePoint& p : curve.points)
      sweep_csv << fmt17(curve.gamma) << ',' << fmt17(p.d_q) << ','
                << fmt17(p.mean_accuracy) << ',' << fmt17(p.stderr_accuracy)
                << ',' << p.n << '\n';

  const double d_e_theory = mean_length(cfg.length_distribution);
  auto summary_csv = open_output(out_dir, "summary.csv");
  summary_csv
      << "gamma,empirical_max,empirical_argmax,theory_f_star,theory_d_q_star\n";
  for (const AccuracyCurve& curve : result.curves) {
    const PresenceCriterion c(curve.gamma);
    summary_csv << fmt17(curve.gamma) << ',' << fmt17(curve.empirical_max)
                << ',' << fmt17(curve.empirical_argmax) << ','
                << fmt17(max_overlap_accuracy(c)) << ','
                << fmt17(optimal_query_length(d_e_theory, c)) << '\n';
    std::cerr << "gamma=" << curve.gamma
              << " empirical_max=" << curve.empirical_max
              << " argmax=" << curve.empirical_argmax << "\n";
  }

  write_manifest(out_dir, command_line, simulate_resolved_json(cfg),
                 cfg.master_seed, started);
  std::cout << "wrote sweep.csv (" << result.curves.size() << " gammas x "
            << cfg.d_q_grid.values.size() << " lengths), summary.csv, "
            << "manifest.json; mean merged events = "
            << result.mean_merged_events << "\n";
}

// ---------------------------------------------------------------------------
// cost

struct CostArgs {
  std::string axis = "M";
  std::vector<double> values;
  std::vector<double> s_values;
  CostScenario base;
};

CostAxis parse_axis(const std::string& name) {
  if (name == "M" || name == "events") return CostAxis::events;
  if (name == "gamma") return CostAxis::gamma;
  if (name == "r") return CostAxis::r;
  if (name == "T" || name == "duration") return CostAxis::duration;
  throw std::runtime_error("invalid axis '" + name +
                           "' (expected M | gamma | r | T)");
}

const char* axis_name(CostAxis axis) {
  switch (axis) {
    case CostAxis::gamma: return "gamma";
    case CostAxis::r: return "r";
    case CostAxis::events: return "M";
    case CostAxis::duration: return "T";
  }
  return "?";
}

std::vector<double> default_axis_values(CostAxis axis) {
  std::vector<double> v;
  switch (axis) {
    case CostAxis::events:
      for (int m = 1; m <= 100; ++m) v.push_back(m);
      break;
    case CostAxis::gamma:
    case CostAxis::r:
      for (int k = 1; k <= 9; ++k) v.push_back(k / 10.0);
      break;
    case CostAxis::duration:
      v = {25, 50, 100, 200, 400, 800};
      break;
  }
  return v;
}

void cmd_cost(const CostArgs& a, const fs::path& out_dir,
              const std::string& command_line) {
  const std::string started = iso_utc_now();
  const CostAxis axis = parse_axis(a.axis);
  const std::vector<double> values =
      a.values.empty() ? default_axis_values(axis) : a.values;
  const std::vector<double> s_values =
      a.s_values.empty() ? std::vector<double>{1.0} : a.s_values;

  const std::vector<CostRow> rows = cost_sweep(a.base, axis, values, s_values);
  auto csv = open_output(out_dir, "cost_ratio.csv");
  csv << "axis,value,s,ratio\n";
  for (const CostRow& row : rows)
    csv << axis_name(row.axis) << ',' << fmt17(row.value) << ','
        << fmt17(row.s) << ',' << fmt17(row.ratio) << '\n';

  json resolved;
  resolved["command"] = "cost";
  resolved["axis"] = axis_name(axis);
  resolved["values"] = values;
  resolved["s_values"] = s_values;
  resolved["duration"] = a.base.duration;
  resolved["events"] = a.base.events;
  resolved["event_length"] = a.base.event_length;
  resolved["gamma"] = a.base.gamma;
  resolved["r"] = a.base.r;
  resolved["ceil_queries"] = a.base.ceil_queries;
  write_manifest(out_dir, command_line, resolved, 0, started);
  std::cout << "wrote cost_ratio.csv (" << rows.size() << " rows)\n";
}

// ---------------------------------------------------------------------------
// empirical offsets | accuracy | fit

struct OffsetsArgs {
  std::string lengths_csv;
  std::string class_filter;
  double event_length = 0.0;
  double d_q = 0.0;
  double duration = 0.0;  // 0: choose automatically
  std::uint64_t n_events = 5000;
  bool phase_locked = false;
};

void cmd_empirical_offsets(const OffsetsArgs& a, std::uint64_t seed,
                           const fs::path& out_dir,
                           const std::string& command_line) {
  const std::string started = iso_utc_now();
  if (a.lengths_csv.empty() == (a.event_length <= 0.0))
    throw std::runtime_error(
        "empirical offsets: give exactly one of --lengths or --event-length");
  if (a.n_events == 0)
    throw std::runtime_error("empirical offsets: --n-events must be >= 1");

  std::vector<double> pool;
  if (!a.lengths_csv.empty())
    pool = load_event_lengths(a.lengths_csv, a.class_filter).lengths;
  else
    pool = {a.event_length};
  double max_len = 0.0;
  for (const double v : pool) max_len = std::max(max_len, v);

  const double duration = a.duration > 0.0
                              ? a.duration
                              : std::max(1000.0 * a.d_q, 100.0 * max_len);
  if (duration <= max_len + a.d_q)
    throw std::runtime_error(
        "empirical offsets: --duration too small for the event lengths");

  RandomStream rng(derive_stream_seed(seed, 0));
  // Phase-locked starts sit exactly on the segment grid; uniform starts are
  // drawn from [0, duration - d_e].
  const std::uint64_t grid_slots = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>((duration - max_len) / a.d_q));
  std::vector<Event> events;
  events.reserve(a.n_events);
  for (std::uint64_t i = 0; i < a.n_events; ++i) {
    const double d_e =
        pool.size() == 1
            ? pool.front()
            : pool[std::min<std::size_t>(
                  pool.size() - 1,
                  static_cast<std::size_t>(rng.uniform() * pool.size()))];
    const double start = a.phase_locked
                             ? a.d_q * static_cast<double>(i % grid_slots)
                             : rng.uniform(0.0, duration - d_e);
    events.emplace_back(start, start + d_e);
  }

  const OffsetUniformity res = offset_uniformity(events, a.d_q);
  auto csv = open_output(out_dir, "offsets.csv");
  csv << "offset_seconds\n";
  for (const double v : res.offsets) csv << fmt17(v) << '\n';

  json resolved;
  resolved["command"] = "empirical offsets";
  resolved["d_q"] = a.d_q;
  resolved["duration"] = duration;
  resolved["n_events"] = a.n_events;
  resolved["phase_locked"] = a.phase_locked;
  resolved["lengths"] = pool;
  resolved["master_seed"] = seed;
  write_manifest(out_dir, command_line, resolved, seed, started);

  const double critical = ks_critical_value_alpha_01(res.offsets.size());
  json out;
  out["n_offsets"] = res.offsets.size();
  out["median_event_length"] = res.median_event_length;
  out["ks_statistic"] = res.ks_statistic;
  out["critical_value_alpha_01"] = critical;
  out["passes_alpha_01"] = res.ks_statistic < critical;
  std::cout << out.dump(2) << "\n";
}

void cmd_empirical_accuracy(const std::string& pairs_csv) {
  const auto pairs = load_strong_weak_pairs(pairs_csv);
  const std::size_t overlong = overlong_pair_count(pairs);
  if (overlong > 0)
    std::cerr << "note: " << overlong << " of " << pairs.size()
              << " events exceed their segment length; accuracies clipped to 1"
              << "\n";
  std::cout << fmt17(weak_strong_accuracy(pairs)) << "\n";
}

struct FitArgs {
  std::string lengths_csv;
  std::string class_filter;
  double d_q = 0.0;
  double target = 0.0;
};

void cmd_empirical_fit(const FitArgs& a, const fs::path& out_dir,
                       const std::string& command_line) {
  const std::string started = iso_utc_now();
  const EventLengthSample sample =
      load_event_lengths(a.lengths_csv, a.class_filter);
  const std::vector<double> candidates =
      fit_presence_criterion(sample, a.d_q, a.target);

  auto csv = open_output(out_dir, "gamma_candidates.csv");
  csv << "gamma\n";
  for (const double g : candidates) csv << fmt17(g) << '\n';

  json resolved;
  resolved["command"] = "empirical fit";
  resolved["lengths_csv"] = a.lengths_csv;
  resolved["class"] = a.class_filter;
  resolved["d_q"] = a.d_q;
  resolved["target"] = a.target;
  write_manifest(out_dir, command_line, resolved, 0, started);

  std::cout << json(candidates).dump() << "\n";
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(bool inject_fault, const fs::path& out_dir,
               const std::string& command_line) {
  const std::string started = iso_utc_now();
  VerificationOptions options;
  if (inject_fault) {
    // Self-test of the harness: a wrong sign in the closed-form accuracy must
    // be flagged by the oracle suites.
    options.closed_form = [](double d_e, double d_q, PresenceCriterion c) {
      const double g = c.gamma;
      if (d_q >= g * d_e)
        return d_e * (2.0 * g * d_q + 2.0 * g * g * d_e + d_q) /
               (d_q * (d_e + d_q));
      return d_q / (d_e + d_q);
    };
  }

  const std::vector<SuiteResult> results = run_property_suites(options);

  std::printf("%-28s %8s %12s %12s  %s\n", "suite", "cases", "max_error",
              "tolerance", "status");
  for (const SuiteResult& r : results)
    std::printf("%-28s %8zu %12.3g %12.3g  %s\n", r.name.c_str(), r.cases,
                r.max_error, r.tolerance, r.passed ? "PASS" : "FAIL");
  for (const SuiteResult& r : results)
    if (!r.passed)
      std::printf("FAIL %s: max_error=%.17g exceeds tolerance=%.17g at %s\n",
                  r.name.c_str(), r.max_error, r.tolerance,
                  r.worst_case.c_str());

  json report;
  report["passed"] = all_passed(results);
  report["fault_injected"] = inject_fault;
  report["suites"] = json::array();
  for (const SuiteResult& r : results) {
    json s;
    s["name"] = r.name;
    s["passed"] = r.passed;
    s["cases"] = r.cases;
    s["max_error"] = r.max_error;
    s["tolerance"] = r.tolerance;
    s["worst_case"] = r.worst_case;
    report["suites"].push_back(s);
  }
  auto out = open_output(out_dir, "verify.json");
  out << report.dump(2) << "\n";

  json resolved;
  resolved["command"] = "verify";
  resolved["fault_injected"] = inject_fault;
  write_manifest(out_dir, command_line, resolved, 0, started);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) command_line += ' ';
    command_line += argv[i];
  }

  CLI::App app{"Weak-labeling theory, simulation, and annotation-cost toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string config_path;
  unsigned threads = 1;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (64-bit)");
  app.add_option("--out-dir", out_dir, "Directory for output files")
      ->capture_default_str();
  auto* config_opt =
      app.add_option("--config", config_path, "JSON config file (simulate)")
          ->check(CLI::ExistingFile);
  app.add_option("--threads", threads,
                 "Worker threads; affects speed only, never results")
      ->capture_default_str();

  // theory ------------------------------------------------------------------
  TheoryArgs theory_args;
  auto* theory_cmd = app.add_subcommand(
      "theory", "Closed-form accuracy curve and optimal segment length");
  theory_cmd->fallthrough();
  theory_cmd->add_option("--gamma", theory_args.gammas,
                         "Presence criterion(s) in (0,1]; default 0.5")
      ->delimiter(',');
  theory_cmd->add_option("--d-e", theory_args.d_e, "Event length in seconds")
      ->capture_default_str();
  theory_cmd->add_option("--duration", theory_args.duration,
                         "Recording length T for the query-count column")
      ->capture_default_str();
  theory_cmd->add_option("--d-q", theory_args.d_q_values,
                         "Segment lengths for the curve; default grid")
      ->delimiter(',');

  // simulate ----------------------------------------------------------------
  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Seeded Monte Carlo sweep over gamma and segment length");
  sim_cmd->fallthrough();
  auto* sim_duration =
      sim_cmd->add_option("--duration", sim_args.duration, "Recording length T");
  auto* sim_recordings = sim_cmd->add_option(
      "--recordings", sim_args.recordings, "Recordings per (gamma, d_q) cell");
  auto* sim_events = sim_cmd->add_option("--events", sim_args.events,
                                         "Events per recording (M)");
  auto* sim_elen = sim_cmd->add_option(
      "--event-length", sim_args.event_length,
      "Deterministic event length; other laws via --config");
  auto* sim_gamma =
      sim_cmd->add_option("--gamma", sim_args.gammas, "Sweep gammas in (0,1)")
          ->delimiter(',');
  auto* sim_dq =
      sim_cmd->add_option("--d-q", sim_args.d_q_values, "Sweep segment lengths")
          ->delimiter(',');
  auto* sim_avg = sim_cmd
                      ->add_option("--averaging", sim_args.averaging,
                                   "macro (per recording) or micro (pooled)")
                      ->check(CLI::IsMember({"macro", "micro"}));

  // cost ----------------------------------------------------------------
  CostArgs cost_args;
  auto* cost_cmd = app.add_subcommand(
      "cost", "Fixed-segment vs oracle annotation cost ratio");
  cost_cmd->fallthrough();
  cost_cmd->add_option("--axis", cost_args.axis, "Sweep axis: M | gamma | r | T")
      ->capture_default_str();
  cost_cmd->add_option("--values", cost_args.values, "Axis values")
      ->delimiter(',');
  cost_cmd->add_option("--s", cost_args.s_values,
                       "Oracle overhead multipliers; default 1")
      ->delimiter(',');
  cost_cmd->add_option("--duration", cost_args.base.duration, "Recording length T")
      ->capture_default_str();
  cost_cmd->add_option("--events", cost_args.base.events, "Events M")
      ->capture_default_str();
  cost_cmd->add_option("--event-length", cost_args.base.event_length,
                       "Event length d_e")
      ->capture_default_str();
  cost_cmd->add_option("--gamma", cost_args.base.gamma, "Presence criterion")
      ->capture_default_str();
  cost_cmd->add_option("--r", cost_args.base.r, "Per-query cost weight r")
      ->capture_default_str();
  cost_cmd->add_flag("--ceil", cost_args.base.ceil_queries,
                     "Round the fixed query count up to an integer");

  // empirical -----------------------------------------------------------
  auto* emp_cmd = app.add_subcommand(
      "empirical", "Event-length data analyses: offsets | accuracy | fit");
  emp_cmd->fallthrough();
  emp_cmd->require_subcommand(1);

  OffsetsArgs offsets_args;
  auto* offsets_cmd = emp_cmd->add_subcommand(
      "offsets", "Relative-offset uniformity of synthesized placements");
  offsets_cmd->fallthrough();
  offsets_cmd->add_option("--lengths", offsets_args.lengths_csv,
                          "class,length_seconds CSV to sample lengths from");
  offsets_cmd->add_option("--class", offsets_args.class_filter,
                          "Keep only rows of this class");
  offsets_cmd->add_option("--event-length", offsets_args.event_length,
                          "Fixed event length instead of --lengths");
  offsets_cmd->add_option("--d-q", offsets_args.d_q, "Segment length")
      ->required();
  offsets_cmd->add_option("--duration", offsets_args.duration,
                          "Timeline length; default scales with d_q");
  offsets_cmd->add_option("--n-events", offsets_args.n_events,
                          "Events to place")
      ->capture_default_str();
  offsets_cmd->add_flag("--phase-locked", offsets_args.phase_locked,
                        "Pin starts to the segment grid (degenerate case)");

  std::string pairs_csv;
  auto* acc_cmd = emp_cmd->add_subcommand(
      "accuracy", "Mean weak-vs-strong accuracy bound from paired lengths");
  acc_cmd->fallthrough();
  acc_cmd->add_option("--pairs", pairs_csv, "d_q_seconds,d_e_seconds CSV")
      ->required();

  FitArgs fit_args;
  auto* fit_cmd = emp_cmd->add_subcommand(
      "fit", "Presence criteria consistent with an observed accuracy");
  fit_cmd->fallthrough();
  fit_cmd->add_option("--lengths", fit_args.lengths_csv,
                      "class,length_seconds CSV")
      ->required();
  fit_cmd->add_option("--class", fit_args.class_filter,
                      "Keep only rows of this class");
  fit_cmd->add_option("--d-q", fit_args.d_q, "Segment length")->required();
  fit_cmd->add_option("--target", fit_args.target,
                      "Observed mean label accuracy in (0,1]")
      ->required();

  // verify --------------------------------------------------------------
  bool inject_fault = false;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Run every property suite against the numeric oracle");
  verify_cmd->fallthrough();
  verify_cmd->add_flag(
      "--inject-fault", inject_fault,
      "Self-test: verify that a wrong formula is caught (expect exit 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (theory_cmd->parsed()) {
      cmd_theory(theory_args, out_dir, command_line);
      return 0;
    }
    if (sim_cmd->parsed()) {
      SimulationConfig cfg;
      if (config_opt->count() > 0) {
        std::ifstream in(config_path);
        json j;
        try {
          j = json::parse(in);
        } catch (const json::exception& e) {
          throw std::runtime_error(config_path + ": " + e.what());
        }
        cfg = config_from_json(j, config_path);
      }
      if (sim_duration->count() > 0) cfg.duration = sim_args.duration;
      if (sim_recordings->count() > 0) cfg.recordings = sim_args.recordings;
      if (sim_events->count() > 0) cfg.events_per_recording = sim_args.events;
      if (sim_elen->count() > 0)
        cfg.length_distribution = DeterministicLength{sim_args.event_length};
      if (sim_gamma->count() > 0) cfg.gamma_grid = sim_args.gammas;
      if (sim_dq->count() > 0) cfg.d_q_grid.values = sim_args.d_q_values;
      if (sim_avg->count() > 0)
        cfg.averaging = sim_args.averaging == "micro" ? Averaging::micro
                                                      : Averaging::macro;
      if (seed_opt->count() > 0) cfg.master_seed = seed;
      cmd_simulate(cfg, threads, out_dir, command_line);
      return 0;
    }
    if (cost_cmd->parsed()) {
      cmd_cost(cost_args, out_dir, command_line);
      return 0;
    }
    if (emp_cmd->parsed()) {
      if (offsets_cmd->parsed())
        cmd_empirical_offsets(offsets_args, seed, out_dir, command_line);
      else if (acc_cmd->parsed())
        cmd_empirical_accuracy(pairs_csv);
      else
        cmd_empirical_fit(fit_args, out_dir, command_line);
      return 0;
    }
    if (verify_cmd->parsed())
      return cmd_verify(inject_fault, out_dir, command_line);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // no subcommand matched (require_subcommand already guards this)
}
