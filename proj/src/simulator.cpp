#include "weaklab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace weaklab {

namespace {

// Per-segment totals for the segments of one recording that overlap events:
// total event overlap, the largest single-event fraction, and the segment
// length (the last tile may be truncated).
struct SegmentOverlap {
  double overlap = 0.0;
  double max_fraction = 0.0;
  double length = 0.0;
};

struct FixOverlapProfile {
  std::vector<SegmentOverlap> overlapping;
  std::size_t total_segments = 0;
};

// Index of the last tile: largest i with i * d_q < T, matching the
// fix_segments loop exactly (small corrections absorb rounding in T / d_q).
std::size_t last_tile_index(double T, double d_q) {
  auto idx = static_cast<std::size_t>(std::floor(T / d_q));
  while (idx > 0 && static_cast<double>(idx) * d_q >= T) --idx;
  while (static_cast<double>(idx + 1) * d_q < T) ++idx;
  return idx;
}

FixOverlapProfile fix_overlap_profile(const Recording& rec, double d_q) {
  if (!(d_q > 0.0))
    throw std::invalid_argument("fix_overlap_profile: d_q must be > 0");
  FixOverlapProfile profile;
  const double T = rec.duration;
  const std::size_t last = last_tile_index(T, d_q);
  profile.total_segments = last + 1;
  std::vector<std::pair<std::size_t, SegmentOverlap>> acc;
  for (const Event& e : rec.events) {
    const double a = e.interval.start;
    const double b = e.interval.end;
    const double d_e = b - a;
    auto i = static_cast<std::size_t>(std::floor(a / d_q));
    while (i > 0 && static_cast<double>(i) * d_q > a) --i;
    while (static_cast<double>(i + 1) * d_q <= a) ++i;
    for (; i <= last && static_cast<double>(i) * d_q < b; ++i) {
      const double seg_start = static_cast<double>(i) * d_q;
      const double seg_end = std::min(seg_start + d_q, T);
      const double ov =
          std::min(seg_end, b) - std::max(seg_start, a);
      if (!(ov > 0.0)) continue;
      if (acc.empty() || acc.back().first != i)
        acc.emplace_back(i, SegmentOverlap{0.0, 0.0, seg_end - seg_start});
      SegmentOverlap& slot = acc.back().second;
      slot.overlap += ov;
      slot.max_fraction = std::max(slot.max_fraction, ov / d_e);
    }
  }
  profile.overlapping.reserve(acc.size());
  for (auto& [index, seg] : acc) profile.overlapping.push_back(seg);
  return profile;
}

double segment_accuracy(const SegmentOverlap& seg, double gamma) {
  return seg.max_fraction >= gamma
             ? seg.overlap / seg.length
             : (seg.length - seg.overlap) / seg.length;
}

}  // namespace

Recording make_recording(double T, const std::vector<Event>& raw_events) {
  if (!(T > 0.0))
    throw std::invalid_argument("make_recording: duration must be > 0");
  Recording rec;
  rec.duration = T;
  rec.raw_event_count = raw_events.size();
  std::vector<TimeInterval> intervals;
  intervals.reserve(raw_events.size());
  for (const Event& e : raw_events) {
    if (e.interval.start < 0.0 || e.interval.end > T)
      throw std::invalid_argument(
          "make_recording: events must lie inside [0, T]");
    intervals.push_back(e.interval);
  }
  for (const TimeInterval& iv : merge_intervals(std::move(intervals)))
    rec.events.emplace_back(iv);
  return rec;
}

Recording generate_recording(double T, std::size_t M,
                             const EventLengthDistribution& dist,
                             RandomStream& rng) {
  if (!(T > 0.0))
    throw std::invalid_argument("generate_recording: duration must be > 0");
  if (M < 1)
    throw std::invalid_argument("generate_recording: M must be >= 1");
  std::vector<Event> raw;
  raw.reserve(M);
  for (std::size_t m = 0; m < M; ++m) {
    double d_e = sample_length(dist, rng);
    std::size_t attempts = 0;
    while (d_e > T) {
      if (++attempts >= kMaxResampleAttempts)
        throw std::runtime_error(
            "generate_recording: could not draw an event shorter than the "
            "recording");
      d_e = sample_length(dist, rng);
    }
    const double start = d_e == T ? 0.0 : rng.uniform(0.0, T - d_e);
    raw.emplace_back(start, start + d_e);
  }
  return make_recording(T, raw);
}

std::vector<QuerySegment> fix_segments(double T, double d_q) {
  if (!(T > 0.0))
    throw std::invalid_argument("fix_segments: duration must be > 0");
  if (!(d_q > 0.0))
    throw std::invalid_argument("fix_segments: d_q must be > 0");
  std::vector<QuerySegment> segments;
  for (std::size_t i = 0; static_cast<double>(i) * d_q < T; ++i) {
    const double start = static_cast<double>(i) * d_q;
    segments.emplace_back(start, std::min(start + d_q, T));
  }
  return segments;
}

std::vector<QuerySegment> orc_segments(const Recording& rec) {
  std::vector<QuerySegment> segments;
  double cursor = 0.0;
  for (const Event& e : rec.events) {
    if (e.interval.start > cursor)
      segments.emplace_back(cursor, e.interval.start);
    segments.emplace_back(e.interval.start, e.interval.end);
    cursor = e.interval.end;
  }
  if (cursor < rec.duration) segments.emplace_back(cursor, rec.duration);
  return segments;
}

std::vector<LabeledSegment> annotate_fix(const Recording& rec, double d_q,
                                         PresenceCriterion c) {
  std::vector<LabeledSegment> labeled;
  for (const QuerySegment& q : fix_segments(rec.duration, d_q))
    labeled.push_back(annotate_segment(rec.events, q, c));
  return labeled;
}

std::optional<double> overlap_conditional_accuracy(const Recording& rec,
                                                   double d_q,
                                                   PresenceCriterion c) {
  const FixOverlapProfile profile = fix_overlap_profile(rec, d_q);
  if (profile.overlapping.empty()) return std::nullopt;
  double sum = 0.0;
  for (const SegmentOverlap& seg : profile.overlapping)
    sum += segment_accuracy(seg, c.gamma);
  return sum / static_cast<double>(profile.overlapping.size());
}

double whole_recording_accuracy(const Recording& rec, double d_q,
                                PresenceCriterion c) {
  const FixOverlapProfile profile = fix_overlap_profile(rec, d_q);
  double sum = 0.0;
  for (const SegmentOverlap& seg : profile.overlapping)
    sum += segment_accuracy(seg, c.gamma);
  // Segments without any event overlap are exact absences (accuracy 1).
  sum += static_cast<double>(profile.total_segments -
                             profile.overlapping.size());
  return sum / static_cast<double>(profile.total_segments);
}

OrcResult orc_annotation(const Recording& rec) {
  // Every oracle segment is pure event or pure gap, so each label is exact.
  return {1.0, orc_segments(rec).size()};
}

namespace {

// Per-(gamma, d_q) tallies of one recording's overlapping segments.
struct CellTally {
  double sum = 0.0;
  double sumsq = 0.0;
  std::size_t count = 0;
};

void validate_config(const SimulationConfig& cfg) {
  if (!(cfg.duration > 0.0))
    throw std::invalid_argument("SimulationConfig: duration must be > 0");
  if (cfg.recordings < 1)
    throw std::invalid_argument("SimulationConfig: recordings must be >= 1");
  if (cfg.events_per_recording < 1)
    throw std::invalid_argument(
        "SimulationConfig: events_per_recording must be >= 1");
  validate(cfg.length_distribution);
  for (double g : cfg.gamma_grid) {
    if (!(g > 0.0) || !(g < 1.0))
      throw std::invalid_argument(
          "SimulationConfig: sweep gamma values must lie in (0, 1)");
  }
  if (!cfg.d_q_grid.values.empty()) validate(cfg.d_q_grid);
}

}  // namespace

SweepResult run_sweep(const SimulationConfig& cfg, unsigned threads) {
  validate_config(cfg);
  std::vector<double> gammas = cfg.gamma_grid;
  if (gammas.empty()) {
    for (int k = 1; k <= 99; ++k) gammas.push_back(k / 100.0);
  }
  QueryLengthGrid grid = cfg.d_q_grid;
  if (grid.values.empty()) grid = default_query_grid(cfg.length_distribution);

  const std::size_t n_gamma = gammas.size();
  const std::size_t n_dq = grid.values.size();
  const std::size_t cells = n_gamma * n_dq;
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  // Fill one block of recordings in parallel, then fold it sequentially in
  // recording order: floating-point reductions never depend on the thread
  // count, only on the recording index.
  const std::size_t block = std::min<std::size_t>(
      cfg.recordings, std::max<std::size_t>(64, threads * 16));
  std::vector<CellTally> tallies(block * cells);
  std::vector<std::size_t> merged_counts(block);

  std::vector<CellTally> folded(cells);
  std::vector<std::size_t> folded_n(cells, 0);
  double merged_sum = 0.0;
  std::size_t merged_min = 0, merged_max = 0;

  for (std::size_t base = 0; base < cfg.recordings; base += block) {
    const std::size_t batch = std::min(block, cfg.recordings - base);

    auto worker = [&](std::size_t worker_id, std::exception_ptr& error) {
      try {
        for (std::size_t slot = worker_id; slot < batch; slot += threads) {
          const std::size_t r = base + slot;
          RandomStream rng(derive_stream_seed(cfg.master_seed, r));
          const Recording rec = generate_recording(
              cfg.duration, cfg.events_per_recording, cfg.length_distribution,
              rng);
          merged_counts[slot] = rec.events.size();
          CellTally* row = tallies.data() + slot * cells;
          for (std::size_t j = 0; j < n_dq; ++j) {
            const FixOverlapProfile profile =
                fix_overlap_profile(rec, grid.values[j]);
            for (std::size_t gi = 0; gi < n_gamma; ++gi) {
              CellTally& cell = row[gi * n_dq + j];
              cell = CellTally{};
              for (const SegmentOverlap& seg : profile.overlapping) {
                const double acc = segment_accuracy(seg, gammas[gi]);
                cell.sum += acc;
                cell.sumsq += acc * acc;
              }
              cell.count = profile.overlapping.size();
            }
          }
        }
      } catch (...) {
        error = std::current_exception();
      }
    };

    std::vector<std::exception_ptr> errors(threads);
    if (threads == 1) {
      worker(0, errors[0]);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back(worker, w, std::ref(errors[w]));
      for (auto& t : pool) t.join();
    }
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);

    for (std::size_t slot = 0; slot < batch; ++slot) {
      const std::size_t r = base + slot;
      const std::size_t m = merged_counts[slot];
      merged_sum += static_cast<double>(m);
      merged_min = r == 0 ? m : std::min(merged_min, m);
      merged_max = r == 0 ? m : std::max(merged_max, m);
      const CellTally* row = tallies.data() + slot * cells;
      for (std::size_t cidx = 0; cidx < cells; ++cidx) {
        const CellTally& cell = row[cidx];
        if (cell.count == 0) continue;
        if (cfg.averaging == Averaging::macro) {
          const double mean = cell.sum / static_cast<double>(cell.count);
          folded[cidx].sum += mean;
          folded[cidx].sumsq += mean * mean;
          folded_n[cidx] += 1;
        } else {
          folded[cidx].sum += cell.sum;
          folded[cidx].sumsq += cell.sumsq;
          folded_n[cidx] += cell.count;
        }
      }
    }
  }

  SweepResult result;
  result.mean_merged_events =
      merged_sum / static_cast<double>(cfg.recordings);
  result.min_merged_events = merged_min;
  result.max_merged_events = merged_max;
  result.curves.reserve(n_gamma);
  for (std::size_t gi = 0; gi < n_gamma; ++gi) {
    AccuracyCurve curve;
    curve.gamma = gammas[gi];
    curve.points.reserve(n_dq);
    bool first = true;
    for (std::size_t j = 0; j < n_dq; ++j) {
      const std::size_t cidx = gi * n_dq + j;
      const std::size_t n = folded_n[cidx];
      CurvePoint pt;
      pt.d_q = grid.values[j];
      pt.n = n;
      if (n > 0) {
        pt.mean_accuracy = folded[cidx].sum / static_cast<double>(n);
        if (n > 1) {
          const double var =
              std::max(0.0, (folded[cidx].sumsq -
                             static_cast<double>(n) * pt.mean_accuracy *
                                 pt.mean_accuracy) /
                                static_cast<double>(n - 1));
          pt.stderr_accuracy = std::sqrt(var / static_cast<double>(n));
        }
        if (first || pt.mean_accuracy > curve.empirical_max) {
          curve.empirical_max = pt.mean_accuracy;
          curve.empirical_argmax = pt.d_q;
          first = false;
        }
      }
      curve.points.push_back(pt);
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

}  // namespace weaklab
