#include "weaklab/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "weaklab/distributions.hpp"

namespace weaklab {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_positive(const std::string& field, const char* what,
                      std::size_t row) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error("row " + std::to_string(row) + ": " + what +
                             " is not a number: '" + field + "'");
  }
  if (consumed != field.size())
    throw std::runtime_error("row " + std::to_string(row) + ": " + what +
                             " has trailing characters: '" + field + "'");
  if (!std::isfinite(value) || !(value > 0.0))
    throw std::runtime_error("row " + std::to_string(row) + ": " + what +
                             " must be a positive finite number, got '" +
                             field + "'");
  return value;
}

std::ifstream open_csv(const std::filesystem::path& path,
                       const char* expected_header) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path.string() + "'");
  std::string header;
  if (!std::getline(in, header) || strip_cr(header) != expected_header)
    throw std::runtime_error("'" + path.string() + "': expected header '" +
                             expected_header + "'");
  return in;
}

}  // namespace

EventLengthSample load_event_lengths(const std::filesystem::path& path,
                                     std::string_view class_filter) {
  std::ifstream in = open_csv(path, "class,length_seconds");
  EventLengthSample sample;
  std::set<std::string> classes;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("row " + std::to_string(row) +
                               ": expected 'class,length_seconds'");
    const std::string cls = line.substr(0, comma);
    if (!class_filter.empty() && cls != class_filter) continue;
    sample.lengths.push_back(
        parse_positive(line.substr(comma + 1), "length_seconds", row));
    classes.insert(cls);
  }
  if (sample.lengths.empty())
    throw std::runtime_error(
        "'" + path.string() + "': no usable rows" +
        (class_filter.empty()
             ? std::string()
             : " for class '" + std::string(class_filter) + "'"));
  sample.class_name = classes.size() == 1 ? *classes.begin() : "all";
  return sample;
}

std::vector<StrongWeakPair> load_strong_weak_pairs(
    const std::filesystem::path& path) {
  std::ifstream in = open_csv(path, "d_q_seconds,d_e_seconds");
  std::vector<StrongWeakPair> pairs;
  std::string line;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("row " + std::to_string(row) +
                               ": expected 'd_q_seconds,d_e_seconds'");
    StrongWeakPair p;
    p.d_q = parse_positive(line.substr(0, comma), "d_q_seconds", row);
    p.d_e = parse_positive(line.substr(comma + 1), "d_e_seconds", row);
    pairs.push_back(p);
  }
  if (pairs.empty())
    throw std::runtime_error("'" + path.string() + "': no usable rows");
  return pairs;
}

OffsetUniformity offset_uniformity(const std::vector<Event>& events,
                                   double d_q) {
  if (events.empty())
    throw std::invalid_argument("offset_uniformity: events must be non-empty");
  if (!(d_q > 0.0))
    throw std::invalid_argument("offset_uniformity: d_q must be > 0");

  std::vector<double> lengths;
  lengths.reserve(events.size());
  for (const Event& e : events) lengths.push_back(e.duration());
  std::sort(lengths.begin(), lengths.end());
  const std::size_t n = lengths.size();
  const double median = n % 2 == 1
                            ? lengths[n / 2]
                            : 0.5 * (lengths[n / 2 - 1] + lengths[n / 2]);

  OffsetUniformity out;
  out.median_event_length = median;
  for (const Event& e : events) {
    const double a = e.interval.start;
    const double b = a + median;  // normalized to the median length
    // Grid segments (i d_q, (i+1) d_q) with positive overlap of (a, b).
    double i = std::floor(a / d_q);
    while ((i + 1.0) * d_q <= a) i += 1.0;
    while (i * d_q > a) i -= 1.0;
    for (; i * d_q < b; i += 1.0) {
      const double seg_end = (i + 1.0) * d_q;
      if (seg_end <= a) continue;  // touches at the start only
      // Clamp a possible final-ulp overshoot so every offset stays inside
      // [0, median + d_q].
      out.offsets.push_back(std::min(seg_end - a, median + d_q));
    }
  }
  out.ks_statistic = ks_statistic_uniform(out.offsets, 0.0, median + d_q);
  return out;
}

double ks_statistic_uniform(std::vector<double> samples, double lo,
                            double hi) {
  if (samples.empty())
    throw std::invalid_argument("ks_statistic_uniform: empty sample");
  if (!(hi > lo))
    throw std::invalid_argument("ks_statistic_uniform: hi must exceed lo");
  std::sort(samples.begin(), samples.end());
  if (samples.front() < lo || samples.back() > hi)
    throw std::invalid_argument(
        "ks_statistic_uniform: samples outside [lo, hi]");
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = (samples[i] - lo) / (hi - lo);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - u);
    d = std::max(d, u - static_cast<double>(i) / n);
  }
  return d;
}

double ks_critical_value_alpha_01(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("ks_critical_value_alpha_01: n must be > 0");
  const double c = std::sqrt(-std::log(0.01 / 2.0) / 2.0);  // about 1.6276
  return c / std::sqrt(static_cast<double>(n));
}

double weak_strong_accuracy(const std::vector<StrongWeakPair>& pairs) {
  if (pairs.empty())
    throw std::invalid_argument("weak_strong_accuracy: no pairs");
  double sum = 0.0;
  for (const StrongWeakPair& p : pairs) {
    if (!(p.d_q > 0.0) || !(p.d_e > 0.0))
      throw std::invalid_argument(
          "weak_strong_accuracy: lengths must be positive");
    sum += std::min(p.d_e, p.d_q) / p.d_q;
  }
  return sum / static_cast<double>(pairs.size());
}

std::size_t overlong_pair_count(const std::vector<StrongWeakPair>& pairs) {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(),
                    [](const StrongWeakPair& p) { return p.d_e > p.d_q; }));
}

double theoretical_mean_accuracy(const EventLengthSample& sample, double d_q,
                                 PresenceCriterion c) {
  return expected_accuracy_over_lengths(EmpiricalLength{sample.lengths}, d_q,
                                        c);
}

std::vector<double> fit_presence_criterion(const EventLengthSample& sample,
                                           double d_q, double target) {
  if (!(target > 0.0) || !(target <= 1.0))
    throw std::invalid_argument(
        "fit_presence_criterion: target must lie in (0, 1]");
  const auto gap = [&](double gamma) {
    return theoretical_mean_accuracy(sample, d_q, PresenceCriterion(gamma)) -
           target;
  };

  constexpr int kSteps = 1000;  // gamma = 0.001, 0.002, ..., 1.000
  std::vector<double> crossings;
  double prev_gamma = 1.0 / kSteps;
  double prev_gap = gap(prev_gamma);
  if (prev_gap == 0.0) crossings.push_back(prev_gamma);
  for (int k = 2; k <= kSteps; ++k) {
    const double gamma = static_cast<double>(k) / kSteps;
    const double cur_gap = gap(gamma);
    if (cur_gap == 0.0) {
      crossings.push_back(gamma);
    } else if (prev_gap != 0.0 && (prev_gap < 0.0) != (cur_gap < 0.0)) {
      // Bisect; the accuracy may jump inside the bracket (feasibility
      // boundaries of individual lengths), in which case the bracket
      // collapses onto the jump instead of reaching the 1e-6 gap.
      double lo = prev_gamma, hi = gamma;
      double lo_gap = prev_gap;
      double mid = 0.5 * (lo + hi);
      for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double mid_gap = gap(mid);
        if (std::abs(mid_gap) < 1e-6) break;
        if ((mid_gap < 0.0) == (lo_gap < 0.0)) {
          lo = mid;
          lo_gap = mid_gap;
        } else {
          hi = mid;
        }
      }
      crossings.push_back(mid);
    }
    prev_gamma = gamma;
    prev_gap = cur_gap;
  }
  return crossings;
}

}  // namespace weaklab
