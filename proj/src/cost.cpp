#include "weaklab/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "weaklab/theory.hpp"

namespace weaklab {

namespace {

void validate(const CostScenario& sc) {
  if (!(sc.duration > 0.0))
    throw std::invalid_argument("CostScenario: duration must be > 0");
  if (!(sc.events >= 0.0))
    throw std::invalid_argument("CostScenario: events must be >= 0");
  if (!(sc.event_length > 0.0))
    throw std::invalid_argument("CostScenario: event_length must be > 0");
  if (!(sc.r >= 0.0) || !(sc.r <= 1.0))
    throw std::invalid_argument("CostScenario: r must lie in [0, 1]");
  if (!(sc.s >= 1.0))
    throw std::invalid_argument("CostScenario: s must be >= 1");
}

}  // namespace

double annotation_cost(double T, double B, const CostModel& model) {
  if (!(T > 0.0)) throw std::invalid_argument("annotation_cost: T must be > 0");
  if (!(B >= 0.0)) throw std::invalid_argument("annotation_cost: B must be >= 0");
  if (!(model.r >= 0.0) || !(model.r <= 1.0))
    throw std::invalid_argument("annotation_cost: r must lie in [0, 1]");
  return (1.0 - model.r) * T + model.r * B;
}

double fix_cost(const CostScenario& sc) {
  validate(sc);
  double b = optimal_fix_queries(sc.duration, sc.event_length,
                                 PresenceCriterion(sc.gamma));
  if (sc.ceil_queries) b = std::ceil(b);
  return annotation_cost(sc.duration, b, CostModel{sc.r});
}

double orc_cost(const CostScenario& sc) {
  validate(sc);
  return annotation_cost(sc.duration, sc.s * (2.0 * sc.events + 1.0),
                         CostModel{sc.r});
}

double fix_orc_cost_ratio(const CostScenario& sc) {
  return fix_cost(sc) / orc_cost(sc);
}

std::vector<CostRow> cost_sweep(const CostScenario& base, CostAxis axis,
                                const std::vector<double>& values,
                                const std::vector<double>& s_values) {
  if (values.empty() || s_values.empty())
    throw std::invalid_argument("cost_sweep: values and s_values must be non-empty");
  std::vector<CostRow> rows;
  rows.reserve(values.size() * s_values.size());
  for (double v : values) {
    for (double s : s_values) {
      CostScenario sc = base;
      sc.s = s;
      switch (axis) {
        case CostAxis::gamma: sc.gamma = v; break;
        case CostAxis::r: sc.r = v; break;
        case CostAxis::events: sc.events = v; break;
        case CostAxis::duration: sc.duration = v; break;
      }
      rows.push_back({axis, v, s, fix_orc_cost_ratio(sc)});
    }
  }
  return rows;
}

}  // namespace weaklab
