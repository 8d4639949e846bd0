#pragma once

#include <vector>

namespace weaklab {

/// Split of annotation effort: listening scales with audio length T,
/// per-query interaction scales with the number of queries B.
/// C(T, B) = (1 - r) * T + r * B.
struct CostModel {
  double r = 0.5;  // weight of the per-query term, in [0, 1]
};

double annotation_cost(double T, double B, const CostModel& model);

/// Inputs for comparing fixed-length annotation at the accuracy-optimal
/// segment length against oracle annotation.
struct CostScenario {
  double duration = 100.0;     // T
  double events = 1.0;         // M (real-valued for sweeps)
  double event_length = 1.0;   // d_e
  double gamma = 0.5;
  double r = 0.5;
  double s = 1.0;              // per-query overhead multiplier for the oracle
  bool ceil_queries = false;   // round the fixed-length query count up
};

/// Cost of fixed-length annotation with B = T / d_q*(d_e, gamma)
/// (rounded up when ceil_queries is set).
double fix_cost(const CostScenario& sc);

/// Cost of oracle annotation with B = s * (2M + 1).
double orc_cost(const CostScenario& sc);

/// fix_cost / orc_cost; > 1 means the oracle is cheaper.
double fix_orc_cost_ratio(const CostScenario& sc);

enum class CostAxis { gamma, r, events, duration };

struct CostRow {
  CostAxis axis = CostAxis::gamma;
  double value = 0.0;
  double s = 1.0;
  double ratio = 0.0;
};

/// Ratio along one axis for each s in s_values, other fields from `base`.
std::vector<CostRow> cost_sweep(const CostScenario& base, CostAxis axis,
                                const std::vector<double>& values,
                                const std::vector<double>& s_values);

}  // namespace weaklab
