#include "weaklab/theory.hpp"

#include <cmath>

namespace weaklab {

namespace {

void check_lengths(double d_e, double d_q) {
  if (!(d_e > 0.0)) throw std::invalid_argument("theory: d_e must be > 0");
  if (!(d_q > 0.0)) throw std::invalid_argument("theory: d_q must be > 0");
}

// Append a knot, merging with the previous one when the t values coincide:
// the first knot keeps its left limit, the last its right limit.
void push_knot(std::vector<Breakpoint>& pts, double t, double f_left,
               double f_right) {
  if (!pts.empty() && t <= pts.back().t) {
    pts.back().f_right = f_right;
    return;
  }
  pts.push_back({t, f_left, f_right});
}

}  // namespace

double expected_overlap_accuracy(double d_e, double d_q, PresenceCriterion c) {
  check_lengths(d_e, d_q);
  const double g = c.gamma;
  if (d_q >= g * d_e) {
    return d_e * (2.0 * g * d_q - 2.0 * g * g * d_e + d_q) /
           (d_q * (d_e + d_q));
  }
  return d_q / (d_e + d_q);
}

double optimal_query_length(double d_e, PresenceCriterion c) {
  if (!(d_e > 0.0)) throw std::invalid_argument("theory: d_e must be > 0");
  return d_e * optimal_ratio(c);
}

double max_overlap_accuracy(PresenceCriterion c) {
  const double g = c.gamma;
  return 2.0 * g * (2.0 * g + 1.0 - std::sqrt(4.0 * g * g + 4.0 * g + 2.0)) +
         1.0;
}

double optimal_fix_queries(double T, double d_e, PresenceCriterion c) {
  if (!(T > 0.0)) throw std::invalid_argument("theory: T must be > 0");
  return T / optimal_query_length(d_e, c);
}

double recording_accuracy(double T, double M, double d_e, double d_q,
                          PresenceCriterion c, double rho) {
  check_lengths(d_e, d_q);
  if (!(T > 0.0)) throw std::invalid_argument("theory: T must be > 0");
  if (!(M >= 1.0)) throw std::invalid_argument("theory: M must be >= 1");
  if (!(rho >= 0.0) || !(rho < 1.0))
    throw std::invalid_argument("theory: rho must lie in [0, 1)");
  if (!(T > M * (d_e + d_q)))
    throw std::domain_error(
        "recording_accuracy: sparsity condition T > M * (d_e + d_q) violated");
  const double g = c.gamma;
  const double labeled =
      -2.0 * M * d_e * d_e * g * g / (T * d_q) + 2.0 * M * d_e * g / T -
      M * d_q / T + 1.0;
  return (1.0 - rho) * labeled;
}

double dimensionless_accuracy(double delta, PresenceCriterion c) {
  return expected_overlap_accuracy(1.0, delta, c);
}

double optimal_ratio(PresenceCriterion c) {
  const double g = c.gamma;
  return g * (2.0 * g + std::sqrt(4.0 * g * g + 4.0 * g + 2.0)) /
         (2.0 * g + 1.0);
}

OverlapBreakpoints overlap_breakpoints(double d_e, double d_q,
                                       PresenceCriterion c) {
  check_lengths(d_e, d_q);
  const double g = c.gamma;
  OverlapBreakpoints bp;
  const double span = d_e + d_q;

  if (d_q < g * d_e) {
    // Presence never triggers: F descends 1 -> 0, sits at 0 while the
    // segment is fully covered, then climbs back to 1.
    bp.case_tag = OverlapCase::infeasible;
    push_knot(bp.points, 0.0, 1.0, 1.0);
    push_knot(bp.points, d_q, 0.0, 0.0);
    push_knot(bp.points, d_e, 0.0, 0.0);
    push_knot(bp.points, span, 1.0, 1.0);
  } else {
    const double f_absence = (d_q - g * d_e) / d_q;  // just before the jump
    const double f_presence = g * d_e / d_q;         // just after the jump
    push_knot(bp.points, 0.0, 1.0, 1.0);
    push_knot(bp.points, g * d_e, f_absence, f_presence);
    if (d_e >= d_q) {
      bp.case_tag = OverlapCase::longer_event;
      push_knot(bp.points, d_q, 1.0, 1.0);
      push_knot(bp.points, d_e, 1.0, 1.0);
    } else {
      bp.case_tag = OverlapCase::shorter_event;
      const double plateau = d_e / d_q;  // event entirely inside the segment
      push_knot(bp.points, d_e, plateau, plateau);
      push_knot(bp.points, d_q, plateau, plateau);
    }
    push_knot(bp.points, span - g * d_e, f_presence, f_absence);
    push_knot(bp.points, span, 1.0, 1.0);
  }

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < bp.points.size(); ++i) {
    const double width = bp.points[i + 1].t - bp.points[i].t;
    area += 0.5 * (bp.points[i].f_right + bp.points[i + 1].f_left) * width;
  }
  bp.area = area;
  return bp;
}

double oracle_expected_overlap_accuracy(double d_e, double d_q,
                                        PresenceCriterion c) {
  const OverlapBreakpoints bp = overlap_breakpoints(d_e, d_q, c);
  // F is linear between knots, so a midpoint sum per panel is exact up to
  // rounding; several panels per piece guard the claim rather than carry it.
  constexpr int kPanels = 8;
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < bp.points.size(); ++i) {
    const double a = bp.points[i].t;
    const double b = bp.points[i + 1].t;
    const double h = (b - a) / kPanels;
    if (!(h > 0.0)) continue;
    double piece = 0.0;
    for (int k = 0; k < kPanels; ++k)
      piece += accuracy_at_offset(d_e, d_q, c, a + (k + 0.5) * h);
    integral += piece * h;
  }
  return integral / (d_e + d_q);
}

TheorySummary make_theory_summary(double T, double d_e, PresenceCriterion c) {
  if (!(T > 0.0)) throw std::invalid_argument("theory: T must be > 0");
  TheorySummary s;
  s.gamma = c.gamma;
  s.d_e = d_e;
  s.t_total = T;
  s.d_q_star = optimal_query_length(d_e, c);
  s.delta_star = optimal_ratio(c);
  s.f_star = max_overlap_accuracy(c);
  s.b_fix_star = T / s.d_q_star;
  return s;
}

}  // namespace weaklab
