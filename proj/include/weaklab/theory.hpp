#pragma once

#include <vector>

#include "weaklab/core_model.hpp"

namespace weaklab {

/// Shape of the offset-accuracy curve F(t) for one (d_e, d_q, gamma).
enum class OverlapCase {
  longer_event,   // feasible, d_e >= d_q
  shorter_event,  // feasible, d_e <  d_q
  infeasible      // d_q < gamma * d_e: presence can never be triggered
};

/// One knot of the piecewise-linear offset-accuracy curve. F may jump at a
/// knot, so both one-sided limits are kept; at the curve ends both limits
/// equal the endpoint value.
struct Breakpoint {
  double t = 0.0;
  double f_left = 0.0;
  double f_right = 0.0;
};

/// Exact breakpoints of F(t) over t in [0, d_e + d_q], plus the area under
/// the curve. Knots are strictly increasing; coincident knots are merged
/// keeping the outer one-sided limits.
struct OverlapBreakpoints {
  OverlapCase case_tag = OverlapCase::longer_event;
  std::vector<Breakpoint> points;
  double area = 0.0;  // integral of F over [0, d_e + d_q], in seconds
};

/// Expected label accuracy f(d_q) for an event of length d_e overlapping a
/// segment of length d_q uniformly at random, under presence criterion c.
double expected_overlap_accuracy(double d_e, double d_q, PresenceCriterion c);

/// Segment length d_q* maximizing expected_overlap_accuracy; always feasible
/// (d_q* >= gamma * d_e).
double optimal_query_length(double d_e, PresenceCriterion c);

/// Maximum of the expected overlap accuracy, f(d_q*). Depends only on gamma.
double max_overlap_accuracy(PresenceCriterion c);

/// Number of fixed-length segments T / d_q* that maximizes accuracy for a
/// recording of duration T (real-valued; callers may round up).
double optimal_fix_queries(double T, double d_e, PresenceCriterion c);

/// Expected whole-recording label accuracy for M sparse non-overlapping
/// events of length d_e in a recording of length T, segment length d_q,
/// with a fraction rho of segments left unlabeled. Requires the sparsity
/// condition T > M * (d_e + d_q) and d_q >= gamma * d_e.
double recording_accuracy(double T, double M, double d_e, double d_q,
                          PresenceCriterion c, double rho);

/// f as a function of delta = d_q / d_e alone; equals
/// expected_overlap_accuracy(1, delta, c).
double dimensionless_accuracy(double delta, PresenceCriterion c);

/// delta* = d_q* / d_e, the optimal length ratio. Depends only on gamma.
double optimal_ratio(PresenceCriterion c);

/// Exact knots and area of the offset-accuracy curve.
OverlapBreakpoints overlap_breakpoints(double d_e, double d_q,
                                       PresenceCriterion c);

/// Brute-force check value for expected_overlap_accuracy: integrates
/// core-model accuracy_at_offset piecewise (panel midpoints between knots,
/// exact for a piecewise-linear curve) and normalizes by d_e + d_q.
double oracle_expected_overlap_accuracy(double d_e, double d_q,
                                        PresenceCriterion c);

/// Headline numbers for one (T, d_e, gamma).
struct TheorySummary {
  double gamma = 0.0;
  double d_e = 0.0;
  double t_total = 0.0;    // recording length T used for b_fix_star
  double d_q_star = 0.0;   // optimal segment length
  double delta_star = 0.0; // d_q_star / d_e
  double f_star = 0.0;     // accuracy at the optimum
  double b_fix_star = 0.0; // T / d_q_star
};

TheorySummary make_theory_summary(double T, double d_e, PresenceCriterion c);

}  // namespace weaklab
