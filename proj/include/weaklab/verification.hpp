#pragma once

#include <functional>
#include <string>
#include <vector>

#include "weaklab/core_model.hpp"

namespace weaklab {

/// Outcome of one property suite: how many cases were checked, the largest
/// observed error, and a printable description of the worst case.
struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string worst_case;
};

/// Knobs for the property suites. `closed_form` substitutes the implementation
/// of the expected overlap accuracy under test; tests use it to inject a
/// deliberately wrong formula and confirm the oracle suites catch it. Leave it
/// empty to verify the library implementation.
struct VerificationOptions {
  std::function<double(double d_e, double d_q, PresenceCriterion c)>
      closed_form;
};

/// Runs every property suite and returns one result per suite, in a fixed
/// order. Deterministic: seeded internally, independent of thread count.
std::vector<SuiteResult> run_property_suites(
    const VerificationOptions& options = {});

/// True iff every suite passed.
bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace weaklab
