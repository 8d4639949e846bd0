#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "weaklab/theory.hpp"
#include "weaklab/verification.hpp"

using namespace weaklab;

namespace {

const SuiteResult& find_suite(const std::vector<SuiteResult>& results,
                              const std::string& name) {
  const auto it =
      std::find_if(results.begin(), results.end(),
                   [&](const SuiteResult& r) { return r.name == name; });
  REQUIRE(it != results.end());
  return *it;
}

// The closed form with the sign of the quadratic term flipped; the
// infeasible branch is untouched.
double faulty_closed_form(double d_e, double d_q, PresenceCriterion c) {
  const double g = c.gamma;
  if (d_q >= g * d_e)
    return d_e * (2.0 * g * d_q + 2.0 * g * g * d_e + d_q) /
           (d_q * (d_e + d_q));
  return d_q / (d_e + d_q);
}

}  // namespace

TEST_CASE("all property suites pass on the real implementation") {
  const auto results = run_property_suites();
  CHECK(results.size() >= 9);
  CHECK(all_passed(results));
  for (const SuiteResult& r : results) {
    INFO(r.name, ": max_error=", r.max_error, " worst=", r.worst_case);
    CHECK(r.passed);
    CHECK(r.cases > 0);
    CHECK(!r.name.empty());
    CHECK(!r.worst_case.empty());
  }
}

TEST_CASE("a sign flip in the accuracy formula is caught by the oracle") {
  VerificationOptions options;
  options.closed_form = faulty_closed_form;
  const auto results = run_property_suites(options);
  CHECK(!all_passed(results));

  const SuiteResult& oracle = find_suite(results, "theory_oracle_equivalence");
  CHECK(!oracle.passed);
  CHECK(oracle.max_error > oracle.tolerance);
  CHECK(!oracle.worst_case.empty());  // the mismatch names a concrete case

  // Suites that do not consume the injected formula keep passing, so the
  // report isolates the fault.
  CHECK(find_suite(results, "infeasible_branch_monotone").passed);
  CHECK(find_suite(results, "fstar_monotone_decay").passed);
  CHECK(find_suite(results, "offset_curve_symmetry").passed);
  CHECK(find_suite(results, "label_complement").passed);
  CHECK(find_suite(results, "optimal_length_feasible").passed);
}

TEST_CASE("suite results are deterministic") {
  const auto a = run_property_suites();
  const auto b = run_property_suites();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].max_error == b[i].max_error);
    CHECK(a[i].cases == b[i].cases);
    CHECK(a[i].worst_case == b[i].worst_case);
  }
}
