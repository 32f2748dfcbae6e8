#include <doctest.h>

#include "wittkit/error.hpp"
#include "wittkit/verify.hpp"

using namespace wittkit;

TEST_CASE("all suites pass at small sizes") {
  for (const auto& name : suite_names()) {
    SuiteReport rep = run_suite(name, 7, 4, name == "bispan" ? 4 : 10);
    INFO(name, ": ", rep.first_counterexample);
    CHECK(rep.ok());
    CHECK(rep.passed > 0);
  }
}

TEST_CASE("nr suite records the expected obstruction") {
  SuiteReport rep = run_suite("nr", 1, 4, 5);
  CHECK(rep.ok());
  CHECK(rep.expected_obstructions == 1);
}

TEST_CASE("suite reports are deterministic for a fixed seed") {
  SuiteReport a = run_suite("dwork", 42, 4, 10);
  SuiteReport b = run_suite("dwork", 42, 4, 10);
  CHECK(a.passed == b.passed);
  CHECK(a.failed == b.failed);
  CHECK(a.first_counterexample == b.first_counterexample);
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(run_suite("nope", 0, 4, 1), Error);
}
