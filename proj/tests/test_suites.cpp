#include <doctest.h>

#include "simpson/suites.hpp"

using namespace simpson;

TEST_CASE("configuration errors") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite("nosuch", cfg), ContextError);
  cfg.d = 4;
  CHECK_THROWS_AS(run_suite("identities", cfg), ContextError);
  cfg = SuiteConfig{};
  cfg.N = 1;
  CHECK_THROWS_AS(run_suite("identities", cfg), ContextError);
  const auto ctx = SuiteConfig{}.context(1);
  CHECK_THROWS_AS(parse_rho(ctx, "pi^2"), ContextError);  // below 1/(p-1)
  CHECK_THROWS_AS(parse_rho(ctx, "banana"), ContextError);
  CHECK(parse_rho(ctx, "p").strict);
  CHECK_FALSE(parse_rho(ctx, "rho_k").strict);
}

TEST_CASE("exponential truncation degree") {
  // n (3/4) - v_5(n!) >= 8 first at n = 14
  CHECK(exp_truncation_degree(SuiteConfig{}.context(1), Rational(8)) == 13);
}

TEST_CASE("reports embed the config and drop timing for comparison") {
  SuiteConfig cfg;
  cfg.trials = 2;
  cfg.seed = 7;
  const auto r = run_suite("roundtrip", cfg);
  CHECK(r.pass);
  CHECK(r.report["config"]["seed"] == 7);
  CHECK(r.report["trials"].size() == 2);
  CHECK(r.report.contains("timing"));
  CHECK_FALSE(report_payload(r.report).contains("timing"));
  CHECK(report_payload(run_suite("roundtrip", cfg).report) == report_payload(r.report));
  cfg.seed = 8;
  CHECK(report_payload(run_suite("roundtrip", cfg).report) != report_payload(r.report));
}

TEST_CASE("instance generation") {
  SuiteConfig cfg;
  cfg.trials = 2;
  const auto files = generate_instances("rep", cfg);
  REQUIRE(files.size() == 2);
  CHECK(files[0]["id"] == "rep-0");
  CHECK(files[0]["kind"] == "rep");
  cfg.trials = 1;
  cfg.l = 1;
  cfg.d = 1;
  const auto triv = generate_instances("trivial", cfg);
  CHECK(triv[0]["instance"]["mats"][0][0][0] == Json{{"0/1", Json::array({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})}});
  CHECK_THROWS_AS(generate_instances("bogus", cfg), ContextError);
}
