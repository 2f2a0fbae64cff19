#pragma once

#include "simpson/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace simpson {

/// Everything a suite run depends on. Reports embed it verbatim.
struct SuiteConfig {
  int p = 5;
  int n = 2;
  int N = 10;
  int D = 2;
  int G = 6;
  int d = 2;  // trials sweep d = 1..d
  Rational a{1, 2};
  int l = 2;       // trials sweep l = 1..l
  int trials = 0;  // 0: the suite's default
  std::uint64_t seed = 42;
  std::vector<std::string> rho;  // "rho_k", "p", "pi^k"; empty: the suite's default
  std::vector<std::string> instances;  // instance files replacing random ones

  ContextPtr context(int dim) const;
  ContextPtr context(int dim, int y_bound) const;
  Json to_json() const;
};

/// "rho_k", "p" or "pi^k".
RhoValue parse_rho(const ContextPtr &ctx, const std::string &s);

struct SuiteResult {
  std::string suite;
  bool pass = true;
  int trials = 0;
  int failures = 0;
  int warnings = 0;
  Json report;  // {schema, suite, config, trials, aggregate, timing}
  std::vector<std::pair<std::string, std::string>> summary;
};

const std::vector<std::string> &suite_names();
/// Throws ContextError for an unknown suite or an invalid configuration.
SuiteResult run_suite(const std::string &name, const SuiteConfig &config);

/// The report with timing fields removed; what determinism compares.
Json report_payload(const Json &report);

/// Deterministic instance files: kind is "rep", "higgs" or "trivial".
std::vector<Json> generate_instances(const std::string &kind, const SuiteConfig &config);

/// Smallest G with v(theta^{G+1} / (G+1)!) >= target for v(theta) >= a + 1/(p-1).
int exp_truncation_degree(const ContextPtr &ctx, const Rational &target);

}  // namespace simpson
