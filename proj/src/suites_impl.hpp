#pragma once

#include "simpson/suites.hpp"

#include <random>

namespace simpson::suites {

std::mt19937_64 trial_rng(std::uint64_t seed, int index);
int trial_dim(const SuiteConfig &c, int t);
int trial_rank(const SuiteConfig &c, int t);
int trial_count(const SuiteConfig &c, int fallback);
bool at_least(const Valuation &v, int bound);
Json read_json(const std::string &path);

struct Recorder {
  Json trials = Json::array();
  int failures = 0;
  int warnings = 0;
  void add(Json trial, bool ok, bool warning = false);
};

SuiteResult run_basic(const std::string &name, const SuiteConfig &cfg);
SuiteResult run_period(const std::string &name, const SuiteConfig &cfg);
SuiteResult run_determinism(const SuiteConfig &cfg);

}  // namespace simpson::suites
