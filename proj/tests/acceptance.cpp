// One PASS/FAIL line per acceptance criterion at the default configuration.
// Optional argument: a directory that receives the JSON reports.

#include "simpson/suites.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace simpson;

int main(int argc, char **argv) {
  const std::string out_dir = argc > 1 ? argv[1] : "";
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  const SuiteConfig cfg;  // p = 5, n = 2, N = 10, D = 2, G = 6, d <= 2, l <= 2, a = 1/2, seed 42
  const std::vector<std::pair<int, std::vector<std::string>>> criteria{
      {1, {"identities"}}, {2, {"trivial"}},    {3, {"resolution"}}, {4, {"roundtrip", "functoriality"}},
      {5, {"invariants"}}, {6, {"horizontal"}}, {7, {"cohomology"}}, {8, {"descent"}},
      {9, {"determinism"}}};
  int failed = 0;
  for (const auto &[k, suites] : criteria) {
    bool pass = true;
    std::string detail;
    for (const auto &s : suites) {
      try {
        const SuiteResult r = run_suite(s, cfg);
        pass = pass && r.pass;
        detail += " " + s + "[" + std::to_string(r.trials - r.failures) + "/" + std::to_string(r.trials);
        for (const auto &[key, val] : r.summary) detail += ", " + key + " " + val;
        detail += "]";
        if (!out_dir.empty()) std::ofstream(out_dir + "/" + s + ".json") << r.report.dump(2) << '\n';
      } catch (const std::exception &e) {
        pass = false;
        detail += " " + s + "[error: " + e.what() + "]";
      }
    }
    if (!pass) ++failed;
    std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
