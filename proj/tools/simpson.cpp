// simpson <suite> [options]: run a verification suite and write a JSON report.
// simpson gen [options]: write deterministic instance files.

#include "simpson/suites.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace simpson;

namespace {

struct Options {
  SuiteConfig cfg;
  std::string a = "1/2";
  std::string out;
  std::string kind = "rep";
};

void add_common(CLI::App *sub, Options &o) {
  sub->add_option("--p", o.cfg.p, "residue characteristic")->capture_default_str();
  sub->add_option("--n", o.cfg.n, "cyclotomic and tower level")->capture_default_str();
  sub->add_option("--N", o.cfg.N, "p-adic precision")->capture_default_str();
  sub->add_option("--D", o.cfg.D, "Laurent exponent bound")->capture_default_str();
  sub->add_option("--G", o.cfg.G, "Y-degree bound")->capture_default_str();
  sub->add_option("--d", o.cfg.d, "largest number of variables")->capture_default_str();
  sub->add_option("--a", o.a, "smallness exponent num/den")->capture_default_str();
  sub->add_option("--l", o.cfg.l, "largest rank")->capture_default_str();
  sub->add_option("--trials", o.cfg.trials, "trial count (0: suite default)")->capture_default_str();
  sub->add_option("--seed", o.cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--rho", o.cfg.rho, "rho sample: rho_k, p, pi^k");
  sub->add_option("--out", o.out, "report (or instance) output path");
}

void write_json(const std::string &path, const Json &j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

void print_summary(const SuiteResult &r) {
  std::cout << std::left << std::setw(14) << "suite" << std::setw(8) << "trials" << std::setw(10) << "failures"
            << std::setw(10) << "warnings" << "result\n";
  std::cout << std::setw(14) << r.suite << std::setw(8) << r.trials << std::setw(10) << r.failures << std::setw(10)
            << r.warnings << (r.pass ? "PASS" : "FAIL") << '\n';
  for (const auto &[k, v] : r.summary) std::cout << "  " << std::setw(28) << k << v << '\n';
}

Rational parse_a(const std::string &s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception &) {
    throw ContextError("--a expects num/den, got " + s);
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact finite-precision checks of the local p-adic Simpson correspondence"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::pair<std::string, CLI::App *>> suites;
  for (const auto &name : suite_names()) {
    auto *sub = app.add_subcommand(name, "run the " + name + " suite");
    add_common(sub, o);
    if (name == "roundtrip" || name == "cohomology")
      sub->add_option("--instances", o.cfg.instances, "instance files instead of random inputs")->check(CLI::ExistingFile);
    suites.emplace_back(name, sub);
  }
  auto *gen = app.add_subcommand("gen", "write instance files");
  add_common(gen, o);
  gen->add_option("--kind", o.kind, "rep, higgs or trivial")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    o.cfg.a = parse_a(o.a);
    if (gen->parsed()) {
      const auto files = generate_instances(o.kind, o.cfg);
      if (o.out.empty()) {
        for (const auto &f : files) std::cout << f.dump() << '\n';
      } else if (files.size() == 1 && std::filesystem::path(o.out).extension() == ".json") {
        write_json(o.out, files.front());
        std::cout << o.out << '\n';
      } else {
        std::filesystem::create_directories(o.out);
        for (const auto &f : files) {
          const auto path = (std::filesystem::path(o.out) / (f["id"].get<std::string>() + ".json")).string();
          write_json(path, f);
          std::cout << path << '\n';
        }
      }
      return 0;
    }
    for (const auto &[name, sub] : suites) {
      if (!sub->parsed()) continue;
      const SuiteResult r = run_suite(name, o.cfg);
      if (!o.out.empty()) write_json(o.out, r.report);
      print_summary(r);
      return r.pass ? 0 : 1;
    }
  } catch (const ContextError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
