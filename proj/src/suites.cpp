#include "simpson/suites.hpp"
#include "suites_impl.hpp"

#include <chrono>
#include <fstream>
#include <map>

namespace simpson {

ContextPtr SuiteConfig::context(int dim) const { return context(dim, G); }

ContextPtr SuiteConfig::context(int dim, int y_bound) const {
  try {
    return make_context(p, n, N, D, y_bound, dim, a);
  } catch (const std::invalid_argument &e) {
    throw ContextError(e.what());
  }
}

Json SuiteConfig::to_json() const {
  Json rhos = Json::array();
  for (const auto &r : rho) rhos.push_back(r);
  Json inst = Json::array();
  for (const auto &f : instances) inst.push_back(f);
  return Json{{"p", p},   {"n", n},           {"N", N},         {"D", D},        {"G", G},
              {"d", d},   {"a", encode(a)},   {"l", l},         {"trials", trials}, {"seed", seed},
              {"rho", rhos}, {"instances", inst}};
}

RhoValue parse_rho(const ContextPtr &ctx, const std::string &s) {
  try {
    if (s == "rho_k") return RhoValue::rho_k(ctx);
    if (s == "p") return RhoValue::make(CycElt(ctx, ctx->p()));
    if (s.rfind("pi^", 0) == 0) return RhoValue::make(CycElt::pi(ctx).pow(std::stoull(s.substr(3))));
  } catch (const Error &e) {
    throw ContextError("rho " + s + ": " + e.what());
  } catch (const std::logic_error &) {
  }
  throw ContextError("unknown rho descriptor: " + s);
}

Json report_payload(const Json &report) {
  Json out = report;
  out.erase("timing");
  return out;
}

int exp_truncation_degree(const ContextPtr &ctx, const Rational &target) {
  const Rational v = ctx->a() + ctx->r();
  for (int k = 1;; ++k)
    if (Rational(k) * v - Rational(vp_factorial(k, ctx->p())) >= target) return k - 1;
}

namespace suites {

std::mt19937_64 trial_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

int trial_dim(const SuiteConfig &c, int t) { return 1 + t % c.d; }
int trial_rank(const SuiteConfig &c, int t) { return 1 + (t / c.d) % c.l; }
int trial_count(const SuiteConfig &c, int fallback) { return c.trials > 0 ? c.trials : fallback; }

bool at_least(const Valuation &v, int bound) { return valuation_at_least(v, Rational(bound)); }

Json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ContextError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ContextError(path + ": " + e.what());
  }
}

void Recorder::add(Json trial, bool ok, bool warning) {
  trial["pass"] = ok;
  if (warning) trial["warning"] = true;
  if (!ok) ++failures;
  if (warning) ++warnings;
  trials.push_back(std::move(trial));
}

}  // namespace suites

using namespace suites;

namespace {

SuiteResult identities_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  bool falling = true;
  for (int n = 1; n <= 20; ++n)
    falling = falling && poly_equal(poly_sub(poly_shift(falling_factorial(n), 1), falling_factorial(n)),
                                    poly_scale(falling_factorial(n - 1), n));
  rec.add(Json{{"check", "F_n(Y+1) - F_n(Y) = n F_{n-1}(Y), n <= 20"}}, falling);

  const EpsMatrix x = shift_matrix_x(16), y = shift_matrix_y(16);
  rec.add(Json{{"check", "X Y = Y X = 1, 16 x 16, symbolic eps"}},
          eps_is_identity(eps_multiply(x, y)) && eps_is_identity(eps_multiply(y, x)));

  const auto s1 = stirling_first(20), s2 = stirling_second(20);
  bool stirling = true;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      BigInt acc = 0;
      for (int k = 0; k <= 20; ++k) acc += s1[i][k] * s2[k][j];
      stirling = stirling && acc == (i == j ? 1 : 0);
    }
  rec.add(Json{{"check", "Stirling matrices are mutually inverse, n <= 20"}}, stirling);

  const ContextPtr ctx = cfg.context(1);
  const std::int64_t q = ctx->denominator();
  bool hom = true;
  for (std::int64_t j = 0; j < q; ++j)
    for (std::int64_t k = 0; k < q; ++k)
      hom = hom && zeta_power(ctx, Rational(j, q)) * zeta_power(ctx, Rational(k, q)) ==
                       zeta_power(ctx, Rational((j + k) % q, q));
  hom = hom && zeta_power(ctx, Rational(1, ctx->p())) - CycElt(ctx, 1) == CycElt::rho_k(ctx);
  rec.add(Json{{"check", "alpha -> zeta^alpha is a homomorphism on p^-n Z / Z"}}, hom);

  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"checks", std::to_string(rec.trials.size())}};
  return res;
}

Json torsion_json(const std::vector<Rational> &t) {
  Json out = Json::array();
  for (const auto &x : t) out.push_back(encode(x));
  return out;
}

SuiteResult trivial_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const ContextPtr ctx = cfg.context(1);
  const int monos = static_cast<int>(base_monomials(ctx, Base::Chart).size());
  const auto rep = group_cohomology(trivial_rep(ctx, Base::Chart, 1, cfg.a), Coefficients::period(RhoValue::rho_k(ctx)));
  std::vector<Rational> expected;
  for (int i = 0; i < ctx->y_bound(); ++i)
    for (int k = 0; k < monos; ++k) expected.push_back(Rational(vp_int(i + 1, ctx->p())) + ctx->r());
  std::sort(expected.begin(), expected.end());
  const bool h0 = rep.at(0).free_rank == monos && rep.at(0).torsion.empty();
  const bool h1 = rep.at(1).free_rank == 0 && rep.at(1).torsion == expected;
  rec.add(Json{{"check", "period lattice at rho_k, chart"},
               {"h0_free", rep.at(0).free_rank},
               {"expected_h0_free", monos},
               {"h1_torsion", torsion_json(rep.at(1).torsion)},
               {"expected_h1_torsion", torsion_json(expected)}},
          h0 && h1);

  const auto perf = group_cohomology(trivial_rep(ctx, Base::Perfectoid, 1, cfg.a), Coefficients::plain());
  bool small = true;
  for (const auto &deg : perf.degrees) small = small && deg.max_torsion() <= ctx->r();
  const bool chart_part = perf.at(0).free_rank == monos && perf.at(1).free_rank == monos;
  rec.add(Json{{"check", "plain coefficients, perfectoid: complement is torsion <= 1/(p-1)"},
               {"h0_free", perf.at(0).free_rank},
               {"h1_free", perf.at(1).free_rank},
               {"torsion_count", perf.at(0).torsion.size() + perf.at(1).torsion.size()},
               {"max_torsion", encode(std::max(perf.at(0).max_torsion(), perf.at(1).max_torsion()))}},
          small && chart_part);
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"H0 free", std::to_string(rep.at(0).free_rank)},
                 {"H1 divisors", std::to_string(rep.at(1).torsion.size())}};
  return res;
}

SuiteResult resolution_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const ContextPtr ctx = cfg.context(1);
  const int monos = static_cast<int>(base_monomials(ctx, Base::Chart).size());
  const std::vector<std::string> sample = cfg.rho.empty() ? std::vector<std::string>{"pi^6", "pi^7", "pi^8", "p"} : cfg.rho;
  std::vector<std::pair<Rational, Rational>> trend;  // (v(rho), max torsion)
  for (const auto &name : sample) {
    const RhoValue rho = parse_rho(ctx, name);
    const Rational bound = rho.valuation() + Rational(vp_factorial(ctx->y_bound(), ctx->p()));
    const auto rep = higgs_period_cohomology(zero_higgs(ctx, 1, cfg.a), rho);
    Rational worst(0);
    for (std::size_t q = 1; q < rep.degrees.size(); ++q) worst = std::max(worst, rep.degrees[q].max_torsion());
    trend.emplace_back(rho.valuation(), worst);
    rec.add(Json{{"rho", name},
                 {"strict", rho.strict},
                 {"v_rho", encode(rho.valuation())},
                 {"bound", encode(bound)},
                 {"h0_free", rep.at(0).free_rank},
                 {"h1_torsion", torsion_json(rep.at(1).torsion)},
                 {"max_torsion", encode(worst)}},
            rho.strict && worst <= bound && rep.at(0).free_rank == monos);
  }
  std::sort(trend.begin(), trend.end());
  bool shrinking = trend.size() < 2 || trend.front().second < trend.back().second;
  for (std::size_t i = 1; i < trend.size(); ++i) shrinking = shrinking && trend[i - 1].second <= trend[i].second;
  rec.add(Json{{"check", "max torsion decreases with v(rho) - v(rho_k)"}}, shrinking);
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"rho sample", std::to_string(sample.size())},
                 {"max torsion", trend.empty() ? "-" : to_string(trend.back().second)}};
  return res;
}

/// Higgs modules to test: random ones, or those read from instance files.
std::vector<SmallHiggs> higgs_inputs(const SuiteConfig &cfg, int fallback) {
  std::vector<SmallHiggs> out;
  if (!cfg.instances.empty()) {
    for (const auto &path : cfg.instances) {
      const Json f = read_json(path);
      const ContextPtr ctx = decode_context(f.at("context"));
      if (f.at("kind") == "higgs")
        out.push_back(decode_higgs(ctx, f.at("instance")));
      else
        out.push_back(rep_to_higgs(decode_rep(ctx, f.at("instance"))));
    }
    return out;
  }
  for (int t = 0; t < trial_count(cfg, fallback); ++t) {
    auto rng = trial_rng(cfg.seed, t);
    out.push_back(random_higgs(cfg.context(trial_dim(cfg, t)), trial_rank(cfg, t), cfg.a, rng));
  }
  return out;
}

Json functoriality_json(const FunctorialityReport &f) {
  return Json{{"tensor_defect", encode(f.tensor_defect)},
              {"dual_defect", encode(f.dual_defect)},
              {"log_sum_defect", encode(f.log_sum_defect)}};
}

bool functoriality_ok(const FunctorialityReport &f, int bound) {
  return at_least(f.tensor_defect, bound) && at_least(f.dual_defect, bound) && at_least(f.log_sum_defect, bound);
}

SuiteResult roundtrip_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const int bound = cfg.N - 2;
  Valuation worst;
  const auto inputs = higgs_inputs(cfg, 50);
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const SmallHiggs &h = inputs[t];
    auto rng = trial_rng(cfg.seed ^ 0x5a5a5a5aULL, static_cast<int>(t));
    Json trial{{"index", t}, {"d", h.dim()}, {"l", h.rank}};
    try {
      const RoundTrip rt = round_trip(h);
      const auto f = functoriality_check(higgs_to_rep(h), random_rep(h.ctx, 1, h.a, rng));
      trial["higgs_defect"] = encode(rt.higgs_defect);
      trial["rep_defect"] = encode(rt.rep_defect);
      trial["functoriality"] = functoriality_json(f);
      worst = valuation_min(worst, valuation_min(rt.higgs_defect, rt.rep_defect));
      worst = valuation_min(worst, valuation_min(f.tensor_defect, valuation_min(f.dual_defect, f.log_sum_defect)));
      rec.add(std::move(trial), at_least(rt.higgs_defect, bound) && at_least(rt.rep_defect, bound) && functoriality_ok(f, bound));
    } catch (const Error &e) {
      trial["error"] = e.what();
      rec.add(std::move(trial), false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.report["min_defect_valuation"] = encode(worst);
  res.summary = {{"instances", std::to_string(inputs.size())}, {"min defect", to_string(worst)}, {"required", std::to_string(bound)}};
  return res;
}

SuiteResult functoriality_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const int bound = cfg.N - 2;
  Valuation worst;
  const int trials = trial_count(cfg, 50);
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const ContextPtr ctx = cfg.context(trial_dim(cfg, t));
    Json trial{{"index", t}, {"d", ctx->dim()}, {"l", trial_rank(cfg, t)}};
    try {
      const SmallRep m1 = random_rep(ctx, trial_rank(cfg, t), cfg.a, rng);
      const SmallRep m2 = random_rep(ctx, 1 + (t + 1) % cfg.l, cfg.a, rng);
      const auto f = functoriality_check(m1, m2);
      trial["functoriality"] = functoriality_json(f);
      worst = valuation_min(worst, valuation_min(f.tensor_defect, valuation_min(f.dual_defect, f.log_sum_defect)));
      rec.add(std::move(trial), functoriality_ok(f, bound));
    } catch (const Error &e) {
      trial["error"] = e.what();
      rec.add(std::move(trial), false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"pairs", std::to_string(trials)}, {"min defect", to_string(worst)}};
  return res;
}

}  // namespace

namespace suites {

SuiteResult run_basic(const std::string &name, const SuiteConfig &cfg) {
  if (name == "identities") return identities_suite(cfg);
  if (name == "trivial") return trivial_suite(cfg);
  if (name == "resolution") return resolution_suite(cfg);
  if (name == "roundtrip") return roundtrip_suite(cfg);
  if (name == "functoriality") return functoriality_suite(cfg);
  return run_period(name, cfg);
}

}  // namespace suites

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names{"identities",   "trivial",    "resolution", "roundtrip",   "functoriality",
                                              "invariants",   "horizontal", "cohomology", "descent",     "determinism"};
  return names;
}

SuiteResult run_suite(const std::string &name, const SuiteConfig &config) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw ContextError("unknown suite: " + name);
  if (config.d < 1 || config.d > 3 || config.l < 1 || config.trials < 0)
    throw ContextError("invalid configuration: need 1 <= d <= 3, l >= 1, trials >= 0");
  config.context(config.d);  // validates p, n, N, D, G, a
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res = name == "determinism" ? run_determinism(config) : run_basic(name, config);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  res.suite = name;
  res.trials = static_cast<int>(res.report["trials"].size());
  res.pass = res.failures == 0;
  Json trials = std::move(res.report["trials"]);
  Json extra = res.report;
  extra.erase("trials");
  res.report = Json{{"schema", kSchemaVersion}, {"suite", name}, {"config", config.to_json()}, {"trials", std::move(trials)}};
  for (auto &[k, v] : extra.items()) res.report[k] = v;
  res.report["aggregate"] = Json{{"pass", res.pass}, {"trials", res.trials}, {"failures", res.failures}, {"warnings", res.warnings}};
  res.report["timing"] = Json{{"elapsed_ms", ms}};
  return res;
}

}  // namespace simpson
