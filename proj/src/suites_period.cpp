#include "suites_impl.hpp"

namespace simpson::suites {

namespace {

std::vector<std::string> rho_sample(const SuiteConfig &cfg) {
  return cfg.rho.empty() ? std::vector<std::string>{"rho_k"} : cfg.rho;
}

SuiteResult invariants_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const auto sample = rho_sample(cfg);
  const int trials = trial_count(cfg, 20);
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const ContextPtr ctx = cfg.context(trial_dim(cfg, t));
    const std::string rho_name = sample[static_cast<std::size_t>(t) % sample.size()];
    Json trial{{"index", t}, {"d", ctx->dim()}, {"l", trial_rank(cfg, t)}, {"rho", rho_name}};
    try {
      const RhoValue rho = parse_rho(ctx, rho_name);
      if (rho.valuation() >= cfg.a) throw ContextError("rho " + rho_name + " is not below a");
      const SmallRep m = random_rep(ctx, trial_rank(cfg, t), cfg.a, rng);
      const SpanCheck c = compare_invariants(m, rho);
      const BasisChecks b = check_invariant_basis(m, rho);
      trial["contained"] = c.contained;
      trial["closed_rank"] = c.closed_rank;
      trial["kernel_free_rank"] = c.kernel_free_rank;
      trial["certified_precision"] = c.precision;
      trial["inverse_defect"] = encode(b.inverse_defect);
      trial["closed_inverse_defect"] = encode(b.closed_inverse_defect);
      trial["invariance_defect"] = encode(b.invariance_defect);
      trial["derivative_defect"] = encode(b.derivative_defect);
      rec.add(std::move(trial), c.equal() && !b.inverse_defect && at_least(b.closed_inverse_defect, b.precision) &&
                                    at_least(b.invariance_defect, b.precision));
    } catch (const ContextError &) {
      throw;
    } catch (const Error &e) {
      trial["error"] = e.what();
      rec.add(std::move(trial), false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"instances", std::to_string(trials)}, {"span mismatches", std::to_string(rec.failures)}};
  return res;
}

SuiteResult horizontal_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const auto sample = rho_sample(cfg);
  const int trials = trial_count(cfg, 10);
  const int target = cfg.N - 2;
  Valuation worst;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const ContextPtr ctx = cfg.context(trial_dim(cfg, t));
    const std::string rho_name = sample[static_cast<std::size_t>(t) % sample.size()];
    Json trial{{"index", t}, {"d", ctx->dim()}, {"l", trial_rank(cfg, t)}, {"rho", rho_name}};
    try {
      const SmallHiggs h = random_higgs(ctx, trial_rank(cfg, t), cfg.a, rng);
      const SpanCheck c = compare_horizontal(h, parse_rho(ctx, rho_name));
      // the action is read off a truncation deep enough for the exponential tail
      const int g = std::max(cfg.G, exp_truncation_degree(ctx, Rational(target)));
      const ContextPtr deep = cfg.context(ctx->dim(), g);
      const SectionAction sa = section_action(reduce_higgs(h, deep), parse_rho(deep, rho_name));
      trial["contained"] = c.contained;
      trial["closed_rank"] = c.closed_rank;
      trial["kernel_free_rank"] = c.kernel_free_rank;
      trial["action_truncation_degree"] = g;
      trial["action_defect"] = encode(sa.matrix_defect);
      trial["stable_action_defect"] = encode(sa.stable_defect);
      worst = valuation_min(worst, sa.matrix_defect);
      rec.add(std::move(trial), c.equal() && at_least(sa.matrix_defect, target));
    } catch (const ContextError &) {
      throw;
    } catch (const Error &e) {
      trial["error"] = e.what();
      rec.add(std::move(trial), false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"instances", std::to_string(trials)}, {"min action defect", to_string(worst)}};
  return res;
}

Json rational_list(const std::vector<Rational> &xs) {
  Json out = Json::array();
  for (const auto &x : xs) out.push_back(encode(x));
  return out;
}

SuiteResult cohomology_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  std::vector<SmallRep> inputs;
  if (!cfg.instances.empty()) {
    for (const auto &path : cfg.instances) {
      const Json f = read_json(path);
      inputs.push_back(decode_rep(decode_context(f.at("context")), f.at("instance")));
    }
  } else {
    const int trials = trial_count(cfg, 10);
    for (int t = 0; t < trials; ++t) {
      auto rng = trial_rng(cfg.seed, t);
      const ContextPtr ctx = cfg.context(trial_dim(cfg, t));
      // every third instance carries a trivial summand, so free ranks are exercised too
      if (t % 3 == 2)
        inputs.push_back(direct_sum(random_rep(ctx, 1, cfg.a, rng), trivial_rep(ctx, Base::Chart, 1, cfg.a)));
      else
        inputs.push_back(random_rep(ctx, std::min(trial_rank(cfg, t), 2), cfg.a, rng));
    }
  }
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    const SmallRep &m = inputs[t];
    const std::string id = "cohomology-" + std::to_string(t);
    try {
      const CohomologyComparison cmp = cohomology_compare(m);
      const RoundTrip rt = round_trip(rep_to_higgs(m));
      Json trial = comparison_report(id, cmp, valuation_min(rt.higgs_defect, rt.rep_defect));
      Json mism = Json::array();
      for (const auto &deg : cmp.degrees) mism.push_back(rational_list(deg.mismatch));
      trial["index"] = t;
      trial["d"] = m.dim();
      trial["l"] = m.rank;
      trial["torsion_mismatch"] = mism;
      rec.add(std::move(trial), cmp.ranks_agree() && cmp.torsion_ok());
    } catch (const Error &e) {
      rec.add(Json{{"instance_id", id}, {"index", t}, {"error", e.what()}}, false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"instances", std::to_string(inputs.size())}, {"disagreements", std::to_string(rec.failures)}};
  return res;
}

bool trace_monotone(const Trace &t) {
  for (std::size_t s = 1; s < t.size(); ++s)
    if (t[s].complement && (!t[s - 1].complement || *t[s].complement <= *t[s - 1].complement)) return false;
  return true;
}

SuiteResult descent_suite(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const int trials = trial_count(cfg, 12);
  const int negatives = std::max(1, trials / 4);
  int max_steps = 0;
  for (int t = 0; t < trials + negatives; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    const ContextPtr ctx = cfg.context(trial_dim(cfg, t));
    const int rank = trial_rank(cfg, t);
    const bool negative = t >= trials;
    const Rational margin = cfg.a - ctx->r();
    Json trial{{"index", t}, {"d", ctx->dim()}, {"l", rank}, {"negative_control", negative}};
    try {
      const SmallRep m = random_rep(ctx, rank, cfg.a, rng);
      if (negative) {
        // v(U - 1) = a at the top level: complement about a + 1/(p^{n-1}(p-1)) < a + r
        const RingMat u = random_unipotent(ctx, rank, cfg.a, ctx->level(), rng);
        try {
          descend_cocycle(ctx, conjugate(ctx, m.mats, u), margin);
          trial["outcome"] = "accepted";
          rec.add(std::move(trial), false);
        } catch (const HypothesisError &e) {
          trial["outcome"] = e.what();
          rec.add(std::move(trial), true, true);
        }
        continue;
      }
      // level-1 conjugators need v(U - 1) >= 1 to keep nonzero products inside the Laurent box
      const int level = t % 2 == 0 ? ctx->level() : 1;
      const Rational v = level == 1 ? std::max(Rational(1), cfg.a + ctx->r()) : cfg.a + ctx->r();
      const RingMat u = random_unipotent(ctx, rank, v, level, rng);
      const SmallRep inf = make_rep(ctx, Base::Perfectoid, conjugate(ctx, m.mats, u), cfg.a);
      const Decompletion dec = decomplete_rep(inf, cfg.a);
      bool chart = true, identity = true;
      const RingMat hu = ring_multiply(dec.conjugator, u);
      for (int i = 0; i < ctx->dim(); ++i) {
        chart = chart && is_chart_matrix(dec.chart.mats[i]);
        identity = identity &&
                   ring_equal(ring_multiply(gamma_matrix(i, 1, dec.conjugator), inf.mats[i]),
                              ring_multiply(dec.chart.mats[i], dec.conjugator)) &&
                   ring_equal(ring_multiply(gamma_matrix(i, 1, hu), m.mats[i]), ring_multiply(dec.chart.mats[i], hu));
      }
      const SmallnessReport sr = verify_smallness_upgrade(dec.chart, cfg.a);
      const int steps = static_cast<int>(dec.trace.size());
      max_steps = std::max(max_steps, steps);
      trial["conjugator_level"] = level;
      trial["conjugator_valuation"] = encode(v);
      trial["initial_complement_valuation"] = encode(complement_valuation(inf.mats));
      trial["iterations"] = steps;
      trial["max_iterations"] = dec.max_iterations;
      trial["trace"] = encode(dec.trace);
      trial["chart_valued"] = chart;
      trial["conjugation_identity"] = identity;
      trial["monotone"] = trace_monotone(dec.trace);
      trial["direct_check"] = sr.direct_check;
      trial["h0_free_rank_matches_l"] = sr.h0_free_rank_matches_l;
      rec.add(std::move(trial), chart && identity && steps <= dec.max_iterations && trace_monotone(dec.trace) &&
                                    sr.direct_check && sr.h0_free_rank_matches_l);
    } catch (const Error &e) {
      trial["error"] = e.what();
      rec.add(std::move(trial), false);
    }
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.warnings = rec.warnings;
  res.summary = {{"round trips", std::to_string(trials)},
                 {"negative controls reported", std::to_string(rec.warnings) + "/" + std::to_string(negatives)},
                 {"max iterations used", std::to_string(max_steps)}};
  return res;
}

}  // namespace

SuiteResult run_period(const std::string &name, const SuiteConfig &cfg) {
  if (name == "invariants") return invariants_suite(cfg);
  if (name == "horizontal") return horizontal_suite(cfg);
  if (name == "cohomology") return cohomology_suite(cfg);
  if (name == "descent") return descent_suite(cfg);
  throw ContextError("unknown suite: " + name);
}

SuiteResult run_determinism(const SuiteConfig &cfg) {
  SuiteResult res;
  Recorder rec;
  const std::vector<std::pair<std::string, int>> inner{{"roundtrip", 4}, {"cohomology", 2}, {"descent", 4}, {"invariants", 2}};
  for (const auto &[suite, trials] : inner) {
    SuiteConfig c = cfg;
    if (c.trials == 0) c.trials = trials;
    const std::string first = report_payload(run_suite(suite, c).report).dump();
    const std::string second = report_payload(run_suite(suite, c).report).dump();
    rec.add(Json{{"suite", suite}, {"bytes", first.size()}, {"identical", first == second}}, first == second);
  }
  for (const std::string kind : {"rep", "higgs"}) {
    const auto a = generate_instances(kind, cfg), b = generate_instances(kind, cfg);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].dump() == b[i].dump();
    rec.add(Json{{"gen", kind}, {"files", a.size()}, {"identical", same}}, same);
  }
  res.report["trials"] = rec.trials;
  res.failures = rec.failures;
  res.summary = {{"payloads compared", std::to_string(rec.trials.size())}};
  return res;
}

}  // namespace simpson::suites

namespace simpson {

std::vector<Json> generate_instances(const std::string &kind, const SuiteConfig &cfg) {
  if (kind != "rep" && kind != "higgs" && kind != "trivial") throw ContextError("unknown instance kind: " + kind);
  std::vector<Json> out;
  const int count = suites::trial_count(cfg, 1);
  for (int t = 0; t < count; ++t) {
    auto rng = suites::trial_rng(cfg.seed, t);
    Json file;
    if (kind == "trivial") {
      file = instance_file(trivial_rep(cfg.context(cfg.d), Base::Chart, cfg.l, cfg.a));
    } else {
      const ContextPtr ctx = cfg.context(suites::trial_dim(cfg, t));
      const int rank = suites::trial_rank(cfg, t);
      file = kind == "rep" ? instance_file(random_rep(ctx, rank, cfg.a, rng)) : instance_file(random_higgs(ctx, rank, cfg.a, rng));
    }
    file["id"] = kind + "-" + std::to_string(t);
    file["seed"] = cfg.seed;
    out.push_back(std::move(file));
  }
  return out;
}

}  // namespace simpson
