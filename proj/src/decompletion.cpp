#include "simpson/decompletion.hpp"

#include "simpson/smith.hpp"

#include <set>

namespace simpson {

namespace {

std::vector<std::int64_t> unit_step(int d, int i) {
  std::vector<std::int64_t> g(d, 0);
  g[i] = 1;
  return g;
}

Valuation row_valuation(const RowVec &v) {
  Valuation out;
  for (Eigen::Index k = 0; k < v.size(); ++k) out = valuation_min(out, gauss_valuation(v(k)));
  return out;
}

Valuation cochain_valuation(const Cochain &f) {
  Valuation out;
  for (const auto &v : f) out = valuation_min(out, row_valuation(v));
  return out;
}

/// g with (gamma_i - 1) g = f_i on every monomial, using for each monomial
/// the variable whose eigenvalue zeta^{alpha_i} - 1 has the smallest valuation.
PerfLaurentElt solve_untwisted(const ContextPtr &ctx, const std::vector<PerfLaurentElt> &f) {
  std::set<Monomial> support;
  for (const auto &x : f)
    for (const auto &[m, c] : x.terms()) support.insert(m);
  PerfLaurentElt out(ctx);
  for (const auto &m : support) {
    int best = -1;
    Rational best_v;
    for (int i = 0; i < static_cast<int>(f.size()); ++i) {
      if (m[i] % ctx->denominator() == 0) continue;
      const Rational v = *(zeta_power(ctx, exponent(ctx, m, i)) - CycElt(ctx, 1)).valuation();
      if (best < 0 || v < best_v) best = i, best_v = v;
    }
    if (best < 0) throw Error("not in complement: integral monomial " + monomial_key(ctx, m));
    const CycElt c = f[best].context() ? f[best].coefficient(m) : CycElt(ctx, 0);
    if (c.is_zero()) continue;
    out += solve_gamma_shift(best, PerfLaurentElt::monomial(ctx, m, c));
  }
  return out;
}

int ceil_div(int n, const Rational &m) {
  const Rational q = Rational(n) / m;
  return static_cast<int>((q.numerator() + q.denominator() - 1) / q.denominator());
}

}  // namespace

RingMat complement_part(const RingMat &a) {
  RingMat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = split_integral(a(i, j)).second;
  return out;
}

Valuation complement_valuation(const std::vector<RingMat> &mats) {
  Valuation v;
  for (const auto &m : mats) v = valuation_min(v, matrix_valuation(complement_part(m)));
  return v;
}

Cochain coboundary(const SmallRep &l, const RowVec &g) {
  Cochain out;
  for (int i = 0; i < l.dim(); ++i) out.push_back(act(l, unit_step(l.dim(), i), g) - g);
  return out;
}

CoboundarySolution solve_pi_coboundary(const SmallRep &l, const Cochain &f, const Rational &margin) {
  const ContextPtr &ctx = l.ctx;
  const int d = l.dim();
  if (static_cast<int>(f.size()) != d) throw std::invalid_argument("solve_pi_coboundary: one component per variable");
  if (margin <= Rational(0)) throw HypothesisError("hypothesis check failure: margin must be positive");
  for (const auto &a : l.mats)
    if (!is_chart_matrix(a)) throw HypothesisError("hypothesis check failure: L is not defined over the chart");
  if (!valuation_at_least(rep_smallness(l), ctx->r() + margin))
    throw HypothesisError("hypothesis check failure: v(A_i - 1) = " + to_string(rep_smallness(l)) + " < " +
                          to_string(ctx->r() + margin));
  for (const auto &v : f)
    for (Eigen::Index k = 0; k < v.size(); ++k)
      for (const auto &[m, c] : v(k).terms())
        if (is_integral(ctx, m)) throw HypothesisError("hypothesis check failure: f has an integral monomial");

  const CycElt pi = CycElt::rho_k(ctx);
  Cochain target;
  for (const auto &v : f) {
    RowVec t(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) t(k) = pi * v(k).bind(ctx);
    target.push_back(std::move(t));
  }
  CoboundarySolution out;
  out.g = RowVec(l.rank);
  for (Eigen::Index k = 0; k < l.rank; ++k) out.g(k) = PerfLaurentElt(ctx);
  Cochain residual = target;
  Valuation v = cochain_valuation(residual);
  const int limit = ceil_div(ctx->precision(), margin) + 1;
  for (int step = 1; v; ++step) {
    if (step > limit) throw ContractionError("iteration bound exceeded", out.trace);
    RowVec delta(l.rank);
    for (Eigen::Index k = 0; k < l.rank; ++k) {
      std::vector<PerfLaurentElt> comps;
      for (const auto &r : residual) comps.push_back(r(k));
      delta(k) = solve_untwisted(ctx, comps);
    }
    out.g += delta;
    const Cochain dg = coboundary(l, out.g);
    for (int i = 0; i < d; ++i) residual[i] = target[i] - dg[i];
    const Valuation next = cochain_valuation(residual);
    out.trace.push_back({step, next, row_valuation(delta)});
    if (next && *next <= *v) throw ContractionError("residual valuation did not increase", out.trace);
    v = next;
  }
  return out;
}

std::vector<RingMat> conjugate(const ContextPtr &ctx, const std::vector<RingMat> &mats, const RingMat &u) {
  const RingMat inv = unipotent_inverse(ctx, u);
  std::vector<RingMat> out;
  for (int i = 0; i < static_cast<int>(mats.size()); ++i)
    out.push_back(ring_multiply(ring_multiply(gamma_matrix(i, 1, u), mats[i]), inv));
  return out;
}

DescentResult descend_cocycle(const ContextPtr &ctx, const std::vector<RingMat> &mats, const Rational &margin) {
  if (margin <= Rational(0)) throw HypothesisError("hypothesis check failure: margin must be positive");
  const int d = static_cast<int>(mats.size());
  const Eigen::Index l = mats.empty() ? 0 : mats.front().rows();
  Valuation small;
  for (const auto &a : mats) small = valuation_min(small, defect_valuation(a, ring_identity(ctx, l)));
  if (!valuation_at_least(small, ctx->r() + margin))
    throw HypothesisError("hypothesis check failure: v(f(gamma) - 1) = " + to_string(small) + " < 1/(Rc) = " +
                          to_string(ctx->r() + margin));
  Valuation comp = complement_valuation(mats);
  if (!valuation_at_least(comp, Rational(2) * ctx->r() + margin))
    throw HypothesisError("hypothesis check failure: v(complement) = " + to_string(comp) + " < 1/(Rc^2) = " +
                          to_string(Rational(2) * ctx->r() + margin));

  DescentResult out;
  out.mats = mats;
  out.conjugator = ring_identity(ctx, l);
  out.max_iterations = ceil_div(ctx->precision(), margin);
  for (int step = 1; comp; ++step) {
    if (step > out.max_iterations) throw ContractionError("iteration bound exceeded", out.trace);
    std::vector<RingMat> bar;
    for (const auto &a : out.mats) bar.push_back(complement_part(a));
    RingMat h(l, l);
    for (Eigen::Index r = 0; r < l; ++r)
      for (Eigen::Index c = 0; c < l; ++c) {
        std::vector<PerfLaurentElt> comps;
        for (const auto &b : bar) comps.push_back(-b(r, c));
        h(r, c) = solve_untwisted(ctx, comps);
      }
    const Valuation inc = matrix_valuation(h);
    h = h + ring_identity(ctx, l);
    out.mats = conjugate(ctx, out.mats, h);
    out.conjugator = ring_multiply(h, out.conjugator);
    for (int i = 0; i < d; ++i)
      if (has_overflow(out.mats[i])) throw Error("descent left the Laurent truncation box");
    const Valuation next = complement_valuation(out.mats);
    out.trace.push_back({step, next, inc});
    if (next && *next < *comp + margin)
      throw ContractionError("complement valuation " + to_string(next) + " after " + to_string(comp) +
                                 " gains less than the margin",
                             out.trace);
    comp = next;
  }
  return out;
}

Decompletion decomplete_rep(const SmallRep &m, const Rational &a) {
  const ContextPtr &ctx = m.ctx;
  if (a <= ctx->r()) throw HypothesisError("hypothesis check failure: a must exceed 1/(p-1)");
  auto res = descend_cocycle(ctx, m.mats, a - ctx->r());
  Decompletion out;
  out.chart = make_rep(ctx, Base::Chart, res.mats, a);
  out.conjugator = std::move(res.conjugator);
  out.trace = std::move(res.trace);
  out.max_iterations = res.max_iterations;
  return out;
}

SmallnessReport verify_smallness_upgrade(const SmallRep &m, const Rational &a) {
  const ContextPtr &ctx = m.ctx;
  const Rational bound = a + ctx->r();
  SmallnessReport out;
  out.smallness = rep_smallness(m);
  out.direct_check = valuation_at_least(out.smallness, bound);
  // H^0 of M / p^{a+r}: a column contributes a free summand iff its divisor vanishes mod p^{a+r}
  const FlatOperators fo = flatten_rep(m, Coefficients::plain());
  const Eigen::Index n = fo.module.rank();
  CycMat stacked = CycMat::Constant(n * m.dim(), n, CycElt(ctx, 0));
  for (int i = 0; i < m.dim(); ++i) stacked.middleRows(i * n, n) = fo.ops[i].to_dense(ctx);
  const SmithResult s = smith_normal_form(stacked, ctx);
  int small_divisors = 0;
  for (const auto &v : s.divisors)
    if (v && *v < bound) ++small_divisors;
  out.h0_free_rank = static_cast<int>(n) - small_divisors;
  out.expected_rank = m.rank * static_cast<int>(base_monomials(ctx, m.base).size());
  out.h0_free_rank_matches_l = out.h0_free_rank == out.expected_rank;
  return out;
}

RingMat random_unipotent(const ContextPtr &ctx, int rank, const Rational &v, int level, std::mt19937_64 &rng) {
  if (level < 0 || level > ctx->level()) throw std::invalid_argument("random_unipotent: level out of range");
  const Rational scaled = v * Rational(ctx->ram_index());
  const auto k = static_cast<std::uint64_t>((scaled.numerator() + scaled.denominator() - 1) / scaled.denominator());
  const CycElt scale = CycElt::pi(ctx).pow(k);
  const std::int64_t step = ctx->denominator() / ipow(ctx->p(), level);
  std::uniform_int_distribution<int> sign(0, 1);
  const CycMat coeffs = random_constant_matrix(ctx, rank, rank, rng);
  RingMat x(rank, rank);
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < rank; ++c) {
      Monomial alpha{0, 0, 0};
      for (int i = 0; i < ctx->dim(); ++i) alpha[i] = static_cast<std::int32_t>((sign(rng) ? step : -step));
      x(r, c) = PerfLaurentElt::monomial(ctx, alpha, coeffs(r, c) * scale);
    }
  return x + ring_identity(ctx, rank);
}

}  // namespace simpson
