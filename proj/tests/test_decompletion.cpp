#include <doctest.h>

#include "simpson/decompletion.hpp"
#include "test_util.hpp"

using namespace simpson;

namespace {

ContextPtr ctx_d(int d) { return make_context(5, 2, 10, 2, 6, d, Rational(1, 2)); }

PerfLaurentElt mono(const ContextPtr &ctx, Monomial m, std::int64_t c) {
  return PerfLaurentElt::monomial(ctx, m, CycElt(ctx, c));
}

RowVec row(std::initializer_list<PerfLaurentElt> xs) {
  RowVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (const auto &x : xs) v(k++) = x;
  return v;
}

bool rows_equal(const RowVec &a, const RowVec &b) {
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (a(k) != b(k)) return false;
  return true;
}

bool monotone(const Trace &t) {
  for (std::size_t s = 1; s < t.size(); ++s)
    if (t[s].complement && (!t[s - 1].complement || *t[s].complement <= *t[s - 1].complement)) return false;
  return true;
}

}  // namespace

TEST_CASE("pi-coboundary solver") {
  SUBCASE("zero and a single eigenvalue") {
    auto ctx = ctx_d(1);
    auto l = trivial_rep(ctx, Base::Chart, 1, Rational(1, 2));
    auto zero = solve_pi_coboundary(l, {row({PerfLaurentElt(ctx)})}, Rational(1, 2));
    CHECK(zero.g(0).is_zero());
    CHECK(zero.trace.empty());
    // gamma(T^{1/5}) = zeta_5 T^{1/5}, so pi f is hit by f itself
    const PerfLaurentElt f = mono(ctx, {5, 0, 0}, 7);
    auto sol = solve_pi_coboundary(l, {row({f})}, Rational(1, 2));
    CHECK(sol.g(0) == f);
  }
  SUBCASE("random small twist") {
    std::mt19937_64 rng(3);
    for (int d = 1; d <= 2; ++d) {
      auto ctx = ctx_d(d);
      auto l = random_rep(ctx, 2, Rational(1, 2), rng);
      const RingMat u = random_unipotent(ctx, 2, Rational(0), 2, rng) - ring_identity(ctx, 2);
      RowVec seed(2);
      for (int k = 0; k < 2; ++k) seed(k) = split_integral(u(0, k)).second;
      const Cochain f = coboundary(l, seed);
      auto sol = solve_pi_coboundary(l, f, Rational(1, 2));
      const Cochain dg = coboundary(l, sol.g);
      for (int i = 0; i < d; ++i) {
        RowVec pf = f[i];
        for (Eigen::Index k = 0; k < pf.size(); ++k) pf(k) = CycElt::rho_k(ctx) * pf(k);
        CHECK(rows_equal(dg[i], pf));
      }
      Valuation vf, vg;
      for (const auto &v : f)
        for (Eigen::Index k = 0; k < v.size(); ++k) vf = valuation_min(vf, gauss_valuation(v(k)));
      for (Eigen::Index k = 0; k < sol.g.size(); ++k) vg = valuation_min(vg, gauss_valuation(sol.g(k)));
      CHECK((!vg || (vf && *vg >= *vf)));
      CHECK(monotone(sol.trace));
    }
  }
  SUBCASE("non-cocycle input stalls") {
    auto ctx = ctx_d(2);
    auto l = trivial_rep(ctx, Base::Chart, 1, Rational(1, 2));
    const Cochain f{row({mono(ctx, {5, 5, 0}, 1)}), row({PerfLaurentElt(ctx)})};
    CHECK_THROWS_AS(solve_pi_coboundary(l, f, Rational(1, 2)), ContractionError);
  }
  SUBCASE("hypotheses") {
    auto ctx = ctx_d(1);
    auto l = trivial_rep(ctx, Base::Chart, 1, Rational(1, 2));
    CHECK_THROWS_AS(solve_pi_coboundary(l, {row({mono(ctx, {25, 0, 0}, 1)})}, Rational(1, 2)), HypothesisError);
    CHECK_THROWS_AS(solve_pi_coboundary(l, {row({PerfLaurentElt(ctx)})}, Rational(0)), HypothesisError);
  }
}

TEST_CASE("descent") {
  SUBCASE("chart input is left alone") {
    auto ctx = ctx_d(2);
    std::mt19937_64 rng(5);
    auto m = random_rep(ctx, 2, Rational(1, 2), rng);
    auto res = descend_cocycle(ctx, m.mats, Rational(1, 4));
    CHECK(res.trace.empty());
    CHECK(ring_equal(res.conjugator, ring_identity(ctx, 2)));
    for (int i = 0; i < 2; ++i) CHECK(ring_equal(res.mats[i], m.mats[i]));
  }
  SUBCASE("seeded round trips") {
    std::mt19937_64 rng(11);
    for (int d = 1; d <= 2; ++d)
      for (int t = 0; t < 3; ++t) {
        auto ctx = ctx_d(d);
        auto m = random_rep(ctx, 2, Rational(1, 2), rng);
        // level-1 exponents need v(u - 1) >= 1 so nonzero powers of u - 1 stay within |alpha| <= D
        const int level = 1 + t % 2;
        const RingMat u = random_unipotent(ctx, 2, level == 1 ? Rational(1) : Rational(3, 4), level, rng);
        auto inf = make_rep(ctx, Base::Perfectoid, conjugate(ctx, m.mats, u), Rational(1, 2));
        REQUIRE(complement_valuation(inf.mats));
        auto dec = decomplete_rep(inf, Rational(1, 2));
        CHECK(!dec.trace.empty());
        CHECK(static_cast<int>(dec.trace.size()) <= dec.max_iterations);
        CHECK(monotone(dec.trace));
        CHECK(!complement_valuation(dec.chart.mats));
        const RingMat hu = ring_multiply(dec.conjugator, u);
        for (int i = 0; i < d; ++i) {
          CHECK(is_chart_matrix(dec.chart.mats[i]));
          CHECK(ring_equal(ring_multiply(gamma_matrix(i, 1, dec.conjugator), inf.mats[i]),
                           ring_multiply(dec.chart.mats[i], dec.conjugator)));
          CHECK(ring_equal(ring_multiply(gamma_matrix(i, 1, hu), m.mats[i]), ring_multiply(dec.chart.mats[i], hu)));
        }
        auto rep = verify_smallness_upgrade(dec.chart, Rational(1, 2));
        CHECK(rep.direct_check);
        CHECK(rep.h0_free_rank_matches_l);
      }
  }
  SUBCASE("negative control: complement too large") {
    auto ctx = ctx_d(1);
    std::mt19937_64 rng(2);
    auto m = random_rep(ctx, 2, Rational(1, 2), rng);
    const RingMat u = random_unipotent(ctx, 2, Rational(1, 2), 2, rng);
    CHECK_THROWS_AS(descend_cocycle(ctx, conjugate(ctx, m.mats, u), Rational(1, 4)), HypothesisError);
  }
}

TEST_CASE("smallness upgrade") {
  auto ctx = ctx_d(1);
  auto triv = verify_smallness_upgrade(trivial_rep(ctx, Base::Chart, 2, Rational(1, 2)), Rational(1, 2));
  CHECK(triv.direct_check);
  CHECK(triv.h0_free_rank_matches_l);
  CHECK(triv.h0_free_rank == 10);
  // v(A - 1) = a exactly: flagged
  SmallRep weak;
  weak.ctx = ctx;
  weak.rank = 1;
  RingMat a(1, 1);
  a(0, 0) = PerfLaurentElt(CycElt(ctx, 1) + CycElt::pi(ctx).pow(10));
  weak.mats = {a};
  auto rep = verify_smallness_upgrade(weak, Rational(1, 2));
  CHECK_FALSE(rep.direct_check);
  CHECK_FALSE(rep.h0_free_rank_matches_l);
}
