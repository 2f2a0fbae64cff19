#include <doctest.h>

#include "simpson/laurent.hpp"
#include "test_util.hpp"

#include <random>

using namespace simpson;

namespace {

ContextPtr ctx2() { return make_context(5, 2, 6, 2, 3, 2, Rational(1, 2)); }

PerfLaurentElt random_perf(const ContextPtr &ctx, std::mt19937_64 &rng, int terms) {
  PerfLaurentElt x(ctx);
  const auto q = static_cast<std::int32_t>(ctx->denominator());
  for (int t = 0; t < terms; ++t) {
    Monomial m{static_cast<std::int32_t>(rng() % (2 * q + 1)) - q,
               static_cast<std::int32_t>(rng() % (2 * q + 1)) - q, 0};
    x += PerfLaurentElt::monomial(ctx, m, CycElt(ctx, static_cast<std::int64_t>(rng() % 1000)));
  }
  return x;
}

}  // namespace

TEST_CASE("gamma action on monomials") {
  auto ctx = ctx2();
  const std::int32_t q = 25;
  auto t1 = PerfLaurentElt::monomial(ctx, {q / 5, 0, 0}, CycElt(ctx, 1));
  auto t2 = PerfLaurentElt::monomial(ctx, {0, q / 5, 0}, CycElt(ctx, 1));
  CHECK(gamma_act(0, 1, t1) == zeta_power(ctx, Rational(1, 5)) * t1);
  CHECK(gamma_act(0, 1, t2) == t2);
  std::mt19937_64 rng(7);
  auto x = random_perf(ctx, rng, 12);
  CHECK(gamma_act(0, 25, x) == x);
  CHECK(gamma_act(1, -3, gamma_act(1, 3, x)) == x);
}

TEST_CASE("gauss valuation") {
  auto ctx = ctx2();
  auto T1 = LaurentElt::integral_monomial(ctx, {1, 0, 0}, CycElt(ctx, 1));
  auto T2 = LaurentElt::integral_monomial(ctx, {0, 1, 0}, CycElt(ctx, 1));
  CHECK(*gauss_valuation(T1 + CycElt(ctx, 5) * T2) == Rational(0));
  CHECK(*gauss_valuation(LaurentElt::integral_monomial(ctx, {1, -1, 0}, CycElt(ctx, 25))) == Rational(2));
  auto x = PerfLaurentElt::monomial(ctx, {5, 0, 0}, CycElt::rho_k(ctx));
  CHECK(*gauss_valuation(x) == Rational(1, 4));
  CHECK(!gauss_valuation(PerfLaurentElt(ctx)));
}

TEST_CASE("integral splitting") {
  auto ctx = ctx2();
  auto a = PerfLaurentElt::monomial(ctx, {25, 0, 0}, CycElt(ctx, 1));
  auto b = PerfLaurentElt::monomial(ctx, {5, 0, 0}, CycElt(ctx, 1));
  auto [fixed, rest] = split_integral(a + b);
  CHECK(to_perf(fixed) == a);
  CHECK(rest == b);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_perf(ctx, rng, 10);
    auto [f, r] = split_integral(x);
    CHECK(to_perf(f) + r == x);
    CHECK(valuation_at_least(gauss_valuation(f), gauss_valuation(x).value_or(Rational(99))));
    auto [gf, gr] = split_integral(gamma_act(0, 1, x));
    CHECK(to_perf(gf) == to_perf(f));
    CHECK(gr == gamma_act(0, 1, r));
  }
}

TEST_CASE("solving gamma shifts") {
  auto ctx = ctx2();
  auto y = PerfLaurentElt::monomial(ctx, {5, 0, 0}, CycElt::rho_k(ctx));
  auto g = solve_gamma_shift(0, y);
  CHECK(gamma_act(0, 1, g) - g == y);
  CHECK(*gauss_valuation(g) == Rational(0));
  CHECK_THROWS_WITH(solve_gamma_shift(0, PerfLaurentElt::monomial(ctx, {0, 5, 0}, CycElt(ctx, 1))),
                    "not in complement");
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto [f, r] = split_integral(random_perf(ctx, rng, 8));
    PerfLaurentElt comp(ctx);
    for (const auto &[m, c] : r.terms())
      if (m[0] % 25 != 0) comp += PerfLaurentElt::monomial(ctx, m, c);
    comp *= CycElt::rho_k(ctx);
    auto h = solve_gamma_shift(0, comp);
    CHECK(gamma_act(0, 1, h) - h == comp);
    if (!comp.is_zero())
      CHECK(*gauss_valuation(h) >= *gauss_valuation(comp) - ctx->r());
  }
}

TEST_CASE("multiplication truncates and flags overflow") {
  auto ctx = ctx2();
  auto T = LaurentElt::integral_monomial(ctx, {2, 0, 0}, CycElt(ctx, 1));
  auto sq = T * T;
  CHECK(sq.is_zero());
  CHECK(sq.overflow());
  auto u = LaurentElt(1) + T;
  CHECK(!u.overflow());
  CHECK(u.context() == ctx);
}

TEST_CASE("monomial keys") {
  auto ctx = ctx2();
  Monomial m{5, -50, 0};
  CHECK(monomial_key(ctx, m) == "1/5,-2/1");
  CHECK(parse_monomial_key(ctx, "1/5,-2/1") == m);
}
