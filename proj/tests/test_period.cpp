#include <doctest.h>

#include "simpson/period.hpp"
#include "test_util.hpp"

#include <random>

using namespace simpson;

namespace {

ContextPtr ctx1() { return make_context(5, 2, 8, 2, 5, 1, Rational(1, 2)); }
ContextPtr ctx2() { return make_context(5, 1, 8, 1, 4, 2, Rational(1, 2)); }

PerfLaurentElt one(const ContextPtr &ctx) { return PerfLaurentElt(CycElt(ctx, 1)); }

PeriodElt random_period(const ContextPtr &ctx, const RhoValue &rho, std::mt19937_64 &rng) {
  PeriodElt x(ctx, rho);
  for (const auto &n : y_degrees(ctx->dim(), ctx->y_bound())) {
    Monomial m{static_cast<std::int32_t>(rng() % 3) - 1, 0, 0};
    m[0] *= static_cast<std::int32_t>(ctx->denominator() / ctx->p());
    x.add_term(n, PerfLaurentElt::monomial(ctx, m, CycElt(ctx, static_cast<std::int64_t>(rng() % 10000))));
  }
  return x;
}

}  // namespace

TEST_CASE("falling factorials") {
  CHECK(poly_equal(falling_factorial(0), IntPoly{1}));
  CHECK(poly_equal(falling_factorial(3), IntPoly{0, 2, -3, 1}));
  for (int n = 1; n <= 20; ++n)
    CHECK(poly_equal(poly_sub(poly_shift(falling_factorial(n), 1), falling_factorial(n)),
                     poly_scale(falling_factorial(n - 1), n)));
}

TEST_CASE("shift matrices X and Y are mutually inverse") {
  auto x3 = shift_matrix_x(3);
  auto y3 = shift_matrix_y(3);
  CHECK(poly_equal(x3[0][1], IntPoly{0, 1}));
  CHECK(poly_equal(x3[1][2], IntPoly{0, 2}));
  CHECK(poly_equal(y3[0][1], IntPoly{0, -1}));
  CHECK(poly_equal(y3[0][2], IntPoly{0, 0, 2}));
  CHECK(poly_equal(y3[1][2], IntPoly{0, -2}));
  for (int n : {1, 3, 16}) {
    CHECK(eps_is_identity(eps_multiply(shift_matrix_x(n), shift_matrix_y(n))));
    CHECK(eps_is_identity(eps_multiply(shift_matrix_y(n), shift_matrix_x(n))));
  }
}

TEST_CASE("basis conversion round trips") {
  auto ctx = ctx2();
  auto rho = RhoValue::rho_k(ctx);
  PeriodElt unit = PeriodElt::constant(ctx, rho, one(ctx));
  CHECK(basis_convert(unit, PeriodBasis::Falling).coefficient({0, 0, 0}) == one(ctx));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    auto x = random_period(ctx, rho, rng);
    auto f = basis_convert(x, PeriodBasis::Monomial);
    PeriodElt lat(ctx, rho, PeriodBasis::Falling);
    for (const auto &[n, c] : x.coeffs()) lat.add_term(n, c);
    auto mono = basis_convert(lat, PeriodBasis::Monomial);
    CHECK(basis_convert(mono, PeriodBasis::Falling) == lat);
    CHECK(in_lattice(mono));
    CHECK(f == x);
  }
  auto y = PeriodElt::y_monomial(ctx, rho, {1, 0, 0}, one(ctx));
  CHECK(!in_lattice(y));
}

TEST_CASE("gamma action on the period ring") {
  auto ctx = ctx2();
  auto rho = RhoValue::rho_k(ctx);
  auto y1 = PeriodElt::y_monomial(ctx, rho, {1, 0, 0}, one(ctx));
  auto y2 = PeriodElt::y_monomial(ctx, rho, {0, 1, 0}, one(ctx));
  CHECK(gamma_act_period(0, 1, y1) == y1 + PeriodElt::constant(ctx, rho, one(ctx)));
  CHECK(gamma_act_period(0, 1, y2) == y2);
  PeriodElt f(ctx, rho, PeriodBasis::Falling);
  f.add_term({1, 0, 0}, one(ctx));
  PeriodElt expect(ctx, rho, PeriodBasis::Falling);
  expect.add_term({1, 0, 0}, one(ctx));
  expect.add_term({0, 0, 0}, PerfLaurentElt(rho.elt));
  CHECK(gamma_act_period(0, 1, f) == expect);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 4; ++t) {
    PeriodElt lat(ctx, rho, PeriodBasis::Falling);
    const auto src = random_period(ctx, rho, rng);
    for (const auto &[n, c] : src.coeffs()) lat.add_term(n, c);
    auto img = gamma_act_period(1, 1, basis_convert(lat, PeriodBasis::Monomial));
    CHECK(in_lattice(img));
    auto x = random_period(ctx, rho, rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(partial_y(i, gamma_act_period(j, 1, x)) == gamma_act_period(j, 1, partial_y(i, x)));
    CHECK(partial_y(0, partial_y(1, x)) == partial_y(1, partial_y(0, x)));
  }
}

TEST_CASE("higgs field") {
  auto ctx = ctx2();
  auto rho = RhoValue::rho_k(ctx);
  auto sq = PeriodElt::y_monomial(ctx, rho, {2, 0, 0}, one(ctx));
  auto th = higgs_theta(sq);
  CHECK(th[0] == PeriodElt::y_monomial(ctx, rho, {1, 0, 0}, PerfLaurentElt(CycElt(ctx, 2))));
  CHECK(th[1].is_zero());
  CHECK(th[0].twist() == 1);
  CHECK(higgs_theta(PeriodElt::constant(ctx, rho, one(ctx)))[0].is_zero());
}

TEST_CASE("binomial power") {
  auto ctx = ctx1();
  auto rho = RhoValue::rho_k(ctx);
  CHECK(binomial_power(ctx, rho, CycElt(ctx, 0)) == PeriodElt::constant(ctx, rho, one(ctx)));
  CHECK_THROWS_WITH(binomial_power(ctx, rho, CycElt::rho_k(ctx)), "divergent exponent");
  const CycElt z(ctx, 5);
  auto b = binomial_power(ctx, rho, z);
  auto lhs = basis_convert(gamma_act_period(0, 1, b), PeriodBasis::Falling);
  auto rhs = b;
  rhs *= PerfLaurentElt(CycElt(ctx, 6));
  rhs = basis_convert(rhs, PeriodBasis::Falling);
  for (int k = 0; k < ctx->y_bound(); ++k)
    CHECK(lhs.coefficient({k, 0, 0}) == rhs.coefficient({k, 0, 0}));
}

TEST_CASE("log of gamma is the derivative") {
  auto ctx = ctx1();
  auto rho = RhoValue::rho_k(ctx);
  auto y1 = PeriodElt::y_monomial(ctx, rho, {1, 0, 0}, one(ctx));
  auto [a, b] = log_gamma_equals_ddY(0, y1);
  CHECK(a == b);
  CHECK(a == PeriodElt::constant(ctx, rho, one(ctx)));
  for (int k = 2; k <= 5; ++k) {
    auto [l, r] = log_gamma_equals_ddY(0, PeriodElt::y_monomial(ctx, rho, {k, 0, 0}, one(ctx)));
    CHECK(l == r);
  }
  auto bad = PeriodElt::y_monomial(ctx, rho, {1, 0, 0}, PerfLaurentElt::monomial(ctx, {5, 0, 0}, CycElt(ctx, 1)));
  CHECK_THROWS_WITH(log_gamma_equals_ddY(0, bad), "log series not nilpotent here");
}
