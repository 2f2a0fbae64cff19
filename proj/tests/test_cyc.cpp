#include <doctest.h>

#include "simpson/cyc.hpp"
#include "test_util.hpp"

using namespace simpson;

TEST_CASE("ramification and Eisenstein polynomial") {
  auto c3 = make_context(3, 1, 6, 1, 2, 1, Rational(1));
  CHECK(c3->ram_index() == 2);
  CHECK(c3->ring().eisenstein_integral() == std::vector<std::int64_t>{3, 3, 1});
  auto c5 = make_context(5, 2, 8, 1, 2, 1, Rational(1, 2));
  CHECK(c5->ram_index() == 20);
  CHECK_THROWS_WITH_AS(make_context(5, 1, 8, 1, 2, 1, Rational(1, 8)), "a * e must be an integer",
                       ContextError);
  CHECK_THROWS_AS(make_context(2, 1, 8, 1, 2, 1, Rational(2)), ContextError);
  CHECK_THROWS_AS(make_context(5, 1, 8, 1, 2, 1, Rational(1, 4)), ContextError);
}

TEST_CASE("pi squared for p = 3") {
  auto ctx = make_context(3, 1, 6, 1, 2, 1, Rational(1));
  CycElt pi = CycElt::pi(ctx);
  CHECK(pi * pi == CycElt(ctx, -3) * pi - CycElt(ctx, 3));
}

TEST_CASE("basic valuations") {
  for (int p : {3, 5, 7}) {
    auto ctx = make_context(p, 2, 5, 1, 2, 1, Rational(1));
    CHECK(*CycElt::rho_k(ctx).valuation() == Rational(1, p - 1));
    CHECK(*CycElt(ctx, p).valuation() == Rational(1));
    CHECK(*CycElt::pi(ctx).valuation() == Rational(1, ctx->ram_index()));
    CHECK(!CycElt(ctx, ipow(p, 5)).valuation());
  }
}

TEST_CASE("zeta powers are multiplicative") {
  auto ctx = make_context(5, 2, 6, 1, 2, 1, Rational(1, 2));
  for (int a = 0; a < 25; a += 3)
    for (int b = 0; b < 25; b += 4)
      CHECK(zeta_power(ctx, Rational(a, 25)) * zeta_power(ctx, Rational(b, 25)) ==
            zeta_power(ctx, Rational(a + b, 25)));
  CHECK(zeta_power(ctx, Rational(1, 5)).pow(5) == CycElt(ctx, 1));
  CHECK_THROWS_WITH(zeta_power(ctx, Rational(1, 125)), "insufficient tower level");
  CHECK_THROWS_WITH(epsilon_alpha(ctx, Rational(0)), "epsilon undefined at zero");
  CHECK(*epsilon_alpha(ctx, Rational(1, 25)).valuation() == Rational(1, 20));
}

TEST_CASE("exact division round trips") {
  auto ctx = make_context(5, 2, 6, 1, 2, 1, Rational(1, 2));
  CycElt pi = CycElt::pi(ctx);
  CycElt x = CycElt(ctx, 7) + CycElt(ctx, 3) * pi.pow(3);
  for (int j : {1, 5, 19, 20, 21, 47}) {
    CycElt y = x * pi.pow(j);
    CHECK(pi.pow(j) * y.divide_by_pi_power(j) == y);
  }
  CycElt d = CycElt(ctx, 25) * (CycElt(ctx, 1) + pi);
  CycElt num = d * x;
  CHECK(num.exact_divide(d) * d == num);
  CHECK(CycElt(ctx, 50).divide_by_integer(10) * CycElt(ctx, 10) == CycElt(ctx, 50));
  CHECK_THROWS_AS(pi.divide_by_pi_power(2), PrecisionError);
  CHECK_THROWS_AS(pi.inverse(), NonUnitError);
  CycElt u = CycElt(ctx, 2) + pi;
  CHECK(u * u.inverse() == CycElt(ctx, 1));
}

TEST_CASE("context-free integers bind on contact") {
  auto ctx = make_context(3, 1, 6, 1, 2, 1, Rational(1));
  CycElt one(1);
  CHECK(!one.has_context());
  CycElt s = one + CycElt::pi(ctx);
  CHECK(s.has_context());
  CHECK(CycElt(0) * CycElt::pi(ctx) == CycElt(ctx, 0));
}
