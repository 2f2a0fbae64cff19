#include <doctest.h>

#include "simpson/matrix_ops.hpp"
#include "test_util.hpp"

#include <boost/multiprecision/cpp_int.hpp>

using namespace simpson;

namespace {

ContextPtr ctx1() { return make_context(5, 2, 10, 2, 6, 1, Rational(1, 2)); }

RingMat constant(const ContextPtr &ctx, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  RingMat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto &r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = PerfLaurentElt(CycElt(ctx, v));
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("exp of a scalar against big-integer evaluation") {
  auto ctx = ctx1();
  // exp(-25) mod 5^10 as a rational series summed exactly.
  using boost::multiprecision::cpp_rational;
  using boost::multiprecision::cpp_int;
  cpp_rational sum = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    sum += term;
    term = term * cpp_rational(-25) / (k + 1);
  }
  const cpp_int mod = boost::multiprecision::pow(cpp_int(5), 10);
  const cpp_int num = numerator(sum), den = denominator(sum);
  cpp_int inv;
  {
    cpp_int a = den % mod, m = mod, x0 = 0, x1 = 1;
    while (a > 1) {
      cpp_int q = a / m, t = m;
      m = a % m, a = t;
      t = x0, x0 = x1 - q * x0, x1 = t;
    }
    inv = (x1 % mod + mod) % mod;
  }
  const cpp_int expected = ((num % mod + mod) % mod * inv) % mod;
  auto r = matrix_exp(ctx, constant(ctx, {{-25}}));
  CHECK(r.value(0, 0) == PerfLaurentElt(CycElt(ctx, static_cast<std::int64_t>(expected))).bind(ctx));
  CHECK(r.bound.cutoff > 1);
}

TEST_CASE("exp and log are inverse") {
  auto ctx = ctx1();
  const CycElt pi = CycElt::pi(ctx);
  RingMat x = constant(ctx, {{3, 1}, {7, -2}});
  x = scale_matrix(x, pi.pow(15));
  auto e = matrix_exp(ctx, x);
  auto l = matrix_log(ctx, e.value);
  CHECK(ring_equal(l.value, bind_matrix(ctx, x)));
  auto e2 = matrix_exp(ctx, l.value);
  CHECK(ring_equal(e2.value, e.value));
}

TEST_CASE("square-zero exponential") {
  auto ctx = ctx1();
  RingMat n = constant(ctx, {{0, 25}, {0, 0}});
  auto e = matrix_exp(ctx, -n);
  CHECK(ring_equal(e.value, ring_identity(ctx, 2) - bind_matrix(ctx, n)));
}

TEST_CASE("unipotent inverse and kronecker") {
  auto ctx = ctx1();
  RingMat a = ring_identity(ctx, 2) + scale_matrix(constant(ctx, {{1, 2}, {3, 4}}), CycElt::pi(ctx));
  RingMat inv = unipotent_inverse(ctx, a);
  CHECK(ring_equal(ring_multiply(a, inv), ring_identity(ctx, 2)));
  RingMat b = constant(ctx, {{2, 0}, {1, 1}});
  RingMat k = kronecker(a, b);
  CHECK(k.rows() == 4);
  CHECK(ring_equal(ring_multiply(kronecker(a, b), kronecker(inv, ring_identity(ctx, 2))),
                   kronecker(ring_identity(ctx, 2), b)));
  CHECK_THROWS_AS(unipotent_inverse(ctx, b), NonUnitError);
}

TEST_CASE("divergent exponential is rejected") {
  auto ctx = ctx1();
  RingMat x = scale_matrix(ring_identity(ctx, 1), CycElt::pi(ctx).pow(5));
  CHECK_THROWS_AS(matrix_exp(ctx, x), Error);
}
