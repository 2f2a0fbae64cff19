#include <doctest.h>

#include "simpson/higgs.hpp"
#include "test_util.hpp"

using namespace simpson;

namespace {

ContextPtr ctx_d(int d) { return make_context(5, 2, 10, 2, 6, d, Rational(1, 2)); }

RingMat constant(const ContextPtr &ctx, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  RingMat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto &r : rows) {
    Eigen::Index j = 0;
    for (auto v : r) m(i, j++) = PerfLaurentElt(CycElt(ctx, v)).bind(ctx);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("make_higgs validation") {
  auto ctx = ctx_d(2);
  CHECK_NOTHROW(zero_higgs(ctx, 2, Rational(1, 2)));
  const CycElt s = CycElt::pi(ctx).pow(15);
  RingMat t1 = scale_matrix(constant(ctx, {{0, 1}, {0, 0}}), s);
  RingMat t2 = scale_matrix(constant(ctx, {{0, 0}, {1, 0}}), s);
  CHECK_THROWS_WITH_AS(make_higgs(ctx, {t1, t2}, Rational(1, 2)), doctest::Contains("not flat"), ValidationError);
  RingMat weak = scale_matrix(constant(ctx, {{1, 0}, {0, 1}}), CycElt::pi(ctx).pow(14));
  CHECK_THROWS_WITH_AS(make_higgs(ctx, {weak, weak}, Rational(1, 2)), doctest::Contains("not a-small"),
                       ValidationError);
  auto ctx1 = ctx_d(1);
  CHECK_NOTHROW(make_higgs(ctx1, {scale_matrix(constant(ctx1, {{3}}), CycElt::pi(ctx1).pow(15))}, Rational(1, 2)));
}

TEST_CASE("Higgs cohomology examples") {
  SUBCASE("zero field") {
    auto ctx = ctx_d(2);
    auto rep = higgs_cohomology(zero_higgs(ctx, 2, Rational(1, 2)));
    CHECK(rep.at(0).free_rank == 2 * 1 * 25);
    CHECK(rep.at(1).free_rank == 2 * 2 * 25);
    CHECK(rep.at(2).free_rank == 2 * 1 * 25);
    CHECK(rep.at(1).twist == -1);
  }
  SUBCASE("theta = p^2") {
    auto ctx = ctx_d(1);
    auto rep = higgs_cohomology(make_higgs(ctx, {constant(ctx, {{25}})}, Rational(1, 2)));
    CHECK(rep.at(0).free_rank == 0);
    REQUIRE(rep.at(1).torsion.size() == 5);
    for (const auto &t : rep.at(1).torsion) CHECK(t == Rational(2));
  }
  SUBCASE("nilpotent Jordan block") {
    auto ctx = ctx_d(1);
    auto h = make_higgs(ctx, {constant(ctx, {{0, 25}, {0, 0}})}, Rational(1, 2));
    auto rep = higgs_cohomology(h);
    CHECK(rep.at(0).free_rank == 5);
    CHECK(rep.at(1).free_rank == 5);
    REQUIRE(rep.at(1).torsion.size() == 5);
    CHECK(rep.at(1).torsion.front() == Rational(2));
  }
}

TEST_CASE("degree-0 free rank is the simultaneous kernel") {
  auto ctx = ctx_d(2);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 3; ++trial) {
    auto h = random_higgs(ctx, 2, Rational(1, 2), rng);
    auto flat = flatten_higgs(h);
    CycMat stacked(flat.module.rank() * 2, flat.module.rank());
    const CycMat a = flat.ops[0].to_dense(ctx), b = flat.ops[1].to_dense(ctx);
    stacked << a, b;
    auto smith = smith_normal_form(stacked, ctx);
    CHECK(higgs_cohomology(h).at(0).free_rank == flat.module.rank() - smith.rank);
  }
}

TEST_CASE("Higgs tensor and dual") {
  auto ctx = ctx_d(2);
  std::mt19937_64 rng(8);
  auto h1 = random_higgs(ctx, 2, Rational(1, 2), rng);
  auto h2 = random_higgs(ctx, 1, Rational(3, 4), rng);
  auto dd = dual(dual(h1));
  for (int i = 0; i < 2; ++i) CHECK(ring_equal(dd.thetas[i], h1.thetas[i]));
  auto t0 = tensor(h1, zero_higgs(ctx, 1, Rational(1, 2)));
  for (int i = 0; i < 2; ++i) CHECK(ring_equal(t0.thetas[i], h1.thetas[i]));
  auto t = tensor(h1, h2);
  CHECK(t.a == Rational(1, 2));
  for (int i = 0; i < 2; ++i) {
    auto lhs = matrix_exp(ctx, -t.thetas[i]).value;
    auto rhs = kronecker(matrix_exp(ctx, -h1.thetas[i]).value, matrix_exp(ctx, -h2.thetas[i]).value);
    CHECK(ring_equal(lhs, rhs));
  }
}
