#include <doctest.h>

#include "simpson/simpson.hpp"
#include "test_util.hpp"

using namespace simpson;

namespace {

ContextPtr ctx_d(int d, int G = 6) { return make_context(5, 2, 10, 2, G, d, Rational(1, 2)); }

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

TEST_CASE("functor examples") {
  auto ctx = ctx_d(1);
  auto zero = zero_higgs(ctx, 2, Rational(1, 2));
  CHECK(ring_equal(higgs_to_rep(zero).mats[0], ring_identity(ctx, 2)));
  auto nil = make_higgs(ctx, {constant(ctx, {{0, 25}, {0, 0}})}, Rational(1, 2));
  auto m = higgs_to_rep(nil);
  CHECK(ring_equal(m.mats[0], constant(ctx, {{1, -25}, {0, 1}})));
  CHECK(ring_equal(rep_to_higgs(m).thetas[0], nil.thetas[0]));
  CHECK(ring_equal(rep_to_higgs(trivial_rep(ctx, Base::Chart, 2, Rational(1, 2))).thetas[0], ring_zero(ctx, 2, 2)));
  std::vector<TailBound> bounds;
  CHECK_THROWS_AS(higgs_to_rep(make_higgs(ctx, {constant(ctx, {{25}})}, Rational(1, 2)), &bounds, 3), PrecisionError);
}

TEST_CASE("round trip and functoriality on random instances") {
  auto ctx = ctx_d(2);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 5; ++t) {
    auto h = random_higgs(ctx, 2, Rational(1, 2), rng);
    auto rt = round_trip(h);
    CHECK((!rt.higgs_defect || *rt.higgs_defect >= Rational(8)));
    CHECK((!rt.rep_defect || *rt.rep_defect >= Rational(8)));
    auto m1 = higgs_to_rep(h);
    auto m2 = random_rep(ctx, 1, Rational(1, 2), rng);
    auto f = functoriality_check(m1, m2);
    CHECK((!f.tensor_defect || *f.tensor_defect >= Rational(8)));
    CHECK((!f.dual_defect || *f.dual_defect >= Rational(8)));
    CHECK((!f.log_sum_defect || *f.log_sum_defect >= Rational(8)));
  }
}

TEST_CASE("invariant basis, one variable") {
  auto ctx = ctx_d(1);
  const auto rho = RhoValue::rho_k(ctx);
  auto triv = invariant_basis(trivial_rep(ctx, Base::Chart, 2, Rational(1, 2)), rho);
  CHECK(period_defect(triv.basis, period_identity(ctx, rho, 2), 6) == Valuation());
  // l = 1: prod gamma^{-Y} from the binomial series of u^{-1}
  const CycElt u = CycElt(ctx, 1) + CycElt::pi(ctx).pow(15) * CycElt(ctx, 3);
  RingMat um(1, 1);
  um(0, 0) = PerfLaurentElt(u).bind(ctx);
  auto m = make_rep(ctx, Base::Chart, {um}, Rational(1, 2));
  auto ib = invariant_basis(m, rho);
  const PeriodElt bp = binomial_power(ctx, rho, u.inverse() - CycElt(ctx, 1), 0);
  PeriodMat from_bp;
  from_bp.ctx = ctx;
  from_bp.rho = rho;
  from_bp.rows = from_bp.cols = 1;
  const PeriodElt bpm = basis_convert(bp, PeriodBasis::Monomial);
  for (const auto &[n, c] : bpm.coeffs()) {
    RingMat x(1, 1);
    x(0, 0) = c.map_coefficients([&](const CycElt &v) { return v.exact_divide(rho.elt.pow(n[0])); });
    from_bp.terms.emplace(n, x);
  }
  const Valuation bp_defect = period_defect(ib.basis, from_bp, 6);
  CHECK((!bp_defect || *bp_defect >= Rational(ib.precision)));
  auto checks = check_invariant_basis(m, rho);
  CHECK(checks.inverse_defect == Valuation());
  CHECK((!checks.closed_inverse_defect || *checks.closed_inverse_defect >= Rational(ib.precision)));
  CHECK(checks.invariance_defect == Valuation());
  CHECK_THROWS_WITH(invariant_basis(m, RhoValue::make(CycElt::pi(ctx).pow(10))), "rho too large for smallness");
}

TEST_CASE("invariants: closed form against brute force") {
  SUBCASE("trivial, d = 1") {
    auto ctx = ctx_d(1);
    auto k = invariants_bruteforce(trivial_rep(ctx, Base::Chart, 1, Rational(1, 2)), RhoValue::rho_k(ctx), true);
    CHECK(k.free_rank == 5);
    REQUIRE(k.generators.size() == 5);
    for (const auto &g : k.generators) CHECK(g.size() == 1);
  }
  SUBCASE("random, d = 1 and d = 2") {
    std::mt19937_64 rng(9);
    for (int d = 1; d <= 2; ++d) {
      auto ctx = ctx_d(d);
      auto m = random_rep(ctx, 2, Rational(1, 2), rng);
      auto c = compare_invariants(m, RhoValue::rho_k(ctx));
      CHECK(c.contained);
      CHECK(c.closed_rank == c.kernel_free_rank);
      auto checks = check_invariant_basis(m, RhoValue::rho_k(ctx));
      MESSAGE("d=" << d << " prec " << checks.precision << " inv " << to_string(checks.inverse_defect) << " invar "
                   << to_string(checks.invariance_defect) << " deriv " << to_string(checks.derivative_defect)
                   << " closed " << to_string(checks.closed_inverse_defect));
      CHECK(checks.inverse_defect == Valuation());
      CHECK((!checks.closed_inverse_defect || *checks.closed_inverse_defect >= Rational(checks.precision)));
      CHECK((!checks.invariance_defect || *checks.invariance_defect >= Rational(checks.precision)));
    }
  }
}

TEST_CASE("horizontal sections") {
  auto ctx = ctx_d(1);
  const auto rho = RhoValue::rho_k(ctx);
  auto nil = make_higgs(ctx, {constant(ctx, {{0, 25}, {0, 0}})}, Rational(1, 2));
  auto s = horizontal_sections_closed(nil, rho);
  // I - p^2 N Y in lattice coordinates: coefficient of rho Y is -p^2 N / rho
  CHECK(s.terms.size() == 2);
  CHECK(ring_equal(scale_matrix(s.coefficient({1, 0, 0}), rho.elt), constant(ctx, {{0, -25}, {0, 0}})));
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 2; ++d) {
    auto c2 = ctx_d(d);
    auto h = random_higgs(c2, 2, Rational(1, 2), rng);
    auto c = compare_horizontal(h, RhoValue::rho_k(c2));
    CHECK(c.equal());
  }
}

TEST_CASE("cohomology comparison") {
  std::mt19937_64 rng(17);
  for (int d = 1; d <= 2; ++d) {
    auto ctx = ctx_d(d);
    auto cmp = cohomology_compare(random_rep(ctx, 2, Rational(1, 2), rng));
    CHECK(cmp.ranks_agree());
    CHECK(cmp.torsion_ok());
  }
}

TEST_CASE("round-trip defect sees perturbations") {
  auto ctx = ctx_d(1);
  std::mt19937_64 rng(8);
  auto h = random_higgs(ctx, 2, Rational(1, 2), rng);
  auto back = rep_to_higgs(higgs_to_rep(h));
  CHECK(!defect_valuation(back.thetas[0], h.thetas[0]));
  RingMat bumped = h.thetas[0];
  bumped(0, 1) += PerfLaurentElt(CycElt::pi(ctx).pow(150));
  CHECK(defect_valuation(back.thetas[0], bumped) == Valuation(Rational(15, 2)));
}
