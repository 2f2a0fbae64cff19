#include <doctest.h>

#include "simpson/koszul.hpp"
#include "test_util.hpp"

#include <random>

using namespace simpson;

namespace {

ContextPtr ctx() { return make_context(5, 2, 4, 1, 3, 1, Rational(1, 2)); }

CycElt random_elt(const ContextPtr &c, std::mt19937_64 &rng, int min_pi = 0) {
  Coeffs v(c->ram_index());
  for (auto &x : v) x = static_cast<std::int64_t>(rng() % c->ring().modulus());
  return CycElt(c, v) * CycElt::pi(c).pow(min_pi);
}

CycMat random_matrix(const ContextPtr &c, std::mt19937_64 &rng, int r, int k) {
  CycMat m(r, k);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = random_elt(c, rng, static_cast<int>(rng() % 30));
  return m;
}

CycMat random_unimodular(const ContextPtr &c, std::mt19937_64 &rng, int n) {
  CycMat u = identity_matrix<CycElt>(c, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = random_elt(c, rng);
  CycMat l = identity_matrix<CycElt>(c, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) l(i, j) = random_elt(c, rng);
  return multiply(l, u);
}

std::vector<Rational> finite(const SmithResult &s) {
  std::vector<Rational> out;
  for (const auto &v : s.divisors)
    if (v) out.push_back(*v);
  return out;
}

}  // namespace

TEST_CASE("smith form basics") {
  auto c = ctx();
  auto id = identity_matrix<CycElt>(c, 3);
  auto s = smith_normal_form(id, c);
  CHECK(s.rank == 3);
  for (const auto &v : s.divisors) CHECK(*v == Rational(0));
  CycMat d = zero_matrix<CycElt>(c, 2, 2);
  d(0, 0) = CycElt(c, 5);
  d(1, 1) = CycElt::pi(c);
  auto sd = smith_normal_form(d, c);
  CHECK(*sd.divisors[0] == Rational(1, 20));
  CHECK(*sd.divisors[1] == Rational(1));
}

TEST_CASE("smith transforms reconstruct the diagonal") {
  auto c = ctx();
  std::mt19937_64 rng(17);
  for (int t = 0; t < 6; ++t) {
    const int r = 2 + static_cast<int>(rng() % 4), k = 2 + static_cast<int>(rng() % 4);
    CycMat m = random_matrix(c, rng, r, k);
    auto s = smith_normal_form(m, c, true);
    CHECK(matrices_equal(multiply(multiply(s.u, m), s.v), s.diagonal));
    for (std::size_t i = 1; i < s.divisors.size(); ++i)
      if (s.divisors[i]) CHECK(*s.divisors[i - 1] <= *s.divisors[i]);
    // invariance under scrambling
    CycMat scrambled = multiply(multiply(random_unimodular(c, rng, r), m), random_unimodular(c, rng, k));
    CHECK(finite(smith_normal_form(scrambled, c)) == finite(s));
  }
}

TEST_CASE("koszul complex of simple operators") {
  auto c = ctx();
  KoszulComplex zero(c, FlatModule::plain(3), std::vector<CycMat>{zero_matrix<CycElt>(c, 3, 3)});
  auto rz = koszul_cohomology(zero);
  CHECK(rz.at(0).free_rank == 3);
  CHECK(rz.at(1).free_rank == 3);
  CycMat pim(1, 1);
  pim(0, 0) = CycElt::pi(c);
  auto rp = koszul_cohomology(KoszulComplex(c, FlatModule::plain(1), std::vector<CycMat>{pim}));
  CHECK(rp.at(0).free_rank == 0);
  CHECK(rp.at(0).torsion.empty());
  CHECK(rp.at(1).free_rank == 0);
  REQUIRE(rp.at(1).torsion.size() == 1);
  CHECK(rp.at(1).torsion[0] == Rational(1, 20));
}

TEST_CASE("non-commuting operators are rejected") {
  auto c = ctx();
  CycMat a = zero_matrix<CycElt>(c, 2, 2), b = zero_matrix<CycElt>(c, 2, 2);
  a(0, 1) = CycElt(c, 1);
  b(1, 0) = CycElt(c, 1);
  CHECK_THROWS_WITH_AS(KoszulComplex(c, FlatModule::plain(2), std::vector<CycMat>{a, b}),
                       doctest::Contains("not a Koszul datum"), Error);
}

TEST_CASE("block splitting agrees with the dense computation") {
  auto c = ctx();
  std::mt19937_64 rng(23);
  const int n = 6;
  CycMat a = zero_matrix<CycElt>(c, n, n), b = zero_matrix<CycElt>(c, n, n);
  for (int blk = 0; blk < n; blk += 2) {
    CycElt x = random_elt(c, rng, 3), y = random_elt(c, rng, 5);
    a(blk, blk) = x;
    a(blk + 1, blk + 1) = x;
    a(blk, blk + 1) = CycElt(c, 5);
    b(blk, blk) = y;
    b(blk + 1, blk + 1) = y;
  }
  KoszulComplex k(c, FlatModule::plain(n), std::vector<CycMat>{a, b});
  auto split = koszul_cohomology(k);
  auto dense = koszul_cohomology_dense(k);
  CHECK(split.blocks == 3);
  for (int q = 0; q <= 2; ++q) {
    CHECK(split.at(q).free_rank == dense.at(q).free_rank);
    CHECK(split.at(q).torsion == dense.at(q).torsion);
  }
}

TEST_CASE("kunneth with a zero factor") {
  auto c = ctx();
  std::mt19937_64 rng(29);
  const int m = 2, n = 3;
  CycMat b = random_matrix(c, rng, n, n);
  auto kb = koszul_cohomology(KoszulComplex(c, FlatModule::plain(n), std::vector<CycMat>{b}));
  // K(0 on O^m) tensor K(b): operators 0 (x) I and I (x) b
  CycMat op1 = zero_matrix<CycElt>(c, m * n, m * n);
  CycMat op2 = zero_matrix<CycElt>(c, m * n, m * n);
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) op2(s * n + i, s * n + j) = b(i, j);
  auto kk = koszul_cohomology(KoszulComplex(c, FlatModule::plain(m * n), std::vector<CycMat>{op1, op2}));
  auto expect_free = [&](int q) {
    int f = 0;
    if (q <= 1) f += m * kb.at(q).free_rank;
    if (q >= 1) f += m * kb.at(q - 1).free_rank;
    return f;
  };
  for (int q = 0; q <= 2; ++q) CHECK(kk.at(q).free_rank == expect_free(q));
  CHECK(kk.at(2).torsion.size() == static_cast<std::size_t>(m) * kb.at(1).torsion.size());
}
