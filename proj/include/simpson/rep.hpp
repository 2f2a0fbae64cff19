#pragma once

#include "simpson/koszul.hpp"
#include "simpson/matrix_ops.hpp"
#include "simpson/period.hpp"

#include <optional>
#include <random>

namespace simpson {

enum class Base { Chart, Perfectoid };
std::string base_name(Base b);
Base parse_base(const std::string &s);

/// Raised by make_rep / make_higgs; the message names the witness.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Semilinear action of Gamma = Z_p^d on row vectors:
/// gamma_i(v) = gamma_i(coordinates of v) * A_i.
struct SmallRep {
  ContextPtr ctx;
  Base base = Base::Chart;
  int rank = 0;
  std::vector<RingMat> mats;
  Rational a{1, 2};  // smallness certificate: v(A_i - 1) >= a + 1/(p-1)

  int dim() const { return static_cast<int>(mats.size()); }
};

/// Validates shape, base, smallness and the cocycle relation
/// gamma_i(A_j) A_i = gamma_j(A_i) A_j.
SmallRep make_rep(const ContextPtr &ctx, Base base, std::vector<RingMat> mats, const Rational &a);
SmallRep trivial_rep(const ContextPtr &ctx, Base base, int rank, const Rational &a);

/// Smallest v(A_i - 1).
Valuation rep_smallness(const SmallRep &rep);

using RowVec = Vec<PerfLaurentElt>;
/// gamma^g applied to v; g has one entry per variable, any sign.
RowVec act(const SmallRep &rep, const std::vector<std::int64_t> &g, const RowVec &v);

SmallRep base_change(const SmallRep &rep);
SmallRep tensor(const SmallRep &a, const SmallRep &b);
SmallRep dual(const SmallRep &rep);
/// Block-diagonal sum; certificate min(a1, a2).
SmallRep direct_sum(const SmallRep &a, const SmallRep &b);

/// Coefficients for group cohomology: the base ring alone, or the truncated
/// period lattice at rho.
struct Coefficients {
  std::optional<RhoValue> rho;
  static Coefficients plain() { return {}; }
  static Coefficients period(const RhoValue &r) { return {r}; }
};

/// Exponent numerators of the monomials spanning the truncated base ring.
std::vector<Monomial> base_monomials(const ContextPtr &ctx, Base base);

/// The operators act(e_i) - id on the flattened truncated module, as
/// matrices on column coordinate vectors.
struct FlatOperators {
  FlatModule module;
  std::vector<SparseMat> ops;
};
FlatOperators flatten_rep(const SmallRep &rep, const Coefficients &coeff);

CohomologyReport group_cohomology(const SmallRep &rep, const Coefficients &coeff);

/// A random commuting family theta_1..theta_d of constant l x l matrices with
/// v(theta_i) >= a + 1/(p-1): theta_i = pi^k q_i(C) for one random C.
std::vector<RingMat> random_commuting_family(const ContextPtr &ctx, int rank, const Rational &a,
                                             std::mt19937_64 &rng);
/// exp(-theta_i) for a random commuting family, over the chart.
SmallRep random_rep(const ContextPtr &ctx, int rank, const Rational &a, std::mt19937_64 &rng);

/// Random constant matrix with entries in O_{K_n}/p^N.
CycMat random_constant_matrix(const ContextPtr &ctx, int rows, int cols, std::mt19937_64 &rng);

}  // namespace simpson
