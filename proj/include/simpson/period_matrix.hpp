#pragma once

#include "simpson/matrix_ops.hpp"
#include "simpson/period.hpp"

#include <map>

namespace simpson {

/// Matrix over the truncated period lattice R<rho Y>. In the monomial basis
/// terms[n] multiplies (rho Y)^n, in the falling basis rho^{|n|} F_n(Y).
/// Total degree is cut at G. Both truncations are ring quotients, but not the
/// same one, so products are taken in the basis of the operands.
struct PeriodMat {
  ContextPtr ctx;
  RhoValue rho;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  PeriodBasis basis = PeriodBasis::Monomial;
  std::map<YDegree, RingMat> terms;

  RingMat coefficient(const YDegree &n) const;
};

PeriodMat period_identity(const ContextPtr &ctx, const RhoValue &rho, Eigen::Index n,
                          PeriodBasis basis = PeriodBasis::Monomial);
PeriodMat period_constant(const ContextPtr &ctx, const RhoValue &rho, const RingMat &m,
                          PeriodBasis basis = PeriodBasis::Monomial);
/// Same polynomial in the other basis; exact on degrees <= G.
PeriodMat change_basis(const PeriodMat &a, PeriodBasis target);
PeriodMat period_multiply(const PeriodMat &a, const PeriodMat &b);
/// Inverse of a matrix congruent to 1 modulo positive valuation, by the
/// Neumann series in the truncated ring of its basis.
PeriodMat period_inverse(const PeriodMat &a);
PeriodMat period_add(const PeriodMat &a, const PeriodMat &b);
PeriodMat left_multiply(const RingMat &m, const PeriodMat &a);
PeriodMat right_multiply(const PeriodMat &a, const RingMat &m);

/// gamma_i^k: Y_i -> Y_i + k, with the coefficient action on the perfectoid
/// ring. Acts on the polynomials of degree <= G; the basis is kept.
PeriodMat period_gamma(int i, std::int64_t k, const PeriodMat &a);
/// d/dY_i.
PeriodMat period_partial(int i, const PeriodMat &a);

/// sum_k c_k (rho Y_i)^k.
PeriodMat monomial_series(const ContextPtr &ctx, const RhoValue &rho, int i, const std::vector<RingMat> &c);
/// sum_k c_k rho^k F_k(Y_i).
PeriodMat falling_series(const ContextPtr &ctx, const RhoValue &rho, int i, const std::vector<RingMat> &c);

/// Coordinates in the basis rho^n F_n(Y).
std::map<YDegree, RingMat> falling_coordinates(const PeriodMat &a);

/// Valuation of a - b over all degrees with |n| <= max_degree, read in the
/// basis of a.
Valuation period_defect(const PeriodMat &a, const PeriodMat &b, int max_degree);

PeriodMat reduce_period(const PeriodMat &a, const ContextPtr &target);

CycElt from_bigint(const ContextPtr &ctx, const BigInt &x);

}  // namespace simpson
