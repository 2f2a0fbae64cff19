#pragma once

#include "simpson/higgs.hpp"
#include "simpson/period_matrix.hpp"

namespace simpson {

/// A_i = exp(-theta_i). PrecisionError when a tail bound needs more than
/// max_terms terms.
SmallRep higgs_to_rep(const SmallHiggs &h, std::vector<TailBound> *bounds = nullptr, int max_terms = 4096);
/// theta_i = -log(A_i) for a chart representation.
SmallHiggs rep_to_higgs(const SmallRep &m, std::vector<TailBound> *bounds = nullptr, int max_terms = 4096);

/// Precision (in powers of p) at which closed forms are certified: a quotient
/// by n! rho^n is only determined modulo p^{N - v(n! rho^n)}, so two correct
/// constructions may differ there.
int certified_precision(const ContextPtr &ctx, const RhoValue &rho);

/// prod_i A_i^{-Y_i} = sum prod (-A_i^{-1} B_i)^{n_i} / n_i! F_{n_i}(Y_i):
/// row k is the invariant vector h_k. `inverse` is the exact inverse in the
/// truncated falling ring (Neumann series); `closed_inverse` is prod A_i^{Y_i},
/// equal to it at the certified precision.
struct InvariantBasis {
  PeriodMat basis;
  PeriodMat inverse;
  PeriodMat closed_inverse;
  int precision = 0;  // certified_precision
};
InvariantBasis invariant_basis(const SmallRep &m, const RhoValue &rho);

/// prod_i exp(-theta_i Y_i); row k is the horizontal section through e_k.
PeriodMat horizontal_sections_closed(const SmallHiggs &h, const RhoValue &rho);

/// Kernel of stacked operators restricted to the stable output rows.
struct KernelReport {
  Eigen::Index coordinates = 0;
  int free_rank = 0;
  std::vector<Rational> torsion;  // pi-adic exponents (as valuations) of torsion generators
  int blocks = 0;
  int precision = 0;
  /// Free generators as sparse column vectors (only when requested).
  std::vector<std::vector<std::pair<Eigen::Index, CycElt>>> generators;
};

/// Brute-force Gamma-invariants of M tensor R<rho Y> (operators act(e_i) x gamma_i - 1).
KernelReport invariants_bruteforce(const SmallRep &m, const RhoValue &rho, bool with_generators = false);
/// Brute-force kernel of Theta_H = theta tensor 1 + 1 tensor d/dY.
KernelReport horizontal_bruteforce(const SmallHiggs &h, const RhoValue &rho, bool with_generators = false);

/// Koszul cohomology of Theta_H on H tensor R<rho Y> (lattice coordinates).
CohomologyReport higgs_period_cohomology(const SmallHiggs &h, const RhoValue &rho);

/// Closed form versus brute force: containment is checked exactly, equality
/// through the free rank (the closed-form span is saturated).
struct SpanCheck {
  bool contained = false;
  int closed_rank = 0;
  int kernel_free_rank = 0;
  int precision = 0;
  bool equal() const { return contained && closed_rank == kernel_free_rank; }
};
SpanCheck compare_invariants(const SmallRep &m, const RhoValue &rho);
SpanCheck compare_horizontal(const SmallHiggs &h, const RhoValue &rho);

/// Gamma acting on the horizontal sections: gamma_i(S) = A'_i S on stable
/// degrees; reports v(A'_i - exp(-theta_i)) and the stable defect.
struct SectionAction {
  Valuation matrix_defect;
  Valuation stable_defect;
};
SectionAction section_action(const SmallHiggs &h, const RhoValue &rho);

/// v(P Q - 1), v(Q - closed form), v(d/dY_j P - P theta_j) and
/// v(gamma_j(P) A_j - P) on stable degrees.
struct BasisChecks {
  Valuation inverse_defect;
  Valuation closed_inverse_defect;
  Valuation derivative_defect;
  Valuation invariance_defect;
  int precision = 0;
};
BasisChecks check_invariant_basis(const SmallRep &m, const RhoValue &rho);

struct DegreeComparison {
  int q = 0;
  int rep_free = 0;
  int higgs_free = 0;
  std::vector<Rational> mismatch;  // torsion present on one side only
  bool torsion_bound_ok = false;
};
struct CohomologyComparison {
  std::vector<DegreeComparison> degrees;
  bool ranks_agree() const;
  bool torsion_ok() const;
};
/// Group cohomology of the base change against Higgs cohomology of
/// rep_to_higgs(M); mismatched torsion must have valuation <= 1/(p-1).
CohomologyComparison cohomology_compare(const SmallRep &m);

struct FunctorialityReport {
  Valuation tensor_defect;  // rep_to_higgs(M1 x M2) against the tensor of the Higgs modules
  Valuation dual_defect;
  Valuation log_sum_defect;  // log(A x B) against log A x 1 + 1 x log B
};
FunctorialityReport functoriality_check(const SmallRep &m1, const SmallRep &m2);

struct RoundTrip {
  Valuation higgs_defect;  // rep_to_higgs(higgs_to_rep(H)) - H
  Valuation rep_defect;    // higgs_to_rep(rep_to_higgs(M)) - M
};
RoundTrip round_trip(const SmallHiggs &h);

SmallRep reduce_rep(const SmallRep &m, const ContextPtr &target);
SmallHiggs reduce_higgs(const SmallHiggs &h, const ContextPtr &target);

}  // namespace simpson
