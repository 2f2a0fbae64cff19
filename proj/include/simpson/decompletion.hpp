#pragma once

#include "simpson/rep.hpp"

namespace simpson {

/// Raised when the input does not meet the smallness hypotheses of the
/// descent; the message names the offending quantity.
class HypothesisError : public Error {
public:
  using Error::Error;
};

struct TraceStep {
  int step = 0;
  Valuation complement;  // smallest valuation of the non-integral part after the step
  Valuation increment;   // v(h_step - 1); for the coboundary solver, v of the correction
};
using Trace = std::vector<TraceStep>;

/// The iteration stopped improving. Carries the trace so far.
class ContractionError : public Error {
public:
  ContractionError(const std::string &what, Trace t) : Error("contraction failure: " + what), trace(std::move(t)) {}
  Trace trace;
};

/// Cochains with coefficients in complement x L: one row vector per variable.
using Cochain = std::vector<RowVec>;

struct CoboundarySolution {
  RowVec g;
  Trace trace;  // complement = v(residual) after each correction
};

/// g with gamma_i(g) A_i - g = pi f_i for all i, pi = zeta_p - 1, where L is
/// a chart representation with v(A_i - 1) >= 1/(p-1) + margin and f takes
/// values in the non-integral part. Exact at precision N.
CoboundarySolution solve_pi_coboundary(const SmallRep &l, const Cochain &f, const Rational &margin);

/// d g for a 0-cochain with the twisted action of L.
Cochain coboundary(const SmallRep &l, const RowVec &g);

struct DescentResult {
  std::vector<RingMat> mats;  // chart-valued
  RingMat conjugator;         // h with mats_i = gamma_i(h) A_i h^{-1}
  Trace trace;
  int max_iterations = 0;
};

/// Conjugates a cocycle over the perfectoid ring into one over the chart.
/// Hypotheses, with margin = log_p R: v(A_i - 1) >= 1/(p-1) + margin and the
/// non-integral part has v >= 2/(p-1) + margin. At most ceil(N / margin)
/// iterations.
DescentResult descend_cocycle(const ContextPtr &ctx, const std::vector<RingMat> &mats, const Rational &margin);

struct Decompletion {
  SmallRep chart;
  RingMat conjugator;
  Trace trace;
  int max_iterations = 0;
};

/// descend_cocycle with margin a - 1/(p-1); the output is validated as an
/// a-small chart representation.
Decompletion decomplete_rep(const SmallRep &m, const Rational &a);

struct SmallnessReport {
  bool direct_check = false;           // v(A_i - 1) >= a + 1/(p-1)
  bool h0_free_rank_matches_l = false; // H^0(M / p^{a+r}) free of rank l over R+/p^{a+r}
  Valuation smallness;
  int h0_free_rank = 0;
  int expected_rank = 0;
};
SmallnessReport verify_smallness_upgrade(const SmallRep &m, const Rational &a);

/// Non-integral part of every entry.
RingMat complement_part(const RingMat &a);
/// Smallest valuation of the non-integral parts.
Valuation complement_valuation(const std::vector<RingMat> &mats);

/// 1 + pi^k X with v(pi^k) >= v and X a random matrix of monomials c T^alpha,
/// alpha_i = +-1/p^level (level <= n), so every entry is non-integral. Small
/// exponents keep the products met by the descent inside the Laurent box.
RingMat random_unipotent(const ContextPtr &ctx, int rank, const Rational &v, int level, std::mt19937_64 &rng);

/// gamma_i(u) A_i u^{-1}.
std::vector<RingMat> conjugate(const ContextPtr &ctx, const std::vector<RingMat> &mats, const RingMat &u);

}  // namespace simpson
