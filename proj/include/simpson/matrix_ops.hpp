#pragma once

#include "simpson/eigen_support.hpp"
#include "simpson/series.hpp"

namespace simpson {

/// Square matrices over the truncated perfectoid ring; chart matrices are the
/// ones whose entries have integral exponents only.
using RingMat = Mat<PerfLaurentElt>;

RingMat ring_identity(const ContextPtr &ctx, Eigen::Index n);
RingMat ring_zero(const ContextPtr &ctx, Eigen::Index rows, Eigen::Index cols);
RingMat from_constants(const ContextPtr &ctx, const CycMat &m);
/// Entries bound to ctx (context-free integers adopt it).
RingMat bind_matrix(const ContextPtr &ctx, const RingMat &m);

RingMat ring_multiply(const RingMat &a, const RingMat &b);
RingMat scale_matrix(const RingMat &a, const CycElt &c);
RingMat transpose(const RingMat &a);
RingMat kronecker(const RingMat &a, const RingMat &b);
bool ring_equal(const RingMat &a, const RingMat &b);
bool is_chart_matrix(const RingMat &a);
bool has_overflow(const RingMat &a);

/// Valuation of a - b; nullopt when equal.
Valuation defect_valuation(const RingMat &a, const RingMat &b);

/// Entrywise gamma_i^k (i 0-based).
RingMat gamma_matrix(int i, std::int64_t k, const RingMat &a);

/// Coefficients reinterpreted in a context of different precision.
RingMat lift_matrix(const RingMat &a, const ContextPtr &target);
RingMat reduce_matrix(const RingMat &a, const ContextPtr &target);

struct MatrixSeries {
  RingMat value;
  TailBound bound;
};

/// exp(x) for v(x) > 1/(p-1), evaluated with guard digits and reduced mod p^N.
MatrixSeries matrix_exp(const ContextPtr &ctx, const RingMat &x);
/// log(a) = sum_{n>=1} (-1)^{n+1} (a - 1)^n / n for v(a - 1) > 0.
MatrixSeries matrix_log(const ContextPtr &ctx, const RingMat &a);
/// Inverse of a matrix congruent to the identity, by the Neumann series.
RingMat unipotent_inverse(const ContextPtr &ctx, const RingMat &a);

}  // namespace simpson
