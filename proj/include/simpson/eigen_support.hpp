#pragma once

#include "simpson/laurent.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<simpson::CycElt> : GenericNumTraits<simpson::CycElt> {
  using Real = simpson::CycElt;
  using NonInteger = simpson::CycElt;
  using Literal = simpson::CycElt;
  using Nested = simpson::CycElt;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 256
  };
  static inline int digits10() { return 0; }
};

template <class Tag>
struct NumTraits<simpson::Laurent<Tag>> : GenericNumTraits<simpson::Laurent<Tag>> {
  using Real = simpson::Laurent<Tag>;
  using NonInteger = simpson::Laurent<Tag>;
  using Literal = simpson::Laurent<Tag>;
  using Nested = simpson::Laurent<Tag>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 256,
    MulCost = 4096
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace simpson {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using CycMat = Mat<CycElt>;

/// Identity and zero matrices whose entries carry the given context.
template <class S>
Mat<S> identity_matrix(const ContextPtr &ctx, Eigen::Index n) {
  Mat<S> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = S(CycElt(ctx, i == j ? 1 : 0));
  return out;
}

template <class S>
Mat<S> zero_matrix(const ContextPtr &ctx, Eigen::Index rows, Eigen::Index cols) {
  Mat<S> out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = S(CycElt(ctx, 0));
  return out;
}

/// Product computed with plain loops; skips zero entries.
template <class S>
Mat<S> multiply(const Mat<S> &a, const Mat<S> &b) {
  Mat<S> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) = S(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class S>
bool matrices_equal(const Mat<S> &a, const Mat<S> &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

inline Valuation matrix_valuation(const CycMat &a) {
  Valuation v;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) v = valuation_min(v, a(i, j).valuation());
  return v;
}

template <class Tag>
Valuation matrix_valuation(const Mat<Laurent<Tag>> &a) {
  Valuation v;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v = valuation_min(v, gauss_valuation(a(i, j)));
  return v;
}

}  // namespace simpson
