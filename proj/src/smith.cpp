#include "simpson/smith.hpp"

#include <limits>

namespace simpson {

namespace {

constexpr std::int64_t kZero = std::numeric_limits<std::int64_t>::max();

struct Work {
  CycMat a;
  std::vector<std::vector<std::int64_t>> val;  // pi-valuations, kZero for zero
  int coercions = 0;

  void refresh(Eigen::Index i, Eigen::Index j) {
    const auto k = a(i, j).pi_valuation();
    val[i][j] = k ? *k : kZero;
  }
};

// x -= f * y, counting products that vanish.
void axpy(CycElt &x, const CycElt &f, const CycElt &y, int &coercions) {
  if (y.is_zero()) return;
  CycElt t = f * y;
  if (t.is_zero()) {
    ++coercions;
    return;
  }
  x -= t;
}

}  // namespace

SmithResult smith_normal_form(const CycMat &m, const ContextPtr &ctx, bool transforms) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Work w;
  w.a = m;
  w.val.assign(rows, std::vector<std::int64_t>(cols, kZero));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      w.a(i, j) = w.a(i, j).bind(ctx);
      w.refresh(i, j);
    }
  SmithResult res;
  if (transforms) {
    res.u = identity_matrix<CycElt>(ctx, rows);
    res.v = identity_matrix<CycElt>(ctx, cols);
  }
  const Eigen::Index steps = std::min(rows, cols);
  res.divisors.assign(steps, std::nullopt);

  for (Eigen::Index t = 0; t < steps; ++t) {
    Eigen::Index pi = -1, pj = -1;
    std::int64_t best = kZero;
    for (Eigen::Index i = t; i < rows && best > 0; ++i)
      for (Eigen::Index j = t; j < cols; ++j)
        if (w.val[i][j] < best) {
          best = w.val[i][j];
          pi = i;
          pj = j;
          if (best == 0) break;
        }
    if (pi < 0) break;
    if (pi != t) {
      w.a.row(t).swap(w.a.row(pi));
      std::swap(w.val[t], w.val[pi]);
      if (transforms) res.u.row(t).swap(res.u.row(pi));
    }
    if (pj != t) {
      w.a.col(t).swap(w.a.col(pj));
      for (auto &row : w.val) std::swap(row[t], row[pj]);
      if (transforms) res.v.col(t).swap(res.v.col(pj));
    }
    const CycElt pivot = w.a(t, t);
    const CycElt unit = pivot.divide_by_pi_power(best);
    const CycElt unit_inv = unit.inverse();

    // Clear column t below the pivot.
    for (Eigen::Index i = t + 1; i < rows; ++i) {
      if (w.a(i, t).is_zero()) continue;
      const CycElt f = w.a(i, t).divide_by_pi_power(best) * unit_inv;
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (w.a(t, j).is_zero()) continue;
        axpy(w.a(i, j), f, w.a(t, j), w.coercions);
        w.refresh(i, j);
      }
      w.a(i, t) = CycElt(ctx, 0);
      w.val[i][t] = kZero;
      if (transforms)
        for (Eigen::Index j = 0; j < rows; ++j) axpy(res.u(i, j), f, res.u(t, j), w.coercions);
    }
    // Clear row t right of the pivot; column t below is already zero.
    for (Eigen::Index j = t + 1; j < cols; ++j) {
      if (w.a(t, j).is_zero()) continue;
      const CycElt f = w.a(t, j).divide_by_pi_power(best) * unit_inv;
      if (transforms)
        for (Eigen::Index i = 0; i < cols; ++i) axpy(res.v(i, j), f, res.v(i, t), w.coercions);
      w.a(t, j) = CycElt(ctx, 0);
      w.val[t][j] = kZero;
    }
    if (transforms) {
      for (Eigen::Index j = 0; j < rows; ++j) res.u(t, j) *= unit_inv;
      w.a(t, t) = CycElt::pi(ctx).pow(static_cast<std::uint64_t>(best));
    }
    res.divisors[t] = Rational(best, ctx->ram_index());
    ++res.rank;
  }
  res.coercions = w.coercions;
  if (transforms) res.diagonal = w.a;
  return res;
}

}  // namespace simpson
