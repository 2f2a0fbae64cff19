#include "simpson/matrix_ops.hpp"

namespace simpson {

RingMat ring_identity(const ContextPtr &ctx, Eigen::Index n) { return identity_matrix<PerfLaurentElt>(ctx, n); }

RingMat ring_zero(const ContextPtr &ctx, Eigen::Index rows, Eigen::Index cols) {
  RingMat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = PerfLaurentElt(ctx);
  return out;
}

RingMat from_constants(const ContextPtr &ctx, const CycMat &m) {
  RingMat out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = PerfLaurentElt(m(i, j).bind(ctx)).bind(ctx);
  return out;
}

RingMat bind_matrix(const ContextPtr &ctx, const RingMat &m) {
  RingMat out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).bind(ctx);
  return out;
}

RingMat ring_multiply(const RingMat &a, const RingMat &b) { return multiply(a, b); }

RingMat scale_matrix(const RingMat &a, const CycElt &c) {
  RingMat out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) *= c;
  return out;
}

RingMat transpose(const RingMat &a) { return a.transpose(); }

RingMat kronecker(const RingMat &a, const RingMat &b) {
  RingMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

bool ring_equal(const RingMat &a, const RingMat &b) { return matrices_equal(a, b); }

bool is_chart_matrix(const RingMat &a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto &x = a(i, j);
      if (!x.context()) continue;
      for (const auto &[m, c] : x.terms())
        if (!is_integral(x.context(), m)) return false;
    }
  return true;
}

bool has_overflow(const RingMat &a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j).overflow()) return true;
  return false;
}

Valuation defect_valuation(const RingMat &a, const RingMat &b) {
  RingMat d = a - b;
  return matrix_valuation(d);
}

RingMat gamma_matrix(int i, std::int64_t k, const RingMat &a) {
  RingMat out = a;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out(r, c) = gamma_act(i, k, a(r, c));
  return out;
}

RingMat lift_matrix(const RingMat &a, const ContextPtr &target) {
  RingMat out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(i, j) = change_context(a(i, j), target, [&](const CycElt &c) { return c.lift(target); });
  return out;
}

RingMat reduce_matrix(const RingMat &a, const ContextPtr &target) {
  RingMat out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(i, j) = change_context(a(i, j), target, [&](const CycElt &c) { return c.reduce(target); });
  return out;
}

namespace {

RingMat divide_matrix(const RingMat &a, std::int64_t n) {
  RingMat out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out(i, j) = a(i, j).map_coefficients([&](const CycElt &c) { return c.divide_by_integer(n); });
  return out;
}

bool is_zero_matrix(const RingMat &a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

}  // namespace

MatrixSeries matrix_exp(const ContextPtr &ctx, const RingMat &x) {
  const Eigen::Index n = x.rows();
  const RingMat xb = bind_matrix(ctx, x);
  const Valuation v = matrix_valuation(xb);
  MatrixSeries out;
  if (!v) {
    out.value = ring_identity(ctx, n);
    out.bound.kind = SeriesKind::Exp;
    out.bound.guaranteed = Rational(ctx->precision());
    return out;
  }
  out.bound = exp_tail_bound(*v, ctx->precision(), ctx->p());
  const ContextPtr guard = ctx->with_precision(ctx->precision() + out.bound.guard);
  const RingMat xg = lift_matrix(xb, guard);
  RingMat term = ring_identity(guard, n);
  RingMat sum = term;
  for (int k = 1; k < out.bound.cutoff; ++k) {
    term = divide_matrix(ring_multiply(term, xg), k);
    if (is_zero_matrix(term)) break;
    sum += term;
  }
  out.value = reduce_matrix(sum, ctx);
  return out;
}

MatrixSeries matrix_log(const ContextPtr &ctx, const RingMat &a) {
  const Eigen::Index n = a.rows();
  const RingMat b = bind_matrix(ctx, a) - ring_identity(ctx, n);
  const Valuation v = matrix_valuation(b);
  MatrixSeries out;
  if (!v) {
    out.value = ring_zero(ctx, n, n);
    out.bound.kind = SeriesKind::Log;
    out.bound.guaranteed = Rational(ctx->precision());
    return out;
  }
  out.bound = log_tail_bound(*v, ctx->precision(), ctx->p());
  const ContextPtr guard = ctx->with_precision(ctx->precision() + out.bound.guard);
  const RingMat bg = lift_matrix(b, guard);
  RingMat power = bg;
  RingMat sum = ring_zero(guard, n, n);
  for (int k = 1; k < out.bound.cutoff; ++k) {
    if (is_zero_matrix(power)) break;
    const RingMat term = divide_matrix(power, k);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
    power = ring_multiply(power, bg);
  }
  out.value = reduce_matrix(sum, ctx);
  return out;
}

RingMat unipotent_inverse(const ContextPtr &ctx, const RingMat &a) {
  const Eigen::Index n = a.rows();
  const RingMat b = bind_matrix(ctx, a) - ring_identity(ctx, n);
  const Valuation v = matrix_valuation(b);
  if (v && *v <= Rational(0)) throw NonUnitError(v);
  RingMat sum = ring_identity(ctx, n);
  RingMat power = ring_identity(ctx, n);
  const RingMat minus_b = -b;
  while (true) {
    power = ring_multiply(power, minus_b);
    if (is_zero_matrix(power)) break;
    sum += power;
  }
  return sum;
}

}  // namespace simpson
