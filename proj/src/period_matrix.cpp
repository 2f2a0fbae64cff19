#include "simpson/period_matrix.hpp"

namespace simpson {

CycElt from_bigint(const ContextPtr &ctx, const BigInt &x) {
  const BigInt m = ctx->ring().modulus();
  BigInt r = x % m;
  if (r < 0) r += m;
  return CycElt(ctx, static_cast<std::int64_t>(r));
}

RingMat PeriodMat::coefficient(const YDegree &n) const {
  auto it = terms.find(n);
  return it == terms.end() ? ring_zero(ctx, rows, cols) : it->second;
}

namespace {

bool zero_mat(const RingMat &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

void accumulate(std::map<YDegree, RingMat> &terms, const YDegree &n, const RingMat &m) {
  auto it = terms.find(n);
  if (it == terms.end())
    terms.emplace(n, m);
  else
    it->second += m;
}

void accumulate(PeriodMat &out, const YDegree &n, const RingMat &m) {
  if (total_degree(n) > out.ctx->y_bound()) return;
  accumulate(out.terms, n, m);
}

void prune(std::map<YDegree, RingMat> &terms) {
  for (auto it = terms.begin(); it != terms.end();) it = zero_mat(it->second) ? terms.erase(it) : std::next(it);
}

PeriodMat empty_like(const PeriodMat &a, Eigen::Index rows, Eigen::Index cols) {
  PeriodMat out;
  out.ctx = a.ctx;
  out.rho = a.rho;
  out.rows = rows;
  out.cols = cols;
  out.basis = a.basis;
  return out;
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t factorial(int k) {
  std::int64_t r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

/// One-variable basis change applied to variable i: coefficient at degree k
/// goes to degree j with weight table[k][j] rho^{k-j}.
std::map<YDegree, RingMat> convert_variable(const PeriodMat &a, const std::map<YDegree, RingMat> &in, int i,
                                            const std::vector<std::vector<BigInt>> &table) {
  std::map<YDegree, RingMat> out;
  for (const auto &[n, x] : in)
    for (int j = 0; j <= n[i]; ++j) {
      const CycElt w = from_bigint(a.ctx, table[n[i]][j]) * a.rho.elt.pow(static_cast<std::uint64_t>(n[i] - j));
      if (w.is_zero()) continue;
      YDegree m = n;
      m[i] = j;
      accumulate(out, m, scale_matrix(x, w));
    }
  prune(out);
  return out;
}

}  // namespace

PeriodMat period_constant(const ContextPtr &ctx, const RhoValue &rho, const RingMat &m, PeriodBasis basis) {
  PeriodMat out;
  out.ctx = ctx;
  out.rho = rho;
  out.rows = m.rows();
  out.cols = m.cols();
  out.basis = basis;
  out.terms.emplace(YDegree{0, 0, 0}, bind_matrix(ctx, m));
  prune(out.terms);
  return out;
}

PeriodMat period_identity(const ContextPtr &ctx, const RhoValue &rho, Eigen::Index n, PeriodBasis basis) {
  return period_constant(ctx, rho, ring_identity(ctx, n), basis);
}

PeriodMat change_basis(const PeriodMat &a, PeriodBasis target) {
  if (a.basis == target) return a;
  const int g = a.ctx->y_bound();
  // rho^k F_k = sum s(k, j) rho^{k-j} (rho Y)^j; (rho Y)^k = sum S(k, j) rho^{k-j} rho^j F_j
  const auto table = target == PeriodBasis::Monomial ? stirling_first(g) : stirling_second(g);
  PeriodMat out = empty_like(a, a.rows, a.cols);
  out.basis = target;
  std::map<YDegree, RingMat> cur = a.terms;
  for (int i = 0; i < a.ctx->dim(); ++i) cur = convert_variable(a, cur, i, table);
  out.terms = std::move(cur);
  return out;
}

PeriodMat period_multiply(const PeriodMat &a, const PeriodMat &b) {
  if (a.basis != b.basis) throw std::invalid_argument("period_multiply: operands in different bases");
  PeriodMat out = empty_like(a, a.rows, b.cols);
  const int d = a.ctx->dim();
  for (const auto &[n, x] : a.terms)
    for (const auto &[m, y] : b.terms) {
      const RingMat xy = ring_multiply(x, y);
      if (a.basis == PeriodBasis::Monomial) {
        accumulate(out, {n[0] + m[0], n[1] + m[1], n[2] + m[2]}, xy);
        continue;
      }
      // rho^a F_a rho^b F_b = sum_k binom(a,k) binom(b,k) k! rho^k rho^{a+b-k} F_{a+b-k}
      std::vector<std::pair<YDegree, CycElt>> partial{{YDegree{0, 0, 0}, CycElt(a.ctx, 1)}};
      for (int i = 0; i < d; ++i) {
        std::vector<std::pair<YDegree, CycElt>> next;
        for (const auto &[deg, w] : partial)
          for (int k = 0; k <= std::min(n[i], m[i]); ++k) {
            YDegree t = deg;
            t[i] = n[i] + m[i] - k;
            const CycElt c = w * CycElt(a.ctx, binom(n[i], k) * binom(m[i], k) * factorial(k)) *
                             a.rho.elt.pow(static_cast<std::uint64_t>(k));
            if (!c.is_zero()) next.emplace_back(t, c);
          }
        partial = std::move(next);
      }
      for (const auto &[deg, w] : partial) accumulate(out, deg, scale_matrix(xy, w));
    }
  prune(out.terms);
  return out;
}

PeriodMat period_inverse(const PeriodMat &a) {
  const PeriodMat one = period_identity(a.ctx, a.rho, a.rows, a.basis);
  PeriodMat minus_n = a;
  for (auto &[n, x] : minus_n.terms) x = -x;
  minus_n = period_add(minus_n, one);  // 1 - a
  for (const auto &[n, x] : minus_n.terms)
    if (const Valuation v = matrix_valuation(x); v && *v <= Rational(0))
      throw NonUnitError(v);
  PeriodMat sum = one, term = one;
  const int limit = a.ctx->precision() * a.ctx->ring().ram_index() + 2;
  for (int k = 0; k < limit && !term.terms.empty(); ++k) {
    term = period_multiply(term, minus_n);
    sum = period_add(sum, term);
  }
  if (!term.terms.empty()) throw PrecisionError("period_inverse: Neumann series did not terminate");
  return sum;
}

PeriodMat period_add(const PeriodMat &a, const PeriodMat &b) {
  PeriodMat out = a;
  for (const auto &[n, y] : change_basis(b, a.basis).terms) accumulate(out, n, y);
  prune(out.terms);
  return out;
}

PeriodMat left_multiply(const RingMat &m, const PeriodMat &a) {
  PeriodMat out = empty_like(a, m.rows(), a.cols);
  for (const auto &[n, x] : a.terms) out.terms.emplace(n, ring_multiply(m, x));
  prune(out.terms);
  return out;
}

PeriodMat right_multiply(const PeriodMat &a, const RingMat &m) {
  PeriodMat out = empty_like(a, a.rows, m.cols());
  for (const auto &[n, x] : a.terms) out.terms.emplace(n, ring_multiply(x, m));
  prune(out.terms);
  return out;
}

PeriodMat period_gamma(int i, std::int64_t k, const PeriodMat &a) {
  // one step: rho^n F_n -> rho^n F_n + n rho rho^{n-1} F_{n-1}
  PeriodMat cur = change_basis(a, PeriodBasis::Falling);
  const std::int64_t steps = k < 0 ? -k : k;
  const int sign = k < 0 ? -1 : 1;
  for (std::int64_t s = 0; s < steps; ++s) {
    PeriodMat out = empty_like(cur, cur.rows, cur.cols);
    for (const auto &[n, x] : cur.terms) {
      const RingMat gx = gamma_matrix(i, sign, x);
      if (sign > 0) {
        accumulate(out, n, gx);
        if (n[i] > 0) {
          YDegree m = n;
          m[i] -= 1;
          accumulate(out, m, scale_matrix(gx, CycElt(a.ctx, n[i]) * a.rho.elt));
        }
      } else {
        // F_n(Y - 1) = sum_j (-1)^j n!/(n-j)! F_{n-j}(Y)
        CycElt w(a.ctx, 1);
        for (int j = 0; j <= n[i]; ++j) {
          YDegree m = n;
          m[i] -= j;
          accumulate(out, m, scale_matrix(gx, w));
          w = w * CycElt(a.ctx, -(n[i] - j)) * a.rho.elt;
        }
      }
    }
    prune(out.terms);
    cur = std::move(out);
  }
  return change_basis(cur, a.basis);
}

PeriodMat period_partial(int i, const PeriodMat &a) {
  const PeriodMat mono = change_basis(a, PeriodBasis::Monomial);
  PeriodMat out = empty_like(mono, a.rows, a.cols);
  for (const auto &[n, x] : mono.terms) {
    if (n[i] == 0) continue;
    YDegree m = n;
    m[i] -= 1;
    accumulate(out, m, scale_matrix(x, CycElt(a.ctx, n[i]) * a.rho.elt));
  }
  prune(out.terms);
  return change_basis(out, a.basis);
}

namespace {

PeriodMat single_variable(const ContextPtr &ctx, const RhoValue &rho, int i, const std::vector<RingMat> &c,
                          PeriodBasis basis) {
  PeriodMat out;
  out.ctx = ctx;
  out.rho = rho;
  out.rows = c.front().rows();
  out.cols = c.front().cols();
  out.basis = basis;
  for (std::size_t k = 0; k < c.size(); ++k) {
    YDegree n{0, 0, 0};
    n[i] = static_cast<int>(k);
    accumulate(out, n, bind_matrix(ctx, c[k]));
  }
  prune(out.terms);
  return out;
}

}  // namespace

PeriodMat monomial_series(const ContextPtr &ctx, const RhoValue &rho, int i, const std::vector<RingMat> &c) {
  return single_variable(ctx, rho, i, c, PeriodBasis::Monomial);
}

PeriodMat falling_series(const ContextPtr &ctx, const RhoValue &rho, int i, const std::vector<RingMat> &c) {
  return single_variable(ctx, rho, i, c, PeriodBasis::Falling);
}

std::map<YDegree, RingMat> falling_coordinates(const PeriodMat &a) {
  return change_basis(a, PeriodBasis::Falling).terms;
}

Valuation period_defect(const PeriodMat &a, const PeriodMat &b, int max_degree) {
  const PeriodMat bb = change_basis(b, a.basis);
  Valuation v;
  for (const auto &n : y_degrees(a.ctx->dim(), std::min(max_degree, a.ctx->y_bound())))
    v = valuation_min(v, defect_valuation(a.coefficient(n), bb.coefficient(n)));
  return v;
}

PeriodMat reduce_period(const PeriodMat &a, const ContextPtr &target) {
  PeriodMat out = empty_like(a, a.rows, a.cols);
  out.ctx = target;
  out.rho = RhoValue::make(a.rho.elt.reduce(target));
  for (const auto &[n, x] : a.terms) out.terms.emplace(n, reduce_matrix(x, target));
  prune(out.terms);
  return out;
}

}  // namespace simpson
