#include "simpson/rep.hpp"

#include <map>

namespace simpson {

std::string base_name(Base b) { return b == Base::Chart ? "chart" : "perfectoid"; }

Base parse_base(const std::string &s) {
  if (s == "chart") return Base::Chart;
  if (s == "perfectoid") return Base::Perfectoid;
  throw std::invalid_argument("unknown base: " + s);
}

namespace {

void check_square_family(const ContextPtr &ctx, const std::vector<RingMat> &mats, int &rank) {
  if (static_cast<int>(mats.size()) != ctx->dim())
    throw ValidationError("expected " + std::to_string(ctx->dim()) + " matrices, got " +
                          std::to_string(mats.size()));
  rank = mats.empty() ? 0 : static_cast<int>(mats.front().rows());
  for (const auto &m : mats)
    if (m.rows() != rank || m.cols() != rank) throw ValidationError("matrices must be square of equal size");
}

}  // namespace

SmallRep make_rep(const ContextPtr &ctx, Base base, std::vector<RingMat> mats, const Rational &a) {
  SmallRep rep;
  rep.ctx = ctx;
  rep.base = base;
  rep.a = a;
  check_square_family(ctx, mats, rep.rank);
  if (a <= ctx->r()) throw ValidationError("smallness a must exceed 1/(p-1)");
  for (auto &m : mats) m = bind_matrix(ctx, m);
  if (base == Base::Chart)
    for (const auto &m : mats)
      if (!is_chart_matrix(m)) throw ValidationError("fractional exponent in a chart matrix");
  const Rational bound = a + ctx->r();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const Valuation v = defect_valuation(mats[i], ring_identity(ctx, rep.rank));
    if (v && *v < bound)
      throw ValidationError("not a-small: v(A_" + std::to_string(i + 1) + " - 1) = " + to_string(v) + " < " +
                            to_string(Valuation(bound)));
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      const RingMat lhs = ring_multiply(gamma_matrix(static_cast<int>(i), 1, mats[j]), mats[i]);
      const RingMat rhs = ring_multiply(gamma_matrix(static_cast<int>(j), 1, mats[i]), mats[j]);
      if (!ring_equal(lhs, rhs))
        throw ValidationError("cocycle violation at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
    }
  rep.mats = std::move(mats);
  return rep;
}

SmallRep trivial_rep(const ContextPtr &ctx, Base base, int rank, const Rational &a) {
  return make_rep(ctx, base, std::vector<RingMat>(ctx->dim(), ring_identity(ctx, rank)), a);
}

Valuation rep_smallness(const SmallRep &rep) {
  Valuation v;
  for (const auto &m : rep.mats) v = valuation_min(v, defect_valuation(m, ring_identity(rep.ctx, rep.rank)));
  return v;
}

namespace {

RowVec gamma_row(int i, std::int64_t k, const RowVec &v) {
  RowVec out = v;
  for (Eigen::Index j = 0; j < v.cols(); ++j) out(j) = gamma_act(i, k, v(j));
  return out;
}

RowVec row_times(const RowVec &v, const RingMat &m) {
  RingMat row(1, v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) row(0, j) = v(j);
  const RingMat r = ring_multiply(row, m);
  RowVec out(r.cols());
  for (Eigen::Index j = 0; j < r.cols(); ++j) out(j) = r(0, j);
  return out;
}

}  // namespace

RowVec act(const SmallRep &rep, const std::vector<std::int64_t> &g, const RowVec &v) {
  if (static_cast<int>(g.size()) != rep.dim()) throw std::invalid_argument("act: group element has wrong length");
  RowVec out = v;
  for (int i = 0; i < rep.dim(); ++i) {
    if (g[i] == 0) continue;
    if (g[i] > 0) {
      for (std::int64_t s = 0; s < g[i]; ++s) out = row_times(gamma_row(i, 1, out), rep.mats[i]);
    } else {
      const RingMat back = gamma_matrix(i, -1, unipotent_inverse(rep.ctx, rep.mats[i]));
      for (std::int64_t s = 0; s < -g[i]; ++s) out = row_times(gamma_row(i, -1, out), back);
    }
  }
  return out;
}

SmallRep base_change(const SmallRep &rep) {
  if (rep.base != Base::Chart) throw std::invalid_argument("base_change expects a chart representation");
  SmallRep out = rep;
  out.base = Base::Perfectoid;
  return out;
}

SmallRep tensor(const SmallRep &a, const SmallRep &b) {
  if (a.base != b.base || a.ctx != b.ctx) throw std::invalid_argument("tensor: representations live over different bases");
  std::vector<RingMat> mats;
  for (int i = 0; i < a.dim(); ++i) mats.push_back(kronecker(a.mats[i], b.mats[i]));
  return make_rep(a.ctx, a.base, std::move(mats), std::min(a.a, b.a));
}

SmallRep dual(const SmallRep &rep) {
  std::vector<RingMat> mats;
  for (const auto &m : rep.mats) mats.push_back(transpose(unipotent_inverse(rep.ctx, m)));
  return make_rep(rep.ctx, rep.base, std::move(mats), rep.a);
}

std::vector<Monomial> base_monomials(const ContextPtr &ctx, Base base) {
  const auto q = static_cast<std::int32_t>(ctx->denominator());
  const std::int32_t bound = ctx->laurent_bound() * q;
  const std::int32_t step = base == Base::Chart ? q : 1;
  std::vector<Monomial> out;
  Monomial m{0, 0, 0};
  const int d = ctx->dim();
  std::function<void(int)> rec = [&](int i) {
    if (i == d) {
      out.push_back(m);
      return;
    }
    for (std::int32_t x = -bound; x <= bound; x += step) {
      m[i] = x;
      rec(i + 1);
    }
    m[i] = 0;
  };
  rec(0);
  return out;
}

FlatOperators flatten_rep(const SmallRep &rep, const Coefficients &coeff) {
  const auto &ctx = rep.ctx;
  const int d = rep.dim();
  const int l = rep.rank;
  const auto q = ctx->denominator();
  const auto monos = base_monomials(ctx, rep.base);
  std::map<Monomial, Eigen::Index> mono_index;
  for (std::size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], static_cast<Eigen::Index>(i));
  const std::vector<YDegree> ydeg = coeff.rho ? y_degrees(d, ctx->y_bound()) : std::vector<YDegree>{YDegree{0, 0, 0}};
  std::map<YDegree, Eigen::Index> y_index;
  for (std::size_t i = 0; i < ydeg.size(); ++i) y_index.emplace(ydeg[i], static_cast<Eigen::Index>(i));
  const auto ny = static_cast<Eigen::Index>(ydeg.size());
  auto index = [&](Eigen::Index a, Eigen::Index y, int k) { return (a * ny + y) * l + k; };

  FlatOperators out;
  const Eigen::Index total = static_cast<Eigen::Index>(monos.size()) * ny * l;
  out.module.labels.resize(total);
  for (std::size_t a = 0; a < monos.size(); ++a)
    for (Eigen::Index y = 0; y < ny; ++y)
      for (int k = 0; k < l; ++k) {
        auto &lab = out.module.labels[index(static_cast<Eigen::Index>(a), y, k)];
        lab.name = "e" + std::to_string(k + 1) + "*T^(" + monomial_key(ctx, monos[a]) + ")";
        if (coeff.rho) {
          lab.name += "*Y^(";
          for (int i = 0; i < d; ++i) lab.name += (i ? "," : "") + std::to_string(ydeg[y][i]);
          lab.name += ")";
          lab.stable = total_degree(ydeg[y]) < ctx->y_bound();
        }
      }

  const CycElt rho = coeff.rho ? coeff.rho->elt : CycElt(ctx, 0);
  for (int i = 0; i < d; ++i) {
    SparseMat op(total, total);
    const RingMat &A = rep.mats[i];
    for (std::size_t a = 0; a < monos.size(); ++a) {
      const Monomial &alpha = monos[a];
      const std::int64_t t = ((alpha[i] % q) + q) % q;
      const CycElt z(ctx, ctx->zeta_table(t));
      for (Eigen::Index y = 0; y < ny; ++y) {
        const YDegree &n = ydeg[y];
        YDegree lower = n;
        lower[i] -= 1;
        for (int k = 0; k < l; ++k) {
          const Eigen::Index src = index(static_cast<Eigen::Index>(a), y, k);
          op.add(src, src, CycElt(ctx, -1));
          for (int j = 0; j < l; ++j)
            for (const auto &[beta, c] : A(k, j).terms()) {
              Monomial target{alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2]};
              auto it = mono_index.find(target);
              if (it == mono_index.end()) {
                out.module.labels[src].stable = false;
                continue;
              }
              const CycElt w = z * c;
              op.add(index(it->second, y, j), src, w);
              if (coeff.rho && n[i] > 0)
                op.add(index(it->second, y_index.at(lower), j), src, w * CycElt(ctx, n[i]) * rho);
            }
        }
      }
    }
    op.finalize();
    out.ops.push_back(std::move(op));
  }
  return out;
}

CohomologyReport group_cohomology(const SmallRep &rep, const Coefficients &coeff) {
  FlatOperators flat = flatten_rep(rep, coeff);
  const bool project = coeff.rho.has_value() && rep.dim() == 1;
  KoszulComplex k(rep.ctx, std::move(flat.module), std::move(flat.ops), project);
  return koszul_cohomology(k);
}

SmallRep direct_sum(const SmallRep &a, const SmallRep &b) {
  if (a.base != b.base || a.ctx != b.ctx) throw std::invalid_argument("direct_sum: representations live over different bases");
  std::vector<RingMat> mats;
  for (int i = 0; i < a.dim(); ++i) {
    RingMat m = ring_zero(a.ctx, a.rank + b.rank, a.rank + b.rank);
    m.topLeftCorner(a.rank, a.rank) = a.mats[i];
    m.bottomRightCorner(b.rank, b.rank) = b.mats[i];
    mats.push_back(std::move(m));
  }
  return make_rep(a.ctx, a.base, std::move(mats), std::min(a.a, b.a));
}

CycMat random_constant_matrix(const ContextPtr &ctx, int rows, int cols, std::mt19937_64 &rng) {
  const auto &ring = ctx->ring();
  std::uniform_int_distribution<std::int64_t> dist(0, ring.modulus() - 1);
  CycMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Coeffs c(ring.ram_index());
      for (auto &x : c) x = dist(rng);
      m(i, j) = CycElt(ctx, c);
    }
  return m;
}

std::vector<RingMat> random_commuting_family(const ContextPtr &ctx, int rank, const Rational &a,
                                             std::mt19937_64 &rng) {
  const int e = ctx->ring().ram_index();
  const Rational target = (a + ctx->r()) * Rational(e);
  const std::int64_t k = (target.numerator() + target.denominator() - 1) / target.denominator();
  const RingMat c = from_constants(ctx, random_constant_matrix(ctx, rank, rank, rng));
  const RingMat c2 = ring_multiply(c, c);
  const CycElt scale = CycElt::pi(ctx).pow(static_cast<std::uint64_t>(k));
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<RingMat> out;
  for (int i = 0; i < ctx->dim(); ++i) {
    const CycElt q0(ctx, coef(rng)), q1(ctx, coef(rng)), q2(ctx, coef(rng));
    RingMat th = scale_matrix(ring_identity(ctx, rank), q0) + scale_matrix(c, q1) + scale_matrix(c2, q2);
    out.push_back(scale_matrix(th, scale));
  }
  return out;
}

SmallRep random_rep(const ContextPtr &ctx, int rank, const Rational &a, std::mt19937_64 &rng) {
  std::vector<RingMat> mats;
  for (const auto &th : random_commuting_family(ctx, rank, a, rng)) mats.push_back(matrix_exp(ctx, -th).value);
  return make_rep(ctx, Base::Chart, std::move(mats), a);
}

}  // namespace simpson
