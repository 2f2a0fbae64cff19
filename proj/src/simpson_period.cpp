#include "simpson/simpson.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace simpson {

namespace {

RingMat divide_entries(const RingMat &x, const CycElt &d) {
  RingMat out = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out(i, j) = x(i, j).map_coefficients([&](const CycElt &c) { return c.exact_divide(d); });
  return out;
}

/// c_0 = 1, c_{k+1} = c_k m / ((k + 1) rho), for k < G.
std::vector<RingMat> divided_powers(const ContextPtr &ctx, const RingMat &m, const RhoValue &rho) {
  std::vector<RingMat> c{ring_identity(ctx, m.rows())};
  for (int k = 0; k < ctx->y_bound(); ++k)
    c.push_back(divide_entries(ring_multiply(c.back(), m), CycElt(ctx, k + 1) * rho.elt));
  return c;
}

RhoValue rho_in(const RhoValue &rho, const ContextPtr &ctx) { return RhoValue::make(rho.elt.reduce(ctx)); }

using SparseVec = std::vector<std::pair<Eigen::Index, CycElt>>;

struct Layout {
  std::vector<Monomial> monos;
  std::map<Monomial, Eigen::Index> mono_index;
  std::vector<YDegree> ydeg;
  std::map<YDegree, Eigen::Index> y_index;
  int rank = 0;

  Layout(const ContextPtr &ctx, Base base, int l) : monos(base_monomials(ctx, base)), ydeg(y_degrees(ctx->dim(), ctx->y_bound())), rank(l) {
    for (std::size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], static_cast<Eigen::Index>(i));
    for (std::size_t i = 0; i < ydeg.size(); ++i) y_index.emplace(ydeg[i], static_cast<Eigen::Index>(i));
  }
  Eigen::Index ny() const { return static_cast<Eigen::Index>(ydeg.size()); }
  Eigen::Index index(Eigen::Index a, Eigen::Index y, int k) const { return (a * ny() + y) * rank + k; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(monos.size()) * ny() * rank; }
};

/// Rows of T^alpha * P for every base monomial alpha, flattened. P given by
/// its coordinates in the same Y-basis the operators use.
std::vector<SparseVec> flatten_rows(const Layout &lay, const std::map<YDegree, RingMat> &coords, int rows) {
  std::vector<SparseVec> out;
  for (std::size_t a = 0; a < lay.monos.size(); ++a) {
    const Monomial &alpha = lay.monos[a];
    for (int k = 0; k < rows; ++k) {
      std::map<Eigen::Index, CycElt> acc;
      for (const auto &[n, m] : coords) {
        const Eigen::Index y = lay.y_index.at(n);
        for (int j = 0; j < lay.rank; ++j)
          for (const auto &[beta, c] : m(k, j).terms()) {
            auto it = lay.mono_index.find({alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2]});
            if (it == lay.mono_index.end()) throw PrecisionError("closed form leaves the Laurent box");
            auto [pos, fresh] = acc.emplace(lay.index(it->second, y, j), c);
            if (!fresh) pos->second += c;
          }
      }
      SparseVec v;
      for (auto &[i, c] : acc)
        if (!c.is_zero()) v.emplace_back(i, c);
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// Every operator maps every vector to zero on the stable coordinates.
bool annihilated(const FlatOperators &flat, const std::vector<SparseVec> &vectors) {
  for (const auto &op : flat.ops)
    for (const auto &x : vectors) {
      std::map<Eigen::Index, CycElt> acc;
      for (const auto &[j, xv] : x)
        for (const auto &[i, v] : op.columns[j]) {
          auto [pos, fresh] = acc.emplace(i, v * xv);
          if (!fresh) pos->second += v * xv;
        }
      for (const auto &[i, v] : acc)
        if (flat.module.labels[i].stable && !v.is_zero()) return false;
    }
  return true;
}

struct UnionFind {
  std::vector<Eigen::Index> parent;
  explicit UnionFind(Eigen::Index n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Eigen::Index find(Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct BlockKernel {
  int free_rank = 0;
  std::vector<Rational> torsion;
  std::vector<SparseVec> generators;  // local indices
};

KernelReport stacked_kernel(const ContextPtr &ctx, const FlatOperators &flat, bool with_generators) {
  const Eigen::Index n = flat.module.rank();
  UnionFind uf(n);
  for (const auto &op : flat.ops)
    for (Eigen::Index j = 0; j < op.cols; ++j)
      for (const auto &[i, v] : op.columns[j]) uf.unite(i, j);
  std::map<Eigen::Index, std::vector<Eigen::Index>> comps;
  for (Eigen::Index i = 0; i < n; ++i) comps[uf.find(i)].push_back(i);

  KernelReport out;
  out.coordinates = n;
  out.precision = ctx->precision();
  std::map<std::string, BlockKernel> cache;
  for (const auto &[root, coords] : comps) {
    std::map<Eigen::Index, Eigen::Index> local;
    for (auto c : coords) local.emplace(c, static_cast<Eigen::Index>(local.size()));
    std::vector<Eigen::Index> stable_rows;
    for (auto c : coords)
      if (flat.module.labels[c].stable) stable_rows.push_back(c);
    std::map<Eigen::Index, Eigen::Index> row_local;
    for (auto r : stable_rows) row_local.emplace(r, static_cast<Eigen::Index>(row_local.size()));

    std::ostringstream key;
    key << coords.size() << '|';
    for (auto c : coords) key << (flat.module.labels[c].stable ? 's' : 'b');
    const auto nrows = static_cast<Eigen::Index>(stable_rows.size() * flat.ops.size());
    CycMat m = zero_matrix<CycElt>(ctx, nrows, static_cast<Eigen::Index>(coords.size()));
    for (std::size_t o = 0; o < flat.ops.size(); ++o) {
      key << '#';
      for (auto c : coords) {
        key << ';';
        for (const auto &[i, v] : flat.ops[o].columns[c]) {
          auto it = row_local.find(i);
          if (it == row_local.end()) continue;
          m(static_cast<Eigen::Index>(o) * static_cast<Eigen::Index>(stable_rows.size()) + it->second, local[c]) = v;
          key << it->second << ':';
          for (auto x : v.coefficients()) key << x << ',';
        }
      }
    }
    auto it = cache.find(key.str());
    if (it == cache.end()) {
      BlockKernel bk;
      const SmithResult s = smith_normal_form(m, ctx, with_generators);
      bk.free_rank = static_cast<int>(m.cols()) - s.rank;
      for (const auto &d : s.divisors)
        if (d && *d > Rational(0)) bk.torsion.push_back(*d);
      if (with_generators)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          const bool free = j >= static_cast<Eigen::Index>(s.divisors.size()) || !s.divisors[j];
          if (!free) continue;
          SparseVec g;
          for (Eigen::Index i = 0; i < m.cols(); ++i)
            if (!s.v(i, j).is_zero()) g.emplace_back(i, s.v(i, j));
          bk.generators.push_back(std::move(g));
        }
      it = cache.emplace(key.str(), std::move(bk)).first;
    }
    out.free_rank += it->second.free_rank;
    out.torsion.insert(out.torsion.end(), it->second.torsion.begin(), it->second.torsion.end());
    for (const auto &g : it->second.generators) {
      SparseVec global;
      for (const auto &[i, v] : g) global.emplace_back(coords[i], v);
      out.generators.push_back(std::move(global));
    }
    ++out.blocks;
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

/// Theta_H on H tensor R<rho Y> in lattice coordinates (rho Y)^n.
FlatOperators flatten_higgs_period(const SmallHiggs &h, const RhoValue &rho) {
  const auto &ctx = h.ctx;
  const Layout lay(ctx, Base::Chart, h.rank);
  FlatOperators out;
  out.module.labels.resize(lay.size());
  for (std::size_t a = 0; a < lay.monos.size(); ++a)
    for (Eigen::Index y = 0; y < lay.ny(); ++y)
      for (int k = 0; k < h.rank; ++k) {
        auto &lab = out.module.labels[lay.index(static_cast<Eigen::Index>(a), y, k)];
        lab.name = "e" + std::to_string(k + 1) + "*T^(" + monomial_key(ctx, lay.monos[a]) + ")*(rhoY)^" +
                   std::to_string(y);
        lab.stable = total_degree(lay.ydeg[y]) < ctx->y_bound();
      }
  for (int i = 0; i < h.dim(); ++i) {
    SparseMat op(lay.size(), lay.size());
    for (std::size_t a = 0; a < lay.monos.size(); ++a) {
      const Monomial &alpha = lay.monos[a];
      for (Eigen::Index y = 0; y < lay.ny(); ++y) {
        const YDegree &n = lay.ydeg[y];
        for (int k = 0; k < h.rank; ++k) {
          const Eigen::Index src = lay.index(static_cast<Eigen::Index>(a), y, k);
          for (int j = 0; j < h.rank; ++j)
            for (const auto &[beta, c] : h.thetas[i](k, j).terms()) {
              auto it = lay.mono_index.find({alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2]});
              if (it == lay.mono_index.end()) {
                out.module.labels[src].stable = false;
                continue;
              }
              op.add(lay.index(it->second, y, j), src, c);
            }
          if (n[i] > 0) {
            YDegree lower = n;
            lower[i] -= 1;
            op.add(lay.index(static_cast<Eigen::Index>(a), lay.y_index.at(lower), k), src,
                   CycElt(ctx, n[i]) * rho.elt);
          }
        }
      }
    }
    op.finalize();
    out.ops.push_back(std::move(op));
  }
  return out;
}

}  // namespace

int certified_precision(const ContextPtr &ctx, const RhoValue &rho) {
  const int g = ctx->y_bound();
  const Rational loss = Rational(vp_factorial(g, ctx->p())) + Rational(g) * rho.valuation();
  const auto ceil_loss = (loss.numerator() + loss.denominator() - 1) / loss.denominator();
  return std::max(1, ctx->precision() - static_cast<int>(ceil_loss));
}

InvariantBasis invariant_basis(const SmallRep &m, const RhoValue &rho) {
  if (m.base != Base::Chart) throw std::invalid_argument("invariant_basis expects a chart representation");
  if (rho.valuation() >= m.a) throw Error("rho too large for smallness");
  const auto &ctx = m.ctx;
  InvariantBasis out;
  out.precision = certified_precision(ctx, rho);
  out.basis = period_identity(ctx, rho, m.rank, PeriodBasis::Falling);
  out.closed_inverse = period_identity(ctx, rho, m.rank, PeriodBasis::Falling);
  for (int i = 0; i < m.dim(); ++i) {
    const RingMat b = m.mats[i] - ring_identity(ctx, m.rank);
    const RingMat minus_ainv_b = -ring_multiply(unipotent_inverse(ctx, m.mats[i]), b);
    out.basis = period_multiply(out.basis, falling_series(ctx, rho, i, divided_powers(ctx, minus_ainv_b, rho)));
    out.closed_inverse =
        period_multiply(falling_series(ctx, rho, i, divided_powers(ctx, b, rho)), out.closed_inverse);
  }
  out.inverse = period_inverse(out.basis);
  return out;
}

PeriodMat horizontal_sections_closed(const SmallHiggs &h, const RhoValue &rho) {
  PeriodMat s = period_identity(h.ctx, rho, h.rank);
  for (int i = 0; i < h.dim(); ++i)
    s = period_multiply(s, monomial_series(h.ctx, rho, i, divided_powers(h.ctx, -h.thetas[i], rho)));
  return s;
}

KernelReport invariants_bruteforce(const SmallRep &m, const RhoValue &rho, bool with_generators) {
  return stacked_kernel(m.ctx, flatten_rep(m, Coefficients::period(rho)), with_generators);
}

KernelReport horizontal_bruteforce(const SmallHiggs &h, const RhoValue &rho, bool with_generators) {
  return stacked_kernel(h.ctx, flatten_higgs_period(h, rho), with_generators);
}

namespace {

int closed_rank(const PeriodMat &p, std::size_t monomials) {
  if (!ring_equal(p.coefficient({0, 0, 0}), ring_identity(p.ctx, p.rows)))
    throw Error("closed form does not start with the identity");
  return static_cast<int>(p.rows * static_cast<Eigen::Index>(monomials));
}

}  // namespace

SpanCheck compare_invariants(const SmallRep &m, const RhoValue &rho) {
  const InvariantBasis ib = invariant_basis(m, rho);
  const ContextPtr low = m.ctx->with_precision(ib.precision);
  const SmallRep ml = reduce_rep(m, low);
  const RhoValue rl = rho_in(rho, low);
  const PeriodMat pl = reduce_period(ib.basis, low);
  const FlatOperators flat = flatten_rep(ml, Coefficients::period(rl));
  const Layout lay(low, m.base, m.rank);
  SpanCheck out;
  out.precision = ib.precision;
  out.contained = annihilated(flat, flatten_rows(lay, falling_coordinates(pl), m.rank));
  out.closed_rank = closed_rank(pl, lay.monos.size());
  out.kernel_free_rank = stacked_kernel(low, flat, false).free_rank;
  return out;
}

SpanCheck compare_horizontal(const SmallHiggs &h, const RhoValue &rho) {
  const int prec = certified_precision(h.ctx, rho);
  const ContextPtr low = h.ctx->with_precision(prec);
  const SmallHiggs hl = reduce_higgs(h, low);
  const RhoValue rl = rho_in(rho, low);
  const PeriodMat sl = reduce_period(horizontal_sections_closed(h, rho), low);
  const FlatOperators flat = flatten_higgs_period(hl, rl);
  const Layout lay(low, Base::Chart, h.rank);
  SpanCheck out;
  out.precision = prec;
  out.contained = annihilated(flat, flatten_rows(lay, sl.terms, h.rank));
  out.closed_rank = closed_rank(sl, lay.monos.size());
  out.kernel_free_rank = stacked_kernel(low, flat, false).free_rank;
  return out;
}

CohomologyReport higgs_period_cohomology(const SmallHiggs &h, const RhoValue &rho) {
  FlatOperators flat = flatten_higgs_period(h, rho);
  KoszulComplex k(h.ctx, std::move(flat.module), std::move(flat.ops), h.dim() == 1);
  return koszul_cohomology(k);
}

SectionAction section_action(const SmallHiggs &h, const RhoValue &rho) {
  const PeriodMat s = horizontal_sections_closed(h, rho);
  const SmallRep m = higgs_to_rep(h);
  SectionAction out;
  for (int i = 0; i < h.dim(); ++i) {
    const PeriodMat gs = period_gamma(i, 1, s);
    const RingMat a = gs.coefficient({0, 0, 0});
    out.matrix_defect = valuation_min(out.matrix_defect, defect_valuation(a, m.mats[i]));
    out.stable_defect = valuation_min(out.stable_defect, period_defect(gs, left_multiply(a, s), h.ctx->y_bound() - 1));
  }
  return out;
}

BasisChecks check_invariant_basis(const SmallRep &m, const RhoValue &rho) {
  const InvariantBasis ib = invariant_basis(m, rho);
  const int g = m.ctx->y_bound();
  BasisChecks out;
  out.precision = ib.precision;
  out.inverse_defect = period_defect(period_multiply(ib.basis, ib.inverse), period_identity(m.ctx, rho, m.rank), g);
  out.closed_inverse_defect = period_defect(ib.inverse, ib.closed_inverse, g);
  const SmallHiggs h = rep_to_higgs(m);
  for (int j = 0; j < m.dim(); ++j) {
    const PeriodMat lhs = period_partial(j, ib.basis);
    const PeriodMat rhs = right_multiply(ib.basis, h.thetas[j]);
    out.derivative_defect = valuation_min(out.derivative_defect, period_defect(lhs, rhs, g - 1));
    const PeriodMat moved = right_multiply(period_gamma(j, 1, ib.basis), m.mats[j]);
    out.invariance_defect = valuation_min(out.invariance_defect, period_defect(moved, ib.basis, g - 1));
  }
  return out;
}

}  // namespace simpson
