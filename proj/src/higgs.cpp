#include "simpson/higgs.hpp"

#include <map>

namespace simpson {

SmallHiggs make_higgs(const ContextPtr &ctx, std::vector<RingMat> thetas, const Rational &a) {
  SmallHiggs h;
  h.ctx = ctx;
  h.a = a;
  if (static_cast<int>(thetas.size()) != ctx->dim())
    throw ValidationError("expected " + std::to_string(ctx->dim()) + " Higgs components, got " +
                          std::to_string(thetas.size()));
  h.rank = thetas.empty() ? 0 : static_cast<int>(thetas.front().rows());
  for (auto &t : thetas) {
    if (t.rows() != h.rank || t.cols() != h.rank) throw ValidationError("Higgs components must be square of equal size");
    t = bind_matrix(ctx, t);
    if (!is_chart_matrix(t)) throw ValidationError("fractional exponent in a Higgs field");
  }
  if (a <= ctx->r()) throw ValidationError("smallness a must exceed 1/(p-1)");
  const Rational bound = a + ctx->r();
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const Valuation v = matrix_valuation(thetas[i]);
    if (v && *v < bound)
      throw ValidationError("not a-small: v(theta_" + std::to_string(i + 1) + ") = " + to_string(v) + " < " +
                            to_string(Valuation(bound)));
  }
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t j = i + 1; j < thetas.size(); ++j)
      if (!ring_equal(ring_multiply(thetas[i], thetas[j]), ring_multiply(thetas[j], thetas[i])))
        throw ValidationError("not flat: theta_" + std::to_string(i + 1) + " and theta_" + std::to_string(j + 1) +
                              " do not commute");
  h.thetas = std::move(thetas);
  return h;
}

SmallHiggs zero_higgs(const ContextPtr &ctx, int rank, const Rational &a) {
  return make_higgs(ctx, std::vector<RingMat>(ctx->dim(), ring_zero(ctx, rank, rank)), a);
}

Valuation higgs_smallness(const SmallHiggs &h) {
  Valuation v;
  for (const auto &t : h.thetas) v = valuation_min(v, matrix_valuation(t));
  return v;
}

SmallHiggs tensor(const SmallHiggs &a, const SmallHiggs &b) {
  if (a.ctx != b.ctx) throw std::invalid_argument("tensor: Higgs modules over different contexts");
  std::vector<RingMat> th;
  for (int i = 0; i < a.dim(); ++i)
    th.push_back(kronecker(a.thetas[i], ring_identity(a.ctx, b.rank)) +
                 kronecker(ring_identity(a.ctx, a.rank), b.thetas[i]));
  return make_higgs(a.ctx, std::move(th), std::min(a.a, b.a));
}

SmallHiggs dual(const SmallHiggs &h) {
  std::vector<RingMat> th;
  for (const auto &t : h.thetas) th.push_back(-transpose(t));
  return make_higgs(h.ctx, std::move(th), h.a);
}

FlatOperators flatten_higgs(const SmallHiggs &h) {
  const auto &ctx = h.ctx;
  const int l = h.rank;
  const auto monos = base_monomials(ctx, Base::Chart);
  std::map<Monomial, Eigen::Index> mono_index;
  for (std::size_t i = 0; i < monos.size(); ++i) mono_index.emplace(monos[i], static_cast<Eigen::Index>(i));
  const Eigen::Index total = static_cast<Eigen::Index>(monos.size()) * l;
  FlatOperators out;
  out.module.labels.resize(total);
  for (std::size_t a = 0; a < monos.size(); ++a)
    for (int k = 0; k < l; ++k)
      out.module.labels[a * l + k].name = "e" + std::to_string(k + 1) + "*T^(" + monomial_key(ctx, monos[a]) + ")";
  for (const auto &theta : h.thetas) {
    SparseMat op(total, total);
    for (std::size_t a = 0; a < monos.size(); ++a)
      for (int k = 0; k < l; ++k) {
        const Eigen::Index src = static_cast<Eigen::Index>(a) * l + k;
        for (int j = 0; j < l; ++j)
          for (const auto &[beta, c] : theta(k, j).terms()) {
            const Monomial &alpha = monos[a];
            auto it = mono_index.find({alpha[0] + beta[0], alpha[1] + beta[1], alpha[2] + beta[2]});
            if (it == mono_index.end()) {
              out.module.labels[src].stable = false;
              continue;
            }
            op.add(it->second * l + j, src, c);
          }
      }
    op.finalize();
    out.ops.push_back(std::move(op));
  }
  return out;
}

CohomologyReport higgs_cohomology(const SmallHiggs &h) {
  FlatOperators flat = flatten_higgs(h);
  KoszulComplex k(h.ctx, std::move(flat.module), std::move(flat.ops));
  CohomologyReport rep = koszul_cohomology(k);
  for (auto &deg : rep.degrees) deg.twist = -deg.q;
  return rep;
}

SmallHiggs random_higgs(const ContextPtr &ctx, int rank, const Rational &a, std::mt19937_64 &rng) {
  return make_higgs(ctx, random_commuting_family(ctx, rank, a, rng), a);
}

}  // namespace simpson
