#include "simpson/simpson.hpp"

#include <algorithm>

namespace simpson {

namespace {

void check_terms(const TailBound &b, int max_terms) {
  if (b.cutoff > max_terms)
    throw PrecisionError("series needs " + std::to_string(b.cutoff) + " terms, limit is " + std::to_string(max_terms));
}

}  // namespace

SmallRep higgs_to_rep(const SmallHiggs &h, std::vector<TailBound> *bounds, int max_terms) {
  std::vector<RingMat> mats;
  for (const auto &th : h.thetas) {
    if (const Valuation v = matrix_valuation(th)) check_terms(exp_tail_bound(*v, h.ctx->precision(), h.ctx->p()), max_terms);
    MatrixSeries s = matrix_exp(h.ctx, -th);
    if (bounds) bounds->push_back(s.bound);
    mats.push_back(std::move(s.value));
  }
  return make_rep(h.ctx, Base::Chart, std::move(mats), h.a);
}

SmallHiggs rep_to_higgs(const SmallRep &m, std::vector<TailBound> *bounds, int max_terms) {
  if (m.base != Base::Chart) throw std::invalid_argument("rep_to_higgs expects a chart representation");
  std::vector<RingMat> th;
  for (const auto &a : m.mats) {
    if (const Valuation v = defect_valuation(a, ring_identity(m.ctx, m.rank)))
      check_terms(log_tail_bound(*v, m.ctx->precision(), m.ctx->p()), max_terms);
    MatrixSeries s = matrix_log(m.ctx, a);
    if (bounds) bounds->push_back(s.bound);
    th.push_back(-s.value);
  }
  return make_higgs(m.ctx, std::move(th), m.a);
}

RoundTrip round_trip(const SmallHiggs &h) {
  RoundTrip out;
  const SmallRep m = higgs_to_rep(h);
  const SmallHiggs back = rep_to_higgs(m);
  const SmallRep again = higgs_to_rep(back);
  for (int i = 0; i < h.dim(); ++i) {
    out.higgs_defect = valuation_min(out.higgs_defect, defect_valuation(back.thetas[i], h.thetas[i]));
    out.rep_defect = valuation_min(out.rep_defect, defect_valuation(again.mats[i], m.mats[i]));
  }
  return out;
}

FunctorialityReport functoriality_check(const SmallRep &m1, const SmallRep &m2) {
  FunctorialityReport out;
  const SmallHiggs h1 = rep_to_higgs(m1), h2 = rep_to_higgs(m2);
  const SmallHiggs ht = rep_to_higgs(tensor(m1, m2));
  const SmallHiggs th = tensor(h1, h2);
  const SmallHiggs hd = rep_to_higgs(dual(m1));
  const SmallHiggs dh = dual(h1);
  const auto &ctx = m1.ctx;
  for (int i = 0; i < m1.dim(); ++i) {
    out.tensor_defect = valuation_min(out.tensor_defect, defect_valuation(ht.thetas[i], th.thetas[i]));
    out.dual_defect = valuation_min(out.dual_defect, defect_valuation(hd.thetas[i], dh.thetas[i]));
    const RingMat lk = matrix_log(ctx, kronecker(m1.mats[i], m2.mats[i])).value;
    const RingMat sum = kronecker(matrix_log(ctx, m1.mats[i]).value, ring_identity(ctx, m2.rank)) +
                        kronecker(ring_identity(ctx, m1.rank), matrix_log(ctx, m2.mats[i]).value);
    out.log_sum_defect = valuation_min(out.log_sum_defect, defect_valuation(lk, sum));
  }
  return out;
}

bool CohomologyComparison::ranks_agree() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto &d) { return d.rep_free == d.higgs_free; });
}

bool CohomologyComparison::torsion_ok() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto &d) { return d.torsion_bound_ok; });
}

CohomologyComparison cohomology_compare(const SmallRep &m) {
  const CohomologyReport g = group_cohomology(base_change(m), Coefficients::plain());
  const CohomologyReport h = higgs_cohomology(rep_to_higgs(m));
  CohomologyComparison out;
  for (int q = 0; q <= m.dim(); ++q) {
    DegreeComparison d;
    d.q = q;
    d.rep_free = g.at(q).free_rank;
    d.higgs_free = h.at(q).free_rank;
    std::vector<Rational> a = g.at(q).torsion, b = h.at(q).torsion;
    std::vector<Rational> only_a, only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    d.mismatch = only_a;
    d.mismatch.insert(d.mismatch.end(), only_b.begin(), only_b.end());
    std::sort(d.mismatch.begin(), d.mismatch.end());
    d.torsion_bound_ok =
        std::all_of(d.mismatch.begin(), d.mismatch.end(), [&](const Rational &v) { return v <= m.ctx->r(); });
    out.degrees.push_back(std::move(d));
  }
  return out;
}

SmallRep reduce_rep(const SmallRep &m, const ContextPtr &target) {
  SmallRep out = m;
  out.ctx = target;
  for (auto &a : out.mats) a = reduce_matrix(a, target);
  return out;
}

SmallHiggs reduce_higgs(const SmallHiggs &h, const ContextPtr &target) {
  SmallHiggs out = h;
  out.ctx = target;
  for (auto &t : out.thetas) t = reduce_matrix(t, target);
  return out;
}

}  // namespace simpson
