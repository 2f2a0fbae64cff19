#pragma once

#include "simpson/rep.hpp"

namespace simpson {

/// theta_1..theta_d acting on row vectors by v -> v theta_i; the form part
/// dlog T_i / t is the index i.
struct SmallHiggs {
  ContextPtr ctx;
  int rank = 0;
  std::vector<RingMat> thetas;
  Rational a{1, 2};

  int dim() const { return static_cast<int>(thetas.size()); }
};

SmallHiggs make_higgs(const ContextPtr &ctx, std::vector<RingMat> thetas, const Rational &a);
SmallHiggs zero_higgs(const ContextPtr &ctx, int rank, const Rational &a);
Valuation higgs_smallness(const SmallHiggs &h);

SmallHiggs tensor(const SmallHiggs &a, const SmallHiggs &b);
SmallHiggs dual(const SmallHiggs &h);

/// Flattened theta_i on the truncated chart module (column convention).
FlatOperators flatten_higgs(const SmallHiggs &h);
/// Koszul cohomology of the theta_i; degree q carries Tate twist -q.
CohomologyReport higgs_cohomology(const SmallHiggs &h);

SmallHiggs random_higgs(const ContextPtr &ctx, int rank, const Rational &a, std::mt19937_64 &rng);

}  // namespace simpson
