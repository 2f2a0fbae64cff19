#pragma once

#include "simpson/eigen_support.hpp"

#include <vector>

namespace simpson {

/// U * M * V = diag(pi^{j_1}, pi^{j_2}, ...) with j_1 <= j_2 <= ... over
/// O_{K_n}/p^N. Entries that vanish at precision N count as zero.
struct SmithResult {
  /// One entry per diagonal position (min(rows, cols)); nullopt for zero.
  std::vector<Valuation> divisors;
  int rank = 0;
  /// Products of two nonzero elements that vanished at precision N.
  int coercions = 0;
  CycMat u;  // empty unless transforms were requested
  CycMat v;
  CycMat diagonal;
};

SmithResult smith_normal_form(const CycMat &m, const ContextPtr &ctx, bool transforms = false);

}  // namespace simpson
