#pragma once

#include "simpson/valuation.hpp"

#include <string>

namespace simpson {

enum class SeriesKind { Exp, Log, Binomial };

/// Truncation certificate for a p-adic power series evaluated at an argument
/// of valuation `argument`: every term with index >= cutoff vanishes mod p^N.
struct TailBound {
  SeriesKind kind = SeriesKind::Exp;
  int cutoff = 0;            // terms 0 .. cutoff-1 are summed
  int guard = 0;             // extra p-adic digits needed for the divisions
  Rational argument{0};      // valuation of the argument
  Rational guaranteed{0};    // precision of the truncated sum

  std::string kind_name() const;
};

/// exp and binomial series: least n* with n v - v_p(n!) >= N for all n >= n*.
/// Requires v > 1/(p-1).
TailBound exp_tail_bound(const Rational &v, int precision, int p, SeriesKind kind = SeriesKind::Exp);
/// log(1 + x): least n* with n v - v_p(n) >= N for all n >= n*. Requires v > 0.
TailBound log_tail_bound(const Rational &v, int precision, int p);

}  // namespace simpson
