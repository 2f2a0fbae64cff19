#include "simpson/series.hpp"

#include "simpson/context.hpp"

#include <cmath>

namespace simpson {

std::string TailBound::kind_name() const {
  switch (kind) {
    case SeriesKind::Exp: return "exp";
    case SeriesKind::Log: return "log";
    case SeriesKind::Binomial: return "binomial";
  }
  return "unknown";
}

TailBound exp_tail_bound(const Rational &v, int precision, int p, SeriesKind kind) {
  const Rational r(1, p - 1);
  if (v <= r) throw Error("divergent exponent");
  // v_p(n!) <= (n - 1)/(p - 1), so n (v - r) + r >= N certifies every n past the bound.
  const Rational need = (Rational(precision) - r) / (v - r);
  std::int64_t bound = boost::rational_cast<std::int64_t>(need);
  if (Rational(bound) < need) ++bound;
  bound = std::max<std::int64_t>(bound, 1);
  std::int64_t cutoff = bound;
  for (std::int64_t n = bound - 1; n >= 0; --n) {
    if (v * n - Rational(vp_factorial(n, p)) < Rational(precision)) break;
    cutoff = n;
  }
  TailBound tb;
  tb.kind = kind;
  tb.cutoff = static_cast<int>(cutoff);
  tb.guard = cutoff > 0 ? vp_factorial(cutoff - 1, p) : 0;
  tb.argument = v;
  tb.guaranteed = Rational(precision);
  return tb;
}

TailBound log_tail_bound(const Rational &v, int precision, int p) {
  if (v <= Rational(0)) throw Error("log series needs a topologically nilpotent argument");
  // v_p(n) <= log_p(n); n v - log_p(n) is increasing once n v log(p) >= 1.
  std::int64_t bound = 1;
  auto ok_real = [&](std::int64_t n) {
    const double lp = std::log(static_cast<double>(n)) / std::log(static_cast<double>(p));
    return boost::rational_cast<double>(v) * n - lp >= precision + 1e-9 &&
           boost::rational_cast<double>(v) * n * std::log(static_cast<double>(p)) >= 1.0;
  };
  while (!ok_real(bound)) bound *= 2;
  std::int64_t cutoff = bound;
  for (std::int64_t n = bound - 1; n >= 1; --n) {
    if (v * n - Rational(vp_int(n, p)) < Rational(precision)) break;
    cutoff = n;
  }
  TailBound tb;
  tb.kind = SeriesKind::Log;
  tb.cutoff = static_cast<int>(cutoff);
  int guard = 0;
  for (std::int64_t n = 1; n < cutoff; ++n) guard = std::max(guard, vp_int(n, p));
  tb.guard = guard;
  tb.argument = v;
  tb.guaranteed = Rational(precision);
  return tb;
}

}  // namespace simpson
