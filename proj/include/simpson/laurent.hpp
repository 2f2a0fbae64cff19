#pragma once

#include "simpson/cyc.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace simpson {

/// Exponent vector T^alpha with alpha_i = num[i] / p^n; unused slots are 0.
using Monomial = std::array<std::int32_t, 3>;

struct ChartTag {};
struct PerfTag {};

/// Truncated Laurent polynomial over O_{K_n}/p^N in d <= 3 variables.
///
/// Tag ChartTag models R+ (integral exponents only), PerfTag models the
/// level-n stand-in for the perfectoid ring (exponents in p^{-n}Z). Exponents
/// outside [-D, D] are dropped by multiplication and set a sticky overflow
/// flag. As with CycElt, an element built from a bare integer has no context
/// until it meets one.
template <class Tag>
class Laurent {
public:
  using Terms = std::map<Monomial, CycElt>;

  Laurent() = default;
  Laurent(std::int64_t c);  // NOLINT: implicit for Eigen
  Laurent(CycElt c);        // NOLINT
  Laurent(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  /// c * T^alpha with alpha given as numerators over p^n.
  static Laurent monomial(const ContextPtr &ctx, const Monomial &alpha, const CycElt &c);
  /// c * T^alpha with alpha given in integer exponents (chart notation).
  static Laurent integral_monomial(const ContextPtr &ctx, const Monomial &k, const CycElt &c);

  const ContextPtr &context() const { return ctx_; }
  const Terms &terms() const { return terms_; }
  CycElt coefficient(const Monomial &alpha) const;
  bool overflow() const { return overflow_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  Laurent operator-() const;
  Laurent &operator+=(const Laurent &o);
  Laurent &operator-=(const Laurent &o);
  Laurent &operator*=(const Laurent &o);
  Laurent &operator*=(const CycElt &c);
  friend Laurent operator+(Laurent a, const Laurent &b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent &b) { return a -= b; }
  friend Laurent operator*(Laurent a, const Laurent &b) { return a *= b; }
  friend Laurent operator*(const CycElt &c, Laurent a) { return a *= c; }
  /// Equality of values; the overflow flag is not compared.
  friend bool operator==(const Laurent &a, const Laurent &b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent &a, const Laurent &b) { return !(a == b); }

  /// Apply f to every coefficient, dropping zeros.
  template <class F>
  Laurent map_coefficients(F &&f) const {
    Laurent out(ctx_);
    out.overflow_ = overflow_;
    for (const auto &[m, c] : terms_) {
      CycElt v = f(c);
      if (!v.is_zero()) out.terms_.emplace(m, std::move(v));
    }
    return out;
  }

  Laurent bind(const ContextPtr &ctx) const;
  void set_overflow() { overflow_ = true; }

private:
  void adopt(const Laurent &o);
  void insert(const Monomial &m, const CycElt &c);

  ContextPtr ctx_;
  Terms terms_;
  bool overflow_ = false;
};

using LaurentElt = Laurent<ChartTag>;
using PerfLaurentElt = Laurent<PerfTag>;

extern template class Laurent<ChartTag>;
extern template class Laurent<PerfTag>;

/// x with every coefficient replaced by f(c), read in another context that
/// shares p, the level and the truncation box.
template <class Tag, class F>
Laurent<Tag> change_context(const Laurent<Tag> &x, const ContextPtr &ctx, F &&f) {
  Laurent<Tag> out(ctx);
  for (const auto &[m, c] : x.terms()) out += Laurent<Tag>::monomial(ctx, m, f(c));
  if (x.overflow()) out.set_overflow();
  return out;
}

/// Exponent alpha_i of a monomial as a rational number.
Rational exponent(const ContextPtr &ctx, const Monomial &m, int i);
bool is_integral(const ContextPtr &ctx, const Monomial &m);
/// "a1/b1,...,ad/bd" with d = ctx->dim().
std::string monomial_key(const ContextPtr &ctx, const Monomial &m);
Monomial parse_monomial_key(const ContextPtr &ctx, const std::string &key);

PerfLaurentElt to_perf(const LaurentElt &x);
/// Reads an element with only integral exponents as a chart element.
LaurentElt to_chart(const PerfLaurentElt &x);

/// gamma_i^k acting on coefficients: T^alpha -> zeta^{k alpha_i} T^alpha.
/// i is 0-based.
PerfLaurentElt gamma_act(int i, std::int64_t k, const PerfLaurentElt &x);
inline LaurentElt gamma_act(int, std::int64_t, const LaurentElt &x) { return x; }

template <class Tag>
Valuation gauss_valuation(const Laurent<Tag> &x) {
  Valuation v;
  for (const auto &[m, c] : x.terms()) v = valuation_min(v, c.valuation());
  return v;
}

/// Integral-exponent part and complement.
std::pair<LaurentElt, PerfLaurentElt> split_integral(const PerfLaurentElt &x);

/// g with (gamma_i - 1) g = y, monomialwise. i is 0-based.
PerfLaurentElt solve_gamma_shift(int i, const PerfLaurentElt &y);

}  // namespace simpson
