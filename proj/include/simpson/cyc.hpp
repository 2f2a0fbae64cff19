#pragma once

#include "simpson/context.hpp"

#include <iosfwd>

namespace simpson {

/// Element of O_{K_n}/p^N, written sum a_i pi^i with pi = zeta_{p^n} - 1.
///
/// A default-constructed or integer-constructed element carries no context;
/// it binds to the context of the first contextual operand it meets. This is
/// what lets Eigen build identities and zeros without knowing p.
class CycElt {
public:
  CycElt() = default;
  CycElt(std::int64_t c) : int_value_(c) {}  // NOLINT: implicit for Eigen
  CycElt(ContextPtr ctx, std::int64_t c);
  CycElt(ContextPtr ctx, Coeffs coeffs);

  static CycElt pi(const ContextPtr &ctx);
  /// rho_k = zeta_p - 1.
  static CycElt rho_k(const ContextPtr &ctx);
  static CycElt from_int(const ContextPtr &ctx, std::int64_t c) { return CycElt(ctx, c); }

  const ContextPtr &context() const { return ctx_; }
  bool has_context() const { return static_cast<bool>(ctx_); }
  /// Coefficients a_0..a_{e-1} in [0, p^N). Requires a context.
  Coeffs coefficients() const;
  std::int64_t integer_value() const { return int_value_; }

  bool is_zero() const;
  bool is_one() const;
  Valuation valuation() const;
  /// Integer k with valuation = k/e; nullopt when zero.
  std::optional<std::int64_t> pi_valuation() const;
  bool is_unit() const;

  CycElt operator-() const;
  CycElt &operator+=(const CycElt &o);
  CycElt &operator-=(const CycElt &o);
  CycElt &operator*=(const CycElt &o);
  friend CycElt operator+(CycElt a, const CycElt &b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt &b) { return a -= b; }
  friend CycElt operator*(CycElt a, const CycElt &b) { return a *= b; }
  friend bool operator==(const CycElt &a, const CycElt &b);
  friend bool operator!=(const CycElt &a, const CycElt &b) { return !(a == b); }

  CycElt pow(std::uint64_t k) const;
  /// Multiplicative inverse of a unit; NonUnitError otherwise.
  CycElt inverse() const;
  /// y with pi^j * y == *this exactly mod p^N. Requires v(*this) >= j/e.
  CycElt divide_by_pi_power(std::int64_t j) const;
  /// y with y * divisor == *this exactly mod p^N. Requires v(*this) >= v(divisor).
  CycElt exact_divide(const CycElt &divisor) const;
  /// Divide by the integer m, which may carry p-adic valuation.
  CycElt divide_by_integer(std::int64_t m) const;

  /// Same coefficients read in a context of higher precision.
  CycElt lift(const ContextPtr &target) const;
  /// Reduce into a context of lower (or equal) precision.
  CycElt reduce(const ContextPtr &target) const;
  CycElt bind(const ContextPtr &ctx) const;

private:
  void adopt(const CycElt &other);
  const Coeffs &raw() const { return coeffs_; }

  ContextPtr ctx_;
  Coeffs coeffs_;  // empty means zero when ctx_ is set
  std::int64_t int_value_ = 0;
};

std::ostream &operator<<(std::ostream &os, const CycElt &x);

/// zeta^alpha = zeta_{p^{n(alpha)}}^{t(alpha)} for alpha in Z[1/p] ∩ [0,1).
CycElt zeta_power(const ContextPtr &ctx, const Rational &alpha);
/// epsilon_alpha = 1 - zeta^{-alpha}.
CycElt epsilon_alpha(const ContextPtr &ctx, const Rational &alpha);

}  // namespace simpson
