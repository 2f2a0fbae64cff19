#pragma once

#include "simpson/valuation.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace simpson {

using Coeffs = std::vector<std::int64_t>;

/// Arithmetic tables for O_{K_n}/p^N presented as (Z/p^N)[x]/E_n(x), where
/// x stands for the uniformiser zeta_{p^n} - 1 and E_n is its Eisenstein
/// polynomial. Elements are raw coefficient vectors of length e.
class CycRing {
public:
  CycRing(int p, int level, int precision);

  int p() const { return p_; }
  int level() const { return level_; }
  int precision() const { return precision_; }
  int ram_index() const { return e_; }
  std::int64_t modulus() const { return modulus_; }

  /// Low coefficients c_0..c_{e-1} of the monic E_n, reduced into [0, p^N).
  const Coeffs &eisenstein() const { return eisenstein_; }
  /// Integer coefficients of E_n before reduction (for display/testing).
  const std::vector<std::int64_t> &eisenstein_integral() const { return eisenstein_int_; }

  Coeffs zero() const { return Coeffs(e_, 0); }
  Coeffs constant(std::int64_t c) const;
  Coeffs add(const Coeffs &a, const Coeffs &b) const;
  Coeffs sub(const Coeffs &a, const Coeffs &b) const;
  Coeffs neg(const Coeffs &a) const;
  Coeffs mul(const Coeffs &a, const Coeffs &b) const;
  Coeffs scale(const Coeffs &a, std::int64_t c) const;
  /// Inverse of a unit via Newton iteration; throws NonUnitError otherwise.
  Coeffs inverse(const Coeffs &a) const;
  Coeffs pow(Coeffs base, std::uint64_t k) const;
  Valuation valuation(const Coeffs &a) const;
  bool is_zero(const Coeffs &a) const;

  std::int64_t reduce(__int128 v) const;
  std::int64_t inverse_mod(std::int64_t a) const;

  /// pi^e / p, a unit because E_n is Eisenstein.
  const Coeffs &pi_e_over_p() const { return pi_e_over_p_; }
  const Coeffs &pi_e_over_p_inverse() const { return pi_e_over_p_inv_; }

private:
  int p_;
  int level_;
  int precision_;
  int e_;
  std::int64_t modulus_;
  std::vector<std::int64_t> eisenstein_int_;
  Coeffs eisenstein_;
  Coeffs pi_e_over_p_;
  Coeffs pi_e_over_p_inv_;
};

class PrecisionContext;
using ContextPtr = std::shared_ptr<const PrecisionContext>;

/// Global truncation parameters. Immutable once built; share via ContextPtr.
class PrecisionContext : public std::enable_shared_from_this<PrecisionContext> {
public:
  struct Params {
    int p = 5;
    int level = 2;      // cyclotomic / perfectoid level n
    int precision = 10; // coefficients live mod p^N
    int laurent_bound = 2;
    int y_bound = 6;
    int dim = 1;
    Rational a{1, 2};
  };

  static ContextPtr make(const Params &params);

  const Params &params() const { return params_; }
  int p() const { return params_.p; }
  int level() const { return params_.level; }
  int precision() const { return params_.precision; }
  int ram_index() const { return ring_.ram_index(); }
  int laurent_bound() const { return params_.laurent_bound; }
  int y_bound() const { return params_.y_bound; }
  int dim() const { return params_.dim; }
  const Rational &a() const { return params_.a; }
  /// r = 1/(p-1) = v(zeta_p - 1).
  Rational r() const { return Rational(1, params_.p - 1); }
  /// p^level, the common denominator of perfectoid exponents.
  std::int64_t denominator() const { return denominator_; }

  const CycRing &ring() const { return ring_; }
  /// The same ring at precision N + 1; used internally for exact division.
  const CycRing &guard_ring() const { return guard_ring_; }

  /// zeta_{p^n}^j for 0 <= j < p^n, as raw coefficients.
  const Coeffs &zeta_table(std::int64_t j) const { return zeta_table_.at(j); }

  /// A context identical to this one except for the p-adic precision. The
  /// smallness invariants are not re-checked.
  ContextPtr with_precision(int precision) const;

  bool same_ring(const PrecisionContext &other) const {
    return p() == other.p() && level() == other.level() && precision() == other.precision();
  }

private:
  explicit PrecisionContext(const Params &params);

  Params params_;
  std::int64_t denominator_;
  CycRing ring_;
  CycRing guard_ring_;
  std::vector<Coeffs> zeta_table_;
};

/// make_context with the invariants checked: p odd prime, a > 1/(p-1),
/// a * e integral, N >= 2(a + 1/(p-1)) + 1.
ContextPtr make_context(int p, int n, int N, int D, int G, int d, Rational a);

std::int64_t ipow(std::int64_t base, int exp);
/// p-adic valuation of a nonzero integer.
int vp_int(std::int64_t x, int p);
/// v_p(n!) = (n - s_p(n)) / (p - 1).
int vp_factorial(std::int64_t n, int p);

}  // namespace simpson
