#pragma once

#include "simpson/laurent.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <vector>

namespace simpson {

using BigInt = boost::multiprecision::cpp_int;
/// Integer polynomial, coefficients from degree 0 upward.
using IntPoly = std::vector<BigInt>;

/// F_n(Y) = Y(Y-1)...(Y-n+1).
IntPoly falling_factorial(int n);
/// P(Y + k).
IntPoly poly_shift(const IntPoly &p, const BigInt &k);
IntPoly poly_sub(const IntPoly &a, const IntPoly &b);
IntPoly poly_scale(const IntPoly &a, const BigInt &c);
bool poly_equal(const IntPoly &a, const IntPoly &b);

/// Signed Stirling numbers of the first kind, s(n, k) for n, k <= m:
/// F_n(Y) = sum_k s(n, k) Y^k.
std::vector<std::vector<BigInt>> stirling_first(int m);
/// Stirling numbers of the second kind: Y^n = sum_k S(n, k) F_k(Y).
std::vector<std::vector<BigInt>> stirling_second(int m);

/// Square matrices whose entries are integer polynomials in a symbol eps.
using EpsMatrix = std::vector<std::vector<IntPoly>>;

/// X with X(i, i) = 1 and X(i, i + 1) = (i + 1) eps (0-based): the change of
/// basis y_i = x_i + i eps x_{i-1}.
EpsMatrix shift_matrix_x(int size);
/// Y(i, j) = (-eps)^{j-i} (j-1)!/(i-1)! for i < j (1-based), the inverse of X.
EpsMatrix shift_matrix_y(int size);
EpsMatrix eps_multiply(const EpsMatrix &a, const EpsMatrix &b);
bool eps_is_identity(const EpsMatrix &a);

/// An element rho with v(rho) >= 1/(p-1); strict when the inequality is strict.
struct RhoValue {
  CycElt elt;
  bool strict = false;

  static RhoValue make(const CycElt &elt);
  static RhoValue rho_k(const ContextPtr &ctx) { return make(CycElt::rho_k(ctx)); }
  Rational valuation() const { return *elt.valuation(); }
};

/// Multidegree (n_1, ..., n_d) in the variables Y_i.
using YDegree = std::array<int, 3>;

enum class PeriodBasis { Monomial, Falling };

/// Element of the truncated period ring R_inf<rho Y_1, ..., rho Y_d>, total
/// Y-degree at most G. In the monomial basis coefficient n multiplies Y^n; in
/// the falling basis it multiplies prod rho^{n_i} F_{n_i}(Y_i).
class PeriodElt {
public:
  using Coeffs = std::map<YDegree, PerfLaurentElt>;

  PeriodElt(ContextPtr ctx, RhoValue rho, PeriodBasis basis = PeriodBasis::Monomial);

  static PeriodElt constant(ContextPtr ctx, RhoValue rho, const PerfLaurentElt &c);
  /// c * Y^n in the monomial basis.
  static PeriodElt y_monomial(ContextPtr ctx, RhoValue rho, const YDegree &n, const PerfLaurentElt &c);

  const ContextPtr &context() const { return ctx_; }
  const RhoValue &rho() const { return rho_; }
  PeriodBasis basis() const { return basis_; }
  int twist() const { return twist_; }
  const Coeffs &coeffs() const { return coeffs_; }
  PerfLaurentElt coefficient(const YDegree &n) const;
  bool overflow() const { return overflow_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const;

  void add_term(const YDegree &n, const PerfLaurentElt &c);
  void set_twist(int t) { twist_ = t; }
  void set_overflow() { overflow_ = true; }

  PeriodElt operator-() const;
  PeriodElt &operator+=(const PeriodElt &o);
  PeriodElt &operator-=(const PeriodElt &o);
  /// Product; terms above degree G are dropped and flag overflow.
  PeriodElt &operator*=(const PeriodElt &o);
  PeriodElt &operator*=(const PerfLaurentElt &c);
  friend PeriodElt operator+(PeriodElt a, const PeriodElt &b) { return a += b; }
  friend PeriodElt operator-(PeriodElt a, const PeriodElt &b) { return a -= b; }
  friend PeriodElt operator*(PeriodElt a, const PeriodElt &b) { return a *= b; }
  friend bool operator==(const PeriodElt &a, const PeriodElt &b);
  friend bool operator!=(const PeriodElt &a, const PeriodElt &b) { return !(a == b); }

  /// The same element read with a different coefficient context.
  PeriodElt map_coefficients(const ContextPtr &ctx,
                             const std::function<CycElt(const CycElt &)> &f) const;

private:
  void check_compatible(const PeriodElt &o) const;

  ContextPtr ctx_;
  RhoValue rho_;
  PeriodBasis basis_;
  int twist_ = 0;
  Coeffs coeffs_;
  bool overflow_ = false;
};

int total_degree(const YDegree &n);
/// All multidegrees in d variables with total degree <= g, graded then lexicographic.
std::vector<YDegree> y_degrees(int d, int g);

/// Change basis. Monomial -> Falling divides by rho^{|n|} and raises
/// PrecisionError when x is not in the rho-lattice.
PeriodElt basis_convert(const PeriodElt &x, PeriodBasis target);
bool in_lattice(const PeriodElt &x);

/// gamma_i^k: Y_i -> Y_i + k together with the coefficient action (i 0-based).
PeriodElt gamma_act_period(int i, std::int64_t k, const PeriodElt &x);
/// Components d/dY_i; twist label raised by one.
std::vector<PeriodElt> higgs_theta(const PeriodElt &x);
/// d/dY_i alone.
PeriodElt partial_y(int i, const PeriodElt &x);

/// (1 + z)^{Y_i} = sum z^n / n! F_n(Y_i), truncated by the tail bound and at
/// degree G.
PeriodElt binomial_power(const ContextPtr &ctx, const RhoValue &rho, const CycElt &z, int i = 0);

/// (sum_{k>=1} (-1)^{k+1} (gamma_i - 1)^k x / k, d x / d Y_i).
std::pair<PeriodElt, PeriodElt> log_gamma_equals_ddY(int i, const PeriodElt &x);

}  // namespace simpson
