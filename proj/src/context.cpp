#include "simpson/context.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace simpson {

using boost::multiprecision::cpp_int;

std::string to_string(const Rational &r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

std::string to_string(const Valuation &v) { return v ? to_string(*v) : std::string("inf"); }

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int vp_int(std::int64_t x, int p) {
  if (x == 0) throw std::invalid_argument("vp_int: zero has no finite valuation");
  if (x < 0) x = -x;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

int vp_factorial(std::int64_t n, int p) {
  int v = 0;
  for (std::int64_t q = n / p; q > 0; q /= p) v += static_cast<int>(q);
  return v;
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

cpp_int binomial(int n, int k) {
  cpp_int out = 1;
  for (int i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

std::int64_t mod_cpp(const cpp_int &v, std::int64_t m) {
  cpp_int r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

CycRing::CycRing(int p, int level, int precision)
    : p_(p), level_(level), precision_(precision) {
  e_ = static_cast<int>(ipow(p, level - 1) * (p - 1));
  // modulus^2 * 2e must fit comfortably in an __int128 accumulator
  if (precision * std::log2(static_cast<double>(p)) > 58.0)
    throw ContextError("p^N exceeds the 58-bit coefficient budget");
  modulus_ = ipow(p, precision);

  // E_n(x) = sum_{j<p} (1 + x)^{j p^{n-1}}
  const int step = static_cast<int>(ipow(p, level - 1));
  std::vector<cpp_int> coeff(e_ + 1, 0);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i <= std::min(e_, j * step); ++i) coeff[i] += binomial(j * step, i);
  eisenstein_int_.resize(e_ + 1);
  eisenstein_.resize(e_);
  for (int i = 0; i <= e_; ++i) {
    eisenstein_int_[i] = coeff[i] > cpp_int(std::numeric_limits<std::int64_t>::max())
                             ? -1
                             : static_cast<std::int64_t>(coeff[i]);
    if (i < e_) eisenstein_[i] = mod_cpp(coeff[i], modulus_);
  }

  // pi^e = -sum_{i<e} c_i pi^i, and every c_i is divisible by p.
  pi_e_over_p_.assign(e_, 0);
  for (int i = 0; i < e_; ++i) pi_e_over_p_[i] = mod_cpp(-(coeff[i] / p), modulus_);
  pi_e_over_p_inv_ = inverse(pi_e_over_p_);
}

std::int64_t CycRing::reduce(__int128 v) const {
  __int128 r = v % modulus_;
  if (r < 0) r += modulus_;
  return static_cast<std::int64_t>(r);
}

std::int64_t CycRing::inverse_mod(std::int64_t a) const {
  std::int64_t m = modulus_;
  __int128 t = 0, new_t = 1, r = m, new_r = reduce(a);
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw NonUnitError(Rational(vp_int(a, p_)));
  return reduce(t);
}

Coeffs CycRing::constant(std::int64_t c) const {
  Coeffs out(e_, 0);
  out[0] = reduce(c);
  return out;
}

Coeffs CycRing::add(const Coeffs &a, const Coeffs &b) const {
  Coeffs out(e_);
  for (int i = 0; i < e_; ++i) {
    std::int64_t s = a[i] + b[i];
    out[i] = s >= modulus_ ? s - modulus_ : s;
  }
  return out;
}

Coeffs CycRing::sub(const Coeffs &a, const Coeffs &b) const {
  Coeffs out(e_);
  for (int i = 0; i < e_; ++i) {
    std::int64_t s = a[i] - b[i];
    out[i] = s < 0 ? s + modulus_ : s;
  }
  return out;
}

Coeffs CycRing::neg(const Coeffs &a) const {
  Coeffs out(e_);
  for (int i = 0; i < e_; ++i) out[i] = a[i] == 0 ? 0 : modulus_ - a[i];
  return out;
}

Coeffs CycRing::scale(const Coeffs &a, std::int64_t c) const {
  const std::int64_t cr = reduce(c);
  Coeffs out(e_);
  for (int i = 0; i < e_; ++i) out[i] = reduce(static_cast<__int128>(a[i]) * cr);
  return out;
}

Coeffs CycRing::mul(const Coeffs &a, const Coeffs &b) const {
  std::vector<__int128> acc(2 * e_ - 1, 0);
  for (int i = 0; i < e_; ++i) {
    if (a[i] == 0) continue;
    const __int128 ai = a[i];
    for (int j = 0; j < e_; ++j) acc[i + j] += ai * b[j];
  }
  // x^e = -sum c_i x^i
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    const std::int64_t t = reduce(acc[k]);
    if (t == 0) continue;
    for (int i = 0; i < e_; ++i) acc[k - e_ + i] -= static_cast<__int128>(t) * eisenstein_[i];
  }
  Coeffs out(e_);
  for (int i = 0; i < e_; ++i) out[i] = reduce(acc[i]);
  return out;
}

Coeffs CycRing::pow(Coeffs base, std::uint64_t k) const {
  Coeffs out = constant(1);
  while (k > 0) {
    if (k & 1) out = mul(out, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return out;
}

bool CycRing::is_zero(const Coeffs &a) const {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

Valuation CycRing::valuation(const Coeffs &a) const {
  Valuation best;
  for (int i = 0; i < e_; ++i) {
    if (a[i] == 0) continue;
    Rational v(static_cast<std::int64_t>(vp_int(a[i], p_)) * e_ + i, e_);
    if (!best || v < *best) best = v;
  }
  return best;
}

Coeffs CycRing::inverse(const Coeffs &a) const {
  if (a[0] % p_ == 0) throw NonUnitError(valuation(a));
  Coeffs y = constant(inverse_mod(a[0]));
  const Coeffs one = constant(1);
  const Coeffs two = constant(2);
  for (int iter = 0; iter < 128; ++iter) {
    Coeffs t = mul(a, y);
    if (t == one) return y;
    y = mul(y, sub(two, t));
  }
  throw PrecisionError("unit inverse did not converge");
}

PrecisionContext::PrecisionContext(const Params &params)
    : params_(params),
      denominator_(ipow(params.p, params.level)),
      ring_(params.p, params.level, params.precision),
      guard_ring_(params.p, params.level, params.precision + 1) {
  zeta_table_.reserve(denominator_);
  Coeffs zeta = ring_.zero();
  zeta[0] = 1;
  zeta[1] = 1;  // e >= 2 since p is odd
  Coeffs cur = ring_.constant(1);
  for (std::int64_t j = 0; j < denominator_; ++j) {
    zeta_table_.push_back(cur);
    cur = ring_.mul(cur, zeta);
  }
}

ContextPtr PrecisionContext::make(const Params &params) {
  return ContextPtr(new PrecisionContext(params));
}

ContextPtr PrecisionContext::with_precision(int precision) const {
  Params p = params_;
  p.precision = precision;
  return make(p);
}

ContextPtr make_context(int p, int n, int N, int D, int G, int d, Rational a) {
  if (p == 2) throw ContextError("p = 2 is not supported");
  if (!is_prime(p)) throw ContextError("p must be an odd prime");
  if (n < 1) throw ContextError("tower level must be positive");
  if (N < 1) throw ContextError("precision must be positive");
  if (D < 0 || G < 0) throw ContextError("degree bounds must be nonnegative");
  if (d < 1 || d > 3) throw ContextError("dimension must lie in 1..3");
  const Rational r(1, p - 1);
  const std::int64_t e = ipow(p, n - 1) * (p - 1);
  if ((a * e).denominator() != 1) throw ContextError("a * e must be an integer");
  if (a <= r) throw ContextError("smallness hypothesis violated: a must exceed 1/(p-1)");
  if (Rational(N) < 2 * (a + r) + 1) throw ContextError("precision N too small for smallness checks");
  return PrecisionContext::make({p, n, N, D, G, d, a});
}

}  // namespace simpson
