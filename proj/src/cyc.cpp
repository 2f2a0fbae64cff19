#include "simpson/cyc.hpp"

#include <ostream>

namespace simpson {

namespace {

void normalize(Coeffs &c) {
  for (auto v : c)
    if (v != 0) return;
  c.clear();
}

}  // namespace

CycElt::CycElt(ContextPtr ctx, std::int64_t c) : ctx_(std::move(ctx)) {
  coeffs_ = ctx_->ring().constant(c);
  normalize(coeffs_);
}

CycElt::CycElt(ContextPtr ctx, Coeffs coeffs) : ctx_(std::move(ctx)) {
  const auto &ring = ctx_->ring();
  if (static_cast<int>(coeffs.size()) > ring.ram_index())
    throw std::invalid_argument("CycElt: too many coefficients");
  coeffs.resize(ring.ram_index(), 0);
  for (auto &v : coeffs) v = ring.reduce(v);
  coeffs_ = std::move(coeffs);
  normalize(coeffs_);
}

CycElt CycElt::pi(const ContextPtr &ctx) {
  Coeffs c(ctx->ram_index(), 0);
  c[1] = 1;
  return CycElt(ctx, c);
}

CycElt CycElt::rho_k(const ContextPtr &ctx) {
  return zeta_power(ctx, Rational(1, ctx->p())) - CycElt(ctx, 1);
}

Coeffs CycElt::coefficients() const {
  if (!ctx_) throw ContextError("CycElt has no context");
  if (coeffs_.empty()) return ctx_->ring().zero();
  return coeffs_;
}

void CycElt::adopt(const CycElt &other) {
  if (ctx_ || !other.ctx_) return;
  ctx_ = other.ctx_;
  coeffs_ = ctx_->ring().constant(int_value_);
  normalize(coeffs_);
  int_value_ = 0;
}

CycElt CycElt::bind(const ContextPtr &ctx) const {
  if (ctx_) return *this;
  return CycElt(ctx, int_value_);
}

bool CycElt::is_zero() const { return ctx_ ? coeffs_.empty() : int_value_ == 0; }

bool CycElt::is_one() const {
  if (!ctx_) return int_value_ == 1;
  if (coeffs_.empty()) return ctx_->ring().modulus() == 1;
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Valuation CycElt::valuation() const {
  if (!ctx_) throw ContextError("valuation needs a context");
  if (coeffs_.empty()) return std::nullopt;
  return ctx_->ring().valuation(coeffs_);
}

std::optional<std::int64_t> CycElt::pi_valuation() const {
  auto v = valuation();
  if (!v) return std::nullopt;
  return (*v * ctx_->ram_index()).numerator();
}

bool CycElt::is_unit() const {
  auto v = valuation();
  return v && *v == 0;
}

CycElt CycElt::operator-() const {
  if (!ctx_) return CycElt(-int_value_);
  CycElt out = *this;
  if (!out.coeffs_.empty()) out.coeffs_ = ctx_->ring().neg(coeffs_);
  return out;
}

CycElt &CycElt::operator+=(const CycElt &o) {
  if (!ctx_ && !o.ctx_) {
    int_value_ += o.int_value_;
    return *this;
  }
  adopt(o);
  const CycElt rhs = o.bind(ctx_);
  if (!ctx_->same_ring(*rhs.ctx_)) throw ContextError("mixing incompatible contexts");
  if (rhs.coeffs_.empty()) return *this;
  if (coeffs_.empty()) {
    coeffs_ = rhs.coeffs_;
    return *this;
  }
  coeffs_ = ctx_->ring().add(coeffs_, rhs.coeffs_);
  normalize(coeffs_);
  return *this;
}

CycElt &CycElt::operator-=(const CycElt &o) { return *this += -o; }

CycElt &CycElt::operator*=(const CycElt &o) {
  if (!ctx_ && !o.ctx_) {
    int_value_ *= o.int_value_;
    return *this;
  }
  if (!o.ctx_) {
    if (o.int_value_ == 1 || coeffs_.empty()) return *this;
    coeffs_ = ctx_->ring().scale(coeffs_, o.int_value_);
    normalize(coeffs_);
    return *this;
  }
  if (!ctx_) {
    const std::int64_t c = int_value_;
    *this = o;
    if (c != 1 && !coeffs_.empty()) {
      coeffs_ = ctx_->ring().scale(coeffs_, c);
      normalize(coeffs_);
    }
    return *this;
  }
  if (!ctx_->same_ring(*o.ctx_)) throw ContextError("mixing incompatible contexts");
  if (coeffs_.empty()) return *this;
  if (o.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  coeffs_ = ctx_->ring().mul(coeffs_, o.coeffs_);
  normalize(coeffs_);
  return *this;
}

bool operator==(const CycElt &a, const CycElt &b) {
  if (!a.ctx_ && !b.ctx_) return a.int_value_ == b.int_value_;
  if (!a.ctx_) return a.bind(b.ctx_) == b;
  if (!b.ctx_) return a == b.bind(a.ctx_);
  return a.coeffs_ == b.coeffs_;
}

CycElt CycElt::pow(std::uint64_t k) const {
  if (!ctx_) {
    std::int64_t out = 1;
    for (std::uint64_t i = 0; i < k; ++i) out *= int_value_;
    return CycElt(out);
  }
  if (k == 0) return CycElt(ctx_, 1);
  if (coeffs_.empty()) return *this;
  return CycElt(ctx_, ctx_->ring().pow(coeffs_, k));
}

CycElt CycElt::inverse() const {
  if (!ctx_) throw ContextError("inverse needs a context");
  if (coeffs_.empty()) throw NonUnitError(std::nullopt);
  return CycElt(ctx_, ctx_->ring().inverse(coeffs_));
}

CycElt CycElt::divide_by_pi_power(std::int64_t j) const {
  if (!ctx_) throw ContextError("division needs a context");
  if (j < 0) throw std::invalid_argument("negative pi power");
  if (j == 0 || coeffs_.empty()) return *this;
  const auto k = pi_valuation();
  if (*k < j)
    throw PrecisionError("not divisible by pi^" + std::to_string(j) + " (valuation " +
                         to_string(valuation()) + ")");
  // x / pi^j = x pi^{e-s} u^{-(q+1)} / p^{q+1} where j = q e + s, pi^e = p u.
  // Computed at precision N + 1 so that pi^j y == x holds exactly mod p^N.
  const CycRing &g = ctx_->guard_ring();
  const int e = g.ram_index();
  const std::int64_t q = j / e;
  const std::int64_t s = j % e;
  Coeffs pi(e, 0);
  pi[1] = 1;
  Coeffs z = g.mul(coeffs_, g.pow(pi, static_cast<std::uint64_t>(e - s)));
  z = g.mul(z, g.pow(g.pi_e_over_p_inverse(), static_cast<std::uint64_t>(q + 1)));
  const std::int64_t pq = ipow(ctx_->p(), static_cast<int>(q + 1));
  for (auto &c : z) {
    if (c % pq != 0) throw PrecisionError("inexact p-power division");
    c /= pq;
  }
  return CycElt(ctx_, std::move(z));
}

CycElt CycElt::exact_divide(const CycElt &divisor) const {
  const CycElt d = divisor.bind(ctx_ ? ctx_ : divisor.ctx_);
  const CycElt x = bind(d.ctx_);
  if (d.is_zero()) {
    if (x.is_zero()) return x;
    throw PrecisionError("division by zero");
  }
  const std::int64_t j = *d.pi_valuation();
  const CycElt unit = d.divide_by_pi_power(j);
  return x.divide_by_pi_power(j) * unit.inverse();
}

CycElt CycElt::divide_by_integer(std::int64_t m) const {
  if (!ctx_) throw ContextError("division needs a context");
  if (m == 0) throw PrecisionError("division by zero");
  return exact_divide(CycElt(ctx_, m));
}

CycElt CycElt::lift(const ContextPtr &target) const {
  if (!ctx_) return CycElt(target, int_value_);
  if (target->p() != ctx_->p() || target->level() != ctx_->level() ||
      target->precision() < ctx_->precision())
    throw ContextError("lift target must share p, level and have higher precision");
  return CycElt(target, coefficients());
}

CycElt CycElt::reduce(const ContextPtr &target) const {
  if (!ctx_) return CycElt(target, int_value_);
  if (target->p() != ctx_->p() || target->level() != ctx_->level() ||
      target->precision() > ctx_->precision())
    throw ContextError("reduce target must share p, level and have lower precision");
  return CycElt(target, coefficients());
}

std::ostream &operator<<(std::ostream &os, const CycElt &x) {
  if (!x.has_context()) return os << x.integer_value();
  os << '[';
  const auto c = x.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  return os << ']';
}

CycElt zeta_power(const ContextPtr &ctx, const Rational &alpha) {
  Rational frac = alpha - Rational(boost::rational_cast<std::int64_t>(alpha));
  if (frac < 0) frac += 1;
  const std::int64_t den = frac.denominator();
  std::int64_t rest = den;
  while (rest % ctx->p() == 0) rest /= ctx->p();
  if (rest != 1) throw std::invalid_argument("zeta_power: denominator is not a power of p");
  if (ctx->denominator() % den != 0) throw ContextError("insufficient tower level");
  const std::int64_t j = frac.numerator() * (ctx->denominator() / den);
  return CycElt(ctx, ctx->zeta_table(j));
}

CycElt epsilon_alpha(const ContextPtr &ctx, const Rational &alpha) {
  if (alpha.numerator() % alpha.denominator() == 0)
    throw std::invalid_argument("epsilon undefined at zero");
  return CycElt(ctx, 1) - zeta_power(ctx, -alpha);
}

}  // namespace simpson
