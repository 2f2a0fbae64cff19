#include "simpson/period.hpp"

#include "simpson/series.hpp"

namespace simpson {

namespace {

CycElt big_to_cyc(const ContextPtr &ctx, const BigInt &v) {
  const std::int64_t m = ctx->ring().modulus();
  BigInt r = v % m;
  if (r < 0) r += m;
  return CycElt(ctx, static_cast<std::int64_t>(r));
}

PerfLaurentElt scale(const PerfLaurentElt &c, const CycElt &s) { return s * c; }

PerfLaurentElt rebind(const ContextPtr &ctx, const PerfLaurentElt &c,
                      const std::function<CycElt(const CycElt &)> &f) {
  PerfLaurentElt out(ctx);
  for (const auto &[m, v] : c.terms()) out += PerfLaurentElt::monomial(ctx, m, f(v));
  if (c.overflow()) out.set_overflow();
  return out;
}

BigInt binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) {
    out *= (n - i);
    out /= (i + 1);
  }
  return out;
}

}  // namespace

RhoValue RhoValue::make(const CycElt &elt) {
  const Valuation v = elt.valuation();
  const Rational r = elt.context()->r();
  if (!v || *v < r) throw Error("rho must have valuation at least 1/(p-1)");
  return RhoValue{elt, *v > r};
}

int total_degree(const YDegree &n) { return n[0] + n[1] + n[2]; }

std::vector<YDegree> y_degrees(int d, int g) {
  std::vector<YDegree> out;
  for (int t = 0; t <= g; ++t)
    for (int a = t; a >= 0; --a) {
      if (d == 1) {
        if (a == t) out.push_back({a, 0, 0});
        continue;
      }
      for (int b = t - a; b >= 0; --b) {
        const int c = t - a - b;
        if (d == 2 && c != 0) continue;
        out.push_back({a, b, c});
      }
    }
  return out;
}

PeriodElt::PeriodElt(ContextPtr ctx, RhoValue rho, PeriodBasis basis)
    : ctx_(std::move(ctx)), rho_(std::move(rho)), basis_(basis) {}

PeriodElt PeriodElt::constant(ContextPtr ctx, RhoValue rho, const PerfLaurentElt &c) {
  PeriodElt out(std::move(ctx), std::move(rho));
  out.add_term({0, 0, 0}, c);
  return out;
}

PeriodElt PeriodElt::y_monomial(ContextPtr ctx, RhoValue rho, const YDegree &n, const PerfLaurentElt &c) {
  PeriodElt out(std::move(ctx), std::move(rho));
  out.add_term(n, c);
  return out;
}

PerfLaurentElt PeriodElt::coefficient(const YDegree &n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? PerfLaurentElt(ctx_) : it->second;
}

int PeriodElt::degree() const {
  int d = -1;
  for (const auto &[n, c] : coeffs_) d = std::max(d, total_degree(n));
  return d;
}

void PeriodElt::add_term(const YDegree &n, const PerfLaurentElt &c) {
  if (c.overflow()) overflow_ = true;
  if (c.is_zero()) return;
  for (int i = ctx_->dim(); i < 3; ++i)
    if (n[i] != 0) throw std::invalid_argument("Y-degree in an unused variable");
  if (total_degree(n) > ctx_->y_bound()) {
    overflow_ = true;
    return;
  }
  auto [it, fresh] = coeffs_.emplace(n, c.bind(ctx_));
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

void PeriodElt::check_compatible(const PeriodElt &o) const {
  if (basis_ != o.basis_) throw std::invalid_argument("period elements in different bases");
  if (rho_.elt != o.rho_.elt) throw std::invalid_argument("period elements over different rho");
}

PeriodElt PeriodElt::operator-() const {
  PeriodElt out = *this;
  for (auto &[n, c] : out.coeffs_) c = -c;
  return out;
}

PeriodElt &PeriodElt::operator+=(const PeriodElt &o) {
  check_compatible(o);
  overflow_ = overflow_ || o.overflow_;
  for (const auto &[n, c] : o.coeffs_) add_term(n, c);
  return *this;
}

PeriodElt &PeriodElt::operator-=(const PeriodElt &o) { return *this += -o; }

PeriodElt &PeriodElt::operator*=(const PeriodElt &o) {
  check_compatible(o);
  if (basis_ != PeriodBasis::Monomial) throw std::invalid_argument("products need the monomial basis");
  PeriodElt out(ctx_, rho_);
  out.twist_ = twist_ + o.twist_;
  out.overflow_ = overflow_ || o.overflow_;
  for (const auto &[a, ca] : coeffs_)
    for (const auto &[b, cb] : o.coeffs_) out.add_term({a[0] + b[0], a[1] + b[1], a[2] + b[2]}, ca * cb);
  *this = std::move(out);
  return *this;
}

PeriodElt &PeriodElt::operator*=(const PerfLaurentElt &c) {
  Coeffs out;
  for (auto &[n, v] : coeffs_) {
    PerfLaurentElt w = v * c;
    if (w.overflow()) overflow_ = true;
    if (!w.is_zero()) out.emplace(n, std::move(w));
  }
  coeffs_ = std::move(out);
  return *this;
}

bool operator==(const PeriodElt &a, const PeriodElt &b) {
  return a.basis_ == b.basis_ && a.rho_.elt == b.rho_.elt && a.coeffs_ == b.coeffs_;
}

PeriodElt PeriodElt::map_coefficients(const ContextPtr &ctx,
                                      const std::function<CycElt(const CycElt &)> &f) const {
  PeriodElt out(ctx, RhoValue{f(rho_.elt), rho_.strict}, basis_);
  out.twist_ = twist_;
  out.overflow_ = overflow_;
  for (const auto &[n, c] : coeffs_) out.add_term(n, rebind(ctx, c, f));
  return out;
}

PeriodElt basis_convert(const PeriodElt &x, PeriodBasis target) {
  if (x.basis() == target) return x;
  const ContextPtr &ctx = x.context();
  const int g = ctx->y_bound();
  const int d = ctx->dim();
  const auto s1 = stirling_first(g);
  const auto s2 = stirling_second(g);
  const CycElt &rho = x.rho().elt;
  PeriodElt out(ctx, x.rho(), target);
  out.set_twist(x.twist());
  if (x.overflow()) out.set_overflow();
  for (const YDegree &m : y_degrees(d, g)) {
    PerfLaurentElt acc(ctx);
    for (const auto &[n, c] : x.coeffs()) {
      bool dominates = true;
      for (int i = 0; i < d; ++i) dominates = dominates && n[i] >= m[i];
      if (!dominates) continue;
      BigInt w = 1;
      for (int i = 0; i < d; ++i) w *= target == PeriodBasis::Falling ? s2[n[i]][m[i]] : s1[n[i]][m[i]];
      if (w == 0) continue;
      CycElt f = big_to_cyc(ctx, w);
      if (target == PeriodBasis::Monomial) f *= rho.pow(total_degree(n));
      acc += scale(c, f);
    }
    if (target == PeriodBasis::Falling && !acc.is_zero()) {
      const CycElt rk = rho.pow(total_degree(m));
      acc = acc.map_coefficients([&](const CycElt &v) { return v.exact_divide(rk); });
    }
    out.add_term(m, acc);
  }
  return out;
}

bool in_lattice(const PeriodElt &x) {
  if (x.basis() == PeriodBasis::Falling) return true;
  try {
    basis_convert(x, PeriodBasis::Falling);
    return true;
  } catch (const PrecisionError &) {
    return false;
  }
}

PeriodElt gamma_act_period(int i, std::int64_t k, const PeriodElt &x) {
  const ContextPtr &ctx = x.context();
  if (i < 0 || i >= ctx->dim()) throw std::out_of_range("generator index out of range");
  const PeriodElt mono = basis_convert(x, PeriodBasis::Monomial);
  PeriodElt out(ctx, x.rho());
  out.set_twist(x.twist());
  if (x.overflow()) out.set_overflow();
  for (const auto &[n, c] : mono.coeffs()) {
    const PerfLaurentElt gc = gamma_act(i, k, c);
    BigInt kp = 1;
    // (Y_i + k)^{n_i} = sum_j C(n_i, j) k^{n_i - j} Y_i^j
    for (int j = n[i]; j >= 0; --j) {
      YDegree m = n;
      m[i] = j;
      out.add_term(m, scale(gc, big_to_cyc(ctx, binomial(n[i], j) * kp)));
      kp *= k;
    }
  }
  return basis_convert(out, x.basis());
}

PeriodElt partial_y(int i, const PeriodElt &x) {
  const ContextPtr &ctx = x.context();
  const PeriodElt mono = basis_convert(x, PeriodBasis::Monomial);
  PeriodElt out(ctx, x.rho());
  out.set_twist(x.twist() + 1);
  if (x.overflow()) out.set_overflow();
  for (const auto &[n, c] : mono.coeffs()) {
    if (n[i] == 0) continue;
    YDegree m = n;
    --m[i];
    out.add_term(m, scale(c, CycElt(ctx, n[i])));
  }
  return basis_convert(out, x.basis());
}

std::vector<PeriodElt> higgs_theta(const PeriodElt &x) {
  std::vector<PeriodElt> out;
  for (int i = 0; i < x.context()->dim(); ++i) out.push_back(partial_y(i, x));
  return out;
}

PeriodElt binomial_power(const ContextPtr &ctx, const RhoValue &rho, const CycElt &z, int i) {
  PeriodElt out = PeriodElt::constant(ctx, rho, PerfLaurentElt(CycElt(ctx, 1)));
  const Valuation v = z.bind(ctx).valuation();
  if (!v) return out;
  const TailBound tb = exp_tail_bound(*v, ctx->precision(), ctx->p(), SeriesKind::Binomial);
  const ContextPtr guard = ctx->with_precision(ctx->precision() + tb.guard);
  const CycElt zg = z.lift(guard);
  const int g = ctx->y_bound();
  const auto s1 = stirling_first(std::max(g, 1));
  CycElt term(guard, 1);
  for (int n = 1; n < tb.cutoff; ++n) {
    term = (term * zg).divide_by_integer(n);
    const CycElt t = term.reduce(ctx);
    if (t.is_zero()) continue;
    if (n > g) {
      out.set_overflow();
      continue;
    }
    for (int k = 0; k <= n; ++k) {
      if (s1[n][k] == 0) continue;
      YDegree m{0, 0, 0};
      m[i] = k;
      out.add_term(m, PerfLaurentElt(t * big_to_cyc(ctx, s1[n][k])));
    }
  }
  return out;
}

std::pair<PeriodElt, PeriodElt> log_gamma_equals_ddY(int i, const PeriodElt &x) {
  const ContextPtr &ctx = x.context();
  const PeriodElt mono = basis_convert(x, PeriodBasis::Monomial);
  int top = 0;
  for (const auto &[n, c] : mono.coeffs()) {
    for (const auto &[m, v] : c.terms())
      if (!is_integral(ctx, m)) throw Error("log series not nilpotent here");
    top = std::max(top, n[i]);
  }
  int guard_digits = 0;
  for (int k = 1; k <= top; ++k) guard_digits = std::max(guard_digits, vp_int(k, ctx->p()));
  const ContextPtr guard = ctx->with_precision(ctx->precision() + guard_digits);
  const auto lift = [&](const CycElt &c) { return c.lift(guard); };
  const auto down = [&](const CycElt &c) { return c.reduce(ctx); };

  PeriodElt cur = mono.map_coefficients(guard, lift);
  PeriodElt sum(guard, cur.rho());
  for (int k = 1; !cur.is_zero(); ++k) {
    cur = gamma_act_period(i, 1, cur) - cur;
    if (cur.is_zero()) break;
    PeriodElt term(guard, cur.rho());
    for (const auto &[n, c] : cur.coeffs())
      term.add_term(n, c.map_coefficients([&](const CycElt &v) { return v.divide_by_integer(k); }));
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  PeriodElt lhs = sum.map_coefficients(ctx, down);
  lhs.set_twist(x.twist() + 1);
  return {basis_convert(lhs, x.basis()), partial_y(i, x)};
}

}  // namespace simpson
