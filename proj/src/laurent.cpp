#include "simpson/laurent.hpp"

#include <sstream>

namespace simpson {

namespace {

constexpr Monomial kOne{0, 0, 0};

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool in_box(const ContextPtr &ctx, const Monomial &m) {
  const std::int64_t bound = static_cast<std::int64_t>(ctx->laurent_bound()) * ctx->denominator();
  for (int i = 0; i < 3; ++i) {
    if (i >= ctx->dim() && m[i] != 0) return false;
    if (m[i] > bound || m[i] < -bound) return false;
  }
  return true;
}

}  // namespace

template <class Tag>
Laurent<Tag>::Laurent(std::int64_t c) {
  if (c != 0) terms_.emplace(kOne, CycElt(c));
}

template <class Tag>
Laurent<Tag>::Laurent(CycElt c) : ctx_(c.context()) {
  if (!c.is_zero()) terms_.emplace(kOne, std::move(c));
}

template <class Tag>
Laurent<Tag> Laurent<Tag>::monomial(const ContextPtr &ctx, const Monomial &alpha, const CycElt &c) {
  if constexpr (std::is_same_v<Tag, ChartTag>) {
    if (!is_integral(ctx, alpha)) throw std::invalid_argument("chart monomials need integral exponents");
  }
  if (!in_box(ctx, alpha)) throw std::invalid_argument("monomial outside the truncation box");
  Laurent out(ctx);
  out.insert(alpha, c.bind(ctx));
  return out;
}

template <class Tag>
Laurent<Tag> Laurent<Tag>::integral_monomial(const ContextPtr &ctx, const Monomial &k, const CycElt &c) {
  const auto q = static_cast<std::int32_t>(ctx->denominator());
  return monomial(ctx, {k[0] * q, k[1] * q, k[2] * q}, c);
}

template <class Tag>
CycElt Laurent<Tag>::coefficient(const Monomial &alpha) const {
  auto it = terms_.find(alpha);
  if (it != terms_.end()) return it->second;
  return ctx_ ? CycElt(ctx_, 0) : CycElt(0);
}

template <class Tag>
bool Laurent<Tag>::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == kOne);
}

template <class Tag>
void Laurent<Tag>::insert(const Monomial &m, const CycElt &c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

template <class Tag>
void Laurent<Tag>::adopt(const Laurent &o) {
  overflow_ = overflow_ || o.overflow_;
  if (ctx_ || !o.ctx_) return;
  ctx_ = o.ctx_;
  for (auto &[m, c] : terms_) c = c.bind(ctx_);
}

template <class Tag>
Laurent<Tag> Laurent<Tag>::bind(const ContextPtr &ctx) const {
  if (ctx_) return *this;
  Laurent out(ctx);
  out.overflow_ = overflow_;
  for (const auto &[m, c] : terms_) out.insert(m, c.bind(ctx));
  return out;
}

template <class Tag>
Laurent<Tag> Laurent<Tag>::operator-() const {
  Laurent out = *this;
  for (auto &[m, c] : out.terms_) c = -c;
  return out;
}

template <class Tag>
Laurent<Tag> &Laurent<Tag>::operator+=(const Laurent &o) {
  adopt(o);
  for (const auto &[m, c] : o.terms_) insert(m, ctx_ ? c.bind(ctx_) : c);
  return *this;
}

template <class Tag>
Laurent<Tag> &Laurent<Tag>::operator-=(const Laurent &o) {
  return *this += -o;
}

template <class Tag>
Laurent<Tag> &Laurent<Tag>::operator*=(const CycElt &c) {
  if (!ctx_ && c.has_context()) *this = bind(c.context());
  Terms out;
  for (auto &[m, v] : terms_) {
    CycElt w = v * c;
    if (!w.is_zero()) out.emplace(m, std::move(w));
  }
  terms_ = std::move(out);
  return *this;
}

template <class Tag>
Laurent<Tag> &Laurent<Tag>::operator*=(const Laurent &o) {
  adopt(o);
  Laurent out(ctx_);
  out.overflow_ = overflow_;
  for (const auto &[ma, ca] : terms_)
    for (const auto &[mb, cb] : o.terms_) {
      const Monomial m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      CycElt c = ca * cb;
      if (c.is_zero()) continue;
      if (ctx_ && !in_box(ctx_, m)) {
        out.overflow_ = true;
        continue;
      }
      out.insert(m, c);
    }
  *this = std::move(out);
  return *this;
}

template class Laurent<ChartTag>;
template class Laurent<PerfTag>;

Rational exponent(const ContextPtr &ctx, const Monomial &m, int i) {
  return Rational(m[i], ctx->denominator());
}

bool is_integral(const ContextPtr &ctx, const Monomial &m) {
  for (auto v : m)
    if (v % ctx->denominator() != 0) return false;
  return true;
}

std::string monomial_key(const ContextPtr &ctx, const Monomial &m) {
  std::ostringstream os;
  for (int i = 0; i < ctx->dim(); ++i) {
    const Rational a = exponent(ctx, m, i);
    os << (i ? "," : "") << a.numerator() << '/' << a.denominator();
  }
  return os.str();
}

Monomial parse_monomial_key(const ContextPtr &ctx, const std::string &key) {
  Monomial m{0, 0, 0};
  std::istringstream is(key);
  std::string part;
  int i = 0;
  while (std::getline(is, part, ',')) {
    if (i >= ctx->dim()) throw std::invalid_argument("monomial key has too many entries: " + key);
    const auto slash = part.find('/');
    const std::int64_t num = std::stoll(part.substr(0, slash));
    const std::int64_t den = slash == std::string::npos ? 1 : std::stoll(part.substr(slash + 1));
    if (den <= 0 || ctx->denominator() % den != 0)
      throw std::invalid_argument("exponent denominator not supported at this level: " + key);
    m[i++] = static_cast<std::int32_t>(num * (ctx->denominator() / den));
  }
  if (i != ctx->dim()) throw std::invalid_argument("monomial key has too few entries: " + key);
  return m;
}

PerfLaurentElt to_perf(const LaurentElt &x) {
  PerfLaurentElt out = x.context() ? PerfLaurentElt(x.context()) : PerfLaurentElt();
  for (const auto &[m, c] : x.terms())
    out += x.context() ? PerfLaurentElt::monomial(x.context(), m, c) : PerfLaurentElt(c);
  if (x.overflow()) out.set_overflow();
  return out;
}

LaurentElt to_chart(const PerfLaurentElt &x) {
  LaurentElt out = x.context() ? LaurentElt(x.context()) : LaurentElt();
  for (const auto &[m, c] : x.terms())
    out += x.context() ? LaurentElt::monomial(x.context(), m, c) : LaurentElt(c);
  if (x.overflow()) out.set_overflow();
  return out;
}

PerfLaurentElt gamma_act(int i, std::int64_t k, const PerfLaurentElt &x) {
  if (!x.context() || k == 0) return x;
  const ContextPtr &ctx = x.context();
  if (i < 0 || i >= ctx->dim()) throw std::out_of_range("generator index out of range");
  PerfLaurentElt out(ctx);
  for (const auto &[m, c] : x.terms()) {
    const std::int64_t q = ctx->denominator();
    const std::int64_t j = mod_floor(mod_floor(k, q) * m[i], q);
    out += PerfLaurentElt::monomial(ctx, m, c * CycElt(ctx, ctx->zeta_table(j)));
  }
  if (x.overflow()) out.set_overflow();
  return out;
}

std::pair<LaurentElt, PerfLaurentElt> split_integral(const PerfLaurentElt &x) {
  if (!x.context()) return {to_chart(x), PerfLaurentElt()};
  const ContextPtr &ctx = x.context();
  LaurentElt fixed(ctx);
  PerfLaurentElt rest(ctx);
  for (const auto &[m, c] : x.terms()) {
    if (is_integral(ctx, m))
      fixed += LaurentElt::monomial(ctx, m, c);
    else
      rest += PerfLaurentElt::monomial(ctx, m, c);
  }
  return {fixed, rest};
}

PerfLaurentElt solve_gamma_shift(int i, const PerfLaurentElt &y) {
  if (!y.context()) {
    if (y.is_zero()) return y;
    throw Error("not in complement");
  }
  const ContextPtr &ctx = y.context();
  PerfLaurentElt out(ctx);
  for (const auto &[m, c] : y.terms()) {
    if (m[i] % ctx->denominator() == 0) throw Error("not in complement");
    const CycElt eig = zeta_power(ctx, exponent(ctx, m, i)) - CycElt(ctx, 1);
    CycElt g;
    try {
      g = c.exact_divide(eig);
    } catch (const PrecisionError &) {
      throw PrecisionError("solution leaves the integral lattice at " + monomial_key(ctx, m));
    }
    out += PerfLaurentElt::monomial(ctx, m, g);
  }
  return out;
}

}  // namespace simpson
