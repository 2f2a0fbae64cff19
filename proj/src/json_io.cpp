#include "simpson/json_io.hpp"

namespace simpson {

namespace {

void require(bool ok, const std::string &what) {
  if (!ok) throw ContextError("malformed JSON: " + what);
}

}  // namespace

Json encode(const Rational &r) { return Json::array({r.numerator(), r.denominator()}); }

Json encode(const Valuation &v) { return v ? encode(*v) : Json(nullptr); }

Json encode(const ContextPtr &ctx) {
  return Json{{"p", ctx->p()},          {"n", ctx->level()}, {"N", ctx->precision()}, {"D", ctx->laurent_bound()},
              {"G", ctx->y_bound()},    {"d", ctx->dim()},   {"a", encode(ctx->a())}};
}

Json encode(const CycElt &x) {
  Json out = Json::array();
  for (auto c : x.coefficients()) out.push_back(c);
  return out;
}

Json encode(const PerfLaurentElt &x) {
  Json out = Json::object();
  for (const auto &[m, c] : x.terms()) out[monomial_key(x.context(), m)] = encode(c);
  return out;
}

Json encode(const RingMat &m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json encode(const SmallRep &m) {
  Json mats = Json::array();
  for (const auto &a : m.mats) mats.push_back(encode(a));
  return Json{{"base", base_name(m.base)}, {"l", m.rank}, {"d", m.dim()}, {"a", encode(m.a)}, {"mats", mats}};
}

Json encode(const SmallHiggs &h) {
  Json thetas = Json::array();
  for (const auto &t : h.thetas) thetas.push_back(encode(t));
  return Json{{"l", h.rank}, {"d", static_cast<int>(h.thetas.size())}, {"a", encode(h.a)}, {"thetas", thetas}};
}

Json encode(const CohomologyReport &r) {
  Json out = Json::object();
  for (const auto &deg : r.degrees) {
    Json torsion = Json::array();
    for (const auto &t : deg.torsion) torsion.push_back(encode(t));
    out[std::to_string(deg.q)] = Json{{"free_rank", deg.free_rank}, {"torsion", torsion}, {"coercions", deg.coercions}};
  }
  return out;
}

Json encode(const Trace &t) {
  Json out = Json::array();
  for (const auto &s : t)
    out.push_back(Json{{"step", s.step},
                       {"complement_valuation", encode(s.complement)},
                       {"increment_valuation", encode(s.increment)}});
  return out;
}

Rational decode_rational(const Json &j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  require(j.is_array() && j.size() == 2, "rational must be [num, den]");
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

Valuation decode_valuation(const Json &j) {
  if (j.is_null()) return std::nullopt;
  return decode_rational(j);
}

ContextPtr decode_context(const Json &j) {
  require(j.is_object(), "context must be an object");
  for (const char *key : {"p", "n", "N", "D", "G", "d", "a"}) require(j.contains(key), std::string("context.") + key);
  return make_context(j["p"].get<int>(), j["n"].get<int>(), j["N"].get<int>(), j["D"].get<int>(), j["G"].get<int>(),
                      j["d"].get<int>(), decode_rational(j["a"]));
}

CycElt decode_cyc(const ContextPtr &ctx, const Json &j) {
  if (j.is_number_integer()) return CycElt(ctx, j.get<std::int64_t>());
  require(j.is_array() && static_cast<int>(j.size()) == ctx->ram_index(), "ring element must have e coefficients");
  Coeffs c;
  for (const auto &x : j) c.push_back(x.get<std::int64_t>());
  return CycElt(ctx, c);
}

PerfLaurentElt decode_laurent(const ContextPtr &ctx, const Json &j) {
  if (j.is_number_integer() || j.is_array()) return PerfLaurentElt(decode_cyc(ctx, j)).bind(ctx);
  require(j.is_object(), "Laurent element must be an object");
  PerfLaurentElt out(ctx);
  for (const auto &[key, val] : j.items()) out += PerfLaurentElt::monomial(ctx, parse_monomial_key(ctx, key), decode_cyc(ctx, val));
  return out;
}

RingMat decode_matrix(const ContextPtr &ctx, const Json &j) {
  require(j.is_array() && !j.empty() && j[0].is_array(), "matrix must be a non-empty array of rows");
  RingMat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    require(j[r].size() == j[0].size(), "ragged matrix");
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = decode_laurent(ctx, j[r][c]);
  }
  return m;
}

SmallRep decode_rep(const ContextPtr &ctx, const Json &j) {
  require(j.contains("mats") && j.contains("a"), "representation needs mats and a");
  std::vector<RingMat> mats;
  for (const auto &m : j["mats"]) mats.push_back(decode_matrix(ctx, m));
  const Base base = j.contains("base") ? parse_base(j["base"].get<std::string>()) : Base::Chart;
  return make_rep(ctx, base, std::move(mats), decode_rational(j["a"]));
}

SmallHiggs decode_higgs(const ContextPtr &ctx, const Json &j) {
  require(j.contains("thetas") && j.contains("a"), "Higgs module needs thetas and a");
  std::vector<RingMat> thetas;
  for (const auto &m : j["thetas"]) thetas.push_back(decode_matrix(ctx, m));
  return make_higgs(ctx, std::move(thetas), decode_rational(j["a"]));
}

Json comparison_report(const std::string &instance_id, const CohomologyComparison &c, const Valuation &roundtrip) {
  Json degrees = Json::array();
  for (const auto &d : c.degrees)
    degrees.push_back(Json{{"q", d.q},
                           {"rep_free", d.rep_free},
                           {"higgs_free", d.higgs_free},
                           {"torsion_bound_ok", d.torsion_bound_ok}});
  return Json{{"instance_id", instance_id}, {"degrees", degrees}, {"roundtrip_max_defect_valuation", encode(roundtrip)}};
}

Json instance_file(const SmallRep &m) {
  return Json{{"schema", kSchemaVersion}, {"kind", "rep"}, {"context", encode(m.ctx)}, {"instance", encode(m)}};
}

Json instance_file(const SmallHiggs &h) {
  return Json{{"schema", kSchemaVersion}, {"kind", "higgs"}, {"context", encode(h.ctx)}, {"instance", encode(h)}};
}

}  // namespace simpson
