#pragma once

#include "simpson/decompletion.hpp"
#include "simpson/simpson.hpp"

#include <json.hpp>

namespace simpson {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json encode(const Rational &r);
/// null for +infinity.
Json encode(const Valuation &v);
Json encode(const ContextPtr &ctx);
/// e integers in [0, p^N).
Json encode(const CycElt &x);
/// {"a1/b1,...": [coefficients]}.
Json encode(const PerfLaurentElt &x);
Json encode(const RingMat &m);
/// {base, l, d, a, mats}.
Json encode(const SmallRep &m);
/// {l, d, a, thetas}.
Json encode(const SmallHiggs &h);
/// {"q": {free_rank, torsion, coercions}}.
Json encode(const CohomologyReport &r);
Json encode(const Trace &t);

Rational decode_rational(const Json &j);
Valuation decode_valuation(const Json &j);
ContextPtr decode_context(const Json &j);
CycElt decode_cyc(const ContextPtr &ctx, const Json &j);
PerfLaurentElt decode_laurent(const ContextPtr &ctx, const Json &j);
RingMat decode_matrix(const ContextPtr &ctx, const Json &j);
/// Validated through make_rep / make_higgs.
SmallRep decode_rep(const ContextPtr &ctx, const Json &j);
SmallHiggs decode_higgs(const ContextPtr &ctx, const Json &j);

/// {instance_id, degrees: [{q, rep_free, higgs_free, torsion_bound_ok}], roundtrip_max_defect_valuation}.
Json comparison_report(const std::string &instance_id, const CohomologyComparison &c, const Valuation &roundtrip);

/// Instance file: {schema, kind: "rep" | "higgs", context, instance}.
Json instance_file(const SmallRep &m);
Json instance_file(const SmallHiggs &h);

}  // namespace simpson
