#include <doctest.h>

#include "simpson/json_io.hpp"
#include "test_util.hpp"

using namespace simpson;

TEST_CASE("json round trips") {
  auto ctx = make_context(5, 2, 10, 2, 6, 2, Rational(1, 2));
  CHECK(decode_rational(encode(Rational(3, 4))) == Rational(3, 4));
  CHECK(decode_rational(Json("7/20")) == Rational(7, 20));
  CHECK(!decode_valuation(encode(Valuation())));
  auto c2 = decode_context(encode(ctx));
  CHECK(c2->p() == 5);
  CHECK(c2->dim() == 2);
  CHECK(c2->a() == Rational(1, 2));

  std::mt19937_64 rng(1);
  auto m = random_rep(ctx, 2, Rational(1, 2), rng);
  const Json file = instance_file(m);
  CHECK(file["kind"] == "rep");
  auto back = decode_rep(decode_context(file["context"]), file["instance"]);
  for (int i = 0; i < 2; ++i) CHECK(encode(back.mats[i]) == encode(m.mats[i]));

  auto h = random_higgs(ctx, 2, Rational(1, 2), rng);
  auto hb = decode_higgs(ctx, instance_file(h)["instance"]);
  CHECK(encode(hb).dump() == encode(h).dump());

  // fractional exponents survive
  const PerfLaurentElt x = PerfLaurentElt::monomial(ctx, {5, -10, 0}, CycElt::pi(ctx));
  CHECK(decode_laurent(ctx, encode(x)) == x);
}

TEST_CASE("malformed input is a context error") {
  auto ctx = make_context(5, 2, 10, 2, 6, 1, Rational(1, 2));
  CHECK_THROWS_AS(decode_cyc(ctx, Json::array({1, 2})), ContextError);
  CHECK_THROWS_AS(decode_context(Json{{"p", 5}}), ContextError);
  CHECK_THROWS_AS(decode_rep(ctx, Json{{"a", "1/2"}, {"mats", Json::array({Json::array({Json::array({0})})})}}),
                  ValidationError);
}

TEST_CASE("cohomology and trace encodings") {
  auto ctx = make_context(5, 2, 10, 2, 6, 1, Rational(1, 2));
  auto rep = group_cohomology(trivial_rep(ctx, Base::Chart, 1, Rational(1, 2)), Coefficients::plain());
  const Json j = encode(rep);
  CHECK(j["0"]["free_rank"] == 5);
  Trace t{{1, Rational(3, 2), Rational(1, 2)}, {2, std::nullopt, Rational(5, 4)}};
  const Json tj = encode(t);
  CHECK(tj[0]["complement_valuation"] == Json::array({3, 2}));
  CHECK(tj[1]["complement_valuation"].is_null());
}
