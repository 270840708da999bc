#include <doctest.h>

#include "algequiv/corpus.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/json_io.hpp"

using namespace algequiv;

namespace {
RatFunc rf(const std::string& s) { return parse_ratfunc(s); }
}

TEST_CASE("rational functions round-trip through the JSON schema") {
  for (const char* s : {"-eta*(2*z - 1)/(z*(z - 1))", "0", "-t", "1/z",
                        "(1 - tau*sigma*a^2)/z^2"}) {
    RatFunc f = rf(s);
    json j = to_json(f);
    CHECK(ratfunc_from_json(j) == f);
  }
  // schema shape: numerator entries carry z_power and coefficient terms
  json j = to_json(rf("-2*eta*z/(z - 1)"));
  CHECK(j.at("num").at(0).contains("z_power"));
  CHECK(j.at("num").at(0).at("coefficient_terms").at(0).contains("params"));
  CHECK(j.at("num").at(0).at("coefficient_terms").at(0).contains("value"));
}

TEST_CASE("state spaces round-trip through JSON") {
  for (const char* name : {"admm", "heavy_ball", "pd3o", "proximal_gradient"}) {
    StateSpace ss = builtin_ss(name);
    StateSpace back = statespace_from_json(to_json(ss));
    CHECK(back.A == ss.A);
    CHECK(back.B == ss.B);
    CHECK(back.C == ss.C);
    CHECK(back.D == ss.D);
    CHECK(back.oracles == ss.oracles);
    CHECK(back.state_names == ss.state_names);
  }
}

TEST_CASE("memoryless state spaces survive the n = 0 corner") {
  StateSpace ss;
  ss.A = RatMatrix(0, 0);
  ss.B = RatMatrix(0, 2);
  ss.C = RatMatrix(2, 0);
  ss.D = RatMatrix(2, 2, {rf("0"), rf("1"), rf("0"), rf("0")});
  ss.oracles = {{"f", OracleKind::generic, ""}, {"g", OracleKind::generic, ""}};
  StateSpace back = statespace_from_json(to_json(ss));
  CHECK(back.n() == 0);
  CHECK(back.D == ss.D);
}

TEST_CASE("transfer matrices accept string entries") {
  json j = json::parse(R"json({
    "oracles": ["prox_f", "prox_g"],
    "H": [["-1/(z - 1)", "1/(z - 1)"], ["(2*z - 1)/(z - 1)", "-1/(z - 1)"]]
  })json");
  TransferMatrix tf = transfer_from_json(j);
  CHECK(tf.H == builtin_tf("douglas_rachford").H);
  // and the structured form round-trips
  TransferMatrix back = transfer_from_json(to_json(tf, true));
  CHECK(back.H == tf.H);
}

TEST_CASE("shift certificates serialize m and b") {
  auto cert = shift_equivalent(builtin_tf("douglas_rachford"), builtin_tf("admm"));
  REQUIRE(cert.has_value());
  json j = to_json(*cert);
  CHECK(j.at("m") == json::array({1, 0}));
  CHECK(j.at("b").at("1,2") == -1);
  CHECK(j.at("b").at("2,1") == 1);
}
