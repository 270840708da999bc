#include <doctest.h>

#include <random>

#include "algequiv/corpus.hpp"
#include "algequiv/expr.hpp"

using namespace algequiv;

namespace {

RatFunc rf(const std::string& s) { return parse_ratfunc(s); }

StateSpace scalar_ss(const std::string& a, const std::string& b, const std::string& c,
                     const std::string& d) {
  StateSpace ss;
  ss.A = RatMatrix(1, 1, {rf(a)});
  ss.B = RatMatrix(1, 1, {rf(b)});
  ss.C = RatMatrix(1, 1, {rf(c)});
  ss.D = RatMatrix(1, 1, {rf(d)});
  ss.oracles = {{"phi", OracleKind::generic, ""}};
  return ss;
}

}  // namespace

TEST_CASE("transfer function of the worked realizations") {
  CHECK(transfer_function(scalar_ss("1", "-1/5", "1", "0")).H(0, 0) == rf("-1/(5*(z - 1))"));
  CHECK(builtin_tf("admm").H ==
        RatMatrix(2, 2,
                  {rf("-1/(z - 1)"), rf("z/(z - 1)"), rf("(2*z - 1)/(z*(z - 1))"),
                   rf("-1/(z - 1)")}));
  CHECK(builtin_tf("reflected_gradient").H(0, 0) == rf("-eta*(2*z - 1)/(z*(z - 1))"));
}

TEST_CASE("memoryless realizations round-trip through n = 0") {
  StateSpace ss;
  ss.A = RatMatrix(0, 0);
  ss.B = RatMatrix(0, 2);
  ss.C = RatMatrix(2, 0);
  ss.D = RatMatrix(2, 2, {rf("0"), rf("1"), rf("0"), rf("0")});
  ss.oracles = {{"f", OracleKind::generic, ""}, {"g", OracleKind::generic, ""}};
  TransferMatrix tf = transfer_function(ss);
  CHECK(tf.H == ss.D);
  CHECK(initial_response(ss).cols() == 0);
}

TEST_CASE("initial response") {
  CHECK(initial_response(scalar_ss("1", "-1/5", "1", "0"))(0, 0) == rf("z/(z - 1)"));
  // A = 0, C = I: the response is the identity scaled by z/z = 1
  StateSpace ss;
  ss.A = RatMatrix(2, 2);
  ss.B = RatMatrix(2, 2);
  ss.C = RatMatrix::identity(2);
  ss.D = RatMatrix(2, 2);
  ss.oracles = {{"f", OracleKind::generic, ""}, {"g", OracleKind::generic, ""}};
  CHECK(initial_response(ss) == RatMatrix::identity(2));
}

TEST_CASE("explicitness detection") {
  StateSpace ad = builtin_ss("admm");
  auto order = is_explicit(ad);
  REQUIRE(order.has_value());
  CHECK(*order == std::vector<int>({1, 0}));  // prox_g queried first

  CHECK(!is_explicit(scalar_ss("1", "-t", "1", "-t")).has_value());

  StateSpace zero = scalar_ss("1", "-1/5", "1", "0");
  CHECK(*is_explicit(zero) == std::vector<int>({0}));
}

TEST_CASE("minimality report") {
  StateSpace s9 = builtin_ss("gd_nonminimal");
  MinimalityReport rep = minimality_report(s9);
  CHECK(rep.controllable);
  CHECK(!rep.observable);
  CHECK(rep.observability_rank == 1);
  CHECK(!rep.minimal);

  CHECK(minimality_report(scalar_ss("1", "-1/5", "1", "0")).minimal);

  StateSpace nb = scalar_ss("1", "0", "1", "0");
  CHECK(!minimality_report(nb).controllable);

  CHECK_THROWS_AS((void)minimality_report(builtin_ss("heavy_ball")), Error);  // symbolic rank
}

TEST_CASE("state transforms preserve the transfer function") {
  StateSpace s7 = builtin_ss("unit_momentum_a");
  RatMatrix t(2, 2, {rf("2"), rf("-1"), rf("-1"), rf("1")});
  StateSpace s8 = apply_state_transform(s7, t);
  CHECK(s8.A == builtin_ss("unit_momentum_b").A);
  CHECK(s8.B == builtin_ss("unit_momentum_b").B);
  CHECK(s8.C == builtin_ss("unit_momentum_b").C);

  CHECK(apply_state_transform(s7, RatMatrix::identity(2)).A == s7.A);
  RatMatrix sing(2, 2, {rf("1"), rf("1"), rf("1"), rf("1")});
  CHECK_THROWS_AS((void)apply_state_transform(s7, sing), Error);
}

TEST_CASE("similarity transform and matched initial conditions") {
  StateSpace s7 = builtin_ss("unit_momentum_a"), s8 = builtin_ss("unit_momentum_b");
  auto t = similarity_transform(s7, s8);
  REQUIRE(t.has_value());
  CHECK((*t)(0, 0) == 2);
  CHECK((*t)(0, 1) == -1);
  CHECK((*t)(1, 0) == -1);
  CHECK((*t)(1, 1) == 1);

  auto tid = similarity_transform(s7, s7);
  REQUIRE(tid.has_value());
  CHECK(*tid == QMatrix::identity(2));

  // different state dimensions: no transform
  StateSpace gd = builtin_ss("gradient_descent");
  StateSpace hb = builtin_ss("heavy_ball")
                      .subst(std::map<std::string, Rational>{{"alpha", Rational(1, 4)},
                                                             {"beta", Rational(1, 2)}});
  CHECK(!similarity_transform(gd, hb).has_value());

  auto x1 = match_initial_condition(s7, s8, {Rational(1), Rational(0)});
  CHECK(x1 == std::vector<Rational>({Rational(1), Rational(1)}));
  auto xz = match_initial_condition(s7, s8, {Rational(0), Rational(0)});
  CHECK(xz == std::vector<Rational>({Rational(0), Rational(0)}));
}

TEST_CASE("state-space inverse") {
  // D = I, B = 0 reduces to (A, 0, -C, I)
  StateSpace ss = scalar_ss("3", "0", "7", "1");
  StateSpace inv = ss_inverse(ss);
  CHECK(inv.A(0, 0) == rf("3"));
  CHECK(inv.B(0, 0) == rf("0"));
  CHECK(inv.C(0, 0) == rf("-7"));
  CHECK(inv.D(0, 0) == rf("1"));

  // product of the transfer functions is the identity, symbolically
  StateSpace gen = scalar_ss("a", "b", "c", "d");
  TransferMatrix prod;
  prod.H = transfer_function(ss_inverse(gen)).H * transfer_function(gen).H;
  CHECK(prod.H == RatMatrix::identity(1));
  // and ss_inverse is an involution at the transfer-function level
  CHECK(transfer_function(ss_inverse(ss_inverse(gen))).H == transfer_function(gen).H);

  CHECK_THROWS_AS((void)ss_inverse(scalar_ss("1", "-1/5", "1", "0")), Error);  // D = 0
}

TEST_CASE("strictly proper iff D = 0 over the corpus") {
  for (auto& e : corpus()) {
    StateSpace ss = builtin_ss(e.name);
    TransferMatrix tf = transfer_function(ss);
    CHECK(tf.is_proper());
    bool d_zero = ss.D.all_zero();
    bool strict = true;
    for (int i = 0; i < tf.H.rows(); ++i)
      for (int j = 0; j < tf.H.cols(); ++j) strict = strict && tf.H(i, j).is_strictly_proper();
    CHECK(strict == d_zero);
  }
}
