#include <doctest.h>

#include "algequiv/corpus.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/realize.hpp"

using namespace algequiv;

namespace {

RatFunc rf(const std::string& s) { return parse_ratfunc(s); }

TransferMatrix scalar_tf(const std::string& s) {
  TransferMatrix tf;
  tf.H = RatMatrix(1, 1, {rf(s)});
  tf.oracles = {{"phi", OracleKind::generic, ""}};
  return tf;
}

const std::map<std::string, Rational>& binds() {
  static const std::map<std::string, Rational> b = {
      {"eta", Rational(1, 3)},  {"alpha", Rational(1, 4)}, {"beta", Rational(1, 2)},
      {"gamma", Rational(1, 3)}, {"nu", Rational(2, 3)},   {"s", Rational(3, 4)},
      {"mu", Rational(1, 2)},   {"lambda", Rational(2, 5)}, {"t", Rational(1, 2)},
      {"tau", Rational(1, 2)},  {"sigma", Rational(1, 3)}, {"a", Rational(1)},
      {"w", Rational(4, 5)},    {"m", Rational(1)}};
  return b;
}

}  // namespace

TEST_CASE("Markov parameters") {
  MarkovSequence ms = markov(scalar_tf("-1/(5*(z - 1))"), 8);
  CHECK(ms.M0(0, 0) == 0);
  for (int k = 1; k <= 8; ++k) CHECK(ms.at(k)(0, 0) == Rational(-1, 5));

  MarkovSequence ad = markov(builtin_tf("admm"), 4);
  CHECK(ad.M0(0, 0) == 0);
  CHECK(ad.M0(0, 1) == 1);
  CHECK(ad.M0(1, 0) == 0);
  CHECK(ad.M0(1, 1) == 0);

  MarkovSequence zero = markov(scalar_tf("0"), 4);
  CHECK(zero.M0(0, 0) == 0);
  for (int k = 1; k <= 4; ++k) CHECK(zero.at(k)(0, 0) == 0);

  CHECK_THROWS_AS((void)markov(scalar_tf("z^2/(z - 1)"), 3), Error);
  CHECK_THROWS_AS((void)markov(builtin_tf("heavy_ball"), 3), Error);  // free parameter
}

TEST_CASE("limit at infinity") {
  RatMatrix d = limit_at_infinity(builtin_tf("admm").H);
  CHECK(d == RatMatrix(2, 2, {rf("0"), rf("1"), rf("0"), rf("0")}));
  CHECK(limit_at_infinity(RatMatrix(2, 2, {rf("1/z"), rf("0"), rf("0"), rf("1/(z - 1)")}))
            .all_zero());
  // symbolic leading-coefficient ratio
  RatMatrix s(1, 1, {rf("(a*z + 1)/(b*z - 2)")});
  CHECK(limit_at_infinity(s)(0, 0) == rf("a/b"));
  CHECK_THROWS_AS((void)limit_at_infinity(RatMatrix(1, 1, {rf("z^2/(z - 1)")})), Error);
}

TEST_CASE("Hankel rank") {
  CHECK(hankel_rank(scalar_tf("-1/(5*(z - 1))"), 2) == 1);
  CHECK(hankel_rank(builtin_tf("admm"), 2) == 2);
  CHECK(hankel_rank(scalar_tf("0"), 2) == 0);
}

TEST_CASE("Hankel rank is monotone and stabilizes at the default order") {
  for (const char* name : {"admm", "pd3o", "davis_yin", "gd_nonminimal"}) {
    TransferMatrix h = builtin_tf(name).subst(binds());
    int N = default_hankel_order(h);
    int prev = 0;
    for (int k = 1; k <= N + 2; ++k) {
      int r = hankel_rank(h, k);
      CHECK(r >= prev);
      prev = r;
    }
    CHECK(hankel_rank(h, N) == hankel_rank(h, N + 2));
  }
  // det H of the ADMM matrix has a lower-degree denominator than the minimal
  // order; the escalation rule must still land on rank 2
  CHECK(hankel_rank(builtin_tf("admm"), default_hankel_order(builtin_tf("admm"))) == 2);
}

TEST_CASE("Ho-Kalman on the pre-cancellation form") {
  StateSpace ss = ho_kalman(scalar_tf("(-z + 2)/(5*(z^2 - 3*z + 2))"));
  CHECK(ss.n() == 1);
  CHECK(transfer_function(ss).H(0, 0) == rf("-1/(5*(z - 1))"));
  CHECK(minimality_report(ss).minimal);
}

TEST_CASE("Ho-Kalman round trip and Markov match") {
  for (const char* name : {"admm", "pd3o", "davis_yin", "proximal_gradient"}) {
    TransferMatrix h = builtin_tf(name).subst(binds());
    StateSpace ss = ho_kalman(h);
    CHECK(transfer_function(ss).H == h.H);
    CHECK(minimality_report(ss).minimal);
    // Markov parameters of the realization match the input's
    int n = ss.n();
    MarkovSequence want = markov(h, 2 * n);
    MarkovSequence got = markov(transfer_function(ss), 2 * n);
    CHECK(want.M0 == got.M0);
    for (int k = 1; k <= 2 * n; ++k) CHECK(want.at(k) == got.at(k));
  }
}

TEST_CASE("Ho-Kalman on a constant transfer matrix gives n = 0") {
  TransferMatrix h;
  h.H = RatMatrix(2, 2, {rf("0"), rf("1"), rf("0"), rf("0")});
  h.oracles = {{"f", OracleKind::generic, ""}, {"g", OracleKind::generic, ""}};
  StateSpace ss = ho_kalman(h);
  CHECK(ss.n() == 0);
  CHECK(transfer_function(ss).H == h.H);
}

TEST_CASE("minreal") {
  StateSpace s9 = builtin_ss("gd_nonminimal");
  StateSpace m = minreal(s9);
  CHECK(m.n() == 1);
  CHECK(transfer_function(m).H(0, 0) == rf("-1/(5*(z - 1))"));

  // already-minimal realizations keep their dimension
  StateSpace gd = builtin_ss("gradient_descent");
  CHECK(minreal(gd).n() == 1);

  // padding with an unreachable state is stripped again
  StateSpace padded;
  padded.A = RatMatrix(2, 2, {rf("1"), rf("0"), rf("0"), rf("1/2")});
  padded.B = RatMatrix(2, 1, {rf("-1/5"), rf("0")});
  padded.C = RatMatrix(1, 2, {rf("1"), rf("1")});
  padded.D = RatMatrix(1, 1);
  padded.oracles = {{"grad_f", OracleKind::generic, ""}};
  CHECK(!minimality_report(padded).controllable);
  StateSpace strip = minreal(padded);
  CHECK(strip.n() == 1);
  CHECK(transfer_function(strip).H == transfer_function(padded).H);

  CHECK_THROWS_AS((void)minreal(builtin_ss("heavy_ball")), Error);  // free parameters
}
