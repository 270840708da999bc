#include <doctest.h>

#include <cmath>

#include "algequiv/corpus.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/sim.hpp"

using namespace algequiv;

namespace {
const std::map<std::string, Rational> kEta14 = {{"eta", Rational(1, 4)}};
}

TEST_CASE("gradient descent against a linear oracle contracts geometrically") {
  StateSpace gd = builtin_ss("gradient_descent");
  Trajectory tr = simulate(gd, {OracleImpl::linear(Rational(2))}, {Rational(1)}, 12);
  Rational expect(1);
  for (int k = 0; k < 12; ++k) {
    CHECK(tr.y[k][0] == expect);
    expect *= Rational(3, 5);
  }
}

TEST_CASE("zero initial state stays at the origin") {
  StateSpace dr = builtin_ss("douglas_rachford");
  Trajectory tr = simulate(dr, {OracleImpl::linear(Rational(1, 3)),
                                OracleImpl::linear(Rational(-1, 2))},
                           {Rational(0), Rational(0), Rational(0)}, 8);
  for (auto& y : tr.y)
    for (auto& v : y) CHECK(v == 0);
}

TEST_CASE("implicit realizations solve the linear loop exactly") {
  // x' = x - t*phi(x') with phi = 2y and t = 1/2 halves the state each step
  StateSpace imp = lower_text(
                       "algorithm imp(oracles phi; params t) implicit {\n"
                       "  x[k+1] = x[k] - t*phi(x[k+1]);\n"
                       "}")
                       .subst(std::map<std::string, Rational>{{"t", Rational(1, 2)}});
  Trajectory tr = simulate(imp, {OracleImpl::linear(Rational(2))}, {Rational(1)}, 5);
  CHECK(tr.x[1][0] == Rational(1, 2));
  CHECK(tr.x[4][0] == Rational(1, 16));
  // nonlinear oracles are rejected on implicit loops
  CHECK_THROWS_AS((void)simulate_float(imp, {OracleImpl::soft_threshold(0.1)}, {1.0}, 3),
                  Error);
}

TEST_CASE("matched initializations give identical closed-loop queries") {
  StateSpace a1 = builtin_ss("popov").subst(kEta14);
  StateSpace a3 = builtin_ss("omd").subst(kEta14);
  std::vector<Rational> x3{Rational(2), Rational(-1)};
  auto x1 = match_initial_condition(a1, a3, x3);
  Trajectory t1 = simulate(a1, {OracleImpl::linear(Rational(1, 2))}, x1, 20);
  Trajectory t3 = simulate(a3, {OracleImpl::linear(Rational(1, 2))}, x3, 20);
  CHECK(t1.y == t3.y);
  CHECK(t1.u == t3.u);
}

TEST_CASE("empirical input-output equivalence") {
  StateSpace a1 = builtin_ss("popov").subst(kEta14);
  StateSpace a2 = builtin_ss("past_extragradient").subst(kEta14);
  StateSpace gd = builtin_ss("gradient_descent");
  std::vector<OracleImpl> one{OracleImpl::linear(Rational(1, 2))};
  CHECK(check_io_equiv_empirical(a1, a2, one, 25, 4));
  CHECK(check_io_equiv_empirical(a1, a1, one, 10, 4));
  CHECK(!check_io_equiv_empirical(a1, gd, one, 25, 4));
}

TEST_CASE("empirical shift equivalence") {
  StateSpace dr = builtin_ss("douglas_rachford"), ad = builtin_ss("admm");
  std::vector<OracleImpl> two{OracleImpl::linear(Rational(1, 3)),
                              OracleImpl::linear(Rational(-2, 5))};
  CHECK(check_shift_equiv_empirical(dr, ad, {1, 0}, two, 25, 9));
  CHECK(!check_shift_equiv_empirical(dr, ad, {0, 1}, two, 25, 9));
  // m = 0 reduces to the open-loop part of input-output equivalence
  CHECK(check_shift_equiv_empirical(dr, dr, {0, 0}, two, 15, 9));
}

TEST_CASE("oracle normalization") {
  OracleImpl aff = OracleImpl::affine(Rational(2), Rational(3));
  OracleImpl norm = normalize_oracle(aff, Rational(-3, 2), Rational(0));
  CHECK(norm.kind == OracleImpl::Kind::linear_exact);
  CHECK(norm.gain == 2);
  OracleImpl lin = OracleImpl::linear(Rational(5, 7));
  OracleImpl same = normalize_oracle(lin, Rational(0), Rational(0));
  CHECK(same.gain == lin.gain);
  CHECK(same.kind == OracleImpl::Kind::linear_exact);
  CHECK_THROWS_AS((void)normalize_oracle(aff, Rational(1), Rational(0)), Error);
}

TEST_CASE("fixed-point normalization shifts trajectories by constants") {
  // gradient descent with the affine oracle u = 2y + 3: the fixed point is
  // u* = 0, y* = x* = -3/2; the normalized system evolves in recentered
  // coordinates.
  StateSpace gd = builtin_ss("gradient_descent");
  OracleImpl aff = OracleImpl::affine(Rational(2), Rational(3));
  Rational xstar(-3, 2), ystar(-3, 2), ustar(0);
  OracleImpl norm = normalize_oracle(aff, ystar, ustar);
  Rational x0(2);
  Trajectory orig = simulate(gd, {aff}, {x0}, 15);
  Trajectory tilde = simulate(gd, {norm}, {x0 - xstar}, 15);
  for (int k = 0; k < 15; ++k) {
    CHECK(orig.y[k][0] == tilde.y[k][0] + ystar);
    CHECK(orig.u[k][0] == tilde.u[k][0] + ustar);
    CHECK(orig.x[k][0] == tilde.x[k][0] + xstar);
  }
}

TEST_CASE("simulation agrees with the z-domain series") {
  StateSpace ad = builtin_ss("admm");
  std::mt19937_64 rng(31);
  std::vector<Rational> x0(3);
  for (auto& v : x0) v = detail::random_rational(rng);
  std::vector<std::vector<Rational>> us(15, std::vector<Rational>(2, Rational(0)));
  for (int k = 0; k < 5; ++k)
    for (auto& v : us[k]) v = detail::random_rational(rng);
  CHECK(series_output(ad, x0, us, 15) == simulate_open_loop(ad, us, x0).y);
}

TEST_CASE("floating-point mode runs proximal gradient with a soft threshold") {
  // minimize (Q/2) y^2 + q y + lambda |y|; prox-gradient iterates converge to
  // the soft-thresholded stationary point.
  StateSpace pg = builtin_ss("proximal_gradient")
                      .subst(std::map<std::string, Rational>{{"t", Rational(1, 2)}});
  std::vector<OracleImpl> oracles{OracleImpl::quad_gradient(1.0, -2.0),
                                  OracleImpl::soft_threshold(0.25)};
  FloatTrajectory tr = simulate_float(pg, oracles, {3.0}, 80);
  double x = tr.x.back()[0];
  // the iteration is x <- soft(x/2 + 1; 1/4), whose fixed point is 3/2
  CHECK(std::abs(x - 1.5) < 1e-9);
  // each recorded step satisfies y = Cx + Du within floating tolerance
  for (std::size_t k = 0; k < tr.y.size(); ++k)
    CHECK(std::abs(tr.y[k][0] - tr.x[k][0]) < 1e-12);
}

TEST_CASE("dimension checks") {
  StateSpace gd = builtin_ss("gradient_descent");
  CHECK_THROWS_AS((void)simulate(gd, {}, {Rational(1)}, 3), Error);
  CHECK_THROWS_AS((void)simulate(gd, {OracleImpl::linear(Rational(1))}, {}, 3), Error);
  CHECK_THROWS_AS(
      (void)simulate(builtin_ss("heavy_ball"), {OracleImpl::linear(Rational(1))},
                     {Rational(0), Rational(0)}, 3),
      Error);  // unbound parameters
}
