#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "algequiv/statespace.hpp"

namespace algequiv {

// Concrete scalar oracle used by the simulator. linear/affine run in exact
// rational arithmetic; soft_threshold and scaled_grad_quadratic run in
// floating point.
struct OracleImpl {
  enum class Kind { linear_exact, affine_exact, soft_threshold, scaled_grad_quadratic };
  Kind kind = Kind::linear_exact;
  Rational gain{0};    // linear/affine: u = gain*y (+ offset)
  Rational offset{0};  // affine only
  double lambda = 0.0;  // soft_threshold: u = sign(y) max(|y| - lambda, 0)
  double qgain = 0.0;   // scaled_grad_quadratic: u = qgain*y + qoff
  double qoff = 0.0;

  static OracleImpl linear(const Rational& gain) {
    OracleImpl o;
    o.kind = Kind::linear_exact;
    o.gain = gain;
    return o;
  }
  static OracleImpl affine(const Rational& gain, const Rational& offset) {
    OracleImpl o;
    o.kind = Kind::affine_exact;
    o.gain = gain;
    o.offset = offset;
    return o;
  }
  static OracleImpl soft_threshold(double lambda) {
    OracleImpl o;
    o.kind = Kind::soft_threshold;
    o.lambda = lambda;
    return o;
  }
  static OracleImpl quad_gradient(double q, double q0) {
    OracleImpl o;
    o.kind = Kind::scaled_grad_quadratic;
    o.qgain = q;
    o.qoff = q0;
    return o;
  }

  bool exact() const { return kind == Kind::linear_exact || kind == Kind::affine_exact; }

  Rational eval_exact(const Rational& y) const {
    switch (kind) {
      case Kind::linear_exact: return gain * y;
      case Kind::affine_exact: return gain * y + offset;
      default: raise(Errc::implicit_nonlinear, "exact evaluation of a floating-point oracle");
    }
  }
  double eval_float(double y) const {
    switch (kind) {
      case Kind::linear_exact: return gain.get_d() * y;
      case Kind::affine_exact: return gain.get_d() * y + offset.get_d();
      case Kind::soft_threshold: {
        double mag = std::abs(y) - lambda;
        return mag > 0 ? (y > 0 ? mag : -mag) : 0.0;
      }
      case Kind::scaled_grad_quadratic: return qgain * y + qoff;
    }
    return 0.0;
  }
};

// Exact trajectory: y[k], u[k], x[k] for k = 0..K-1 (x[k] is the state the
// step started from).
struct Trajectory {
  std::vector<std::vector<Rational>> y, u, x;
  int steps() const { return static_cast<int>(y.size()); }
};

struct FloatTrajectory {
  std::vector<std::vector<double>> y, u, x;
};

namespace detail {

struct NumericSystem {
  QMatrix A, B, C, D;
  int n, p;
  std::optional<std::vector<int>> order;

  explicit NumericSystem(const StateSpace& ss) {
    ss.validate();
    require(ss.is_numeric(), Errc::free_parameter,
            "simulation needs all parameters bound to rationals");
    A = rat_to_q(ss.A);
    B = rat_to_q(ss.B);
    C = rat_to_q(ss.C);
    D = rat_to_q(ss.D);
    n = ss.n();
    p = ss.p();
    order = is_explicit(ss);
  }
};

}  // namespace detail

// K steps of the closed loop x' = Ax + Bu, y = Cx + Du, u = Phi(y), exactly.
// Implicit realizations are admitted for linear/affine oracles only; the
// implicit equation is then a linear solve.
inline Trajectory simulate(const StateSpace& ss, const std::vector<OracleImpl>& oracles,
                           const std::vector<Rational>& x0, int K) {
  detail::NumericSystem sys(ss);
  require(static_cast<int>(oracles.size()) == sys.p, Errc::dimension_mismatch,
          "one oracle per channel required");
  require(static_cast<int>(x0.size()) == sys.n, Errc::dimension_mismatch, "x0 size mismatch");
  for (auto& o : oracles)
    require(o.exact(), Errc::implicit_nonlinear,
            "simulate() is exact; use simulate_float for floating-point oracles");

  QMatrix iml(sys.p, sys.p);  // I - D*diag(gain), for the implicit solve
  if (!sys.order) {
    for (int i = 0; i < sys.p; ++i)
      for (int j = 0; j < sys.p; ++j) {
        iml(i, j) = (i == j ? Rational(1) : Rational(0)) - sys.D(i, j) * oracles[j].gain;
      }
  }

  Trajectory tr;
  std::vector<Rational> x = x0;
  for (int k = 0; k < K; ++k) {
    std::vector<Rational> y(sys.p, Rational(0)), u(sys.p, Rational(0));
    if (sys.order) {
      for (int i : *sys.order) {
        Rational acc(0);
        for (int j = 0; j < sys.n; ++j) acc += sys.C(i, j) * x[j];
        for (int j = 0; j < sys.p; ++j)
          if (sgn(sys.D(i, j)) != 0) acc += sys.D(i, j) * u[j];
        y[i] = acc;
        u[i] = oracles[i].eval_exact(y[i]);
      }
    } else {
      QMatrix rhs(sys.p, 1);
      for (int i = 0; i < sys.p; ++i) {
        Rational acc(0);
        for (int j = 0; j < sys.n; ++j) acc += sys.C(i, j) * x[j];
        for (int j = 0; j < sys.p; ++j) acc += sys.D(i, j) * oracles[j].offset;
        rhs(i, 0) = acc;
      }
      QMatrix ysol = solve(iml, rhs);
      for (int i = 0; i < sys.p; ++i) {
        y[i] = ysol(i, 0);
        u[i] = oracles[i].eval_exact(y[i]);
      }
    }
    tr.y.push_back(y);
    tr.u.push_back(u);
    tr.x.push_back(x);
    std::vector<Rational> xn(sys.n, Rational(0));
    for (int i = 0; i < sys.n; ++i) {
      Rational acc(0);
      for (int j = 0; j < sys.n; ++j) acc += sys.A(i, j) * x[j];
      for (int j = 0; j < sys.p; ++j) acc += sys.B(i, j) * u[j];
      xn[i] = acc;
    }
    x = std::move(xn);
  }
  return tr;
}

// Floating-point closed loop; the realization must be explicit.
inline FloatTrajectory simulate_float(const StateSpace& ss,
                                      const std::vector<OracleImpl>& oracles,
                                      const std::vector<double>& x0, int K) {
  detail::NumericSystem sys(ss);
  require(static_cast<int>(oracles.size()) == sys.p, Errc::dimension_mismatch,
          "one oracle per channel required");
  require(static_cast<int>(x0.size()) == sys.n, Errc::dimension_mismatch, "x0 size mismatch");
  require(sys.order.has_value(), Errc::implicit_nonlinear,
          "implicit realizations are simulated with exact linear oracles only");
  auto dval = [](const Rational& r) { return r.get_d(); };
  FloatTrajectory tr;
  std::vector<double> x = x0;
  for (int k = 0; k < K; ++k) {
    std::vector<double> y(sys.p, 0.0), u(sys.p, 0.0);
    for (int i : *sys.order) {
      double acc = 0;
      for (int j = 0; j < sys.n; ++j) acc += dval(sys.C(i, j)) * x[j];
      for (int j = 0; j < sys.p; ++j) acc += dval(sys.D(i, j)) * u[j];
      y[i] = acc;
      u[i] = oracles[i].eval_float(y[i]);
    }
    tr.y.push_back(y);
    tr.u.push_back(u);
    tr.x.push_back(x);
    std::vector<double> xn(sys.n, 0.0);
    for (int i = 0; i < sys.n; ++i) {
      double acc = 0;
      for (int j = 0; j < sys.n; ++j) acc += dval(sys.A(i, j)) * x[j];
      for (int j = 0; j < sys.p; ++j) acc += dval(sys.B(i, j)) * u[j];
      xn[i] = acc;
    }
    x = std::move(xn);
  }
  return tr;
}

// Open loop: the input sequence is injected directly, no oracle feedback.
inline Trajectory simulate_open_loop(const StateSpace& ss,
                                     const std::vector<std::vector<Rational>>& us,
                                     const std::vector<Rational>& x0) {
  detail::NumericSystem sys(ss);
  require(static_cast<int>(x0.size()) == sys.n, Errc::dimension_mismatch, "x0 size mismatch");
  Trajectory tr;
  std::vector<Rational> x = x0;
  for (auto& u : us) {
    require(static_cast<int>(u.size()) == sys.p, Errc::dimension_mismatch, "input size");
    std::vector<Rational> y(sys.p, Rational(0));
    for (int i = 0; i < sys.p; ++i) {
      Rational acc(0);
      for (int j = 0; j < sys.n; ++j) acc += sys.C(i, j) * x[j];
      for (int j = 0; j < sys.p; ++j) acc += sys.D(i, j) * u[j];
      y[i] = acc;
    }
    tr.y.push_back(y);
    tr.u.push_back(u);
    tr.x.push_back(x);
    std::vector<Rational> xn(sys.n, Rational(0));
    for (int i = 0; i < sys.n; ++i) {
      Rational acc(0);
      for (int j = 0; j < sys.n; ++j) acc += sys.A(i, j) * x[j];
      for (int j = 0; j < sys.p; ++j) acc += sys.B(i, j) * u[j];
      xn[i] = acc;
    }
    x = std::move(xn);
  }
  return tr;
}

// Truncated series of O(z) x0 + H(z) u(z), termwise. Cross-validates the
// simulator against the z-domain input/output decomposition.
inline std::vector<std::vector<Rational>> series_output(const StateSpace& ss,
                                                        const std::vector<Rational>& x0,
                                                        const std::vector<std::vector<Rational>>& us,
                                                        int K) {
  ss.validate();
  require(ss.is_numeric(), Errc::free_parameter, "series_output needs bound parameters");
  TransferMatrix h = transfer_function(ss);
  RatMatrix o = initial_response(ss);
  int p = ss.p(), n = ss.n();
  std::vector<std::vector<std::vector<Rational>>> hs(p), os(p);
  for (int i = 0; i < p; ++i) {
    hs[i].resize(p);
    os[i].resize(n);
    for (int j = 0; j < p; ++j) hs[i][j] = h.H(i, j).series(K);
    for (int j = 0; j < n; ++j) os[i][j] = o(i, j).series(K);
  }
  std::vector<std::vector<Rational>> ys(K, std::vector<Rational>(p, Rational(0)));
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < p; ++i) {
      Rational acc(0);
      for (int j = 0; j < n; ++j) acc += os[i][j][k] * x0[j];
      for (int l = 0; l <= k; ++l) {
        if (l >= static_cast<int>(us.size())) break;
        for (int j = 0; j < p; ++j) acc += hs[i][j][k - l] * us[l][j];
      }
      ys[k][i] = acc;
    }
  return ys;
}

// Recenters an oracle at a fixed point: Phi~(y) = Phi(y + y*) - u*.
inline OracleImpl normalize_oracle(const OracleImpl& oracle, const Rational& y_star,
                                   const Rational& u_star) {
  require(oracle.exact(), Errc::unsupported_pair,
          "normalize_oracle supports exact linear/affine oracles");
  require(oracle.eval_exact(y_star) == u_star, Errc::fixed_point_mismatch,
          "u_star is not the oracle value at y_star");
  Rational new_offset = oracle.gain * y_star +
                        (oracle.kind == OracleImpl::Kind::affine_exact ? oracle.offset
                                                                       : Rational(0)) -
                        u_star;
  if (algequiv::is_zero(new_offset)) return OracleImpl::linear(oracle.gain);
  return OracleImpl::affine(oracle.gain, new_offset);
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<std::vector<Rational>> random_inputs(int K, int p, std::mt19937_64& rng) {
  std::vector<std::vector<Rational>> us(K, std::vector<Rational>(p));
  for (auto& u : us)
    for (auto& v : u) v = random_rational(rng);
  return us;
}

}  // namespace detail

// Same input-output map check: identical outputs under (a) shared random
// rational open-loop inputs from zero states and (b) closed-loop oracle
// feedback, with initial conditions matched through the similarity transform
// when both realizations are minimal, zero states otherwise.
inline bool check_io_equiv_empirical(const StateSpace& ss1, const StateSpace& ss2,
                                     const std::vector<OracleImpl>& oracles, int K,
                                     std::uint64_t seed = 1) {
  require(ss1.p() == ss2.p(), Errc::dimension_mismatch, "channel counts differ");
  for (auto& o : oracles)
    require(o.exact(), Errc::implicit_nonlinear, "empirical checks run in exact mode");
  std::mt19937_64 rng(seed);
  auto us = detail::random_inputs(K, ss1.p(), rng);
  std::vector<Rational> z1(ss1.n(), Rational(0)), z2(ss2.n(), Rational(0));
  if (simulate_open_loop(ss1, us, z1).y != simulate_open_loop(ss2, us, z2).y) return false;

  std::vector<Rational> x1 = z1, x2 = z2;
  if (ss1.n() == ss2.n()) {
    try {
      std::vector<Rational> cand(ss2.n());
      for (auto& v : cand) v = detail::random_rational(rng);
      x1 = match_initial_condition(ss1, ss2, cand);
      x2 = cand;
    } catch (const Error&) {
      x1 = z1;
      x2 = z2;  // fall back to zero initial states
    }
  }
  return simulate(ss1, oracles, x1, K).y == simulate(ss2, oracles, x2, K).y;
}

// Open-loop commutation check of H1 Delta_m = Delta_m H2: ss1 sees the
// channel-wise delayed input, ss2 the raw input; output channel i of ss1
// must equal output channel i of ss2 delayed by m_i. Inputs are oracle
// images of random rational points.
inline bool check_shift_equiv_empirical(const StateSpace& ss1, const StateSpace& ss2,
                                        const std::vector<int>& m,
                                        const std::vector<OracleImpl>& oracles, int K,
                                        std::uint64_t seed = 1) {
  int p = ss1.p();
  require(ss2.p() == p && static_cast<int>(m.size()) == p, Errc::dimension_mismatch,
          "channel counts differ");
  require(static_cast<int>(oracles.size()) == p, Errc::dimension_mismatch, "oracle count");
  for (auto& o : oracles)
    require(o.exact(), Errc::implicit_nonlinear, "empirical checks run in exact mode");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> us(K, std::vector<Rational>(p));
  for (auto& u : us)
    for (int j = 0; j < p; ++j) u[j] = oracles[j].eval_exact(detail::random_rational(rng));
  std::vector<std::vector<Rational>> delayed(K, std::vector<Rational>(p, Rational(0)));
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < p; ++j)
      if (k >= m[j]) delayed[k][j] = us[k - m[j]][j];
  std::vector<Rational> z1(ss1.n(), Rational(0)), z2(ss2.n(), Rational(0));
  Trajectory t1 = simulate_open_loop(ss1, delayed, z1);
  Trajectory t2 = simulate_open_loop(ss2, us, z2);
  for (int k = 0; k < K; ++k)
    for (int i = 0; i < p; ++i) {
      Rational expect = k >= m[i] ? t2.y[k - m[i]][i] : Rational(0);
      if (t1.y[k][i] != expect) return false;
    }
  return true;
}

}  // namespace algequiv
