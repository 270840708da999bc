#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "algequiv/corpus.hpp"
#include "algequiv/equiv.hpp"
#include "algequiv/expr.hpp"
#include "algequiv/lft.hpp"
#include "algequiv/realize.hpp"
#include "algequiv/sim.hpp"

// End-to-end verification battery: reproduces every printed transfer
// function and realization from the built-in corpus, the shift and LFT
// decisions, minimal realizations, the property suites, and the empirical
// simulation cross-checks. Exposed both as the acceptance test binary and
// as `algequiv corpus --verify`.

namespace algequiv {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace verify_detail {

struct Runner {
  std::vector<CheckResult> results;
  void check(const std::string& name, const std::function<bool(std::string&)>& body) {
    CheckResult r;
    r.name = name;
    try {
      std::string detail;
      r.pass = body(detail);
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
};

inline RatMatrix mat(const std::vector<std::vector<std::string>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  RatMatrix out(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) out(i, j) = parse_ratfunc(rows[i][j]);
  return out;
}

inline bool tf_is(const std::string& name, const std::vector<std::vector<std::string>>& rows,
                  std::string& why) {
  TransferMatrix tf = builtin_tf(name);
  RatMatrix want = mat(rows);
  if (tf.H == want) return true;
  why = name + " does not match its printed transfer function";
  return false;
}

// Fixed parameter bindings used whenever a concrete instance is needed.
inline const std::map<std::string, Rational>& bindings() {
  static const std::map<std::string, Rational> b = {
      {"eta", Rational(1, 3)},  {"alpha", Rational(1, 4)}, {"beta", Rational(1, 2)},
      {"gamma", Rational(1, 3)}, {"nu", Rational(2, 3)},   {"s", Rational(3, 4)},
      {"mu", Rational(1, 2)},   {"lambda", Rational(2, 5)}, {"t", Rational(1, 2)},
      {"tau", Rational(1, 2)},  {"sigma", Rational(1, 3)}, {"a", Rational(1)},
      {"w", Rational(4, 5)},    {"m", Rational(1)}};
  return b;
}

inline std::vector<OracleImpl> random_oracles(int p, std::mt19937_64& rng) {
  std::vector<OracleImpl> out;
  for (int i = 0; i < p; ++i) {
    Rational g = detail::random_rational(rng);
    if (algequiv::is_zero(g)) g = Rational(1, 2);
    out.push_back(OracleImpl::linear(g));
  }
  return out;
}

// Parameter bindings that put each unified-momentum method into the common
// form -a(z - c)/((z - 1)(z - b)), solved from the printed transfer
// functions.
inline std::map<std::string, Rational> momentum_bindings(const std::string& name,
                                                         const Rational& a, const Rational& b,
                                                         const Rational& c) {
  std::map<std::string, Rational> out;
  if (name == "tmm") {
    Rational gamma = c / (1 - c);
    out = {{"beta", b}, {"gamma", gamma}, {"alpha", a / (1 + gamma)}};
  } else if (name == "qhm") {
    Rational nu = (b - c) / (b * (1 - c));
    out = {{"beta", b}, {"nu", nu}, {"alpha", a / (1 - b * nu)}};
  } else if (name == "sum_momentum") {
    Rational s = c / (b * (1 - c));
    out = {{"beta", b}, {"s", s}, {"alpha", a / (1 + b * s)}};
  } else if (name == "usm_momentum") {
    Rational lambda = c / (b * (1 - c));
    out = {{"mu", b}, {"lambda", lambda}, {"eta", a / (1 + lambda * b)}};
  }
  return out;
}

}  // namespace verify_detail

inline std::vector<CheckResult> run_acceptance() {
  using namespace verify_detail;
  Runner r;

  // -------------------------------------------------------------- criterion 1
  r.check("1a transfer golden set: one-oracle methods", [](std::string& why) {
    const std::string h14 = "-eta*(2*z - 1)/(z*(z - 1))";
    for (const char* n : {"popov", "past_extragradient", "omd", "reflected_gradient"})
      if (builtin_tf(n).H(0, 0) != parse_ratfunc(h14)) {
        why = std::string(n) + " transfer function mismatch";
        return false;
      }
    struct Row {
      const char* name;
      const char* tf;
    };
    const Row rows[] = {
        {"unit_momentum_a", "(-2*z + 1)/(10*(z - 1)^2)"},
        {"unit_momentum_b", "(-2*z + 1)/(10*(z - 1)^2)"},
        {"gd_nonminimal", "-1/(5*(z - 1))"},
        {"gradient_descent", "-1/(5*(z - 1))"},
        {"heavy_ball", "-alpha*z/((z - 1)*(z - beta))"},
        {"nesterov", "-alpha*((1 + beta)*z - beta)/((z - 1)*(z - beta))"},
        {"tmm", "-alpha*((1 + gamma)*z - gamma)/((z - 1)*(z - beta))"},
        {"qhm", "-alpha*((1 - beta*nu)*z - beta*(1 - nu))/((z - 1)*(z - beta))"},
        {"sum_momentum", "-alpha*((1 + beta*s)*z - beta*s)/((z - 1)*(z - beta))"},
        {"usm_momentum", "-eta*((1 + lambda*mu)*z - lambda*mu)/((z - 1)*(z - mu))"},
        {"nids", "-alpha*(z - 1)*w/(z^2 - 2*z*w + w)"},
        {"exact_diffusion", "-alpha*(z - 1)*w/(z^2 - 2*z*w + w)"},
    };
    for (auto& row : rows)
      if (builtin_tf(row.name).H(0, 0) != parse_ratfunc(row.tf)) {
        why = std::string(row.name) + " transfer function mismatch";
        return false;
      }
    return true;
  });

  r.check("1b transfer golden set: splitting methods", [](std::string& why) {
    if (!tf_is("douglas_rachford",
               {{"-1/(z - 1)", "1/(z - 1)"}, {"(2*z - 1)/(z - 1)", "-1/(z - 1)"}}, why))
      return false;
    if (!tf_is("admm", {{"-1/(z - 1)", "z/(z - 1)"}, {"(2*z - 1)/(z*(z - 1))", "-1/(z - 1)"}},
               why))
      return false;
    if (!tf_is("davis_yin",
               {{"-1/(z - 1)", "1/(z - 1)", "0"},
                {"(2*z - 1)/(z - 1)", "-1/(z - 1)", "-t"},
                {"1", "0", "0"}},
               why))
      return false;
    return true;
  });

  r.check("1c transfer golden set: PD3O family", [](std::string& why) {
    if (!tf_is("pd3o",
               {{"1/z", "-tau*a/z", "-tau/z"},
                {"sigma*(2*z - 1)*a/z", "1/z", "-sigma*tau*(z - 1)*a/z"},
                {"1", "0", "0"}},
               why))
      return false;
    std::vector<std::vector<std::string>> hb = {
        {"1/z", "-tau*a", "-tau/z"},
        {"sigma*(2*z - 1)*a/z^2", "1/z", "-sigma*tau*(z - 1)*a/z^2"},
        {"1", "0", "0"}};
    if (!tf_is("pd3o_reform", hb, why)) return false;
    if (!tf_is("pd3o_reform_d", hb, why)) return false;
    if (!tf_is("pd3o_reform_c",
               {{"1/z", "-tau*a", "-tau"},
                {"sigma*(2*z - 1)*a/z^2", "1/z", "-sigma*tau*(z - 1)*a/z"},
                {"1/z", "0", "0"}},
               why))
      return false;
    return true;
  });

  r.check("1d transfer golden set: prox/subdifferential family", [](std::string& why) {
    if (!tf_is("proximal_gradient", {{"0", "1/z"}, {"-t", "1/z"}}, why)) return false;
    if (!tf_is("proximal_gradient_conj",
               {{"-t/(z - 1)", "-t/(z - 1)"}, {"-z/(z - 1)", "-1/(z - 1)"}}, why))
      return false;
    if (!tf_is("proximal_gradient_subdiff",
               {{"-t/(z - 1)", "-t/(z - 1)"}, {"-t*z/(z - 1)", "-t*z/(z - 1)"}}, why))
      return false;
    if (!tf_is("proximal_gradient_subdiff_conj",
               {{"0", "1/z"}, {"-1", "(1 - z)/(t*z)"}}, why))
      return false;
    return true;
  });

  // -------------------------------------------------------------- criterion 2
  r.check("2 realization golden set (entry-for-entry)", [](std::string& why) {
    StateSpace rg = builtin_ss("reflected_gradient");
    bool ok = rg.A == mat({{"1", "0"}, {"1", "0"}}) && rg.B == mat({{"-eta"}, {"0"}}) &&
              rg.C == mat({{"2", "-1"}}) && rg.D == mat({{"0"}}) &&
              rg.state_names == std::vector<std::string>({"x1", "x1__1"});
    if (!ok) {
      why = "reflected gradient realization mismatch";
      return false;
    }
    StateSpace ad = builtin_ss("admm");
    ok = ad.A == mat({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "1"}}) &&
         ad.B == mat({{"0", "1"}, {"1", "0"}, {"-1", "1"}}) &&
         ad.C == mat({{"0", "0", "1"}, {"0", "1", "-1"}}) &&
         ad.D == mat({{"0", "1"}, {"0", "0"}}) &&
         ad.state_names == std::vector<std::string>({"xi1", "xi2", "xi3"});
    if (!ok) {
      why = "ADMM realization mismatch";
      return false;
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 3
  r.check("3 shift decisions and enumeration", [](std::string& why) {
    auto c1 = shift_equivalent(builtin_tf("douglas_rachford"), builtin_tf("admm"));
    if (!c1 || c1->m.m != std::vector<int>({1, 0})) {
      why = "DR ~ ADMM certificate is not m=(1,0)";
      return false;
    }
    auto c2 = shift_equivalent(builtin_tf("pd3o_reform"), builtin_tf("pd3o"));
    if (!c2 || c2->m.m != std::vector<int>({0, 1, 0})) {
      why = "PD3O-reform ~ PD3O certificate is not m=(0,1,0)";
      return false;
    }
    if (!shift_equivalent(builtin_tf("pd3o"), builtin_tf("pd3o_reform"))) {
      why = "shift equivalence is not symmetric on the PD3O pair";
      return false;
    }
    if (!oracle_equivalent(builtin_tf("pd3o_reform"), builtin_tf("pd3o_reform_d"))) {
      why = "PD3O-reform and PD3O-reform-d are not oracle-equivalent";
      return false;
    }
    auto en = enumerate_shift_class(builtin_tf("pd3o"), 3);
    std::vector<std::vector<int>> got;
    for (auto& [ms, h] : en) got.push_back(ms.m);
    std::vector<std::vector<int>> want = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1}};
    if (got != want) {
      why = "PD3O shift class with cap 3 is not {(0,0,0),(0,1,0),(0,1,1)}";
      return false;
    }
    if (en[1].second.H != builtin_tf("pd3o_reform").H ||
        en[2].second.H != builtin_tf("pd3o_reform_c").H) {
      why = "enumerated conjugates do not match the printed reformulations";
      return false;
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 4
  r.check("4 LFT checks", [](std::string& why) {
    RatFunc t = RatFunc::param("t");
    TransferMatrix dy = builtin_tf("davis_yin");
    TransferMatrix pd = builtin_tf("pd3o").subst(
        std::map<std::string, RatFunc>{{"a", RatFunc(1L)}, {"tau", t}, {"sigma", t.inverse()}});
    LftMatrix m = embed_common(prox_table(OracleKind::prox, OracleKind::prox_conj, t), 2, 3);
    if (!lft_equivalent(dy, pd, m)) {
      why = "Davis-Yin vs PD3O zero-product identity fails";
      return false;
    }
    TransferMatrix cp = builtin_tf("chambolle_pock")
                            .subst(std::map<std::string, Rational>{
                                {"tau", Rational(1)}, {"sigma", Rational(1)}, {"m", Rational(1)}});
    LftMatrix m1 = embed_common(
        prox_table(OracleKind::prox, OracleKind::prox_conj, RatFunc(1L)), 2, 2);
    if (!lft_equivalent(builtin_tf("douglas_rachford"), cp, m1)) {
      why = "DR vs Chambolle-Pock at tau=sigma=1, M=I fails";
      return false;
    }
    TransferMatrix pg = builtin_tf("proximal_gradient");
    if (prox_family_transform(pg, 2, OracleKind::prox_conj).H !=
            builtin_tf("proximal_gradient_conj").H ||
        prox_family_transform(pg, 2, OracleKind::subdiff).H !=
            builtin_tf("proximal_gradient_subdiff").H ||
        prox_family_transform(pg, 2, OracleKind::subdiff_conj).H !=
            builtin_tf("proximal_gradient_subdiff_conj").H ||
        prox_family_transform(pg, 2, OracleKind::prox).H != pg.H) {
      why = "prox family transform does not reproduce all four printed forms";
      return false;
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 5
  r.check("5 unified-momentum parameterization", [](std::string& why) {
    const std::vector<std::pair<Rational, std::pair<Rational, Rational>>> targets = {
        {Rational(3, 2), {Rational(1, 2), Rational(1, 3)}},
        {Rational(2), {Rational(1, 3), Rational(1, 4)}},
        {Rational(5, 7), {Rational(2, 5), Rational(1, 6)}}};
    for (auto& [a, bc] : targets) {
      auto [b, c] = bc;
      std::ostringstream target;
      target << "-(" << a.get_str() << ")*(z - (" << c.get_str() << "))/((z - 1)*(z - ("
             << b.get_str() << ")))";
      RatFunc want = parse_ratfunc(target.str());
      for (const char* n : {"tmm", "qhm", "sum_momentum", "usm_momentum"}) {
        RatFunc got = builtin_tf(n).H(0, 0).subst(momentum_bindings(n, a, b, c));
        if (got != want) {
          why = std::string(n) + " does not hit the target form at computed bindings";
          return false;
        }
      }
    }
    // QHM at nu = 1 is the heavy-ball form with alpha -> alpha(1 - beta).
    RatFunc qhm1 = builtin_tf("qhm").H(0, 0).subst(
        std::map<std::string, Rational>{{"nu", Rational(1)}});
    RatFunc hb = builtin_tf("heavy_ball").H(0, 0).subst(std::map<std::string, RatFunc>{
        {"alpha", parse_ratfunc("alpha*(1 - beta)")}});
    if (qhm1 != hb) {
      why = "QHM at nu=1 does not reduce to the heavy-ball form";
      return false;
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 6
  r.check("6 minimal realization (Ho-Kalman)", [](std::string& why) {
    TransferMatrix h9;
    h9.H = RatMatrix(1, 1, {parse_ratfunc("(-z + 2)/(5*(z^2 - 3*z + 2))")});
    h9.oracles = {{"grad_f", OracleKind::generic, ""}};
    StateSpace ss = ho_kalman(h9);
    if (ss.n() != 1 || transfer_function(ss).H(0, 0) != parse_ratfunc("-1/(5*(z - 1))")) {
      why = "ho_kalman on the pre-cancellation form is not the 1-state realization";
      return false;
    }
    for (auto& e : corpus()) {
      TransferMatrix h = builtin_tf(e.name).subst(bindings());
      StateSpace s = ho_kalman(h);
      if (transfer_function(s).H != h.H) {
        why = "round trip tf(ho_kalman(tf)) failed for " + e.name;
        return false;
      }
      MinimalityReport rep = minimality_report(s);
      if (!rep.minimal) {
        why = "ho_kalman output is not minimal for " + e.name;
        return false;
      }
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 7
  r.check("7a shift equivalence is an equivalence relation", [](std::string& why) {
    std::mt19937_64 rng(11);
    for (const char* base : {"douglas_rachford", "admm", "pd3o"}) {
      TransferMatrix h = builtin_tf(base);
      auto cls = enumerate_shift_class(h, 3);
      if (cls.empty()) {
        why = "empty shift class";
        return false;
      }
      for (int trial = 0; trial < 4; ++trial) {
        auto& h1 = cls[rng() % cls.size()].second;
        auto& h2 = cls[rng() % cls.size()].second;
        auto& h3 = cls[rng() % cls.size()].second;
        auto refl = shift_equivalent(h1, h1);
        if (!refl || !refl->m.is_zero()) {
          why = "reflexivity fails";
          return false;
        }
        auto c12 = shift_equivalent(h1, h2);
        auto c21 = shift_equivalent(h2, h1);
        if (!c12 || !c21) {
          why = "symmetry fails within a shift class";
          return false;
        }
        auto c23 = shift_equivalent(h2, h3);
        auto c13 = shift_equivalent(h1, h3);
        if (!c23 || !c13) {
          why = "transitivity fails within a shift class";
          return false;
        }
      }
    }
    return true;
  });

  r.check("7b transfer function invariant under random state transforms",
          [](std::string& why) {
    std::mt19937_64 rng(23);
    for (const char* name : {"admm", "heavy_ball", "pd3o", "unit_momentum_a"}) {
      StateSpace ss = builtin_ss(name);
      int n = ss.n();
      for (int trial = 0; trial < 3; ++trial) {
        RatMatrix t(n, n);
        do {
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              t(i, j) = RatFunc(detail::random_rational(rng));
        } while (!is_invertible(t));
        StateSpace tr = apply_state_transform(ss, t);
        if (transfer_function(tr).H != transfer_function(ss).H) {
          why = std::string("state-transform invariance fails for ") + name;
          return false;
        }
      }
    }
    return true;
  });

  r.check("7c Theorem-1 dual identity agreement on randomized triples",
          [](std::string& why) {
    std::mt19937_64 rng(37);
    RatFunc t = RatFunc::param("t");
    for (const char* name : {"proximal_gradient", "davis_yin"}) {
      TransferMatrix h2 = builtin_tf(name);
      int p = h2.p();
      for (int trial = 0; trial < 3; ++trial) {
        LftMatrix m =
            embed_common(prox_table(OracleKind::prox_conj, OracleKind::prox, t), p, p);
        TransferMatrix h1 = lft_transform(h2, m);
        // lft_equivalent itself asserts that the primal and dual identities
        // agree; exercise it on both a true and a perturbed pair.
        if (!lft_equivalent(h1, h2, m)) {
          why = "transformed pair does not satisfy the identity";
          return false;
        }
        TransferMatrix bad = h1;
        int i = static_cast<int>(rng() % p), j = static_cast<int>(rng() % p);
        bad.H(i, j) = bad.H(i, j) + RatFunc(1L);
        if (lft_equivalent(bad, h2, m)) {
          why = "perturbed pair still satisfies the identity";
          return false;
        }
      }
    }
    return true;
  });

  r.check("7d simulation matches the z-domain series for K=15", [](std::string& why) {
    std::mt19937_64 rng(53);
    for (const char* name : {"admm", "gradient_descent", "pd3o"}) {
      StateSpace ss = builtin_ss(name).subst(bindings());
      int p = ss.p(), n = ss.n();
      std::vector<Rational> x0(n);
      for (auto& v : x0) v = detail::random_rational(rng);
      std::vector<std::vector<Rational>> us(6, std::vector<Rational>(p));
      for (auto& u : us)
        for (auto& v : u) v = detail::random_rational(rng);
      us.resize(15, std::vector<Rational>(p, Rational(0)));  // finitely supported input
      if (series_output(ss, x0, us, 15) != simulate_open_loop(ss, us, x0).y) {
        why = std::string("series/simulation mismatch for ") + name;
        return false;
      }
    }
    return true;
  });

  // -------------------------------------------------------------- criterion 8
  r.check("8a equivalences confirmed by exact simulation (5 seeds, K=25)",
          [](std::string& why) {
    const std::vector<std::pair<std::string, std::string>> eq_pairs = {
        {"popov", "past_extragradient"}, {"popov", "omd"},
        {"popov", "reflected_gradient"}, {"unit_momentum_a", "unit_momentum_b"},
        {"gd_nonminimal", "gradient_descent"}, {"pd3o_reform", "pd3o_reform_d"},
        {"nids", "exact_diffusion"}};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed * 101);
      for (auto& [a, b] : eq_pairs) {
        StateSpace s1 = builtin_ss(a).subst(bindings());
        StateSpace s2 = builtin_ss(b).subst(bindings());
        auto oracles = random_oracles(s1.p(), rng);
        if (!check_io_equiv_empirical(s1, s2, oracles, 25, seed)) {
          why = a + " vs " + b + " not confirmed at seed " + std::to_string(seed);
          return false;
        }
      }
      // Momentum methods at bindings computed from the printed forms.
      Rational a(3, 2), b(1, 2), c(1, 3);
      StateSpace tm = builtin_ss("tmm").subst(momentum_bindings("tmm", a, b, c));
      for (const char* other : {"qhm", "sum_momentum", "usm_momentum"}) {
        StateSpace so = builtin_ss(other).subst(momentum_bindings(other, a, b, c));
        auto oracles = random_oracles(1, rng);
        if (!check_io_equiv_empirical(tm, so, oracles, 25, seed)) {
          why = std::string("tmm vs ") + other + " not confirmed at seed " +
                std::to_string(seed);
          return false;
        }
      }
    }
    return true;
  });

  r.check("8b shift certificates confirmed by open-loop simulation", [](std::string& why) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed * 211);
      StateSpace dr = builtin_ss("douglas_rachford"), ad = builtin_ss("admm");
      if (!check_shift_equiv_empirical(dr, ad, {1, 0}, random_oracles(2, rng), 25, seed)) {
        why = "DR ~ ADMM with m=(1,0) not confirmed at seed " + std::to_string(seed);
        return false;
      }
      if (check_shift_equiv_empirical(dr, ad, {0, 1}, random_oracles(2, rng), 25, seed)) {
        why = "wrong shift (0,1) accepted at seed " + std::to_string(seed);
        return false;
      }
      StateSpace p0 = builtin_ss("pd3o").subst(bindings());
      StateSpace pb = builtin_ss("pd3o_reform").subst(bindings());
      if (!check_shift_equiv_empirical(pb, p0, {0, 1, 0}, random_oracles(3, rng), 25, seed)) {
        why = "PD3O-reform ~ PD3O with m=(0,1,0) not confirmed at seed " +
              std::to_string(seed);
        return false;
      }
    }
    return true;
  });

  r.check("8c inequivalences witnessed by trajectory divergence", [](std::string& why) {
    const std::vector<std::pair<std::string, std::string>> neq_pairs = {
        {"douglas_rachford", "admm"},
        {"heavy_ball", "nesterov"},
        {"pd3o", "pd3o_reform"},
        {"popov", "gradient_descent"}};
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed * 307);
      for (auto& [a, b] : neq_pairs) {
        StateSpace s1 = builtin_ss(a).subst(bindings());
        StateSpace s2 = builtin_ss(b).subst(bindings());
        if (check_io_equiv_empirical(s1, s2, random_oracles(s1.p(), rng), 25, seed)) {
          why = a + " vs " + b + " not witnessed as inequivalent at seed " +
                std::to_string(seed);
          return false;
        }
      }
    }
    return true;
  });

  r.check("8d DR/ADMM closed-loop prefix replay", [](std::string& why) {
    // ADMM initialized with xi2^0 = x1^1, xi3^0 = x3^0 - x1^1 makes the same
    // oracle calls as DR: prox_g queries align at the same step, prox_f
    // queries align with a one-step delay (DR's very first prox_f call is the
    // extra prefix).
    StateSpace dr = builtin_ss("douglas_rachford"), ad = builtin_ss("admm");
    std::vector<OracleImpl> oracles{OracleImpl::linear(Rational(1, 3)),
                                    OracleImpl::linear(Rational(-2, 5))};
    int K = 25;
    std::vector<Rational> x_dr0{Rational(0), Rational(0), Rational(5, 7)};
    Trajectory tdr = simulate(dr, oracles, x_dr0, K + 1);
    Rational x11 = tdr.u[0][0];  // x1^1 = prox_f(x3^0)
    std::vector<Rational> x_ad0{Rational(0), x11, x_dr0[2] - x11};
    Trajectory tad = simulate(ad, oracles, x_ad0, K);
    for (int k = 0; k < K; ++k) {
      if (tad.y[k][1] != tdr.y[k][1]) {
        why = "prox_g query sequences diverge at step " + std::to_string(k);
        return false;
      }
      if (tad.y[k][0] != tdr.y[k + 1][0]) {
        why = "prox_f query sequences (shifted) diverge at step " + std::to_string(k);
        return false;
      }
    }
    return true;
  });

  return r.results;
}

// Renders one pass/fail line per criterion; returns the failure count.
inline int report_acceptance(std::ostream& os) {
  auto results = run_acceptance();
  int failures = 0;
  for (auto& res : results) {
    os << (res.pass ? "[PASS] " : "[FAIL] ") << "criterion " << res.name;
    if (!res.pass && !res.detail.empty()) os << " -- " << res.detail;
    os << "\n";
    failures += res.pass ? 0 : 1;
  }
  os << (failures == 0 ? "all acceptance criteria passed"
                       : std::to_string(failures) + " acceptance criteria FAILED")
     << "\n";
  return failures;
}

}  // namespace algequiv
