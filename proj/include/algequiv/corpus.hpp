#pragma once

#include <map>
#include <string>
#include <vector>

#include "algequiv/dsl.hpp"

namespace algequiv {

// Built-in registry of first-order methods, written in the update-equation
// language. Each entry lowers to the standard realization of the method with
// symbolic parameters.

struct CorpusEntry {
  std::string name;
  std::string title;
  std::string text;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"popov",
       "Popov's modified Arrow-Hurwicz method",
       "algorithm popov(oracles F; params eta) {\n"
       "  x1[k+1] = x1[k] - eta*F(x2[k]);\n"
       "  x2[k+1] = x1[k+1] - eta*F(x2[k]);\n"
       "}\n"},

      {"past_extragradient",
       "extrapolation from the past",
       "algorithm past_extragradient(oracles F; params eta) {\n"
       "  x2[k] = x1[k] - eta*F(x2[k-1]);\n"
       "  x1[k+1] = x1[k] - eta*F(x2[k]);\n"
       "}\n"},

      {"omd",
       "optimistic mirror descent",
       "algorithm omd(oracles F; params eta) {\n"
       "  x2[k+1] = x2[k] - 2*eta*F(x2[k]) + eta*F(x2[k-1]);\n"
       "}\n"},

      {"reflected_gradient",
       "reflected gradient method",
       "algorithm reflected_gradient(oracles F; params eta) {\n"
       "  x1[k+1] = x1[k] - eta*F(2*x1[k] - x1[k-1]);\n"
       "}\n"},

      {"douglas_rachford",
       "Douglas-Rachford splitting",
       "algorithm douglas_rachford(oracles prox_f: prox[1], prox_g: prox[1]; params) {\n"
       "  x1[k+1] = prox_f(x3[k]);\n"
       "  x2[k+1] = prox_g(2*x1[k+1] - x3[k]);\n"
       "  x3[k+1] = x3[k] + x2[k+1] - x1[k+1];\n"
       "}\n"},

      {"admm",
       "simplified ADMM",
       "algorithm admm(oracles prox_f: prox[1], prox_g: prox[1]; params) {\n"
       "  xi1[k+1] = prox_g(xi2[k] - xi3[k]);\n"
       "  xi2[k+1] = prox_f(xi1[k+1] + xi3[k]);\n"
       "  xi3[k+1] = xi3[k] + xi1[k+1] - xi2[k+1];\n"
       "}\n"},

      {"unit_momentum_a",
       "two-state method, extrapolated-query form",
       "algorithm unit_momentum_a(oracles grad_f; params) {\n"
       "  x1[k+1] = 2*x1[k] - x2[k] - (1/10)*grad_f(2*x1[k] - x2[k]);\n"
       "  x2[k+1] = x1[k];\n"
       "}\n"},

      {"unit_momentum_b",
       "two-state method, split-state form",
       "algorithm unit_momentum_b(oracles grad_f; params) {\n"
       "  x1[k+1] = x1[k] - x2[k] - (1/5)*grad_f(x1[k]);\n"
       "  x2[k+1] = x2[k] + (1/10)*grad_f(x1[k]);\n"
       "}\n"},

      {"gd_nonminimal",
       "gradient descent with an unobservable extra state",
       "algorithm gd_nonminimal(oracles grad_f; params) {\n"
       "  x1[k+1] = 3*x1[k] - 2*x2[k] + (1/5)*grad_f(-x1[k] + 2*x2[k]);\n"
       "  x2[k+1] = x1[k];\n"
       "}\n"},

      {"gradient_descent",
       "gradient descent, stepsize 1/5",
       "algorithm gradient_descent(oracles grad_f; params) {\n"
       "  x[k+1] = x[k] - (1/5)*grad_f(x[k]);\n"
       "}\n"},

      {"proximal_gradient",
       "proximal gradient method",
       "algorithm proximal_gradient(oracles grad_f, prox_g: prox[t]; params t) {\n"
       "  y[k] = x[k] - t*grad_f(x[k]);\n"
       "  x[k+1] = prox_g(y[k]);\n"
       "}\n"},

      {"proximal_gradient_conj",
       "proximal gradient via the conjugate prox (Moreau)",
       "algorithm proximal_gradient_conj(oracles grad_f, prox_gc: prox_conj[t]; params t) {\n"
       "  y[k] = x[k] - t*grad_f(x[k]);\n"
       "  x[k+1] = y[k] - t*prox_gc((1/t)*y[k]);\n"
       "}\n"},

      {"proximal_gradient_subdiff",
       "proximal gradient via an implicit subdifferential step",
       "algorithm proximal_gradient_subdiff(oracles grad_f, subg: subdiff; params t) implicit {\n"
       "  y[k] = x[k] - t*grad_f(x[k]);\n"
       "  x[k+1] = y[k] - t*subg(x[k+1]);\n"
       "}\n"},

      {"proximal_gradient_subdiff_conj",
       "proximal gradient via an implicit conjugate-subdifferential step",
       "algorithm proximal_gradient_subdiff_conj(oracles grad_f, subgc: subdiff_conj; params t) "
       "implicit {\n"
       "  y[k] = x[k] - t*grad_f(x[k]);\n"
       "  x[k+1] = subgc((1/t)*(y[k] - x[k+1]));\n"
       "}\n"},

      {"heavy_ball",
       "Polyak's heavy-ball method",
       "algorithm heavy_ball(oracles grad_f; params alpha, beta) {\n"
       "  x[k+1] = x[k] - alpha*grad_f(x[k]) + beta*(x[k] - x[k-1]);\n"
       "}\n"},

      {"nesterov",
       "Nesterov's accelerated gradient method",
       "algorithm nesterov(oracles grad_f; params alpha, beta) {\n"
       "  y[k] = x[k] + beta*(x[k] - x[k-1]);\n"
       "  x[k+1] = y[k] - alpha*grad_f(y[k]);\n"
       "}\n"},

      {"tmm",
       "triple momentum method",
       "algorithm tmm(oracles grad_f; params alpha, beta, gamma) {\n"
       "  y[k] = x[k] + gamma*(x[k] - x[k-1]);\n"
       "  x[k+1] = x[k] - alpha*grad_f(y[k]) + beta*(x[k] - x[k-1]);\n"
       "}\n"},

      {"qhm",
       "quasi-hyperbolic momentum",
       "algorithm qhm(oracles grad_f; params alpha, beta, nu) {\n"
       "  g[k+1] = beta*g[k] + (1 - beta)*grad_f(th[k]);\n"
       "  th[k+1] = th[k] - alpha*((1 - nu)*grad_f(th[k]) + nu*g[k+1]);\n"
       "}\n"},

      {"sum_momentum",
       "stochastic unified momentum",
       "algorithm sum_momentum(oracles grad_f; params alpha, beta, s) {\n"
       "  yv[k+1] = x[k] - alpha*grad_f(x[k]);\n"
       "  q[k+1] = x[k] - s*alpha*grad_f(x[k]);\n"
       "  x[k+1] = yv[k+1] + beta*(q[k+1] - q[k]);\n"
       "}\n"},

      {"usm_momentum",
       "unified stochastic momentum",
       "algorithm usm_momentum(oracles grad_f; params eta, mu, lambda) {\n"
       "  m[k] = mu*m[k-1] - eta*grad_f(x[k]);\n"
       "  x[k+1] = x[k] + m[k] + lambda*mu*(m[k] - m[k-1]);\n"
       "}\n"},

      {"nids",
       "NIDS with a scalar gossip weight",
       "algorithm nids(oracles grad_f; params alpha, w) {\n"
       "  x[k+1] = w*(2*x[k] - x[k-1] - alpha*grad_f(x[k]) + alpha*grad_f(x[k-1]));\n"
       "}\n"},

      {"exact_diffusion",
       "exact diffusion with a scalar gossip weight",
       "algorithm exact_diffusion(oracles grad_f; params alpha, w) {\n"
       "  x[k+1] = v[k] - alpha*grad_f(v[k]);\n"
       "  y[k] = x[k+1] + v[k] - x[k];\n"
       "  v[k+1] = w*y[k];\n"
       "}\n"},

      {"pd3o",
       "primal-dual three-operator splitting (scalar coupling)",
       "algorithm pd3o(oracles prox_f: prox[tau], prox_gc: prox_conj[sigma], grad_h;"
       " params tau, sigma, a) {\n"
       "  xt[k] = prox_f(zv[k]);\n"
       "  s[k+1] = prox_gc((1 - tau*sigma*a^2)*s[k]"
       " + sigma*a*(2*xt[k] - zv[k] - tau*grad_h(xt[k])));\n"
       "  zv[k+1] = xt[k] - tau*grad_h(xt[k]) - tau*a*s[k+1];\n"
       "}\n"},

      {"pd3o_reform",
       "reformulated PD3O (scalar coupling)",
       "algorithm pd3o_reform(oracles prox_f: prox[tau], prox_gc: prox_conj[sigma], grad_h;"
       " params tau, sigma, a) {\n"
       "  s[k+1] = prox_gc(s[k] + sigma*a*xbar[k]);\n"
       "  x[k+1] = prox_f(x[k] - tau*grad_h(x[k]) - tau*a*s[k+1]);\n"
       "  xbar[k+1] = 2*x[k+1] - x[k] + tau*grad_h(x[k]) - tau*grad_h(x[k+1]);\n"
       "}\n"},

      {"pd3o_reform_c",
       "delayed-channel reformulation of PD3O (scalar coupling)",
       "algorithm pd3o_reform_c(oracles prox_f: prox[tau], prox_gc: prox_conj[sigma], grad_h;"
       " params tau, sigma, a) {\n"
       "  v[k] = grad_h(p[k]);\n"
       "  g[k] = prox_gc(sigma*a*(2*p[k] - pp[k]) + gp[k] - sigma*tau*a*(v[k] - vp[k]));\n"
       "  w[k] = prox_f(p[k] - tau*a*g[k] - tau*v[k]);\n"
       "  p[k+1] = w[k];\n"
       "  pp[k+1] = p[k];\n"
       "  gp[k+1] = g[k];\n"
       "  vp[k+1] = v[k];\n"
       "}\n"},

      {"pd3o_reform_d",
       "another reformulation of PD3O (scalar coupling)",
       "algorithm pd3o_reform_d(oracles prox_f: prox[tau], prox_gc: prox_conj[sigma], grad_h;"
       " params tau, sigma, a) {\n"
       "  y[k] = prox_gc(2*sigma*a*w[k] - x[k]);\n"
       "  zt[k] = prox_f(w[k] - tau*a*y[k]);\n"
       "  x[k+1] = sigma*a*(w[k] - tau*grad_h(zt[k])) - y[k];\n"
       "  w[k+1] = zt[k] - tau*grad_h(zt[k]);\n"
       "}\n"},

      {"chambolle_pock",
       "Chambolle-Pock primal-dual splitting (scalar coupling)",
       "algorithm chambolle_pock(oracles prox_f: prox[tau], prox_gc: prox_conj[sigma];"
       " params tau, sigma, m) {\n"
       "  x1[k+1] = prox_f(x1[k] - tau*m*x2[k]);\n"
       "  x2[k+1] = prox_gc(x2[k] + sigma*m*(2*x1[k+1] - x1[k]));\n"
       "}\n"},

      {"davis_yin",
       "Davis-Yin three-operator splitting",
       "algorithm davis_yin(oracles prox_f: prox[t], prox_g: prox[t], grad_h; params t) {\n"
       "  zt[k] = prox_f(y[k]);\n"
       "  xt[k] = prox_g(2*zt[k] - y[k] - t*grad_h(zt[k]));\n"
       "  y[k+1] = y[k] - zt[k] + xt[k];\n"
       "}\n"},

      {"dr_quadratic",
       "Douglas-Rachford variant for a linear first prox",
       "algorithm dr_quadratic(oracles prox_f: prox[1], prox_g: prox[1]; params alpha) {\n"
       "  yq[k] = prox_g(x2[k] - 2*x1[k]);\n"
       "  x1[k+1] = alpha*x1[k] - prox_f(alpha*x2[k] - x2[k+1]);\n"
       "  x2[k+1] = x2[k] - x1[k] - yq[k];\n"
       "}\n"},
  };
  return entries;
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (auto& e : corpus()) out.push_back(e.name);
  return out;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
  for (auto& e : corpus())
    if (e.name == name) return e;
  raise(Errc::unknown_algorithm, "no built-in algorithm named '" + name + "'");
}

// AST of the named built-in algorithm, parameters left symbolic.
inline AlgorithmAST builtin(const std::string& name) {
  return parse_algorithm(corpus_entry(name).text);
}

inline StateSpace builtin_ss(const std::string& name) { return lower(builtin(name)); }

inline TransferMatrix builtin_tf(const std::string& name) {
  return transfer_function(builtin_ss(name));
}

}  // namespace algequiv
