#pragma once

#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "algequiv/expr.hpp"
#include "algequiv/matrix.hpp"

namespace algequiv {

namespace detail {

// Rewrites a prox stepsize annotation under a parameter substitution.
inline std::string subst_step(const std::string& step,
                              const std::map<std::string, RatFunc>& vals) {
  if (step.empty()) return step;
  RatFunc s = parse_ratfunc(step).subst(vals);
  return s.is_constant() ? s.as_rational().get_str() : s.str();
}

}  // namespace detail

// Oracle families that admit closed-form linear relations (Moreau identity,
// prox/subdifferential identities). `generic` covers everything else,
// including plain gradients.
enum class OracleKind { generic, subdiff, subdiff_conj, prox, prox_conj };

inline const char* kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::generic: return "generic";
    case OracleKind::subdiff: return "subdiff";
    case OracleKind::subdiff_conj: return "subdiff_conj";
    case OracleKind::prox: return "prox";
    case OracleKind::prox_conj: return "prox_conj";
  }
  return "generic";
}

struct OracleSig {
  std::string name;
  OracleKind kind = OracleKind::generic;
  std::string step;  // stepsize symbol or literal for prox kinds, else empty

  bool operator==(const OracleSig& o) const { return name == o.name && kind == o.kind; }
  bool operator!=(const OracleSig& o) const { return !(*this == o); }
};

// The algorithm-as-map representation: p x m matrix of rational functions in
// z with per-channel oracle labels.
struct TransferMatrix {
  RatMatrix H;
  std::vector<OracleSig> oracles;

  int p() const { return H.rows(); }

  TransferMatrix subst(const std::map<std::string, RatFunc>& vals) const {
    TransferMatrix out = *this;
    for (int i = 0; i < H.rows(); ++i)
      for (int j = 0; j < H.cols(); ++j) out.H(i, j) = H(i, j).subst(vals);
    for (auto& sig : out.oracles) sig.step = detail::subst_step(sig.step, vals);
    return out;
  }
  TransferMatrix subst(const std::map<std::string, Rational>& vals) const {
    std::map<std::string, RatFunc> v;
    for (auto& [k, r] : vals) v.emplace(k, RatFunc(r));
    return subst(v);
  }
  bool is_numeric() const {
    for (int i = 0; i < H.rows(); ++i)
      for (int j = 0; j < H.cols(); ++j)
        if (!H(i, j).is_numeric()) return false;
    return true;
  }
  bool is_proper() const {
    for (int i = 0; i < H.rows(); ++i)
      for (int j = 0; j < H.cols(); ++j)
        if (!H(i, j).is_proper()) return false;
    return true;
  }
};

// The algorithm-as-recursion representation x^{k+1} = A x^k + B u^k,
// y^k = C x^k + D u^k. Entries are z-free rational expressions in the
// declared parameters. n = 0 (memoryless) is allowed.
struct StateSpace {
  RatMatrix A, B, C, D;
  std::vector<OracleSig> oracles;
  std::vector<std::string> params;
  std::vector<std::string> state_names;  // optional; defaults to x1..xn

  int n() const { return A.rows(); }
  int p() const { return D.rows(); }

  void validate() const {
    require(A.rows() == A.cols(), Errc::dimension_mismatch, "A must be square");
    require(B.rows() == A.rows() && C.cols() == A.rows(), Errc::dimension_mismatch,
            "B/C do not conform with A");
    require(D.rows() == C.rows() && D.cols() == B.cols() && D.rows() == D.cols(),
            Errc::dimension_mismatch, "D must be square and conform with B/C");
    require(D.rows() == static_cast<int>(oracles.size()), Errc::dimension_mismatch,
            "oracle label count must equal p");
    require(p() >= 1, Errc::dimension_mismatch, "at least one oracle channel required");
    auto zfree = [](const RatMatrix& m, const char* which) {
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          require(m(i, j).is_z_free(), Errc::dimension_mismatch,
                  std::string(which) + " entries must not involve z");
    };
    zfree(A, "A");
    zfree(B, "B");
    zfree(C, "C");
    zfree(D, "D");
  }

  bool is_numeric() const {
    auto num = [](const RatMatrix& m) {
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          if (!m(i, j).is_numeric()) return false;
      return true;
    };
    return num(A) && num(B) && num(C) && num(D);
  }

  StateSpace subst(const std::map<std::string, RatFunc>& vals) const {
    auto sb = [&vals](const RatMatrix& m) {
      RatMatrix out(m.rows(), m.cols());
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).subst(vals);
      return out;
    };
    StateSpace out = *this;
    out.A = sb(A);
    out.B = sb(B);
    out.C = sb(C);
    out.D = sb(D);
    for (auto& sig : out.oracles) sig.step = detail::subst_step(sig.step, vals);
    return out;
  }
  StateSpace subst(const std::map<std::string, Rational>& vals) const {
    std::map<std::string, RatFunc> v;
    for (auto& [k, r] : vals) v.emplace(k, RatFunc(r));
    return subst(v);
  }

  std::string state_name(int i) const {
    if (i < static_cast<int>(state_names.size())) return state_names[i];
    return "x" + std::to_string(i + 1);
  }
};

struct MinimalityReport {
  bool controllable = false;
  bool observable = false;
  bool minimal = false;
  int controllability_rank = 0;
  int observability_rank = 0;
};

namespace detail {

inline RatMatrix zi_minus_a(const RatMatrix& a) {
  RatMatrix m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      m(i, j) = -a(i, j);
      if (i == j) m(i, j) = m(i, j) + RatFunc::z();
    }
  return m;
}

}  // namespace detail

// H(z) = D + C (zI-A)^{-1} B, by exact elimination on (zI-A) X = B.
inline TransferMatrix transfer_function(const StateSpace& ss) {
  ss.validate();
  TransferMatrix tf;
  tf.oracles = ss.oracles;
  if (ss.n() == 0) {
    tf.H = ss.D;
    return tf;
  }
  RatMatrix x = solve(detail::zi_minus_a(ss.A), ss.B);
  tf.H = ss.D + ss.C * x;
  return tf;
}

// O(z) = z C (zI-A)^{-1}, the p x n map from x^0 to the output z-transform.
inline RatMatrix initial_response(const StateSpace& ss) {
  ss.validate();
  if (ss.n() == 0) return RatMatrix(ss.p(), 0);
  RatMatrix x = solve(detail::zi_minus_a(ss.A), RatMatrix::identity(ss.n()));
  return (ss.C * x) * RatFunc::z();
}

// Oracle evaluation order when D is permutable to strictly lower triangular:
// treat D as the adjacency of the digraph j -> i whenever D_ij != 0 and
// topologically sort, smallest channel index first. nullopt = implicit.
inline std::optional<std::vector<int>> is_explicit(const StateSpace& ss) {
  int p = ss.p();
  std::vector<int> indeg(p, 0);
  std::vector<std::vector<int>> out(p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (!ss.D(i, j).is_zero()) {
        out[j].push_back(i);
        ++indeg[i];
      }
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < p; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : out[v])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != p) return std::nullopt;
  return order;
}

inline QMatrix controllability_matrix(const QMatrix& a, const QMatrix& b) {
  int n = a.rows();
  QMatrix out(n, n * b.cols());
  QMatrix cur = b;
  for (int k = 0; k < n; ++k) {
    out.set_block(0, k * b.cols(), cur);
    cur = a * cur;
  }
  return out;
}

inline QMatrix observability_matrix(const QMatrix& a, const QMatrix& c) {
  int n = a.rows();
  QMatrix out(n * c.rows(), n);
  QMatrix cur = c;
  for (int k = 0; k < n; ++k) {
    out.set_block(k * c.rows(), 0, cur);
    cur = cur * a;
  }
  return out;
}

// Exact ranks of [B AB ... A^{n-1}B] and the stacked observability matrix.
// Free parameters are refused: the ranks may depend on their values.
inline MinimalityReport minimality_report(const StateSpace& ss) {
  ss.validate();
  require(ss.is_numeric(), Errc::symbolic_rank,
          "minimality needs instantiated parameters (rank may depend on their values)");
  QMatrix a = rat_to_q(ss.A), b = rat_to_q(ss.B), c = rat_to_q(ss.C);
  MinimalityReport rep;
  if (ss.n() == 0) {
    rep.controllable = rep.observable = rep.minimal = true;
    return rep;
  }
  rep.controllability_rank = rank(controllability_matrix(a, b));
  rep.observability_rank = rank(observability_matrix(a, c));
  rep.controllable = rep.controllability_rank == ss.n();
  rep.observable = rep.observability_rank == ss.n();
  rep.minimal = rep.controllable && rep.observable;
  return rep;
}

// (T A T^{-1}, T B, C T^{-1}, D); the transfer function is unchanged.
inline StateSpace apply_state_transform(const StateSpace& ss, const RatMatrix& t) {
  ss.validate();
  require(t.rows() == ss.n() && t.cols() == ss.n(), Errc::dimension_mismatch,
          "T must be n x n");
  require(is_invertible(t), Errc::singular, "state transform T is singular");
  RatMatrix tinv = inverse(t);
  StateSpace out = ss;
  out.A = t * ss.A * tinv;
  out.B = t * ss.B;
  out.C = ss.C * tinv;
  out.state_names.clear();
  return out;
}

// T with ss2 = apply_state_transform(ss1, T), from T C1 = C2 on the
// controllability matrices. Both realizations must be minimal; returns
// nullopt when dimensions or transfer functions differ.
inline std::optional<QMatrix> similarity_transform(const StateSpace& ss1, const StateSpace& ss2) {
  MinimalityReport r1 = minimality_report(ss1);
  MinimalityReport r2 = minimality_report(ss2);
  require(r1.minimal && r2.minimal, Errc::not_minimal,
          "similarity transform needs minimal realizations");
  if (ss1.n() != ss2.n() || ss1.p() != ss2.p()) return std::nullopt;
  if (transfer_function(ss1).H != transfer_function(ss2).H) return std::nullopt;
  QMatrix c1 = controllability_matrix(rat_to_q(ss1.A), rat_to_q(ss1.B));
  QMatrix c2 = controllability_matrix(rat_to_q(ss2.A), rat_to_q(ss2.B));
  // T C1 = C2  <=>  C1^T T^T = C2^T, with C1^T of full column rank.
  QMatrix tt = solve_full_column_rank(c1.transpose(), c2.transpose());
  QMatrix t = tt.transpose();
  StateSpace check = apply_state_transform(ss1, q_to_rat(t));
  if (check.A != ss2.A || check.B != ss2.B || check.C != ss2.C) return std::nullopt;
  return t;
}

// Realization of H^{-1}: (A - B D^{-1} C, B D^{-1}, -D^{-1} C, D^{-1}).
inline StateSpace ss_inverse(const StateSpace& ss) {
  ss.validate();
  require(is_invertible(ss.D), Errc::singular_d, "D is singular over the parameter field");
  RatMatrix dinv = inverse(ss.D);
  StateSpace out = ss;
  out.A = ss.A - ss.B * dinv * ss.C;
  out.B = ss.B * dinv;
  out.C = -(dinv * ss.C);
  out.D = dinv;
  out.state_names.clear();
  return out;
}

// x1^0 = T^{-1} x2^0, so that O1(z) x1^0 = O2(z) x2^0.
inline std::vector<Rational> match_initial_condition(const StateSpace& ss1, const StateSpace& ss2,
                                                     const std::vector<Rational>& x2_0) {
  auto t = similarity_transform(ss1, ss2);
  require(t.has_value(), Errc::not_minimal,
          "no similarity transform: realizations are not equivalent");
  require(static_cast<int>(x2_0.size()) == ss2.n(), Errc::dimension_mismatch, "x2_0 size");
  QMatrix rhs(ss2.n(), 1);
  for (int i = 0; i < ss2.n(); ++i) rhs(i, 0) = x2_0[i];
  QMatrix x1 = solve(*t, rhs);
  return x1.col(0);
}

}  // namespace algequiv
