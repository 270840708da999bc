#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "algequiv/rational.hpp"

namespace algequiv {

// A monomial in the declared scalar parameters: sorted (name, exponent) pairs,
// exponents > 0. The empty monomial is 1.
using Monomial = std::vector<std::pair<std::string, int>>;

inline int mono_total_degree(const Monomial& m) {
  int d = 0;
  for (auto& [n, e] : m) d += e;
  return d;
}

// Graded-lexicographic order: total degree first, then variable-wise lex.
// This is the order behind "leading term" everywhere in the library.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = mono_total_degree(a), db = mono_total_degree(b);
    if (da != db) return da < db;
    return a < b;  // lexicographic on sorted (name, exp) pairs
  }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
  std::size_t j = 0;
  for (auto& [n, e] : d) {
    while (j < m.size() && m[j].first < n) ++j;
    if (j == m.size() || m[j].first != n || m[j].second < e) return false;
  }
  return true;
}

// m / d, assuming mono_divides(d, m).
inline Monomial mono_div(const Monomial& m, const Monomial& d) {
  Monomial out;
  std::size_t j = 0;
  for (auto& [n, e] : m) {
    int sub = 0;
    while (j < d.size() && d[j].first < n) ++j;
    if (j < d.size() && d[j].first == n) sub = d[j].second;
    if (e - sub > 0) out.emplace_back(n, e - sub);
  }
  return out;
}

inline Monomial mono_gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t j = 0;
  for (auto& [n, e] : a) {
    while (j < b.size() && b[j].first < n) ++j;
    if (j < b.size() && b[j].first == n) out.emplace_back(n, std::min(e, b[j].second));
  }
  return out;
}

// Multivariate polynomial over the rationals in named scalar parameters.
// Invariants: no stored zero coefficients; term keys unique (map).
class ParamPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonoLess>;

  ParamPoly() = default;
  explicit ParamPoly(const Rational& c) {
    if (!algequiv::is_zero(c)) terms_[Monomial{}] = c;
  }
  explicit ParamPoly(long c) : ParamPoly(Rational(c)) {}
  static ParamPoly variable(const std::string& name) {
    ParamPoly p;
    p.terms_[Monomial{{name, 1}}] = Rational(1);
    return p;
  }
  static ParamPoly monomial(const Monomial& m, const Rational& c) {
    ParamPoly p;
    if (!algequiv::is_zero(c)) p.terms_[m] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    return terms_.begin()->second;
  }
  bool is_one() const { return is_constant() && constant_value() == 1; }
  int total_degree() const {
    return terms_.empty() ? -1 : mono_total_degree(terms_.rbegin()->first);
  }

  // Leading term under the graded-lex order.
  const Monomial& lead_monomial() const { return terms_.rbegin()->first; }
  const Rational& lead_coeff() const { return terms_.rbegin()->second; }

  void add_term(const Monomial& m, const Rational& c) {
    if (algequiv::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (algequiv::is_zero(it->second)) terms_.erase(it);
    }
  }

  ParamPoly operator-() const {
    ParamPoly out;
    for (auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
  }
  ParamPoly operator+(const ParamPoly& o) const {
    ParamPoly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }
  ParamPoly operator-(const ParamPoly& o) const {
    ParamPoly out = *this;
    for (auto& [m, c] : o.terms_) out.add_term(m, -c);
    return out;
  }
  ParamPoly operator*(const ParamPoly& o) const {
    ParamPoly out;
    for (auto& [ma, ca] : terms_)
      for (auto& [mb, cb] : o.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
  }
  ParamPoly operator*(const Rational& c) const {
    ParamPoly out;
    if (algequiv::is_zero(c)) return out;
    for (auto& [m, co] : terms_) out.terms_[m] = co * c;
    return out;
  }
  bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const ParamPoly& o) const { return !(*this == o); }

  ParamPoly pow(int e) const {
    ParamPoly out{Rational(1)};
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  // gcd of the absolute values of all rational coefficients; 0 for the zero poly.
  Rational rational_content() const {
    Rational g(0);
    for (auto& [m, c] : terms_) g = rat_gcd(g, c);
    return g;
  }

  // Largest monomial dividing every term.
  Monomial monomial_content() const {
    if (terms_.empty()) return {};
    auto it = terms_.begin();
    Monomial g = it->first;
    for (++it; it != terms_.end() && !g.empty(); ++it) g = mono_gcd(g, it->first);
    return g;
  }

  ParamPoly divided_by(const Rational& c) const {
    ParamPoly out;
    for (auto& [m, co] : terms_) out.terms_[m] = co / c;
    return out;
  }
  ParamPoly divided_by_monomial(const Monomial& d) const {
    if (d.empty()) return *this;
    ParamPoly out;
    for (auto& [m, c] : terms_) out.terms_[mono_div(m, d)] = c;
    return out;
  }

  // Exact multivariate division; nullopt when the division leaves a remainder.
  std::optional<ParamPoly> exact_div(const ParamPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    ParamPoly r = *this, q;
    while (!r.is_zero()) {
      const Monomial& lm = r.lead_monomial();
      if (!mono_divides(d.lead_monomial(), lm)) return std::nullopt;
      Monomial qm = mono_div(lm, d.lead_monomial());
      Rational qc = r.lead_coeff() / d.lead_coeff();
      q.add_term(qm, qc);
      r = r - d * ParamPoly::monomial(qm, qc);
    }
    return q;
  }

  void collect_names(std::set<std::string>& into) const {
    for (auto& [m, c] : terms_)
      for (auto& [n, e] : m) into.insert(n);
  }
  bool is_numeric() const {
    for (auto& [m, c] : terms_)
      if (!m.empty()) return false;
    return true;
  }

  // Evaluate with every parameter bound to a rational.
  Rational eval(const std::map<std::string, Rational>& vals) const {
    Rational out(0);
    for (auto& [m, c] : terms_) {
      Rational t = c;
      for (auto& [n, e] : m) {
        auto it = vals.find(n);
        require(it != vals.end(), Errc::free_parameter, "parameter '" + n + "' is unbound");
        for (int i = 0; i < e; ++i) t *= it->second;
      }
      out += t;
    }
    return out;
  }

 private:
  Terms terms_;
};

inline ParamPoly operator*(const Rational& c, const ParamPoly& p) { return p * c; }

}  // namespace algequiv
