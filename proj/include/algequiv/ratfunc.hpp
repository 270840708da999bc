#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "algequiv/zpoly.hpp"

namespace algequiv {

// Exact rational function in z with multivariate parameter-polynomial
// coefficients. Kept in a best-effort canonical form (common z-factors and
// the subresultant gcd cancelled, joint integer content 1, denominator lead
// coefficient positive). Equality is always decided by cross-multiplication,
// never by representation.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1L) {}
  explicit RatFunc(const Rational& c) : num_(c), den_(1L) {}
  explicit RatFunc(long c) : num_(c), den_(1L) {}
  explicit RatFunc(const ParamPoly& p) : num_(p), den_(1L) {}
  explicit RatFunc(const ZPoly& n) : num_(n), den_(1L) { reduce(); }
  RatFunc(ZPoly n, ZPoly d) : num_(std::move(n)), den_(std::move(d)) {
    require(!den_.is_zero(), Errc::singular_denominator, "zero denominator");
    reduce();
  }
  static RatFunc z() { return RatFunc(ZPoly::z_power(1)); }
  static RatFunc z_power(int k) {
    if (k >= 0) return RatFunc(ZPoly::z_power(k));
    return RatFunc(ZPoly(1L), ZPoly::z_power(-k));
  }
  static RatFunc param(const std::string& name) { return RatFunc(ParamPoly::variable(name)); }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  RatFunc operator-() const {
    RatFunc out = *this;
    out.num_ = -out.num_;
    return out;
  }
  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
  RatFunc operator/(const RatFunc& o) const {
    require(!o.is_zero(), Errc::singular_denominator, "division by the zero function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc inverse() const { return RatFunc(1L) / *this; }

  // Semantic equality: a.num*b.den = b.num*a.den as polynomials.
  bool operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // deg(den) - deg(num); nullopt encodes +infinity (the zero function).
  std::optional<int> relative_degree() const {
    if (is_zero()) return std::nullopt;
    return den_.degree() - num_.degree();
  }
  bool is_proper() const { return is_zero() || num_.degree() <= den_.degree(); }
  bool is_strictly_proper() const { return is_zero() || num_.degree() < den_.degree(); }

  bool is_z_free() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  bool is_numeric() const { return num_.is_numeric() && den_.is_numeric(); }
  bool is_constant() const { return is_z_free() && is_numeric(); }
  Rational as_rational() const {
    require(is_constant(), Errc::internal, "not a constant");
    if (num_.is_zero()) return Rational(0);
    return num_.coeff(0).constant_value() / den_.coeff(0).constant_value();
  }

  void collect_names(std::set<std::string>& into) const {
    num_.collect_names(into);
    den_.collect_names(into);
  }

  // Substitute parameters by z-free rational functions (partial allowed).
  RatFunc subst(const std::map<std::string, RatFunc>& vals) const {
    RatFunc n = subst_zpoly(num_, vals), d = subst_zpoly(den_, vals);
    require(!d.is_zero(), Errc::singular_denominator, "substitution makes the denominator zero");
    return n / d;
  }
  RatFunc subst(const std::map<std::string, Rational>& vals) const {
    std::map<std::string, RatFunc> v;
    for (auto& [k, r] : vals) v.emplace(k, RatFunc(r));
    return subst(v);
  }

  // Point evaluation; nullopt at a pole.
  std::optional<Rational> eval(const Rational& zval,
                               const std::map<std::string, Rational>& params) const {
    Rational d = den_.eval(zval, params);
    if (algequiv::is_zero(d)) return std::nullopt;
    return num_.eval(zval, params) / d;
  }

  // Power-series coefficients in z^{-1}: f = c0 + c1 z^{-1} + c2 z^{-2} + ...
  // Requires a proper, parameter-free function.
  std::vector<Rational> series(int count) const {
    require(is_numeric(), Errc::free_parameter, "series expansion needs bound parameters");
    require(is_proper(), Errc::improper_entry, "series expansion needs a proper function");
    std::vector<Rational> c(count + 1, Rational(0));
    if (is_zero()) return c;
    int d = den_.degree();
    Rational lead = den_.coeff(d).constant_value();
    auto ncoef = [&](int i) {
      return i >= 0 && i <= num_.degree() ? num_.coeff(i).constant_value() : Rational(0);
    };
    auto dcoef = [&](int i) {
      return i >= 0 && i <= d ? den_.coeff(i).constant_value() : Rational(0);
    };
    for (int k = 0; k <= count; ++k) {
      Rational acc = ncoef(d - k);
      for (int i = 0; i < k; ++i) acc -= dcoef(d - k + i) * c[i];
      c[k] = acc / lead;
    }
    return c;
  }

  std::string str() const;

 private:
  static RatFunc subst_zpoly(const ZPoly& p, const std::map<std::string, RatFunc>& vals);

  void reduce() {
    if (num_.is_zero()) {
      den_ = ZPoly(1L);
      return;
    }
    // Common powers of z.
    int j = std::min(num_.low_index(), den_.low_index());
    if (j > 0) {
      num_ = num_.shifted_down(j);
      den_ = den_.shifted_down(j);
    }
    // Polynomial gcd in z over the parameter fraction field.
    if (num_.degree() >= 1 && den_.degree() >= 1) {
      ZPoly g = z_gcd(num_, den_);
      if (g.degree() >= 1) {
        auto qn = divide_exact_ff(num_, g);
        auto qd = divide_exact_ff(den_, g);
        if (qn && qd) {
          num_ = qn->quotient * qd->scale;
          den_ = qd->quotient * qn->scale;
          // The fraction-free quotients carry powers of lead(g) as common
          // content; strip them while both sides stay divisible.
          const ParamPoly& lg = g.lead();
          if (!lg.is_constant()) {
            while (true) {
              auto dn = detail::try_divide_all(num_, lg);
              auto dd = detail::try_divide_all(den_, lg);
              if (!dn || !dd) break;
              num_ = *dn;
              den_ = *dd;
            }
          }
        }
      }
    }
    normalize_content();
  }

  void normalize_content() {
    // Common parameter monomial across numerator and denominator.
    Monomial mn, md;
    bool first = true;
    for (int i = 0; i <= num_.degree(); ++i) {
      if (num_.coeff(i).is_zero()) continue;
      Monomial m = num_.coeff(i).monomial_content();
      mn = first ? m : mono_gcd(mn, m);
      first = false;
    }
    first = true;
    for (int i = 0; i <= den_.degree(); ++i) {
      if (den_.coeff(i).is_zero()) continue;
      Monomial m = den_.coeff(i).monomial_content();
      md = first ? m : mono_gcd(md, m);
      first = false;
    }
    Monomial common = mono_gcd(mn, md);
    // Joint rational content, so both sides end up integer with joint content 1.
    Rational rc(0);
    auto fold = [&rc](const ZPoly& p) {
      for (int i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) rc = rat_gcd(rc, p.coeff(i).rational_content());
    };
    fold(num_);
    fold(den_);
    ZPoly n2, d2;
    for (int i = 0; i <= num_.degree(); ++i)
      if (!num_.coeff(i).is_zero())
        n2.set_coeff(i, num_.coeff(i).divided_by_monomial(common).divided_by(rc));
    for (int i = 0; i <= den_.degree(); ++i)
      if (!den_.coeff(i).is_zero())
        d2.set_coeff(i, den_.coeff(i).divided_by_monomial(common).divided_by(rc));
    num_ = n2;
    den_ = d2;
    // Sign: the lead coefficient of the denominator's leading z-term positive.
    if (sgn(den_.lead().lead_coeff()) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  ZPoly num_, den_;
};

inline RatFunc subst_zpoly_impl(const ZPoly& p, const std::map<std::string, RatFunc>& vals);

inline RatFunc RatFunc::subst_zpoly(const ZPoly& p, const std::map<std::string, RatFunc>& vals) {
  RatFunc out;
  for (int i = 0; i <= p.degree(); ++i) {
    const ParamPoly& c = p.coeff(i);
    if (c.is_zero()) continue;
    RatFunc cs;
    for (auto& [m, coef] : c.terms()) {
      RatFunc term{coef};
      for (auto& [name, exp] : m) {
        auto it = vals.find(name);
        RatFunc base = it == vals.end() ? RatFunc::param(name) : it->second;
        require(it == vals.end() || it->second.is_z_free(), Errc::internal,
                "substitution values must be z-free");
        for (int e = 0; e < exp; ++e) term = term * base;
      }
      cs = cs + term;
    }
    out = out + cs * RatFunc::z_power(i);
  }
  return out;
}

// k such that b = z^k * a, decided by degree count then cross-multiplication.
inline std::optional<int> ratio_pure_shift(const RatFunc& a, const RatFunc& b) {
  require(!a.is_zero() && !b.is_zero(), Errc::zero_input, "ratio_pure_shift needs nonzero inputs");
  int k = (b.num().degree() - b.den().degree()) - (a.num().degree() - a.den().degree());
  ZPoly lhs = b.num() * a.den();
  ZPoly rhs = a.num() * b.den();
  if (k >= 0)
    rhs = rhs * ZPoly::z_power(k);
  else
    lhs = lhs * ZPoly::z_power(-k);
  if (lhs == rhs) return k;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rendering. One canonical, byte-stable text form (documented in the README):
// expanded polynomials, descending powers of z, graded-lex parameter order,
// e.g. "(-2*z + 1)/(10*z^2 - 20*z + 10)".

namespace detail {

inline std::string mono_str(const Monomial& m) {
  std::string out;
  for (auto& [n, e] : m) {
    if (!out.empty()) out += "*";
    out += n;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::string coef_str(const Rational& c) {
  if (c.get_den() == 1) return c.get_str();
  return "(" + c.get_str() + ")";
}

// Renders one additive term; `lead` controls whether a positive sign is dropped.
inline std::string term_str(const Rational& c, const std::string& atoms, bool lead) {
  std::string sign = sgn(c) < 0 ? "-" : (lead ? "" : "+");
  Rational a = abs(c);
  std::string mag;
  if (atoms.empty()) {
    mag = coef_str(a);
  } else if (a == 1) {
    mag = atoms;
  } else {
    mag = coef_str(a) + "*" + atoms;
  }
  if (lead) return sign + mag;
  return sign + " " + mag;
}

inline std::string parampoly_str(const ParamPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool lead = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::string piece = term_str(it->second, mono_str(it->first), lead);
    out += lead ? piece : " " + piece;
    lead = false;
  }
  return out;
}

inline std::string zpoly_str(const ZPoly& p, int* term_count = nullptr) {
  if (p.is_zero()) {
    if (term_count) *term_count = 1;
    return "0";
  }
  std::string out;
  int count = 0;
  for (int i = p.degree(); i >= 0; --i) {
    const ParamPoly& c = p.coeff(i);
    if (c.is_zero()) continue;
    std::string zpart = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
    std::string piece;
    bool lead = count == 0;
    if (c.is_constant()) {
      piece = term_str(c.constant_value(), zpart, lead);
      ++count;
    } else if (c.terms().size() == 1) {
      auto& [m, coef] = *c.terms().begin();
      std::string atoms = mono_str(m);
      if (!zpart.empty()) atoms += "*" + zpart;
      piece = term_str(coef, atoms, lead);
      ++count;
    } else {
      std::string coefs = "(" + parampoly_str(c) + ")";
      piece = zpart.empty() ? coefs : coefs + "*" + zpart;
      if (!lead) piece = "+ " + piece;
      ++count;
    }
    out += lead ? piece : " " + piece;
  }
  if (term_count) *term_count = count;
  return out;
}

}  // namespace detail

inline std::string RatFunc::str() const {
  if (num_.is_zero()) return "0";
  int nterms = 0, dterms = 0;
  std::string ns = detail::zpoly_str(num_, &nterms);
  if (den_ == ZPoly(1L)) return ns;
  std::string ds = detail::zpoly_str(den_, &dterms);
  if (nterms > 1) ns = "(" + ns + ")";
  if (dterms > 1 || ds.find('*') != std::string::npos) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

}  // namespace algequiv
