#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "algequiv/poly.hpp"

namespace algequiv {

// Polynomial in the indeterminate z with ParamPoly coefficients.
// coeffs_[i] is the coefficient of z^i; the leading coefficient is nonzero.
// The zero polynomial stores no coefficients and has degree -1.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(const ParamPoly& c) {
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  explicit ZPoly(const Rational& c) : ZPoly(ParamPoly(c)) {}
  explicit ZPoly(long c) : ZPoly(ParamPoly(c)) {}
  static ZPoly z_power(int k) {
    ZPoly p;
    p.coeffs_.assign(k + 1, ParamPoly());
    p.coeffs_[k] = ParamPoly(1L);
    return p;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const {
    std::size_t n = 0;
    for (auto& c : coeffs_) n += c.terms().size();
    return n;
  }
  const ParamPoly& coeff(int i) const {
    static const ParamPoly kZero;
    if (i < 0 || i > degree()) return kZero;
    return coeffs_[i];
  }
  const ParamPoly& lead() const { return coeffs_.back(); }
  const std::vector<ParamPoly>& coeffs() const { return coeffs_; }

  void set_coeff(int i, const ParamPoly& c) {
    if (i >= static_cast<int>(coeffs_.size())) coeffs_.resize(i + 1);
    coeffs_[i] = c;
    trim();
  }

  // Lowest index with a nonzero coefficient (z-adic valuation); -1 for zero.
  int low_index() const {
    for (int i = 0; i <= degree(); ++i)
      if (!coeffs_[i].is_zero()) return i;
    return -1;
  }
  ZPoly shifted_down(int k) const {  // divide by z^k, assuming divisible
    ZPoly out;
    if (degree() < k) return out;
    out.coeffs_.assign(coeffs_.begin() + k, coeffs_.end());
    out.trim();
    return out;
  }

  ZPoly operator-() const {
    ZPoly out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  ZPoly operator+(const ZPoly& o) const {
    ZPoly out;
    out.coeffs_.resize(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = coeff(i) + o.coeff(i);
    out.trim();
    return out;
  }
  ZPoly operator-(const ZPoly& o) const { return *this + (-o); }
  ZPoly operator*(const ZPoly& o) const {
    ZPoly out;
    if (is_zero() || o.is_zero()) return out;
    out.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, ParamPoly());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
        out.coeffs_[i + j] = out.coeffs_[i + j] + coeffs_[i] * o.coeffs_[j];
    }
    out.trim();
    return out;
  }
  ZPoly operator*(const ParamPoly& c) const {
    ZPoly out;
    if (c.is_zero()) return out;
    out.coeffs_ = coeffs_;
    for (auto& co : out.coeffs_) co = co * c;
    out.trim();
    return out;
  }
  ZPoly operator*(const Rational& c) const { return *this * ParamPoly(c); }
  bool operator==(const ZPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  void collect_names(std::set<std::string>& into) const {
    for (auto& c : coeffs_) c.collect_names(into);
  }
  bool is_numeric() const {
    for (auto& c : coeffs_)
      if (!c.is_numeric()) return false;
    return true;
  }

  Rational eval(const Rational& zval, const std::map<std::string, Rational>& params) const {
    Rational out(0);
    for (int i = degree(); i >= 0; --i) out = out * zval + coeffs_[i].eval(params);
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<ParamPoly> coeffs_;
};

// Pseudo-division: lead(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
// Returns (q, r). Requires b nonzero and deg a >= deg b.
inline std::pair<ZPoly, ZPoly> pseudo_divide(const ZPoly& a, const ZPoly& b) {
  int da = a.degree(), db = b.degree();
  ZPoly r = a, q;
  const ParamPoly& d = b.lead();
  int e = da - db + 1;
  while (!r.is_zero() && r.degree() >= db) {
    ZPoly t = ZPoly::z_power(r.degree() - db) * r.lead();
    q = q * d + t;
    r = r * d - t * b;
    --e;
  }
  // Scale so the identity holds with exactly lead(b)^(da-db+1).
  ParamPoly scale = d.pow(e);
  return {q * scale, r * scale};
}

namespace detail {

// Divide out cheap content: rational content and common parameter monomial.
inline ZPoly strip_content(const ZPoly& p) {
  if (p.is_zero()) return p;
  Rational rc(0);
  Monomial mc;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    const ParamPoly& c = p.coeff(i);
    if (c.is_zero()) continue;
    rc = rat_gcd(rc, c.rational_content());
    Monomial m = c.monomial_content();
    mc = first ? m : mono_gcd(mc, m);
    first = false;
  }
  ZPoly out;
  for (int i = 0; i <= p.degree(); ++i) {
    const ParamPoly& c = p.coeff(i);
    if (c.is_zero()) continue;
    out.set_coeff(i, c.divided_by(rc).divided_by_monomial(mc));
  }
  return out;
}

// Coefficient-wise exact division by a ParamPoly; nullopt unless every
// coefficient is divisible.
inline std::optional<ZPoly> try_divide_all(const ZPoly& p, const ParamPoly& d) {
  ZPoly out;
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    auto q = p.coeff(i).exact_div(d);
    if (!q) return std::nullopt;
    out.set_coeff(i, *q);
  }
  return out;
}

}  // namespace detail

// Subresultant polynomial remainder sequence GCD in z over the ParamPoly
// coefficient ring. The result is an associate of the gcd over the parameter
// fraction field; its own coefficient content is not fully primitive.
//
// A term budget guards against the exponential blowup dense multivariate
// coefficients can cause in pseudo-division. Exceeding it abandons the
// reduction (gcd 1), which is always safe: equality is decided by
// cross-multiplication, never by representation.
inline ZPoly z_gcd(ZPoly a, ZPoly b) {
  constexpr std::size_t kTermBudget = 20000;
  if (a.is_zero()) return detail::strip_content(b);
  if (b.is_zero()) return detail::strip_content(a);
  a = detail::strip_content(a);
  b = detail::strip_content(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  ParamPoly g(1L), h(1L);
  while (true) {
    if (b.is_zero()) return detail::strip_content(a);
    if (b.degree() == 0) return ZPoly(1L);
    int delta = a.degree() - b.degree();
    std::size_t blead = b.lead().terms().size();
    std::size_t cost = a.term_count();
    for (int i = 0; i <= delta && cost < kTermBudget; ++i) cost *= std::max<std::size_t>(blead, 1);
    if (cost >= kTermBudget) return ZPoly(1L);
    ZPoly r = pseudo_divide(a, b).second;
    if (r.term_count() >= kTermBudget) return ZPoly(1L);
    if (r.is_zero()) return detail::strip_content(b);
    ParamPoly divisor = g * h.pow(delta);
    a = b;
    ZPoly next;
    bool exact = true;
    for (int i = 0; i <= r.degree(); ++i) {
      if (r.coeff(i).is_zero()) continue;
      auto q = r.coeff(i).exact_div(divisor);
      if (!q) {
        exact = false;
        break;
      }
      next.set_coeff(i, *q);
    }
    // The subresultant divisions are exact in theory; stripping content is a
    // safe fallback that keeps the sequence a valid PRS.
    b = exact ? next : detail::strip_content(r);
    g = a.lead();
    if (delta == 0) continue;
    // h = g^delta / h^(delta-1), exact in the subresultant PRS.
    ParamPoly num = g.pow(delta);
    if (delta == 1) {
      h = num;
    } else {
      auto q = num.exact_div(h.pow(delta - 1));
      h = q ? *q : num;
    }
  }
}

// Exact division over the parameter fraction field, fraction-free form:
// returns (qt, s) with s * a = qt * g where s = lead(g)^(deg a - deg g + 1),
// or nullopt when g does not divide a over the fraction field.
struct FFQuotient {
  ZPoly quotient;
  ParamPoly scale;
};
inline std::optional<FFQuotient> divide_exact_ff(const ZPoly& a, const ZPoly& g) {
  if (a.is_zero()) return FFQuotient{ZPoly(), ParamPoly(1L)};
  if (g.is_zero() || a.degree() < g.degree()) return std::nullopt;
  auto [q, r] = pseudo_divide(a, g);
  if (!r.is_zero()) return std::nullopt;
  return FFQuotient{q, g.lead().pow(a.degree() - g.degree() + 1)};
}

}  // namespace algequiv
