#pragma once

#include <gmpxx.h>

#include <string>

#include "algequiv/error.hpp"

namespace algequiv {

// Exact arbitrary-precision rational, backed by GMP.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational rat_parse(const std::string& s) {
  try {
    Rational r(s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    raise(Errc::syntax, "invalid rational literal '" + s + "'");
  }
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

// gcd of |a| and |b| over the rationals: gcd(num)/lcm(den).
inline Rational rat_gcd(const Rational& a, const Rational& b) {
  if (is_zero(a)) return abs(b);
  if (is_zero(b)) return abs(a);
  mpz_class gn, ld;
  mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_lcm(ld.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  Rational g(gn, ld);
  g.canonicalize();
  return g;
}

}  // namespace algequiv
