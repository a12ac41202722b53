#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "qorbit/error.hpp"

namespace qorbit {

/// Exact rational number. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" text form; integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("not a rational number: '" + s + "'");
  if (r.get_den() == 0) throw DivisionByZero("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

}  // namespace qorbit
