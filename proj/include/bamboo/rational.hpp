#pragma once

// Exact rational coefficients backed by GMP. mpq_class keeps values in
// lowest terms with a positive denominator once canonicalize() has run;
// every constructor below does that.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace bamboo {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "num/den", always with an explicit denominator ("3/1", "-1/2").
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction_string(const std::string& s) {
  const auto slash = s.find('/');
  Rational q;
  try {
    if (slash == std::string::npos) {
      q = Rational(Integer(s), Integer(1));
    } else {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) throw std::domain_error("zero denominator");
      q = Rational(num, den);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  q.canonicalize();
  return q;
}

inline int sign_pow(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace bamboo
