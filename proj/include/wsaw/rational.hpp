#pragma once
// Exact rational scalars.  GMP's mpq_class supplies the bignum arithmetic;
// this header adds the string round-trip used by the JSON layer ("p/q", or
// plain "p" for integers, both accepted on input) and a few small helpers.

#include <gmpxx.h>

#include <string>

#include "wsaw/errors.hpp"

namespace wsaw {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw argument_error("empty rational literal");
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw argument_error("malformed rational literal: '" + s + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw argument_error("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline Rational rational_pow(const Rational& q, unsigned long e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace wsaw
