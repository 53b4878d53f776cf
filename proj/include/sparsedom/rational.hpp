#pragma once

#include <boost/rational.hpp>
#include <string>
#include <string_view>

#include "sparsedom/errors.hpp"

namespace sparsedom {

// Exact rational arithmetic for all cube geometry.  Denominators stay of the
// form 3 * 2^j at desk scale, well within int64.
//
// Never compare a Rational against an int literal with == or !=: the
// heterogeneous operators of boost::rational recurse on themselves (observed
// with boost 1.74).  Compare against Rational(k) or test numerator().
using Rational = boost::rational<long long>;

inline Rational pow2_rational(int k) {
  if (k < -62 || k > 62) throw invalid_argument_error("pow2_rational: exponent out of range");
  return k >= 0 ? Rational(1LL << k, 1) : Rational(1, 1LL << (-k));
}

// floor/ceil with correct behaviour for negative values (boost keeps den > 0).
inline long long floor_rational(const Rational& r) {
  long long n = r.numerator(), d = r.denominator();
  long long q = n / d;
  return (n % d != 0 && n < 0) ? q - 1 : q;
}

inline long long ceil_rational(const Rational& r) { return -floor_rational(-r); }

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Parses "p/q" or a bare integer "p".
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, e.g. "1/3", "0/1", "-5/2".
std::string to_string(const Rational& r);

// Exact integer power for small exponents.
Rational rational_pow(const Rational& base, int exp);

}  // namespace sparsedom
