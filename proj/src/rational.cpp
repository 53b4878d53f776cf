#include "sparsedom/rational.hpp"

#include <charconv>
#include <cstdlib>

namespace sparsedom {

Rational parse_rational(std::string_view text) {
  auto parse_int = [](std::string_view s) -> long long {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw invalid_argument_error("parse_rational: bad integer '" + std::string(s) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text), 1);
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  if (den == 0) throw invalid_argument_error("parse_rational: zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational rational_pow(const Rational& base, int exp) {
  if (exp < 0) {
    if (base.numerator() == 0)
      throw invalid_argument_error("rational_pow: zero base with negative exponent");
    return rational_pow(Rational(1) / base, -exp);
  }
  Rational out(1);
  for (int i = 0; i < exp; ++i) {
    out *= base;
    if (std::abs(out.numerator()) > (1LL << 60) || out.denominator() > (1LL << 60))
      throw invalid_argument_error("rational_pow: magnitude overflow");
  }
  return out;
}

}  // namespace sparsedom
