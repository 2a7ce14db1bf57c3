#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "gbdual/errors.hpp"

namespace gbdual {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational conjugate(const Rational& x) { return x; }
inline Integer conjugate(const Integer& x) { return x; }

inline bool isZero(const Rational& x) { return x == 0; }
inline bool isZero(const Integer& x) { return x == 0; }

inline std::int64_t floorMod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// "p" or "p/q" in lowest terms.
inline std::string toString(const Rational& x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Integer parseInteger(std::string_view text) {
  std::string s(text);
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) throw ValidationError("empty integer literal");
  for (std::size_t k = start; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw ValidationError("bad integer literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

/// Accepts "p", "-p", "p/q".
inline Rational parseRational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parseInteger(text));
  Integer num = parseInteger(text.substr(0, slash));
  Integer den = parseInteger(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::int64_t toInt64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw ValidationError("integer out of 64-bit range: " + x.str());
  return x.convert_to<std::int64_t>();
}

inline std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

}  // namespace gbdual
