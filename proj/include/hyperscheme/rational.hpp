#ifndef HYPERSCHEME_RATIONAL_HPP_
#define HYPERSCHEME_RATIONAL_HPP_

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace hyperscheme {

// Expression templates are disabled so that `auto` and generic code behave
// like an ordinary value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

template <typename T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Serializes as "p/q" (always with a denominator, "3/1" for integers).
inline std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

/// Accepts "p/q", "p", or a decimal like "0.25" (converted exactly).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      BigInt num(digits.empty() || digits == "-" ? std::string("0") : digits);
      BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(s.size() - dot - 1));
      return Rational(num, den);
    }
    return Rational(BigInt(s));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

/// Best rational approximation with denominator <= max_den (continued
/// fractions). Returns the exact binary value's convergent, so callers must
/// re-verify any identity they need.
inline Rational rationalize(double x, std::int64_t max_den = 1'000'000) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize non-finite value");
  const bool neg = x < 0;
  double r = std::abs(x);
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(r);
    BigInt ai(static_cast<long long>(a));
    BigInt p2 = ai * p1 + p0;
    BigInt q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
    if (r > 1e15) break;
  }
  if (q1 == 0) return Rational(0);
  Rational out(p1, q1);
  return neg ? Rational(-out) : out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_RATIONAL_HPP_
