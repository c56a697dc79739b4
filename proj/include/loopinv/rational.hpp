#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopinv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numer(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denom(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denom(q) == 1; }

/// Renders a rational exactly: integers as plain digits, everything else as p/q.
inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return numer(q).str();
  return numer(q).str() + "/" + denom(q).str();
}

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

/// Parses "p", "-p", "p/q" or a decimal like "3.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto bad = [&]() {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  };
  if (text.empty()) bad();
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    BigInt p(text.substr(0, slash));
    BigInt q(text.substr(slash + 1));
    if (q == 0) bad();
    return Rational(p, q);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (frac_len == 0 || digits.empty() || digits == "-") bad();
  BigInt scale = 1;
  for (size_t i = 0; i < frac_len; ++i) scale *= 10;
  return Rational(BigInt(digits), scale);
}

/// Best rational approximation of x with denominator <= max_den, following the
/// continued-fraction expansion and checking the final semiconvergent.
inline Rational best_rational(double x, std::uint64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite input");
  if (max_den < 1) max_den = 1;
  const bool neg = x < 0;
  const double ax = neg ? -x : x;

  std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = ax;
  Rational result;
  bool settled = false;
  for (int it = 0; it < 64; ++it) {
    double fa = std::floor(frac);
    if (fa > 9e17) break;  // falls back to the last convergent
    std::uint64_t a = static_cast<std::uint64_t>(fa);
    if (q1 != 0 && a != 0 && q1 > (UINT64_MAX - q0) / a) break;
    std::uint64_t p2 = a * p1 + p0;
    std::uint64_t q2 = a * q1 + q0;
    if (q2 > max_den) {
      // q1 > 0 here: the first convergent always has denominator 1 <= max_den.
      std::uint64_t k = (max_den - q0) / q1;
      Rational conv(BigInt(p1), BigInt(q1));
      result = conv;
      if (k > 0) {
        Rational semi(BigInt(k * p1 + p0), BigInt(k * q1 + q0));
        if (std::abs(to_double(semi) - ax) < std::abs(to_double(conv) - ax)) result = semi;
      }
      settled = true;
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fa;
    if (rem < 1e-12) { settled = true; result = Rational(BigInt(p1), BigInt(q1)); break; }
    frac = 1.0 / rem;
  }
  if (!settled) result = Rational(BigInt(p1), BigInt(q1 == 0 ? 1 : q1));
  return neg ? Rational(-result) : result;
}

}  // namespace loopinv
