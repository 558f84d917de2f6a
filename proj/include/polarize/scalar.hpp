#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include "polarize/errors.hpp"

namespace polarize {

using BigInt = boost::multiprecision::cpp_int;

// Expression templates are disabled so Rational behaves as a plain value
// type inside generic code (deduction, std::map values, accumulation).
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

/// Exact rational from an integer ratio. Normalization to lowest terms with a
/// positive denominator is handled by the backend.
inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(BigInt(num), BigInt(den));
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Scalar backend traits. S is either Rational (exact) or double (carries a
// tolerance eps through every equality predicate).
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static const char* backend_name() { return "rational"; }

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_ratio(long long num, long long den) { return make_rational(num, den); }

  static bool eq(const Rational& a, const Rational& b, double /*eps*/) { return a == b; }
  static bool is_zero(const Rational& a, double /*eps*/) { return a.is_zero(); }
  static bool strictly_zero(const Rational& a) { return a.is_zero(); }

  static Rational abs(const Rational& a) { return a < 0 ? Rational(-a) : a; }
  static double to_double(const Rational& a) { return static_cast<double>(a); }

  // Serialized as "p/q" with q > 0 and gcd(p, q) = 1.
  static std::string to_string(const Rational& a) {
    return numerator(a).str() + "/" + denominator(a).str();
  }
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static const char* backend_name() { return "float"; }

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double from_ratio(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  static bool eq(double a, double b, double eps) { return std::fabs(a - b) < eps; }
  static bool is_zero(double a, double eps) { return std::fabs(a) < eps; }
  static bool strictly_zero(double a) { return a == 0.0; }

  static double abs(double a) { return std::fabs(a); }
  static double to_double(double a) { return a; }

  static std::string to_string(double a) { return format_double(a); }
};

template <typename S>
double to_double(const S& v) {
  return scalar_traits<S>::to_double(v);
}

/// Nearest continued-fraction convergent of v with denominator at most
/// max_den. Used to recover exact rationals from near-exact doubles.
inline Rational rationalize(double v, std::uint64_t max_den) {
  if (!std::isfinite(v)) throw NumericFailure("cannot rationalize non-finite value");
  const bool neg = v < 0;
  const double x = neg ? -v : v;
  std::uint64_t pa = 0, qa = 1, pb = 1, qb = 0;  // previous/current convergent
  double frac = x;
  while (true) {
    const double ip = std::floor(frac);
    if (ip > 9.0e18) break;
    const auto a = static_cast<std::uint64_t>(ip);
    const std::uint64_t pn = a * pb + pa, qn = a * qb + qa;
    if (qn > max_den) break;
    pa = pb;
    qa = qb;
    pb = pn;
    qb = qn;
    const double rem = frac - ip;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  if (qb == 0) return Rational(0);
  Rational best{BigInt(pb), BigInt(qb)};
  return neg ? Rational(-best) : best;
}

}  // namespace polarize
