#pragma once

// Scalar backends for the whole library: exact rationals for algebraic
// identities, plain doubles for kernel evaluation and quadrature.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qsa {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.template convert_to<double>(); }

template <class T>
T abs_of(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <class T>
T factorial_of(int k) {
  T acc(1);
  for (int i = 2; i <= k; ++i) acc *= T(i);
  return acc;
}

// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
  if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  if (d == 0) return 1.0;
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Parses "n", "-n", "n/d", or a decimal fraction "a.b" into T; decimals are
// exact in the rational backend (0.5 -> 1/2).
template <class T>
T parse_scalar(const std::string& tok) {
  if constexpr (is_exact_v<T>) {
    auto slash = tok.find('/');
    auto dot = tok.find('.');
    try {
      if (slash != std::string::npos) {
        boost::multiprecision::cpp_int num(tok.substr(0, slash));
        boost::multiprecision::cpp_int den(tok.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num) / Rational(den);
      }
      if (dot != std::string::npos) {
        std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
          throw std::invalid_argument("no digits");
        boost::multiprecision::cpp_int num(digits);
        boost::multiprecision::cpp_int den(1);
        for (std::size_t i = dot + 1; i < tok.size(); ++i) den *= 10;
        return Rational(num) / Rational(den);
      }
      return Rational(boost::multiprecision::cpp_int(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal: " + tok);
    }
  } else {
    std::size_t pos = 0;
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
      double num = std::stod(tok.substr(0, slash), &pos);
      double den = std::stod(tok.substr(slash + 1));
      if (den == 0.0) throw std::invalid_argument("zero denominator: " + tok);
      return num / den;
    }
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad numeric literal: " + tok);
    return v;
  }
}

template <class T>
std::string format_scalar(const T& v) {
  if constexpr (is_exact_v<T>) {
    return v.str();
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
}

}  // namespace qsa
