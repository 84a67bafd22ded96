#ifndef BIREV_SCALAR_HPP
#define BIREV_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>

namespace birev {

using cplx = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr double pi = std::numbers::pi;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Exact element of Q(i). Used where the Q_N recursion mixes powers of i.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i_unit() { return {Rational(0), Rational(1)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rational n = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  cplx to_complex() const { return {to_double(re), to_double(im)}; }
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) {
  return os << '(' << g.re << ", " << g.im << ')';
}

/// Integer power of a ring element by repeated multiplication.
template <class T>
T ipow(T base, int e) {
  T out(1);
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

/// Construction of scalars from exact ratios, plus conversion to complex.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static double ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static cplx to_complex(double v) { return {v, 0.0}; }
  static constexpr bool exact = false;
};

template <>
struct scalar_traits<cplx> {
  static cplx ratio(std::int64_t num, std::int64_t den) {
    return {static_cast<double>(num) / static_cast<double>(den), 0.0};
  }
  static cplx to_complex(const cplx& v) { return v; }
  static constexpr bool exact = false;
};

template <>
struct scalar_traits<Rational> {
  static Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }
  static cplx to_complex(const Rational& v) { return {to_double(v), 0.0}; }
  static constexpr bool exact = true;
};

template <>
struct scalar_traits<GaussianRational> {
  static GaussianRational ratio(std::int64_t num, std::int64_t den) {
    return GaussianRational(Rational(num, den));
  }
  static cplx to_complex(const GaussianRational& v) { return v.to_complex(); }
  static constexpr bool exact = true;
};

/// Pretty form of a rational multiple of a power of pi, e.g. "pi^4/96".
inline std::string format_pi_multiple(const Rational& coeff, int power) {
  if (coeff == 0) return "0";
  BigInt num = boost::multiprecision::numerator(coeff);
  BigInt den = boost::multiprecision::denominator(coeff);
  std::string out;
  if (num < 0) {
    out += "-";
    num = -num;
  }
  std::string pi_part = power == 0 ? "" : (power == 1 ? "pi" : "pi^" + std::to_string(power));
  if (num != 1 || pi_part.empty()) {
    out += num.str();
    if (!pi_part.empty()) out += "*";
  }
  out += pi_part;
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace birev

#endif  // BIREV_SCALAR_HPP
