#ifndef BIREV_REVIVAL_HPP
#define BIREV_REVIVAL_HPP

// Revival at t = pi p/q: kernels, box expansions and exact closed forms.

#include "birev/dispersion.hpp"
#include "birev/fourier.hpp"
#include "birev/piecewise.hpp"
#include "birev/scalar.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace birev {

/// t = pi p / q, kept reduced.
struct RationalTime {
  std::int64_t p = 0;
  std::int64_t q = 1;

  RationalTime() = default;
  RationalTime(std::int64_t num, std::int64_t den) : p(num), q(den) {
    if (q <= 0) throw std::invalid_argument("time: denominator must be positive");
    if (p < 0) throw std::invalid_argument("time: numerator must be nonnegative");
    const std::int64_t g = std::gcd(p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
    if (p == 0) q = 1;
  }

  double value() const { return pi * static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const { return "pi*" + std::to_string(p) + "/" + std::to_string(q); }
  friend bool operator==(const RationalTime&, const RationalTime&) = default;
};

/// Parses pi*p/q, pi*p, pi/q, pi and 0. Anything else is not an exact time.
inline std::optional<RationalTime> parse_rational_time(const std::string& text) {
  static const std::regex form(R"(\s*pi(?:\s*\*\s*(\d+))?(?:\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, form)) {
    const std::int64_t p = m[1].matched ? std::stoll(m[1].str()) : 1;
    const std::int64_t q = m[2].matched ? std::stoll(m[2].str()) : 1;
    return RationalTime(p, q);
  }
  if (std::regex_match(text, std::regex(R"(\s*0+\s*)"))) return RationalTime(0, 1);
  return std::nullopt;
}

enum class Trig { cos, sin, exp };

/// Weights of sum_j w_j delta(x - pi j/q), j = 0..2q-1.
struct RevivalKernel {
  std::int64_t q = 1;
  std::vector<cplx> weights;
};

namespace detail {

/// e^{i pi m / q} with m reduced first, so the angle is as accurate as possible.
inline cplx unit_root(std::int64_t m, std::int64_t q) {
  m = ((m % (2 * q)) + 2 * q) % (2 * q);
  if (m == 0) return 1.0;
  if (2 * m == 2 * q) return -1.0;
  if (2 * m == q) return cplx(0.0, 1.0);
  if (2 * m == 3 * q) return cplx(0.0, -1.0);
  return std::polar(1.0, pi * static_cast<double>(m) / static_cast<double>(q));
}

/// P(r) mod m, without overflow for moderate coefficients.
inline std::int64_t poly_mod(const std::vector<std::int64_t>& c, std::int64_t r, std::int64_t m) {
  __int128 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = (acc * r + *it) % m;
    if (acc < 0) acc += m;
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace detail

/**
 * trig(P(k) t) = sum_j w_j e^{-ik pi j/q} for all integers k.
 * The symbol is 2q-periodic in k, so the weights are its inverse DFT.
 */
inline RevivalKernel revival_kernel(const std::vector<std::int64_t>& poly_coeffs, RationalTime t, Trig trig) {
  const std::int64_t q = t.q;
  const std::int64_t period = 2 * q;
  std::vector<cplx> symbol(static_cast<std::size_t>(period));
  for (std::int64_t r = 0; r < period; ++r) {
    const std::int64_t m = static_cast<std::int64_t>(
        (static_cast<__int128>(detail::poly_mod(poly_coeffs, r, period)) * t.p) % period);
    const cplx e = detail::unit_root(m, q);
    symbol[static_cast<std::size_t>(r)] = trig == Trig::cos ? cplx(e.real()) : trig == Trig::sin ? cplx(e.imag()) : e;
  }
  RevivalKernel k{q, std::vector<cplx>(static_cast<std::size_t>(period))};
  for (std::int64_t j = 0; j < period; ++j) {
    cplx acc = 0.0;
    for (std::int64_t r = 0; r < period; ++r) acc += symbol[static_cast<std::size_t>(r)] * detail::unit_root(r * j, q);
    k.weights[static_cast<std::size_t>(j)] = acc / static_cast<double>(period);
  }
  return k;
}

inline RevivalKernel revival_kernel(const DispersionSpec& spec, RationalTime t, Trig trig) {
  auto c = integral_coefficients(spec);
  if (!c) throw std::invalid_argument("revival: dispersion is not an integral polynomial");
  return revival_kernel(*c, t, trig);
}

/// sum_j w_j f(x - pi j/q), periodically wrapped.
template <class T>
PiecewisePolynomial<cplx> apply_kernel(const RevivalKernel& kern, const PiecewisePolynomial<T>& f) {
  const auto fc = f.map([](const T& v) { return scalar_traits<T>::to_complex(v); });
  PiecewisePolynomial<cplx> out = fc.refined(kern.q).scaled(0.0);
  for (std::size_t j = 0; j < kern.weights.size(); ++j) {
    if (kern.weights[j] == 0.0) continue;
    out = out + translated(fc, static_cast<std::int64_t>(j), kern.q).scaled(kern.weights[j]);
  }
  return out;
}

/// Values on the 2q boxes [pi j/q, pi (j+1)/q).
struct BoxExpansion {
  std::int64_t q = 1;
  std::vector<cplx> values;

  PiecewisePolynomial<cplx> to_piecewise() const {
    return PiecewisePolynomial<cplx>::from_boxes(q, values);
  }
  PiecewisePolynomial<double> real_piecewise() const {
    std::vector<double> re;
    for (const auto& v : values) re.push_back(v.real());
    return PiecewisePolynomial<double>::from_boxes(q, re);
  }
};

namespace detail {

inline BoxExpansion boxes_from(const PiecewisePolynomial<cplx>& p, std::int64_t q) {
  const auto grid = p.refined(q);
  const std::int64_t factor = grid.q_den() / q;
  BoxExpansion out{q, {}};
  for (std::int64_t j = 0; j < 2 * q; ++j) out.values.push_back(grid.pieces()[static_cast<std::size_t>(j * factor)][0]);
  return out;
}

inline std::vector<std::int64_t> monomial_coeffs(int n) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(n + 1), 0);
  c.back() = 1;
  return c;
}

}  // namespace detail

/// Cosine series of the step at time t: sum_k sigma_k cos(k^N t) e^{ikx}, as boxes.
inline BoxExpansion box_expansion_cos(int n, RationalTime t) {
  const auto kern = revival_kernel(detail::monomial_coeffs(n), t, Trig::cos);
  return detail::boxes_from(apply_kernel(kern, step_sigma()), t.q);
}

/**
 * Sine series of the step in boxes: b_j for even N (sine in x), and for odd N
 * the b~_j of -(4/pi) sum sin(k^N t) cos(kx)/k, which is i times the kernel image.
 */
inline BoxExpansion box_expansion_sin(int n, RationalTime t) {
  if (n < 1) throw std::invalid_argument("box_expansion_sin: N must be positive");
  const auto kern = revival_kernel(detail::monomial_coeffs(n), t, Trig::sin);
  auto out = detail::boxes_from(apply_kernel(kern, step_sigma()), t.q);
  if (n % 2 == 1)
    for (auto& v : out.values) v *= cplx(0.0, 1.0);
  return out;
}

namespace detail {

inline PiecewisePolynomial<double> real_part(const PiecewisePolynomial<cplx>& p) {
  return p.map([](const cplx& v) { return v.real(); });
}

/// Mean over the period, (1/2) int_0^2 p(s) ds.
template <class T>
T mean_value(const PiecewisePolynomial<T>& p) {
  const auto prim = antiderivative_scaled(p, T(1));
  return prim.left_limit_at_node(0) / T(2);
}

/// m-th s-derivative of piece i at s = num/q_den.
template <class T>
T piece_derivative(const PiecewisePolynomial<T>& p, std::size_t i, int m, std::int64_t num) {
  auto c = p.pieces()[i];
  for (int d = 0; d < m; ++d) c = poly::derivative(c);
  return poly::horner(c, scalar_traits<T>::ratio(num, p.q_den()));
}

/// Jump of the m-th s-derivative across the wrap, value at 2- minus value at 0.
template <class T>
T wrap_jump(const PiecewisePolynomial<T>& p, int m) {
  return piece_derivative(p, p.piece_count() - 1, m, 2 * p.q_den()) - piece_derivative(p, 0, m, 0);
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/**
 * Exact profile of u_tt + u_xxxx = 0 from f = g = sigma at t = pi p/q:
 * a-boxes - H + C x with H = d^-2 (b-boxes) and C = H(2pi)/(2pi).
 */
inline PiecewisePolynomial<double> beam_closed_form(RationalTime t) {
  const auto a = box_expansion_cos(2, t).real_piecewise();
  const auto h = antiderivative(box_expansion_sin(2, t).real_piecewise(), 2);
  const double c = h.left_limit_at_node(0) / (2.0 * pi);
  auto smooth = (-h).plus_polynomial({0.0, c * pi});
  smooth = smooth.plus_polynomial({-detail::mean_value(smooth)});
  return a + smooth;
}

/// C(t) of the beam closed form.
inline double beam_linear_coefficient(RationalTime t) {
  const auto h = antiderivative(box_expansion_sin(2, t).real_piecewise(), 2);
  return h.left_limit_at_node(0) / (2.0 * pi);
}

/**
 * Periodic zero-mean function with Fourier coefficients g^(k)/(ik)^N, k != 0.
 * Built as G - R: G the N-fold antiderivative of g - <g>, R the degree N-1
 * polynomial restoring periodicity of derivatives 0..N-2 and zero mean.
 * Works in s = x/pi; the result is in x units.
 */
template <class T>
PiecewisePolynomial<T> periodic_antiderivative(const PiecewisePolynomial<T>& g, int n) {
  static_assert(!scalar_traits<T>::exact);
  auto h = g.plus_polynomial({-detail::mean_value(g)});
  auto big_g = h;
  for (int i = 0; i < n; ++i) big_g = antiderivative_scaled(big_g, T(1));
  poly::Coeffs<T> r(static_cast<std::size_t>(n), T(0));
  for (int m = n - 2; m >= 0; --m) {
    T rhs = detail::wrap_jump(big_g, m);
    for (int j = m + 2; j < n; ++j)
      rhs -= r[static_cast<std::size_t>(j)] *
             T(detail::factorial(j) / detail::factorial(j - m) * std::pow(2.0, j - m));
    r[static_cast<std::size_t>(m + 1)] = rhs / T(detail::factorial(m + 1) * 2.0);
  }
  T r0 = detail::mean_value(big_g);
  for (int j = 1; j < n; ++j) r0 -= r[static_cast<std::size_t>(j)] * T(std::pow(2.0, j) / (j + 1));
  r[0] = r0;
  return big_g.plus_polynomial(poly::scale(r, T(-1))).scaled(T(std::pow(pi, n)));
}

/**
 * u(t) for u_tt = -(d_x^2)^N ... with w = k^N, exactly:
 * cos-kernel * f + <g> t + sin-kernel * v, where v^(k) = g^(k)/k^N.
 */
template <class T>
PiecewisePolynomial<cplx> monomial_closed_form(int n, RationalTime t, const PiecewisePolynomial<T>& f,
                                               const PiecewisePolynomial<T>& g) {
  if (n < 2) throw std::invalid_argument("monomial_closed_form: N must be >= 2");
  const auto to_c = [](const T& v) { return scalar_traits<T>::to_complex(v); };
  const auto fc = f.map(to_c);
  const auto gc = g.map(to_c);
  const auto coeffs = detail::monomial_coeffs(n);
  const cplx in = std::pow(cplx(0.0, 1.0), n);
  const auto v = periodic_antiderivative(gc, n).scaled(in);
  auto u = apply_kernel(revival_kernel(coeffs, t, Trig::cos), fc) +
           apply_kernel(revival_kernel(coeffs, t, Trig::sin), v);
  return u.plus_polynomial({detail::mean_value(gc) * t.value()});
}

/// Coefficients D_j (of x^{2j+1}) in the step closed form, j < floor(N/2).
struct CorollaryForm {
  PiecewisePolynomial<double> profile;
  std::vector<double> d;
};

/**
 * f = g = sigma, w = k^N:
 * sum a_j sigma^{j,q} + (-1)^{floor(N/2)} d^-N(b-boxes) + sum_j D_j x^{2j+1},
 * D_j fixed by periodicity of the even derivatives of the smooth part.
 */
inline CorollaryForm corollary_step_form(int n, RationalTime t) {
  if (n < 2) throw std::invalid_argument("step form: N must be >= 2");
  const int big_k = n / 2;
  const auto a = box_expansion_cos(n, t).real_piecewise();
  auto hs = box_expansion_sin(n, t).real_piecewise();
  for (int i = 0; i < n; ++i) hs = antiderivative_scaled(hs, 1.0);
  const double sign = big_k % 2 == 0 ? 1.0 : -1.0;
  const auto smooth_h = hs.scaled(sign * std::pow(pi, n));
  std::vector<double> e(static_cast<std::size_t>(big_k), 0.0);
  for (int i = big_k - 1; i >= 0; --i) {
    double rhs = -detail::wrap_jump(smooth_h, 2 * i);
    for (int j = i + 1; j < big_k; ++j)
      rhs -= e[static_cast<std::size_t>(j)] * detail::factorial(2 * j + 1) / detail::factorial(2 * j + 1 - 2 * i) *
             std::pow(2.0, 2 * j + 1 - 2 * i);
    e[static_cast<std::size_t>(i)] = rhs / (detail::factorial(2 * i + 1) * 2.0);
  }
  poly::Coeffs<double> lin(static_cast<std::size_t>(2 * big_k), 0.0);
  std::vector<double> d;
  for (int j = 0; j < big_k; ++j) {
    lin[static_cast<std::size_t>(2 * j + 1)] = e[static_cast<std::size_t>(j)];
    d.push_back(e[static_cast<std::size_t>(j)] / std::pow(pi, 2 * j + 1));
  }
  return {a + smooth_h.plus_polynomial(lin), std::move(d)};
}

inline PiecewisePolynomial<double> corollary_step_closed_form(int n, RationalTime t) {
  return corollary_step_form(n, t).profile;
}

/// Truncated-series value of D_j: (-1)^{j+1} 4/(pi (2j+1)!) sum sin(k^N t)/k^{N-2j}, k odd.
inline double corollary_coefficient_series(int n, int j, RationalTime t, std::int64_t terms) {
  const auto coeffs = detail::monomial_coeffs(n);
  double acc = 0.0;
  for (std::int64_t m = terms - 1; m >= 0; --m) {
    const std::int64_t k = 2 * m + 1;
    const auto phase = static_cast<std::int64_t>(
        (static_cast<__int128>(detail::poly_mod(coeffs, k, 2 * t.q)) * t.p) % (2 * t.q));
    acc += detail::unit_root(phase, t.q).imag() / std::pow(static_cast<double>(k), n - 2 * j);
  }
  const double sign = j % 2 == 0 ? -1.0 : 1.0;
  return sign * 4.0 / (pi * detail::factorial(2 * j + 1)) * acc;
}

}  // namespace birev

#endif  // BIREV_REVIVAL_HPP
