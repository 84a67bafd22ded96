#ifndef BIREV_FOURIER_HPP
#define BIREV_FOURIER_HPP

#include "birev/fft.hpp"
#include "birev/piecewise.hpp"
#include "birev/scalar.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace birev {

/// Truncation giving 1001 odd modes (k = 1, 3, ..., 2001), as in the reference figures.
inline constexpr int default_truncation = 2001;

/**
 * Truncated Fourier series sum_{|k| <= M} c_k e^{ikx} on [0, 2pi).
 *
 * When flagged real-valued, c_{-k} = conj(c_k) is checked on construction.
 */
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(0) {}

  explicit FourierSeries(int truncation, bool real_valued = true)
      : m_(truncation), coeffs_(static_cast<std::size_t>(2 * truncation + 1)), real_(real_valued) {
    if (truncation < 0) throw std::invalid_argument("fourier: negative truncation");
  }

  FourierSeries(int truncation, std::vector<cplx> coeffs, bool real_valued)
      : m_(truncation), coeffs_(std::move(coeffs)), real_(real_valued) {
    if (truncation < 0) throw std::invalid_argument("fourier: negative truncation");
    if (coeffs_.size() != static_cast<std::size_t>(2 * truncation + 1))
      throw std::invalid_argument("fourier: expected 2M+1 coefficients");
    if (real_) check_conjugate_symmetry();
  }

  int truncation() const { return m_; }
  bool real_valued() const { return real_; }

  /// Coefficient of e^{ikx}; zero outside the truncation.
  cplx operator[](int k) const {
    if (k < -m_ || k > m_) return 0.0;
    return coeffs_[static_cast<std::size_t>(k + m_)];
  }
  cplx& at(int k) {
    if (k < -m_ || k > m_) throw std::out_of_range("fourier: mode outside truncation");
    return coeffs_[static_cast<std::size_t>(k + m_)];
  }

  std::span<const cplx> coefficients() const { return coeffs_; }
  std::span<cplx> coefficients() { return coeffs_; }

  /// Largest |c_{-k} - conj(c_k)| relative to the largest coefficient.
  double conjugate_asymmetry() const {
    double worst = 0.0;
    double scale = 0.0;
    for (const auto& c : coeffs_) scale = std::max(scale, std::abs(c));
    for (int k = 0; k <= m_; ++k) worst = std::max(worst, std::abs((*this)[-k] - std::conj((*this)[k])));
    return scale > 0.0 ? worst / scale : 0.0;
  }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& c : coeffs_) s += std::abs(c);
    return s;
  }

  void set_real_valued(bool flag) {
    real_ = flag;
    if (real_) check_conjugate_symmetry();
  }

  FourierSeries& operator+=(const FourierSeries& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    real_ = real_ && o.real_;
    return *this;
  }
  FourierSeries& operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
  }
  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator*(double a, FourierSeries s) { return s *= a; }

  /// this + a * o, in place.
  void add_scaled(double a, const FourierSeries& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
    real_ = real_ && o.real_;
  }

 private:
  void require_same(const FourierSeries& o) const {
    if (o.m_ != m_) throw std::invalid_argument("fourier: truncation mismatch");
  }
  void check_conjugate_symmetry() const {
    if (conjugate_asymmetry() > 1e-9)
      throw std::invalid_argument("fourier: real-valued flag set on non-symmetric coefficients");
  }

  int m_;
  std::vector<cplx> coeffs_;
  bool real_;
};

/// Samples at x_m = 2 pi m / n, m = 0..n-1.
class GridFunction {
 public:
  explicit GridFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("grid: need at least two samples");
  }

  std::size_t size() const { return samples_.size(); }
  double x(std::size_t m) const { return 2.0 * pi * static_cast<double>(m) / static_cast<double>(size()); }
  const cplx& operator[](std::size_t m) const { return samples_[m]; }
  cplx& operator[](std::size_t m) { return samples_[m]; }
  std::span<const cplx> samples() const { return samples_; }

  template <class Fn>
  static GridFunction sample(std::size_t n, Fn fn) {
    std::vector<cplx> v(n);
    for (std::size_t m = 0; m < n; ++m) v[m] = fn(2.0 * pi * static_cast<double>(m) / static_cast<double>(n));
    return GridFunction(std::move(v));
  }

 private:
  std::vector<cplx> samples_;
};

/// Cyclic DFT of arbitrary length. Forward has no scaling; inverse divides by L.
inline std::vector<cplx> dft_cyclic(std::span<const cplx> values, bool inverse = false) {
  if (values.empty()) throw std::invalid_argument("dft: empty input");
  std::vector<cplx> out(values.begin(), values.end());
  if (inverse) {
    fft::backward(out);
    for (auto& v : out) v /= static_cast<double>(out.size());
  } else {
    fft::forward(out);
  }
  return out;
}

/// Samples of the series on an n-point grid; needs n >= 2M+1 so no modes alias.
inline GridFunction evaluate_series(const FourierSeries& s, std::size_t n) {
  const auto m = static_cast<std::size_t>(s.truncation());
  if (n < 2 * m + 1)
    throw std::invalid_argument("evaluate_series: grid of " + std::to_string(n) +
                                " points aliases truncation " + std::to_string(m));
  std::vector<cplx> buf(n, 0.0);
  const int big_m = s.truncation();
  for (int k = -big_m; k <= big_m; ++k) {
    const auto idx = static_cast<std::size_t>((k % static_cast<int>(n) + static_cast<int>(n)) % static_cast<int>(n));
    buf[idx] += s[k];
  }
  fft::backward(buf);
  return GridFunction(std::move(buf));
}

/// Direct partial sum at a single point.
inline cplx evaluate_series_at(const FourierSeries& s, double x) {
  cplx acc = s[0];
  for (int k = 1; k <= s.truncation(); ++k) {
    const cplx e = std::polar(1.0, k * x);
    acc += s[k] * e + s[-k] * std::conj(e);
  }
  return acc;
}

/// Coefficients of the periodic convolution (1/2pi) int f(x-y) g(y) dy.
inline FourierSeries periodic_convolution(const FourierSeries& fhat, const FourierSeries& ghat) {
  if (fhat.truncation() != ghat.truncation())
    throw std::invalid_argument("convolution: truncation mismatch");
  const int m = fhat.truncation();
  std::vector<cplx> c(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k) c[static_cast<std::size_t>(k + m)] = fhat[k] * ghat[k];
  return FourierSeries(m, std::move(c), fhat.real_valued() && ghat.real_valued());
}

/// Step sigma = -1 on [0, pi), +1 on [pi, 2pi): c_k = 2i/(pi k) for odd k, else 0.
inline FourierSeries coeffs_of_step_sigma(int truncation = default_truncation) {
  FourierSeries s(truncation, true);
  for (int k = 1; k <= truncation; k += 2) {
    const cplx c(0.0, 2.0 / (pi * k));
    s.at(k) = c;
    s.at(-k) = std::conj(c);
  }
  return s;
}

/// Unit step, 0 on [0, pi) and 1 on [pi, 2pi).
inline FourierSeries coeffs_of_unit_step(int truncation = default_truncation) {
  FourierSeries s(truncation, true);
  s.at(0) = 0.5;
  for (int k = 1; k <= truncation; k += 2) {
    const cplx c(0.0, 1.0 / (pi * k));
    s.at(k) = c;
    s.at(-k) = std::conj(c);
  }
  return s;
}

inline PiecewisePolynomial<double> step_sigma() {
  return PiecewisePolynomial<double>(1, {0, 1}, {{-1.0}, {1.0}});
}

inline PiecewisePolynomial<double> unit_step() {
  return PiecewisePolynomial<double>(1, {0, 1}, {{0.0}, {1.0}});
}

/**
 * Exact Fourier coefficients of a piecewise polynomial, by closed-form
 * integration by parts on each piece:
 *   int p(s) e^{ls} ds = e^{ls} sum_j (-1)^j p^(j)(s) / l^(j+1),  l = -i pi k.
 */
template <class T>
FourierSeries coeffs_of_piecewise_poly(const PiecewisePolynomial<T>& p, int truncation) {
  static_assert(!scalar_traits<T>::exact, "convert exact coefficients before transforming");
  constexpr bool is_real = std::is_same_v<T, double>;
  std::vector<std::vector<std::vector<cplx>>> derivs(p.piece_count());
  for (std::size_t i = 0; i < p.piece_count(); ++i) {
    std::vector<cplx> c;
    for (const auto& v : p.pieces()[i]) c.push_back(cplx(v));
    while (true) {
      derivs[i].push_back(c);
      if (c.size() <= 1) break;
      c = poly::derivative(c);
    }
  }
  std::vector<cplx> out(static_cast<std::size_t>(2 * truncation + 1));
  for (int k = -truncation; k <= truncation; ++k) {
    cplx total = 0.0;
    for (std::size_t i = 0; i < p.piece_count(); ++i) {
      const double a = static_cast<double>(p.starts()[i]) / static_cast<double>(p.q_den());
      const double b = static_cast<double>(p.end_of(i)) / static_cast<double>(p.q_den());
      if (k == 0) {
        const auto prim = poly::integral(derivs[i][0]);
        total += poly::horner(prim, b) - poly::horner(prim, a);
        continue;
      }
      const cplx lambda(0.0, -pi * k);
      auto bracket = [&](double s) {
        cplx acc = 0.0;
        cplx lp = lambda;
        double sign = 1.0;
        for (const auto& d : derivs[i]) {
          acc += sign * poly::horner(d, s) / lp;
          lp *= lambda;
          sign = -sign;
        }
        return acc * std::exp(lambda * s);
      };
      total += bracket(b) - bracket(a);
    }
    out[static_cast<std::size_t>(k + truncation)] = 0.5 * total;
  }
  return FourierSeries(truncation, std::move(out), is_real);
}

/**
 * Q_N / pi^N in the variable s = x/pi, from the inductive definition
 *   Q_N = (-i)^N x^N / ((-1)^(N-1) N!) - sum_l i^(N-l) (2pi)^(N-l)/(N-l+1)! Q_l.
 * Every term carries exactly pi^N, so the s-coefficients are Gaussian rationals.
 */
inline std::vector<poly::Coeffs<GaussianRational>> qn_polynomials_exact(int max_n) {
  if (max_n < 1) throw std::invalid_argument("qn_polynomial: N must be >= 1");
  const GaussianRational i = GaussianRational::i_unit();
  const GaussianRational minus_i = -i;
  std::vector<poly::Coeffs<GaussianRational>> q(static_cast<std::size_t>(max_n + 1));
  for (int n = 1; n <= max_n; ++n) {
    poly::Coeffs<GaussianRational> c(static_cast<std::size_t>(n + 1), GaussianRational(0));
    BigInt fact = 1;
    for (int j = 2; j <= n; ++j) fact *= j;
    const int sign = (n - 1) % 2 == 0 ? 1 : -1;
    c[static_cast<std::size_t>(n)] = ipow(minus_i, n) / GaussianRational(Rational(BigInt(sign) * fact));
    for (int l = 1; l < n; ++l) {
      BigInt f2 = 1;
      for (int j = 2; j <= n - l + 1; ++j) f2 *= j;
      GaussianRational w = ipow(i, n - l) * GaussianRational(Rational(BigInt(1) << (n - l), f2));
      const auto& ql = q[static_cast<std::size_t>(l)];
      for (std::size_t m = 0; m < ql.size(); ++m) c[m] -= w * ql[m];
    }
    q[static_cast<std::size_t>(n)] = std::move(c);
  }
  return q;
}

/// Q_N as a single-piece polynomial; its Fourier coefficients are k^-N for k != 0.
inline PiecewisePolynomial<cplx> qn_polynomial(int n) {
  const auto exact = qn_polynomials_exact(n)[static_cast<std::size_t>(n)];
  const double scale = std::pow(pi, n);
  poly::Coeffs<cplx> c;
  for (const auto& v : exact) c.push_back(v.to_complex() * scale);
  return PiecewisePolynomial<cplx>::whole(std::move(c));
}

}  // namespace birev

#endif  // BIREV_FOURIER_HPP
