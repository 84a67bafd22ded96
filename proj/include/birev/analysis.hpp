#ifndef BIREV_ANALYSIS_HPP
#define BIREV_ANALYSIS_HPP

// Profile comparison away from jumps, box counting, and a few roughness diagnostics.

#include "birev/dispersion.hpp"
#include "birev/fourier.hpp"
#include "birev/piecewise.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace birev {

struct ComparisonReport {
  double sup_error_excluded = 0.0;
  std::vector<double> jump_set;
  double exclusion_radius = 0.0;
  std::size_t grid_size = 0;
  std::size_t samples_used = 0;
};

namespace detail {

inline double circle_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return std::min(d, 2.0 * pi - d);
}

}  // namespace detail

/// Breakpoints of p as x values in [0, 2pi).
template <class T>
std::vector<double> breakpoints(const PiecewisePolynomial<T>& p) {
  std::vector<double> out;
  for (auto s : p.starts()) out.push_back(pi * static_cast<double>(s) / static_cast<double>(p.q_den()));
  return out;
}

/// sup |a - b| over samples farther than delta from every breakpoint of b.
inline ComparisonReport compare_profiles(const GridFunction& a, const PiecewisePolynomial<double>& b, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("compare_profiles: delta must be positive");
  ComparisonReport r;
  r.jump_set = breakpoints(b);
  r.exclusion_radius = delta;
  r.grid_size = a.size();
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double x = a.x(m);
    bool near = false;
    for (double j : r.jump_set) near = near || detail::circle_distance(x, j) <= delta;
    if (near) continue;
    r.sup_error_excluded = std::max(r.sup_error_excluded, std::abs(a[m] - cplx(b(x))));
    ++r.samples_used;
  }
  if (r.samples_used == 0) throw std::invalid_argument("compare_profiles: delta excludes every sample");
  return r;
}

/// 2^-lo, ..., 2^-hi.
inline std::vector<double> dyadic_scales(int lo = 4, int hi = 10) {
  std::vector<double> out;
  for (int i = lo; i <= hi; ++i) out.push_back(std::ldexp(1.0, -i));
  return out;
}

/**
 * Box-counting dimension of {(x_m, Re g_m)} rescaled to the unit square.
 * Each column counts the boxes spanned by its samples and the first sample of
 * the next column, so the curve is treated as connected.
 */
inline double box_counting_dimension(const GridFunction& g, const std::vector<double>& scales = dyadic_scales()) {
  if (scales.size() < 5) throw std::invalid_argument("box counting: need at least five scales");
  const std::size_t n = g.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t m = 0; m < n; ++m) {
    lo = std::min(lo, g[m].real());
    hi = std::max(hi, g[m].real());
  }
  if (!(hi - lo > 0.0)) return 1.0;

  std::vector<double> xs, ys;
  for (double eps : scales) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("box counting: scales must lie in (0, 1)");
    const auto cols = static_cast<std::size_t>(std::ceil(1.0 / eps));
    std::vector<double> cmin(cols, std::numeric_limits<double>::infinity()), cmax(cols, -std::numeric_limits<double>::infinity());
    for (std::size_t m = 0; m <= n; ++m) {
      const double x = static_cast<double>(m) / static_cast<double>(n);
      const double y = (g[m % n].real() - lo) / (hi - lo);
      auto c = std::min(cols - 1, static_cast<std::size_t>(x / eps));
      cmin[c] = std::min(cmin[c], y);
      cmax[c] = std::max(cmax[c], y);
      // bridge to the previous column
      if (c > 0 && m > 0 && static_cast<std::size_t>(static_cast<double>(m - 1) / static_cast<double>(n) / eps) < c) {
        cmin[c - 1] = std::min(cmin[c - 1], y);
        cmax[c - 1] = std::max(cmax[c - 1], y);
      }
    }
    double count = 0.0;
    for (std::size_t c = 0; c < cols; ++c)
      if (cmax[c] >= cmin[c]) count += std::floor(cmax[c] / eps) - std::floor(cmin[c] / eps) + 1.0;
    xs.push_back(std::log(1.0 / eps));
    ys.push_back(std::log(count));
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace detail {

inline PolynomialShadow require_shadow(const DispersionSpec& spec) {
  auto s = leading_polynomial(spec);
  if (!s) throw std::invalid_argument("asymptotic gap: " + to_string(spec) + " has no polynomial asymptote");
  return *s;
}

inline double shadow_frequency(const PolynomialShadow& s, std::int64_t k) {
  double pk = 0.0;
  const auto kd = static_cast<double>(k);
  for (auto it = s.poly.rbegin(); it != s.poly.rend(); ++it) pk = pk * kd + static_cast<double>(*it);
  return s.multiplier * pk + s.phase_offset;
}

}  // namespace detail

/// sup over a 4096 grid of the cos-series of f = sigma under w(k) minus the same under its polynomial asymptote.
inline double asymptotic_gap(const DispersionSpec& spec, double t, int truncation = default_truncation) {
  const auto shadow = detail::require_shadow(spec);
  if (truncation > 2047) throw std::invalid_argument("asymptotic gap: truncation above 2047 aliases on 4096 points");
  const auto f = coeffs_of_step_sigma(truncation);
  FourierSeries diff(truncation, true);
  for (int k = -truncation; k <= truncation; ++k)
    diff.at(k) = f[k] * (std::cos(omega(spec, k) * t) - std::cos(detail::shadow_frequency(shadow, k) * t));
  const auto g = evaluate_series(diff, 4096);
  double worst = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) worst = std::max(worst, std::abs(g[m]));
  return worst;
}

/// sum_k |f_k| min(2, t |w(k) - shadow(k)|): dominates asymptotic_gap at the same t.
inline double asymptotic_gap_bound(const DispersionSpec& spec, double t, int truncation = default_truncation) {
  const auto shadow = detail::require_shadow(spec);
  const auto f = coeffs_of_step_sigma(truncation);
  double acc = 0.0;
  for (int k = -truncation; k <= truncation; ++k)
    acc += std::abs(f[k]) * std::min(2.0, std::abs(t) * std::abs(omega(spec, k) - detail::shadow_frequency(shadow, k)));
  return acc;
}

/**
 * Jump locations from the difference of one-sided window means. Returns
 * midpoints between the samples straddling each detected jump.
 */
inline std::vector<double> detect_jumps(const GridFunction& g, std::size_t window = 0, double threshold = 0.25) {
  const std::size_t n = g.size();
  if (window == 0) window = std::max<std::size_t>(2, n / 256);
  if (2 * window >= n) throw std::invalid_argument("detect_jumps: window too wide for the grid");
  std::vector<double> pre(n + 1, 0.0);
  for (std::size_t m = 0; m < n; ++m) pre[m + 1] = pre[m] + g[m].real();
  auto block = [&](std::int64_t from, std::size_t len) {
    // sum of g[from .. from+len), cyclic
    double s = 0.0;
    auto start = static_cast<std::size_t>((from % static_cast<std::int64_t>(n) + static_cast<std::int64_t>(n)) % static_cast<std::int64_t>(n));
    while (len > 0) {
      const std::size_t take = std::min(len, n - start);
      s += pre[start + take] - pre[start];
      len -= take;
      start = 0;
    }
    return s;
  };
  const double w = static_cast<double>(window);
  std::vector<double> d(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto mi = static_cast<std::int64_t>(m);
    d[m] = std::abs(block(mi + 1, window) - block(mi - static_cast<std::int64_t>(window) + 1, window)) / w;
  }
  std::vector<double> out;
  for (std::size_t m = 0; m < n; ++m) {
    if (d[m] < threshold) continue;
    bool peak = true;
    for (std::size_t j = 1; j <= window && peak; ++j) {
      const double l = d[(m + n - j) % n], r = d[(m + j) % n];
      peak = d[m] > l && d[m] >= r;
    }
    if (peak) out.push_back(std::fmod(g.x(m) + pi / static_cast<double>(n), 2.0 * pi));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every point of a has a partner in b within tol and vice versa (periodic distance).
inline bool same_point_set(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  auto covered = [tol](const std::vector<double>& from, const std::vector<double>& to) {
    for (double x : from) {
      bool hit = false;
      for (double y : to) hit = hit || detail::circle_distance(x, y) <= tol;
      if (!hit) return false;
    }
    return true;
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

namespace detail {

// Levelled error h of the degree-2 fit interpolating with alternating error on
// a four-point reference. Returns the quadratic too.
inline double levelled_error(const std::array<double, 4>& x, const std::array<double, 4>& y, std::array<double, 3>& c) {
  double a[4][5];
  for (int i = 0; i < 4; ++i) {
    a[i][0] = 1.0;
    a[i][1] = x[i];
    a[i][2] = x[i] * x[i];
    a[i][3] = i % 2 ? -1.0 : 1.0;
    a[i][4] = y[i];
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    for (int j = 0; j < 5; ++j) std::swap(a[col][j], a[piv][j]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int j = col; j < 5; ++j) a[r][j] -= f * a[col][j];
    }
  }
  for (int i = 0; i < 3; ++i) c[i] = a[i][4] / a[i][i];
  return a[3][4] / a[3][3];
}

/**
 * Best uniform quadratic error on the points (x, y), from below: discrete
 * Remez with single-point exchange. Any alternating reference bounds the
 * minimax error from below, so the value returned is safe even if the
 * iteration stops early.
 */
inline double quadratic_minimax_lower(const std::vector<double>& x, const std::vector<double>& y, int max_iter = 40) {
  const std::size_t n = x.size();
  if (n < 4) return 0.0;
  std::array<std::size_t, 4> ref{0, n / 3, 2 * n / 3, n - 1};
  double best = 0.0;
  std::array<double, 3> c{};
  for (int it = 0; it < max_iter; ++it) {
    std::array<double, 4> rx, ry;
    for (int i = 0; i < 4; ++i) {
      rx[i] = x[ref[i]];
      ry[i] = y[ref[i]];
    }
    const double h = levelled_error(rx, ry, c);
    best = std::max(best, std::abs(h));
    std::size_t worst = 0;
    double emax = -1.0;
    std::vector<double> e(n);
    for (std::size_t m = 0; m < n; ++m) {
      e[m] = y[m] - (c[0] + c[1] * x[m] + c[2] * x[m] * x[m]);
      if (std::abs(e[m]) > emax) {
        emax = std::abs(e[m]);
        worst = m;
      }
    }
    if (emax <= std::abs(h) * (1.0 + 1e-12)) break;
    auto sgn = [&](std::size_t m) { return e[m] >= 0.0; };
    if (worst < ref[0]) {
      if (sgn(worst) == sgn(ref[0])) ref[0] = worst;
      else ref = {worst, ref[0], ref[1], ref[2]};
    } else if (worst > ref[3]) {
      if (sgn(worst) == sgn(ref[3])) ref[3] = worst;
      else ref = {ref[1], ref[2], ref[3], worst};
    } else {
      for (int i = 0; i < 3; ++i)
        if (worst > ref[i] && worst < ref[i + 1]) {
          if (sgn(worst) == sgn(ref[i])) ref[i] = worst;
          else ref[i + 1] = worst;
          break;
        }
    }
  }
  return best;
}

}  // namespace detail

/**
 * Lower bound on the residual of any piecewise quadratic with at most `pieces`
 * pieces, residual measured outside delta-neighbourhoods of its breakpoints.
 * Some breakpoint-free arc has length >= 2pi/pieces - 2 delta, and it contains
 * one of the sampled windows; the fit is a single quadratic there.
 */
inline double piecewise_quadratic_fit_lower_bound(const GridFunction& g, int pieces = 12, double delta = 0.1) {
  if (pieces < 1) throw std::invalid_argument("fit bound: pieces must be positive");
  const std::size_t n = g.size();
  const double h = 2.0 * pi / static_cast<double>(n);
  const double arc = 2.0 * pi / pieces - 2.0 * delta;
  if (arc <= 8 * h) throw std::invalid_argument("fit bound: arc too short for the grid");
  const auto arc_pts = static_cast<std::size_t>(std::floor(arc / h));
  const std::size_t stride = std::max<std::size_t>(1, arc_pts / 8);
  const std::size_t len = arc_pts - stride - 1;
  double bound = std::numeric_limits<double>::infinity();
  std::vector<double> x(len), y(len);
  for (std::size_t start = 0; start < n; start += stride) {
    for (std::size_t i = 0; i < len; ++i) {
      x[i] = (static_cast<double>(i) - 0.5 * static_cast<double>(len)) / static_cast<double>(len);
      y[i] = g[(start + i) % n].real();
    }
    bound = std::min(bound, detail::quadratic_minimax_lower(x, y));
  }
  return bound;
}

}  // namespace birev

#endif  // BIREV_ANALYSIS_HPP
