#ifndef BIREV_SOLVER_HPP
#define BIREV_SOLVER_HPP

// Mode-wise linear evolution, and RK4 pseudospectral integration of
//   u_tt + u_xxxx + mu u + eps |u|^2 u = 0   on [0, 2pi), periodic.

#include "birev/dispersion.hpp"
#include "birev/fft.hpp"
#include "birev/fourier.hpp"
#include "birev/revival.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace birev {

/// u^(t,k) = f^(k) cos(w t) + g^(k) sin(w t)/w, with sin(w t)/w -> t at w = 0.
inline FourierSeries linear_evolve(const DispersionSpec& spec, const FourierSeries& fhat, const FourierSeries& ghat,
                                   double t) {
  if (fhat.truncation() != ghat.truncation()) throw std::invalid_argument("linear_evolve: truncation mismatch");
  const int m = fhat.truncation();
  std::vector<cplx> out(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k) {
    const double w = omega(spec, k);
    const double s = w == 0.0 ? t : std::sin(w * t) / w;
    out[static_cast<std::size_t>(k + m)] = fhat[k] * std::cos(w * t) + ghat[k] * s;
  }
  return FourierSeries(m, std::move(out), fhat.real_valued() && ghat.real_valued());
}

/// Same at t = pi p/q; for integral polynomial dispersion the phase P(k) p mod 2q is exact.
inline FourierSeries linear_evolve(const DispersionSpec& spec, const FourierSeries& fhat, const FourierSeries& ghat,
                                   RationalTime t) {
  const auto coeffs = integral_coefficients(spec);
  if (!coeffs) return linear_evolve(spec, fhat, ghat, t.value());
  if (fhat.truncation() != ghat.truncation()) throw std::invalid_argument("linear_evolve: truncation mismatch");
  const int m = fhat.truncation();
  const std::int64_t period = 2 * t.q;
  std::vector<cplx> out(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k) {
    const auto residue = static_cast<std::int64_t>(
        (static_cast<__int128>(detail::poly_mod(*coeffs, k, period)) * t.p) % period);
    const cplx e = detail::unit_root(residue, t.q);
    double pk = 0.0;
    for (auto it = coeffs->rbegin(); it != coeffs->rend(); ++it) pk = pk * k + static_cast<double>(*it);
    // sin(|P| t)/|P| = sin(P t)/P
    const cplx s = pk == 0.0 ? cplx(t.value()) : cplx(e.imag() / pk);
    out[static_cast<std::size_t>(k + m)] = fhat[k] * e.real() + ghat[k] * s;
  }
  return FourierSeries(m, std::move(out), fhat.real_valued() && ghat.real_valued());
}

struct BeamParams {
  double mu = 0.0;
  double eps = 0.0;
  double dt = 1e-3;
  int modes = 512;
  bool dealias = false;

  /// Grid size n = modes; coefficients kept for |k| <= n/2 - 1 (Nyquist dropped).
  int truncation() const { return modes / 2 - 1; }

  void validate() const {
    if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (modes < 4 || (modes & (modes - 1)) != 0) throw std::invalid_argument("modes must be a power of two >= 4");
  }

  /// Largest dt for which RK4 stays inside its stability region on the k^4 term.
  double stable_dt() const {
    const double kmax = truncation();
    return 2.5 / std::sqrt(kmax * kmax * kmax * kmax + mu);
  }

  std::vector<std::string> advisories() const {
    std::vector<std::string> out;
    if (dt > 1e-2) out.push_back("dt above 1e-2");
    if (dt > stable_dt())
      out.push_back("dt exceeds the explicit stability limit " + std::to_string(stable_dt()) + " for " +
                    std::to_string(modes) + " modes");
    return out;
  }
};

/// Non-finite coefficient during time stepping.
class numerical_abort : public std::runtime_error {
 public:
  numerical_abort(const std::string& what, int mode) : std::runtime_error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

struct SpectralState {
  FourierSeries uhat;
  FourierSeries vhat;
  double t = 0.0;
  BeamParams params;
};

namespace detail {

struct Pair {
  std::vector<cplx> u, v;
};

inline bool dealiased_out(int k, int m) { return 3 * std::abs(k) > 2 * m; }

/// Coefficients of |u|^2 u for u = sum_{|k|<=m} c_k e^{ikx}, on an n-point grid.
inline std::vector<cplx> cubic_term(const std::vector<cplx>& c, int m, int n, bool real, bool dealias) {
  std::vector<cplx> buf(static_cast<std::size_t>(n), 0.0);
  for (int k = -m; k <= m; ++k) {
    if (dealias && dealiased_out(k, m)) continue;
    buf[static_cast<std::size_t>((k + n) % n)] = c[static_cast<std::size_t>(k + m)];
  }
  fft::backward(buf);
  for (auto& u : buf) {
    if (real) {
      const double r = u.real();
      u = r * r * r;
    } else {
      u = std::norm(u) * u;
    }
  }
  fft::forward(buf);
  std::vector<cplx> out(c.size());
  for (int k = -m; k <= m; ++k) {
    if (dealias && dealiased_out(k, m)) continue;
    out[static_cast<std::size_t>(k + m)] = buf[static_cast<std::size_t>((k + n) % n)] / static_cast<double>(n);
  }
  return out;
}

inline Pair rhs(const std::vector<cplx>& u, const std::vector<cplx>& v, const BeamParams& p, bool real) {
  const int m = p.truncation();
  Pair d{v, std::vector<cplx>(u.size())};
  for (int k = -m; k <= m; ++k) {
    const double kk = static_cast<double>(k) * k;
    d.v[static_cast<std::size_t>(k + m)] = -(kk * kk + p.mu) * u[static_cast<std::size_t>(k + m)];
  }
  if (p.eps != 0.0) {
    const auto cubic = cubic_term(u, m, p.modes, real, p.dealias);
    for (std::size_t i = 0; i < u.size(); ++i) d.v[i] -= p.eps * cubic[i];
  }
  return d;
}

inline std::vector<cplx> axpy(const std::vector<cplx>& x, double a, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

inline void check_finite(const std::vector<cplx>& c, int m, double t, const char* which) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) {
      const int k = static_cast<int>(i) - m;
      throw numerical_abort(std::string("non-finite ") + which + " coefficient at mode " + std::to_string(k) +
                                " near t=" + std::to_string(t),
                            k);
    }
}

inline std::vector<cplx> raw(const FourierSeries& s) { return {s.coefficients().begin(), s.coefficients().end()}; }

}  // namespace detail

/// Time derivative (u^_t, v^_t) of the semi-discrete system.
inline std::pair<FourierSeries, FourierSeries> nonlinear_rhs(const SpectralState& s) {
  const int m = s.params.truncation();
  if (s.uhat.truncation() != m || s.vhat.truncation() != m)
    throw std::invalid_argument("nonlinear_rhs: state truncation does not match the mode count");
  const bool real = s.uhat.real_valued() && s.vhat.real_valued();
  auto d = detail::rhs(detail::raw(s.uhat), detail::raw(s.vhat), s.params, real);
  return {FourierSeries(m, std::move(d.u), false), FourierSeries(m, std::move(d.v), false)};
}

/// One classical RK4 step of size h (defaults to params.dt).
inline SpectralState rk4_step(const SpectralState& s, double h) {
  const int m = s.params.truncation();
  const bool real = s.uhat.real_valued() && s.vhat.real_valued();
  if (h == 0.0) return s;
  const auto u = detail::raw(s.uhat);
  const auto v = detail::raw(s.vhat);
  const auto k1 = detail::rhs(u, v, s.params, real);
  const auto k2 = detail::rhs(detail::axpy(u, h / 2, k1.u), detail::axpy(v, h / 2, k1.v), s.params, real);
  const auto k3 = detail::rhs(detail::axpy(u, h / 2, k2.u), detail::axpy(v, h / 2, k2.v), s.params, real);
  const auto k4 = detail::rhs(detail::axpy(u, h, k3.u), detail::axpy(v, h, k3.v), s.params, real);
  std::vector<cplx> un(u.size()), vn(v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    un[i] = u[i] + h / 6 * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
    vn[i] = v[i] + h / 6 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
  }
  detail::check_finite(un, m, s.t + h, "u");
  detail::check_finite(vn, m, s.t + h, "v");
  FourierSeries us(m, std::move(un), false), vs(m, std::move(vn), false);
  us.set_real_valued(real);
  vs.set_real_valued(real);
  return {std::move(us), std::move(vs), s.t + h, s.params};
}

inline SpectralState rk4_step(const SpectralState& s) { return rk4_step(s, s.params.dt); }

/// Initial state from coefficient data at the solver's truncation.
inline SpectralState initial_state(const BeamParams& p, const FourierSeries& fhat, const FourierSeries& ghat) {
  p.validate();
  const int m = p.truncation();
  FourierSeries u(m, false), v(m, false);
  for (int k = -m; k <= m; ++k) {
    u.at(k) = fhat[k];
    v.at(k) = ghat[k];
  }
  const bool real = fhat.real_valued() && ghat.real_valued();
  u.set_real_valued(real);
  v.set_real_valued(real);
  return {std::move(u), std::move(v), 0.0, p};
}

inline SpectralState initial_state(const BeamParams& p, const PiecewisePolynomial<double>& f,
                                   const PiecewisePolynomial<double>& g) {
  return initial_state(p, coeffs_of_piecewise_poly(f, p.truncation()), coeffs_of_piecewise_poly(g, p.truncation()));
}

/// Grid samples -> coefficients |k| <= m (the grid must resolve them).
inline FourierSeries coeffs_of_grid(const GridFunction& g, int m, bool real = true) {
  const auto n = static_cast<int>(g.size());
  if (n < 2 * m + 1) throw std::invalid_argument("coeffs_of_grid: grid too coarse for the truncation");
  auto c = dft_cyclic(g.samples());
  std::vector<cplx> out(static_cast<std::size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k) out[static_cast<std::size_t>(k + m)] = c[static_cast<std::size_t>((k + n) % n)] / static_cast<double>(n);
  FourierSeries s(m, std::move(out), false);
  if (real && s.conjugate_asymmetry() <= 1e-9) s.set_real_valued(true);
  return s;
}

inline SpectralState initial_state(const BeamParams& p, const GridFunction& f, const GridFunction& g) {
  return initial_state(p, coeffs_of_grid(f, p.truncation()), coeffs_of_grid(g, p.truncation()));
}

/// Steps of dt up to the last t <= t_end, then one shortened step onto t_end.
inline SpectralState evolve_state(SpectralState s, double t_end,
                                  const std::function<void(const SpectralState&)>& observer = {}) {
  if (!(t_end >= s.t)) throw std::invalid_argument("evolve: t_end precedes the current time");
  const double start = s.t;
  const double dt = s.params.dt;
  const auto full = static_cast<std::int64_t>(std::floor((t_end - start) / dt * (1.0 + 1e-12)));
  for (std::int64_t i = 1; i <= full; ++i) {
    s = rk4_step(s, dt);
    s.t = start + static_cast<double>(i) * dt;
    if (observer) observer(s);
  }
  const double rest = t_end - s.t;
  if (rest > 1e-12 * dt) {
    s = rk4_step(s, rest);
    s.t = t_end;
    if (observer) observer(s);
  } else {
    s.t = t_end;
  }
  return s;
}

/// Profile u(t_end) on the solver grid.
template <class Data>
GridFunction evolve_nonlinear(const BeamParams& p, const Data& f, const Data& g, double t_end) {
  const auto s = evolve_state(initial_state(p, f, g), t_end);
  return evaluate_series(s.uhat, static_cast<std::size_t>(p.modes));
}

/// int [v^2/2 + u_xx^2/2 + mu u^2/2 + eps u^4/4] dx; the quartic term on the grid.
inline double energy(const SpectralState& s) {
  const int m = s.params.truncation();
  double quad = 0.0;
  for (int k = -m; k <= m; ++k) {
    const double kk = static_cast<double>(k) * k;
    quad += 0.5 * std::norm(s.vhat[k]) + 0.5 * (kk * kk + s.params.mu) * std::norm(s.uhat[k]);
  }
  double quart = 0.0;
  if (s.params.eps != 0.0) {
    const auto grid = evaluate_series(s.uhat, static_cast<std::size_t>(s.params.modes));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double u2 = std::norm(grid[i]);
      quart += u2 * u2 / 4.0;
    }
    quart *= 2.0 * pi / static_cast<double>(grid.size());
  }
  return 2.0 * pi * quad + s.params.eps * quart;
}

}  // namespace birev

#endif  // BIREV_SOLVER_HPP
