#ifndef BIREV_HILBERT_HPP
#define BIREV_HILBERT_HPP

// u_tt = H[u_xxx] on the circle, w(k) = |k|^{3/2}. Fourier side only.

#include "birev/dispersion.hpp"
#include "birev/fourier.hpp"
#include "birev/solver.hpp"

#include <complex>
#include <stdexcept>

namespace birev {

/// Periodic Hilbert transform multiplier, -i sign(k).
inline cplx hilbert_symbol(std::int64_t k) {
  if (k == 0) return 0.0;
  return k > 0 ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
}

/// Symbol of H d^3/dx^3, i.e. -|k|^3; w^2 is its negative.
inline cplx hilbert_third_derivative_symbol(std::int64_t k) {
  const auto kd = static_cast<double>(k);
  return hilbert_symbol(k) * std::pow(cplx(0.0, kd), 3);
}

inline FourierSeries evolve_hilbert(const FourierSeries& fhat, const FourierSeries& ghat, double t) {
  if (std::abs(ghat[0]) > 1e-14) throw std::invalid_argument("evolve_hilbert: g must have zero mean");
  return linear_evolve(FractionalMonomial{1.5}, fhat, ghat, t);
}

}  // namespace birev

#endif  // BIREV_HILBERT_HPP
