#ifndef BIREV_FFT_HPP
#define BIREV_FFT_HPP

// Thin FFTW wrapper. Plans are cached per length behind a mutex (the FFTW
// planner is not reentrant); execution uses the new-array interface, which is.

#include "birev/scalar.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace birev::fft {

namespace detail {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

inline PlanPair plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const int len = static_cast<int>(n);
  PlanPair p;
  p.forward = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.backward = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p.forward == nullptr || p.backward == nullptr) throw std::runtime_error("fftw: planning failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace detail

/// In place: X_j = sum_r x_r exp(-2 pi i r j / L). No normalisation.
inline void forward(std::span<cplx> data) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(detail::plans_for(data.size()).forward, buf, buf);
}

/// In place: x_r = sum_j X_j exp(+2 pi i r j / L). No normalisation.
inline void backward(std::span<cplx> data) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(detail::plans_for(data.size()).backward, buf, buf);
}

}  // namespace birev::fft

#endif  // BIREV_FFT_HPP
