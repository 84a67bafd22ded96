#ifndef BIREV_POLY_HPP
#define BIREV_POLY_HPP

// Dense univariate polynomials stored constant-term first.

#include <algorithm>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace birev::poly {

template <class T>
using Coeffs = std::vector<T>;

// R is spelled out so multiprecision expression templates never leak into it.
template <class T, class S>
auto horner(const Coeffs<T>& c, const S& s) {
  using R = std::conditional_t<std::is_same_v<T, S>, T,
                               std::decay_t<decltype(std::declval<T>() * std::declval<S>())>>;
  R acc = R(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

template <class T>
Coeffs<T> derivative(const Coeffs<T>& c) {
  if (c.size() <= 1) return {T(0)};
  Coeffs<T> d(c.size() - 1);
  for (std::size_t m = 1; m < c.size(); ++m) d[m - 1] = c[m] * T(static_cast<int>(m));
  return d;
}

/// Antiderivative with zero constant term.
template <class T>
Coeffs<T> integral(const Coeffs<T>& c) {
  Coeffs<T> out(c.size() + 1, T(0));
  for (std::size_t m = 0; m < c.size(); ++m) out[m + 1] = c[m] / T(static_cast<int>(m + 1));
  return out;
}

template <class T>
Coeffs<T> add(const Coeffs<T>& a, const Coeffs<T>& b) {
  Coeffs<T> out(std::max(a.size(), b.size()), T(0));
  for (std::size_t m = 0; m < a.size(); ++m) out[m] += a[m];
  for (std::size_t m = 0; m < b.size(); ++m) out[m] += b[m];
  return out;
}

template <class T>
Coeffs<T> scale(Coeffs<T> a, const T& factor) {
  for (auto& v : a) v *= factor;
  return a;
}

/// Coefficients of p(s + delta).
template <class T>
Coeffs<T> taylor_shift(Coeffs<T> c, const T& delta) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += delta * c[j];
  return c;
}

/// Drops trailing coefficients that are exactly zero (keeps at least one).
template <class T>
Coeffs<T> trimmed(Coeffs<T> c) {
  while (c.size() > 1 && c.back() == T(0)) c.pop_back();
  if (c.empty()) c.push_back(T(0));
  return c;
}

}  // namespace birev::poly

#endif  // BIREV_POLY_HPP
