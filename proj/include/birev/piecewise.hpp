#ifndef BIREV_PIECEWISE_HPP
#define BIREV_PIECEWISE_HPP

#include "birev/poly.hpp"
#include "birev/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace birev {

/**
 * Piecewise polynomial on the period [0, 2*pi).
 *
 * Breakpoints are exact: piece i starts at pi * starts()[i] / q_den() and runs
 * up to the next start (the last piece ends at 2*pi). Coefficients are stored
 * in the scaled variable s = x / pi, constant term first, so that a function
 * built from boxes on multiples of pi/q keeps rational coefficients when T is
 * an exact type. Evaluation is left-closed: at a breakpoint the piece starting
 * there applies.
 */
template <class T>
class PiecewisePolynomial {
 public:
  using Coeffs = poly::Coeffs<T>;

  PiecewisePolynomial() : PiecewisePolynomial(1, {0}, {Coeffs{T(0)}}) {}

  PiecewisePolynomial(std::int64_t q_den, std::vector<std::int64_t> starts,
                      std::vector<Coeffs> pieces)
      : q_den_(q_den), starts_(std::move(starts)), pieces_(std::move(pieces)) {
    if (q_den_ < 1) throw std::invalid_argument("piecewise: q_den must be positive");
    if (starts_.empty() || starts_.size() != pieces_.size())
      throw std::invalid_argument("piecewise: need one start per piece");
    if (starts_.front() != 0) throw std::invalid_argument("piecewise: first breakpoint must be 0");
    for (std::size_t i = 1; i < starts_.size(); ++i)
      if (starts_[i] <= starts_[i - 1])
        throw std::invalid_argument("piecewise: breakpoints must increase strictly");
    if (starts_.back() >= 2 * q_den_)
      throw std::invalid_argument("piecewise: breakpoint outside [0, 2pi)");
    for (auto& c : pieces_) {
      if (c.empty()) c.push_back(T(0));
      degree_bound_ = std::max(degree_bound_, static_cast<int>(c.size()) - 1);
    }
  }

  static PiecewisePolynomial constant(const T& value) {
    return PiecewisePolynomial(1, {0}, {Coeffs{value}});
  }

  /// Single polynomial over the whole period.
  static PiecewisePolynomial whole(Coeffs coeffs) {
    return PiecewisePolynomial(1, {0}, {std::move(coeffs)});
  }

  /// Sum_j values[j] * box_j, box_j the indicator of [pi j/q, pi (j+1)/q).
  static PiecewisePolynomial from_boxes(std::int64_t q, std::span<const T> values) {
    if (static_cast<std::int64_t>(values.size()) != 2 * q)
      throw std::invalid_argument("piecewise: box expansion needs 2q values");
    std::vector<std::int64_t> starts(values.size());
    std::vector<Coeffs> pieces(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      starts[j] = static_cast<std::int64_t>(j);
      pieces[j] = Coeffs{values[j]};
    }
    return PiecewisePolynomial(q, std::move(starts), std::move(pieces));
  }

  std::int64_t q_den() const { return q_den_; }
  const std::vector<std::int64_t>& starts() const { return starts_; }
  const std::vector<Coeffs>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }
  int degree_bound() const { return degree_bound_; }

  /// Numerator (over q_den) of the right end of piece i.
  std::int64_t end_of(std::size_t i) const {
    return i + 1 < starts_.size() ? starts_[i + 1] : 2 * q_den_;
  }

  /// Index of the piece containing the cell [c, c+1) / q_den.
  std::size_t piece_for_cell(std::int64_t cell) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), cell);
    return static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
  }

  /// Value of piece i at s = num / q_den (exact when T is exact).
  T piece_value(std::size_t i, std::int64_t num) const {
    return poly::horner(pieces_[i], scalar_traits<T>::ratio(num, q_den_));
  }

  /// Value at the node pi*num/q_den under the left-closed convention.
  T value_at_node(std::int64_t num) const {
    num = ((num % (2 * q_den_)) + 2 * q_den_) % (2 * q_den_);
    return piece_value(piece_for_cell(num), num);
  }

  /// Limit from the left at the node pi*num/q_den; num = 0 means x -> 2pi-.
  T left_limit_at_node(std::int64_t num) const {
    num = ((num % (2 * q_den_)) + 2 * q_den_) % (2 * q_den_);
    if (num == 0) return piece_value(pieces_.size() - 1, 2 * q_den_);
    return piece_value(piece_for_cell(num - 1), num);
  }

  /// Point evaluation at real x (wrapped into [0, 2pi)).
  auto operator()(double x) const {
    double s = std::fmod(x / pi, 2.0);
    if (s < 0) s += 2.0;
    auto cell = static_cast<std::int64_t>(std::floor(s * static_cast<double>(q_den_)));
    cell = std::clamp<std::int64_t>(cell, 0, 2 * q_den_ - 1);
    const auto& c = pieces_[piece_for_cell(cell)];
    if constexpr (scalar_traits<T>::exact) {
      cplx acc = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + scalar_traits<T>::to_complex(*it);
      return acc;
    } else {
      return poly::horner(c, s);
    }
  }

  /// Same function on the uniform grid of 2Q cells, Q = lcm(q_den, q).
  PiecewisePolynomial refined(std::int64_t q) const {
    const std::int64_t big = std::lcm(q_den_, q);
    const std::int64_t factor = big / q_den_;
    std::vector<std::int64_t> starts(static_cast<std::size_t>(2 * big));
    std::vector<Coeffs> pieces(starts.size());
    for (std::int64_t c = 0; c < 2 * big; ++c) {
      starts[static_cast<std::size_t>(c)] = c;
      pieces[static_cast<std::size_t>(c)] = pieces_[piece_for_cell(c / factor)];
    }
    return PiecewisePolynomial(big, std::move(starts), std::move(pieces));
  }

  /// Maps coefficients through fn (e.g. exact -> double).
  template <class Fn>
  auto map(Fn fn) const {
    using U = decltype(fn(std::declval<const T&>()));
    std::vector<poly::Coeffs<U>> out;
    out.reserve(pieces_.size());
    for (const auto& c : pieces_) {
      poly::Coeffs<U> d;
      d.reserve(c.size());
      for (const auto& v : c) d.push_back(fn(v));
      out.push_back(std::move(d));
    }
    return PiecewisePolynomial<U>(q_den_, starts_, std::move(out));
  }

  PiecewisePolynomial scaled(const T& factor) const {
    auto out = *this;
    for (auto& c : out.pieces_) c = poly::scale(std::move(c), factor);
    return out;
  }

  /// Adds the same polynomial (in s) to every piece.
  PiecewisePolynomial plus_polynomial(const Coeffs& c) const {
    auto out = *this;
    for (auto& p : out.pieces_) p = poly::add(p, c);
    out.degree_bound_ = std::max(out.degree_bound_, static_cast<int>(c.size()) - 1);
    return out;
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    const std::int64_t big = std::lcm(a.q_den_, b.q_den_);
    const std::int64_t fa = big / a.q_den_;
    const std::int64_t fb = big / b.q_den_;
    std::vector<std::int64_t> starts;
    for (auto s : a.starts_) starts.push_back(s * fa);
    for (auto s : b.starts_) starts.push_back(s * fb);
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    std::vector<Coeffs> pieces;
    pieces.reserve(starts.size());
    for (auto s : starts)
      pieces.push_back(poly::add(a.pieces_[a.piece_for_cell(s / fa)],
                                 b.pieces_[b.piece_for_cell(s / fb)]));
    return PiecewisePolynomial(big, std::move(starts), std::move(pieces));
  }

  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a) { return a.scaled(T(-1)); }
  friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return a + (-b);
  }

 private:
  std::int64_t q_den_;
  std::vector<std::int64_t> starts_;
  std::vector<Coeffs> pieces_;
  int degree_bound_ = 0;
};

/**
 * Antiderivative from the left end of the period, taken in s = x/pi and
 * multiplied by `scale`. With scale = pi this is the x-antiderivative; exact
 * callers pass 1 and carry the power of pi themselves.
 */
template <class T>
PiecewisePolynomial<T> antiderivative_scaled(const PiecewisePolynomial<T>& p, const T& scale) {
  std::vector<poly::Coeffs<T>> out;
  out.reserve(p.piece_count());
  T carry = T(0);
  for (std::size_t i = 0; i < p.piece_count(); ++i) {
    auto prim = poly::scale(poly::integral(p.pieces()[i]), scale);
    const T start = scalar_traits<T>::ratio(p.starts()[i], p.q_den());
    const T end = scalar_traits<T>::ratio(p.end_of(i), p.q_den());
    prim[0] = carry - poly::horner(prim, start);
    carry = poly::horner(prim, end);
    out.push_back(std::move(prim));
  }
  return PiecewisePolynomial<T>(p.q_den(), p.starts(), std::move(out));
}

/// Exact-friendly antiderivative in the scaled variable s.
template <class T>
PiecewisePolynomial<T> antiderivative_s(const PiecewisePolynomial<T>& p) {
  return antiderivative_scaled(p, T(1));
}

/// The operator integrating from x = 0: F(x) = int_0^x p(y) dy.
template <class T>
PiecewisePolynomial<T> antiderivative(const PiecewisePolynomial<T>& p) {
  static_assert(!scalar_traits<T>::exact, "use antiderivative_s for exact coefficients");
  return antiderivative_scaled(p, T(pi));
}

/// Repeated antiderivative.
template <class T>
PiecewisePolynomial<T> antiderivative(const PiecewisePolynomial<T>& p, int times) {
  auto out = p;
  for (int i = 0; i < times; ++i) out = antiderivative(out);
  return out;
}

/// x -> p(x - pi*num/den), extended periodically.
template <class T>
PiecewisePolynomial<T> translated(const PiecewisePolynomial<T>& p, std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  num = ((num % (2 * den)) + 2 * den) % (2 * den);
  auto grid = p.refined(den);
  const std::int64_t big = grid.q_den();
  const std::int64_t cells = 2 * big;
  const std::int64_t shift = num * (big / den);
  std::vector<std::int64_t> starts(static_cast<std::size_t>(cells));
  std::vector<poly::Coeffs<T>> pieces(starts.size());
  const T back = -scalar_traits<T>::ratio(num, den);
  const T wrapped = scalar_traits<T>::ratio(2 * den - num, den);
  for (std::int64_t c = 0; c < cells; ++c) {
    std::int64_t src = c - shift;
    const bool wrap = src < 0;
    if (wrap) src += cells;
    starts[static_cast<std::size_t>(c)] = c;
    pieces[static_cast<std::size_t>(c)] =
        poly::taylor_shift(grid.pieces()[static_cast<std::size_t>(src)], wrap ? wrapped : back);
  }
  return PiecewisePolynomial<T>(big, std::move(starts), std::move(pieces));
}

/// Piece coefficients re-expressed in x (c_m -> c_m / pi^m), for display.
template <class T>
poly::Coeffs<T> coefficients_in_x(const poly::Coeffs<T>& in_s) {
  static_assert(!scalar_traits<T>::exact);
  poly::Coeffs<T> out = in_s;
  double scale = 1.0;
  for (auto& c : out) {
    c /= scale;
    scale *= pi;
  }
  return out;
}

/**
 * Copy with neighbouring identical pieces merged. Display only: the stored
 * representation keeps one piece per box so indices stay stable.
 */
template <class T>
PiecewisePolynomial<T> merged_for_display(const PiecewisePolynomial<T>& p, double tol = 0.0) {
  std::vector<std::int64_t> starts{p.starts().front()};
  std::vector<poly::Coeffs<T>> pieces{p.pieces().front()};
  for (std::size_t i = 1; i < p.piece_count(); ++i) {
    const auto& a = pieces.back();
    const auto& b = p.pieces()[i];
    bool same = true;
    for (std::size_t m = 0; m < std::max(a.size(), b.size()); ++m) {
      T va = m < a.size() ? a[m] : T(0);
      T vb = m < b.size() ? b[m] : T(0);
      if constexpr (scalar_traits<T>::exact) {
        same = same && va == vb;
      } else {
        same = same && std::abs(va - vb) <= tol;
      }
    }
    if (!same) {
      starts.push_back(p.starts()[i]);
      pieces.push_back(b);
    }
  }
  return PiecewisePolynomial<T>(p.q_den(), std::move(starts), std::move(pieces));
}

}  // namespace birev

#endif  // BIREV_PIECEWISE_HPP
