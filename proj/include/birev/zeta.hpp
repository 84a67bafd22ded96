#ifndef BIREV_ZETA_HPP
#define BIREV_ZETA_HPP

// sigma(N) = sum (2n+1)^-N (N even), tau(N) = sum (-1)^n (2n+1)^-N (N odd),
// obtained exactly from periodicity of the step closed form at t = (2l-1) pi/2.

#include "birev/piecewise.hpp"
#include "birev/revival.hpp"
#include "birev/scalar.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace birev {

/// coeff * pi^power.
struct PiMultiple {
  Rational coeff{0};
  int power = 0;

  double value() const { return to_double(coeff) * std::pow(pi, power); }
  std::string str() const { return format_pi_multiple(coeff, power); }
  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
};

struct LedgerEntry {
  PiMultiple value;
  std::string provenance;
};

class missing_entry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sigma(N) for even N, tau(N) for odd N. Read-only once sealed.
class ZetaLedger {
 public:
  void put(int n, LedgerEntry e) {
    if (sealed_) throw std::logic_error("zeta ledger is sealed");
    entries_[n] = std::move(e);
  }
  bool has(int n) const { return entries_.count(n) != 0; }
  const LedgerEntry& get(int n) const {
    auto it = entries_.find(n);
    if (it == entries_.end())
      throw missing_entry(std::string(n % 2 ? "tau(" : "sigma(") + std::to_string(n) + ") is not in the ledger");
    return it->second;
  }
  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }
  const std::map<int, LedgerEntry>& entries() const { return entries_; }

 private:
  std::map<int, LedgerEntry> entries_;
  bool sealed_ = false;
};

/// Name used in output: sigma for even orders, tau for odd.
inline std::string series_name(int n) { return std::string(n % 2 ? "tau(" : "sigma(") + std::to_string(n) + ")"; }

namespace detail {

inline Rational rational_factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

/// Box values at q = 2, snapped to the integers they must be.
inline std::vector<Rational> integer_boxes(int n, RationalTime t) {
  if (t.q != 2) throw std::invalid_argument("zeta: exact boxes need q = 2");
  std::vector<Rational> out;
  for (const auto& v : box_expansion_sin(n, t).values) {
    const double r = std::round(v.real());
    if (std::abs(v.real() - r) > 1e-9 || std::abs(v.imag()) > 1e-9)
      throw std::runtime_error("zeta: box value is not an integer");
    out.push_back(Rational(static_cast<long long>(r)));
  }
  return out;
}

}  // namespace detail

/// H^N(2pi) / pi^N at t = pi p/2, exactly.
inline Rational boundary_value_exact(int n, RationalTime t) {
  const auto b = detail::integer_boxes(n, t);
  auto h = PiecewisePolynomial<Rational>::from_boxes(2, b);
  for (int i = 0; i < n; ++i) h = antiderivative_s(h);
  return h.left_limit_at_node(0);
}

/// (pi/4) H^N(2pi), H^N the N-fold antiderivative of the sine box expansion.
inline double gamma_identity_rhs(int n, RationalTime t) {
  if (n < 2) throw std::invalid_argument("gamma identity: N must be >= 2");
  const auto h = antiderivative(box_expansion_sin(n, t).real_piecewise(), n);
  return pi / 4.0 * h.left_limit_at_node(0);
}

/// Same quantity as a rational multiple of pi^{N+1}, for t = pi (2l-1)/2.
inline PiMultiple gamma_identity_rhs_exact(int n, RationalTime t) {
  return {boundary_value_exact(n, t) / 4, n + 1};
}

/**
 * sigma(N) or tau(N) from (pi/4) H^N(2pi) at t = (2l-1) pi/2 and the lower
 * ledger entries of the same parity:
 *   (-1)^{floor(N/2)} h/4 = (-1)^{l-1} sum_{j=0}^{K-1} (-1)^j 2^{2j+1}/(2j+1)! c_{N-2j},
 * h = H^N(2pi)/pi^N, c_m the coefficient of pi^m, K = floor(N/2).
 */
inline PiMultiple sigma_tau_recursion(int n, const ZetaLedger& ledger, int l = 1) {
  if (n < 2) throw std::invalid_argument("recursion: N must be >= 2");
  if (l < 1) throw std::invalid_argument("recursion: l must be positive");
  const RationalTime t(2 * l - 1, 2);
  const Rational h = boundary_value_exact(n, t);
  const int big_k = n / 2;
  Rational rhs = h / 4;
  if (big_k % 2) rhs = -rhs;
  if ((l - 1) % 2) rhs = -rhs;
  for (int j = 1; j < big_k; ++j) {
    const auto& lower = ledger.get(n - 2 * j).value;
    if (lower.power != n - 2 * j) throw std::logic_error("recursion: ledger entry has the wrong power of pi");
    Rational term = Rational(BigInt(1) << (2 * j + 1)) / detail::rational_factorial(2 * j + 1) * lower.coeff;
    rhs -= j % 2 ? -term : term;
  }
  return {rhs / 2, n};
}

/// Fills the ledger up to max_n (both parities) and seals it.
inline ZetaLedger build_ledger(int max_n, int l = 1) {
  ZetaLedger ledger;
  for (int n = 2; n <= max_n; ++n)
    ledger.put(n, {sigma_tau_recursion(n, ledger, l),
                   "periodicity of the step closed form at t = " + RationalTime(2 * l - 1, 2).str()});
  ledger.seal();
  return ledger;
}

/// zeta(N) = sigma(N) / (1 - 2^-N), N even.
inline PiMultiple zeta_from_sigma(int n, const ZetaLedger& ledger) {
  if (n < 2 || n % 2) throw std::invalid_argument("zeta_from_sigma: N must be even and >= 2");
  const auto& s = ledger.get(n).value;
  const Rational two_n(BigInt(1) << n);
  return {s.coeff * two_n / (two_n - 1), s.power};
}

/// Residue of (2n+1)^N mod 8: 1 for even N, 2n+1 mod 8 for odd N.
inline int odd_power_residue_mod8(std::int64_t n, int power) {
  if (power % 2 == 0) return 1;
  return static_cast<int>(((2 * n + 1) % 8 + 8) % 8);
}

/// sin((2n+1)^N (2l-1) pi/2), from the residue alone.
inline int special_time_sign(std::int64_t n, int power, int l) {
  const std::int64_t m = (static_cast<std::int64_t>(odd_power_residue_mod8(n, power)) * (2 * l - 1)) % 4;
  return m == 1 ? 1 : -1;
}

namespace detail {

// Smallest terms first.
template <class Term>
double sum_backwards(std::int64_t terms, Term f) {
  double acc = 0.0;
  for (std::int64_t n = terms - 1; n >= 0; --n) acc += f(n);
  return acc;
}

}  // namespace detail

/// sum_{n>=1} n^-N: partial sum plus Euler-Maclaurin tail.
inline double zeta_partial_sum(int power, std::int64_t terms = 1'000'000) {
  const double s = detail::sum_backwards(terms, [&](std::int64_t n) { return std::pow(static_cast<double>(n + 1), -power); });
  const double m = static_cast<double>(terms + 1);
  const double tail = std::pow(m, 1 - power) / (power - 1) + 0.5 * std::pow(m, -power) + power * std::pow(m, -power - 1) / 12.0;
  return s + tail;
}

/// sum_{n>=0} (2n+1)^-N with tail correction.
inline double sigma_partial_sum(int power, std::int64_t terms = 1'000'000) {
  auto f = [&](double x) { return std::pow(2.0 * x + 1.0, -power); };
  const double s = detail::sum_backwards(terms, [&](std::int64_t n) { return f(static_cast<double>(n)); });
  const double m = static_cast<double>(terms);
  const double df = -2.0 * power * std::pow(2.0 * m + 1.0, -power - 1);
  const double tail = std::pow(2.0 * m + 1.0, 1 - power) / (2.0 * (power - 1)) + 0.5 * f(m) - df / 12.0;
  return s + tail;
}

/// sum_{n>=0} (-1)^n (2n+1)^-N with the leading Boole tail terms.
inline double tau_partial_sum(int power, std::int64_t terms = 1'000'000) {
  auto f = [&](double x) { return std::pow(2.0 * x + 1.0, -power); };
  const double s = detail::sum_backwards(terms, [&](std::int64_t n) { return (n % 2 ? -1.0 : 1.0) * f(static_cast<double>(n)); });
  const double m = static_cast<double>(terms);
  const double df = -2.0 * power * std::pow(2.0 * m + 1.0, -power - 1);
  const double sign = terms % 2 ? -1.0 : 1.0;
  return s + sign * (0.5 * f(m) - 0.25 * df);
}

}  // namespace birev

#endif  // BIREV_ZETA_HPP
