#ifndef BIREV_DISPERSION_HPP
#define BIREV_DISPERSION_HPP

// Dispersion relations w(k) for u_tt = -phi(D) u, w = sqrt(phi).

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace birev {

struct Monomial {
  int n = 2;
};

/// c_0 + c_1 k + ... + c_N k^N with integer coefficients.
struct IntegralPolynomial {
  std::vector<std::int64_t> coeffs;
};

enum class SqrtPhiKind { boussinesq };

/// w(k) = sqrt(phi(k)) for a named symbol; Boussinesq phi = k^2 (k^2/3 + 1).
struct SqrtPhi {
  SqrtPhiKind kind = SqrtPhiKind::boussinesq;
};

struct FractionalMonomial {
  double alpha = 1.5;
};

using DispersionSpec = std::variant<Monomial, IntegralPolynomial, SqrtPhi, FractionalMonomial>;

/// Integral polynomial P with w(k) = multiplier * P(k) + phase_offset + o(1).
struct PolynomialShadow {
  std::vector<std::int64_t> poly;
  double multiplier = 1.0;
  double phase_offset = 0.0;
};

namespace detail {

inline void validate(const DispersionSpec& spec) {
  if (const auto* m = std::get_if<Monomial>(&spec); m && m->n < 2)
    throw std::invalid_argument("dispersion: monomial degree must be >= 2");
  if (const auto* p = std::get_if<IntegralPolynomial>(&spec)) {
    if (p->coeffs.empty() || p->coeffs.back() == 0)
      throw std::invalid_argument("dispersion: leading coefficient must be nonzero");
  }
  if (const auto* f = std::get_if<FractionalMonomial>(&spec); f && !(f->alpha > 1.0))
    throw std::invalid_argument("dispersion: fractional exponent must exceed 1");
}

}  // namespace detail

/// Integer coefficients of a polynomial spec, constant term first.
inline std::optional<std::vector<std::int64_t>> integral_coefficients(const DispersionSpec& spec) {
  if (const auto* m = std::get_if<Monomial>(&spec)) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(m->n + 1), 0);
    c.back() = 1;
    return c;
  }
  if (const auto* p = std::get_if<IntegralPolynomial>(&spec)) return p->coeffs;
  return std::nullopt;
}

/// Nonnegative branch of w(k).
inline double omega(const DispersionSpec& spec, std::int64_t k) {
  const double kd = static_cast<double>(k);
  if (const auto* m = std::get_if<Monomial>(&spec)) return std::abs(std::pow(kd, m->n));
  if (const auto* p = std::get_if<IntegralPolynomial>(&spec)) {
    double acc = 0.0;
    for (auto it = p->coeffs.rbegin(); it != p->coeffs.rend(); ++it) acc = acc * kd + static_cast<double>(*it);
    return std::abs(acc);
  }
  if (std::holds_alternative<SqrtPhi>(spec)) return std::abs(kd) * std::sqrt(kd * kd / 3.0 + 1.0);
  return std::pow(std::abs(kd), std::get<FractionalMonomial>(spec).alpha);
}

/// Polynomial asymptote of w, if there is one.
inline std::optional<PolynomialShadow> leading_polynomial(const DispersionSpec& spec) {
  if (auto c = integral_coefficients(spec)) return PolynomialShadow{*c, 1.0, 0.0};
  if (std::holds_alternative<SqrtPhi>(spec)) {
    // |k| sqrt(k^2/3 + 1) = k^2/sqrt3 + sqrt3/2 - (3 sqrt3/8)/k^2 + ...
    return PolynomialShadow{{0, 0, 1}, 1.0 / std::sqrt(3.0), std::sqrt(3.0) / 2.0};
  }
  return std::nullopt;
}

/// Accepts monomial:N, poly:c0,c1,...,cN, boussinesq, frac:alpha.
inline DispersionSpec parse_dispersion(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  DispersionSpec out;
  try {
    if (head == "monomial" && !tail.empty()) {
      std::size_t used = 0;
      out = Monomial{std::stoi(tail, &used)};
      if (used != tail.size()) throw std::invalid_argument("trailing text");
    } else if (head == "poly" && !tail.empty()) {
      IntegralPolynomial p;
      std::stringstream ss(tail);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        p.coeffs.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument("trailing text");
      }
      out = p;
    } else if (head == "boussinesq" && colon == std::string::npos) {
      out = SqrtPhi{SqrtPhiKind::boussinesq};
    } else if (head == "frac" && !tail.empty()) {
      std::size_t used = 0;
      out = FractionalMonomial{std::stod(tail, &used)};
      if (used != tail.size()) throw std::invalid_argument("trailing text");
    } else {
      throw std::invalid_argument("unknown form");
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("dispersion: cannot parse '" + text + "'");
  }
  detail::validate(out);
  return out;
}

inline std::string to_string(const DispersionSpec& spec) {
  if (const auto* m = std::get_if<Monomial>(&spec)) return "monomial:" + std::to_string(m->n);
  if (const auto* p = std::get_if<IntegralPolynomial>(&spec)) {
    std::string s = "poly:";
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) s += (i ? "," : "") + std::to_string(p->coeffs[i]);
    return s;
  }
  if (std::holds_alternative<SqrtPhi>(spec)) return "boussinesq";
  std::ostringstream os;
  os.precision(17);
  os << "frac:" << std::get<FractionalMonomial>(spec).alpha;
  return os.str();
}

}  // namespace birev

#endif  // BIREV_DISPERSION_HPP
