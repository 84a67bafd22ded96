#include "birev/analysis.hpp"
#include "birev/hilbert.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace birev;

TEST(Symbol, Values) {
  EXPECT_EQ(hilbert_symbol(5), cplx(0.0, -1.0));
  EXPECT_EQ(hilbert_symbol(-3), cplx(0.0, 1.0));
  EXPECT_EQ(hilbert_symbol(0), cplx(0.0));
}

TEST(Symbol, ThirdDerivativeGivesThreeHalves) {
  for (int k = -40; k <= 40; ++k) {
    const cplx s = hilbert_third_derivative_symbol(k);
    EXPECT_NEAR(s.imag(), 0.0, 1e-9);
    EXPECT_NEAR(s.real(), -std::pow(std::abs(k), 3.0), 1e-9);
    EXPECT_NEAR(omega(FractionalMonomial{1.5}, k) * omega(FractionalMonomial{1.5}, k), -s.real(), 1e-8);
  }
}

TEST(Evolve, TimeZero) {
  auto f = coeffs_of_step_sigma(63);
  auto u = evolve_hilbert(f, f, 0.0);
  for (int k = -63; k <= 63; ++k) EXPECT_EQ(u[k], f[k]);
}

TEST(Evolve, RejectsMeanInVelocity) {
  auto f = coeffs_of_step_sigma(15);
  auto g = coeffs_of_unit_step(15);
  EXPECT_THROW(evolve_hilbert(f, g, 1.0), std::invalid_argument);
}

TEST(Evolve, ModeMatchesDirectFormula) {
  auto f = coeffs_of_step_sigma(63);
  const double t = 0.7;
  auto u = evolve_hilbert(f, f, t);
  for (int k : {1, 5, 33}) {
    const double w = std::pow(k, 1.5);
    EXPECT_NEAR(std::abs(u[k] - f[k] * (std::cos(w * t) + std::sin(w * t) / w)), 0.0, 1e-15);
  }
}

TEST(Fractal, RationalTimeStillRough) {
  auto f = coeffs_of_step_sigma();
  auto g = evaluate_series(evolve_hilbert(f, f, pi / 3), 1 << 14);
  const double d = box_counting_dimension(g);
  EXPECT_GT(d, 1.1);
  EXPECT_LT(d, 2.0);
}

TEST(Fractal, NoPiecewiseQuadraticFit) {
  auto f = coeffs_of_step_sigma();
  auto g = evaluate_series(evolve_hilbert(f, f, pi / 3), 4096);
  EXPECT_GT(piecewise_quadratic_fit_lower_bound(g, 12, 0.1), 0.1);
}

TEST(Fractal, VelocitySummandIsSmoother) {
  auto f = coeffs_of_step_sigma();
  FourierSeries zero(f.truncation(), true);
  const double rough = box_counting_dimension(evaluate_series(evolve_hilbert(f, zero, pi / 3), 1 << 14));
  const double smooth = box_counting_dimension(evaluate_series(evolve_hilbert(zero, f, pi / 3), 1 << 14));
  EXPECT_LT(smooth, rough);
}
