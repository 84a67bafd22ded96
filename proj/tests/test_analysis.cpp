#include "birev/analysis.hpp"
#include "birev/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace birev;

namespace {

GridFunction weierstrass(std::size_t n) {
  return GridFunction::sample(n, [](double x) {
    double s = 0.0;
    for (int j = 0; j < 20; ++j) s += std::pow(2.0, -j / 2.0) * std::cos(std::ldexp(1.0, j) * x);
    return cplx(s);
  });
}

}  // namespace

TEST(Compare, IdenticalIsZero) {
  auto b = beam_closed_form(RationalTime(1, 3));
  auto a = GridFunction::sample(2048, [&](double x) { return cplx(b(x)); });
  auto r = compare_profiles(a, b, 0.1);
  EXPECT_EQ(r.sup_error_excluded, 0.0);
  EXPECT_EQ(r.grid_size, 2048u);
  EXPECT_GT(r.samples_used, 1000u);
}

TEST(Compare, BeamHalfPi) {
  RationalTime t(1, 2);
  auto f = coeffs_of_step_sigma();
  auto a = evaluate_series(linear_evolve(Monomial{2}, f, f, t), 4096);
  EXPECT_LT(compare_profiles(a, beam_closed_form(t), 0.1).sup_error_excluded, 1e-2);
}

TEST(Compare, BeamThirdPi) {
  RationalTime t(1, 3);
  auto f = coeffs_of_step_sigma();
  auto a = evaluate_series(linear_evolve(Monomial{2}, f, f, t), 4096);
  EXPECT_LT(compare_profiles(a, beam_closed_form(t), 0.1).sup_error_excluded, 2e-2);
}

TEST(Compare, MonotoneInDelta) {
  RationalTime t(1, 3);
  auto f = coeffs_of_step_sigma(201);
  auto a = evaluate_series(linear_evolve(Monomial{2}, f, f, t), 2048);
  auto b = beam_closed_form(t);
  double prev = std::numeric_limits<double>::infinity();
  for (double d : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    const double e = compare_profiles(a, b, d).sup_error_excluded;
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(Compare, ErrorsOnBadDelta) {
  auto b = step_sigma();
  auto a = GridFunction::sample(64, [&](double x) { return cplx(b(x)); });
  EXPECT_THROW(compare_profiles(a, b, 0.0), std::invalid_argument);
  EXPECT_THROW(compare_profiles(a, b, 2.0), std::invalid_argument);
}

TEST(Compare, JumpSetIsBreakpoints) {
  auto r = compare_profiles(GridFunction::sample(64, [](double) { return cplx(0.0); }), step_sigma(), 0.1);
  ASSERT_EQ(r.jump_set.size(), 2u);
  EXPECT_DOUBLE_EQ(r.jump_set[1], pi);
  EXPECT_DOUBLE_EQ(r.sup_error_excluded, 1.0);
}

TEST(BoxCounting, LineIsOne) {
  auto g = GridFunction::sample(4096, [](double x) { return cplx(x); });
  EXPECT_NEAR(box_counting_dimension(g), 1.0, 0.05);
}

TEST(BoxCounting, SmoothCurveIsOne) {
  auto g = GridFunction::sample(1 << 14, [](double x) { return cplx(std::sin(3 * x)); });
  EXPECT_NEAR(box_counting_dimension(g), 1.0, 0.05);
}

TEST(BoxCounting, ConstantIsOne) {
  EXPECT_EQ(box_counting_dimension(GridFunction::sample(256, [](double) { return cplx(2.0); })), 1.0);
}

TEST(BoxCounting, NeedsFiveScales) {
  auto g = GridFunction::sample(256, [](double x) { return cplx(x); });
  EXPECT_THROW(box_counting_dimension(g, dyadic_scales(4, 7)), std::invalid_argument);
}

TEST(BoxCounting, WeierstrassCalibration) { EXPECT_NEAR(box_counting_dimension(weierstrass(1 << 16)), 1.5, 0.1); }

TEST(BoxCounting, BeamIrrationalTime) {
  auto f = coeffs_of_step_sigma();
  FourierSeries zero(f.truncation(), true);
  const double cos_part = box_counting_dimension(evaluate_series(linear_evolve(Monomial{2}, f, zero, 0.5), 1 << 14));
  const double full = box_counting_dimension(evaluate_series(linear_evolve(Monomial{2}, f, f, 0.5), 1 << 14));
  EXPECT_GE(cos_part, 1.3);
  EXPECT_LE(cos_part, 1.7);
  EXPECT_GE(full, 1.3);
  EXPECT_LE(full, 1.7);
}

TEST(BoxCounting, RationalTimeIsNotRough) {
  auto f = coeffs_of_step_sigma();
  FourierSeries zero(f.truncation(), true);
  const double d = box_counting_dimension(evaluate_series(linear_evolve(Monomial{2}, f, zero, RationalTime(1, 3)), 1 << 14));
  EXPECT_LT(d, 1.15);
}

TEST(Gap, PolynomialSpecIsZero) {
  EXPECT_EQ(asymptotic_gap(Monomial{2}, 0.7), 0.0);
  EXPECT_EQ(asymptotic_gap_bound(IntegralPolynomial{{0, 1, 1}}, 0.7), 0.0);
}

TEST(Gap, FractionalRefused) {
  EXPECT_THROW(asymptotic_gap(FractionalMonomial{1.5}, 0.5), std::invalid_argument);
  EXPECT_THROW(asymptotic_gap_bound(FractionalMonomial{1.5}, 0.5), std::invalid_argument);
}

TEST(Gap, BoussinesqBounded) {
  for (double t : {0.1, 0.5, pi / 3, pi / 2}) {
    const double gap = asymptotic_gap(SqrtPhi{}, t), bound = asymptotic_gap_bound(SqrtPhi{}, t);
    EXPECT_LE(gap, bound) << t;
    EXPECT_LT(bound, 1.0) << t;
  }
}

TEST(Gap, BoundFromInverseSquareDecay) {
  // |w(k) - k^2/sqrt3 - sqrt3/2| <= (3 sqrt3/8)/k^2 for k != 0
  const double c = 3 * std::sqrt(3.0) / 8;
  for (int k = 1; k <= 300; ++k)
    EXPECT_LE(std::abs(omega(SqrtPhi{}, k) - k * k / std::sqrt(3.0) - std::sqrt(3.0) / 2) * k * k, c * (1 + 1e-6));
  double closed = 0.0;
  for (int k = 1; k <= 2001; k += 2) closed += 4 / (pi * k) * c / (k * k);
  EXPECT_LE(asymptotic_gap_bound(SqrtPhi{}, 1.0), closed * (1 + 1e-12));
}

TEST(Jumps, StepFunction) {
  auto g = GridFunction::sample(1024, [](double x) { return cplx(step_sigma()(x)); });
  auto j = detect_jumps(g);
  ASSERT_EQ(j.size(), 2u);
  const double h = 2 * pi / 1024;
  EXPECT_TRUE(same_point_set(j, {0.0, pi}, h));
}

TEST(Jumps, SmoothHasNone) {
  EXPECT_TRUE(detect_jumps(GridFunction::sample(1024, [](double x) { return cplx(std::sin(x)); })).empty());
}

TEST(Jumps, BeamThirdPi) {
  RationalTime t(1, 3);
  auto f = coeffs_of_step_sigma();
  auto b = beam_closed_form(t);
  std::vector<double> expect;
  for (std::size_t i = 0; i < b.piece_count(); ++i) {
    const auto num = b.starts()[i];
    if (std::abs(b.value_at_node(num) - b.left_limit_at_node(num)) > 0.25)
      expect.push_back(pi * static_cast<double>(num) / static_cast<double>(b.q_den()));
  }
  auto j = detect_jumps(evaluate_series(linear_evolve(Monomial{2}, f, f, t), 4096));
  EXPECT_TRUE(same_point_set(j, expect, 2 * 2 * pi / 4096));
}

TEST(SamePoints, WrapsAround) {
  EXPECT_TRUE(same_point_set({2 * pi - 1e-4}, {0.0}, 1e-3));
  EXPECT_FALSE(same_point_set({1.0, 2.0}, {1.0}, 1e-3));
}

TEST(Minimax, ChebyshevCubic) {
  // best quadratic for x^3 on [-1, 1] leaves T_3/4
  std::vector<double> x, y;
  for (int i = 0; i <= 2000; ++i) {
    x.push_back(-1.0 + i / 1000.0);
    y.push_back(x.back() * x.back() * x.back());
  }
  EXPECT_NEAR(detail::quadratic_minimax_lower(x, y), 0.25, 1e-6);
}

TEST(Minimax, ExactQuadraticIsZero) {
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(i / 50.0 - 1.0);
    y.push_back(3 - x.back() + 2 * x.back() * x.back());
  }
  EXPECT_NEAR(detail::quadratic_minimax_lower(x, y), 0.0, 1e-12);
}

TEST(Minimax, NeverExceedsLeastSquaresResidual) {
  std::vector<double> x, y;
  for (int i = 0; i < 300; ++i) {
    x.push_back(i / 150.0 - 1.0);
    y.push_back(std::abs(std::sin(7 * x.back())) + 0.1 * std::cos(40 * x.back()));
  }
  // least-squares quadratic via normal equations
  double s[5] = {}, t[3] = {};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1;
    for (int j = 0; j < 5; ++j, p *= x[i]) s[j] += p;
    t[0] += y[i];
    t[1] += y[i] * x[i];
    t[2] += y[i] * x[i] * x[i];
  }
  double a[3][4] = {{s[0], s[1], s[2], t[0]}, {s[1], s[2], s[3], t[1]}, {s[2], s[3], s[4], t[2]}};
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 3; ++r)
      if (r != c) {
        const double f = a[r][c] / a[c][c];
        for (int j = 0; j < 4; ++j) a[r][j] -= f * a[c][j];
      }
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    worst = std::max(worst, std::abs(y[i] - a[0][3] / a[0][0] - a[1][3] / a[1][1] * x[i] - a[2][3] / a[2][2] * x[i] * x[i]));
  const double lower = detail::quadratic_minimax_lower(x, y);
  EXPECT_GT(lower, 0.0);
  EXPECT_LE(lower, worst);
}

TEST(FitBound, PiecewiseQuadraticProfileIsNearZero) {
  auto b = beam_closed_form(RationalTime(1, 3));
  auto g = GridFunction::sample(4096, [&](double x) { return cplx(b(x)); });
  EXPECT_LT(piecewise_quadratic_fit_lower_bound(g), 1e-9);
}

TEST(FitBound, RoughProfileIsBoundedAway) {
  EXPECT_GT(piecewise_quadratic_fit_lower_bound(weierstrass(1 << 14)), 0.1);
}
