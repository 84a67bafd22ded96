#include "birev/zeta.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace birev;

TEST(GammaIdentity, SecondOrderAtHalfPi) {
  EXPECT_NEAR(gamma_identity_rhs(2, RationalTime(1, 2)), -std::pow(pi, 3) / 4, 1e-12);
  // -2 pi S_2 with S_2 = sigma(2)
  EXPECT_NEAR(gamma_identity_rhs(2, RationalTime(1, 2)), -2 * pi * pi * pi / 8, 1e-12);
  EXPECT_EQ(gamma_identity_rhs_exact(2, RationalTime(1, 2)), (PiMultiple{Rational(-1, 4), 3}));
}

TEST(GammaIdentity, ThirdAndFourthOrder) {
  EXPECT_EQ(boundary_value_exact(3, RationalTime(1, 2)), Rational(-1, 4));
  EXPECT_EQ(boundary_value_exact(4, RationalTime(1, 2)), Rational(-7, 12));
  EXPECT_NEAR(gamma_identity_rhs(4, RationalTime(1, 2)), pi / 4 * (-7 * std::pow(pi, 4) / 12), 1e-11);
  EXPECT_NEAR(gamma_identity_rhs(3, RationalTime(1, 2)), pi / 4 * (-std::pow(pi, 3) / 4), 1e-11);
}

TEST(GammaIdentity, NumericMatchesExactAtOtherNodes) {
  for (int n = 2; n <= 7; ++n)
    for (int p : {1, 3, 5}) {
      RationalTime t(p, 2);
      EXPECT_NEAR(gamma_identity_rhs(n, t), gamma_identity_rhs_exact(n, t).value(), 1e-9 * std::pow(pi, n + 1));
    }
}

TEST(Recursion, ClassicalValues) {
  auto ledger = build_ledger(4);
  EXPECT_EQ(ledger.get(2).value, (PiMultiple{Rational(1, 8), 2}));
  EXPECT_EQ(ledger.get(3).value, (PiMultiple{Rational(1, 32), 3}));
  EXPECT_EQ(ledger.get(4).value, (PiMultiple{Rational(1, 96), 4}));
  EXPECT_EQ(zeta_from_sigma(2, ledger), (PiMultiple{Rational(1, 6), 2}));
  EXPECT_EQ(zeta_from_sigma(4, ledger), (PiMultiple{Rational(1, 90), 4}));
  EXPECT_EQ(ledger.get(4).value.str(), "pi^4/96");
  EXPECT_EQ(zeta_from_sigma(4, ledger).str(), "pi^4/90");
}

TEST(Recursion, HigherOrdersAreClassical) {
  auto ledger = build_ledger(8);
  // sigma(6) = pi^6/960, sigma(8) = 17 pi^8/161280, tau(5) = 5 pi^5/1536, tau(7) = 61 pi^7/184320
  EXPECT_EQ(ledger.get(6).value.coeff, Rational(1, 960));
  EXPECT_EQ(ledger.get(8).value.coeff, Rational(17, 161280));
  EXPECT_EQ(ledger.get(5).value.coeff, Rational(5, 1536));
  EXPECT_EQ(ledger.get(7).value.coeff, Rational(61, 184320));
  EXPECT_EQ(zeta_from_sigma(6, ledger).coeff, Rational(1, 945));
}

TEST(Recursion, IndependentOfSpecialTime) {
  auto a = build_ledger(8, 1);
  auto b = build_ledger(8, 2);
  auto c = build_ledger(8, 3);
  for (int n = 2; n <= 8; ++n) {
    EXPECT_EQ(a.get(n).value, b.get(n).value) << n;
    EXPECT_EQ(a.get(n).value, c.get(n).value) << n;
  }
}

TEST(Recursion, MissingLowerEntry) {
  ZetaLedger empty;
  EXPECT_NO_THROW(sigma_tau_recursion(2, empty));
  EXPECT_NO_THROW(sigma_tau_recursion(3, empty));
  EXPECT_THROW(sigma_tau_recursion(4, empty), missing_entry);
  EXPECT_THROW(sigma_tau_recursion(5, empty), missing_entry);
}

TEST(Ledger, SealedRejectsWrites) {
  auto ledger = build_ledger(3);
  EXPECT_TRUE(ledger.sealed());
  EXPECT_THROW(ledger.put(4, {}), std::logic_error);
  EXPECT_NE(ledger.get(2).provenance.find("pi*1/2"), std::string::npos);
}

TEST(BruteForce, LedgerMatchesPartialSums) {
  auto ledger = build_ledger(8);
  for (int n = 2; n <= 8; ++n) {
    const double brute = n % 2 ? tau_partial_sum(n) : sigma_partial_sum(n);
    EXPECT_NEAR(ledger.get(n).value.value(), brute, 1e-9) << n;
  }
  EXPECT_NEAR(zeta_from_sigma(2, ledger).value(), zeta_partial_sum(2), 1e-9);
  EXPECT_NEAR(zeta_from_sigma(4, ledger).value(), zeta_partial_sum(4), 1e-12);
}

TEST(BruteForce, TailCorrectionMatters) {
  // Without the tail the sigma(2) partial sum is off by about 1/(4M).
  double raw = 0.0;
  for (std::int64_t k = 999'999; k >= 0; --k) raw += 1.0 / ((2.0 * k + 1) * (2.0 * k + 1));
  EXPECT_GT(std::abs(raw - pi * pi / 8), 1e-7);
  EXPECT_LT(std::abs(sigma_partial_sum(2) - pi * pi / 8), 1e-12);
}

TEST(OddPowerSigns, ResiduesMod8) {
  const BigInt eight = 8;
  for (int power = 1; power <= 8; ++power)
    for (std::int64_t n = 0; n <= 1000; ++n) {
      BigInt v = boost::multiprecision::pow(BigInt(2 * n + 1), static_cast<unsigned>(power));
      EXPECT_EQ(static_cast<int>(v % eight), odd_power_residue_mod8(n, power)) << n << " " << power;
    }
}

TEST(OddPowerSigns, SpecialTimeSigns) {
  for (int power = 2; power <= 7; ++power)
    for (int l = 1; l <= 3; ++l)
      for (std::int64_t n = 0; n <= 50; ++n) {
        const int expect = (l % 2 ? 1 : -1) * (power % 2 && n % 2 ? -1 : 1);
        EXPECT_EQ(special_time_sign(n, power, l), expect);
      }
}

TEST(Format, PiMultiples) {
  EXPECT_EQ(format_pi_multiple(Rational(-1, 4), 3), "-pi^3/4");
  EXPECT_EQ(format_pi_multiple(Rational(3, 4), 2), "3*pi^2/4");
  EXPECT_EQ(format_pi_multiple(Rational(1), 1), "pi");
  EXPECT_EQ(format_pi_multiple(Rational(1, 8), 0), "1/8");
  EXPECT_EQ(series_name(3), "tau(3)");
}
