#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "pbtlab/closed_form.hpp"
#include "pbtlab/ensemble.hpp"

using namespace pbtlab;

namespace {

// (1/4) sum_i tr(Pi_i omega_i) for the noiseless POVM, by dense trace in an
// independent numpy computation.
const std::map<int, double> kCorrectionByTrace = {
    {2, 0.011164549684630123}, {3, 0.020833333333333367}, {4, 0.026553701878972324},
    {5, 0.028921512438509208}, {6, 0.0290925294076084},   {7, 0.028035896958058505},
};

}  // namespace

TEST(Degeneracy, SmallCases) {
  EXPECT_EQ(degeneracy(2, Spin::from_twice(2)), 1u);
  EXPECT_EQ(degeneracy(2, Spin::from_twice(0)), 1u);
  EXPECT_EQ(degeneracy(3, Spin::from_twice(1)), 2u);
  EXPECT_EQ(degeneracy(4, Spin::from_twice(0)), 2u);
  EXPECT_THROW(degeneracy(2, Spin::from_twice(1)), std::domain_error);
  EXPECT_THROW(degeneracy(2, Spin::from_twice(4)), std::domain_error);
}

TEST(Degeneracy, DimensionCount) {
  for (int n = 1; n <= 10; ++n) {
    std::uint64_t total = 0;
    for (int t = n % 2; t <= n; t += 2) total += (t + 1) * degeneracy(n, Spin::from_twice(t));
    EXPECT_EQ(total, 1ull << n) << "n=" << n;
  }
}

TEST(FIh, KnownValues) {
  EXPECT_NEAR(f_ih(1), 0.25, 1e-15);
  EXPECT_NEAR(f_ih(2), 0.25 + std::sqrt(3.0) / 8, 1e-15);
  EXPECT_NEAR(f_ih(3), 0.625, 1e-15);
  EXPECT_NEAR(f_ih(9), 0.9155087130700186, 1e-14);
}

TEST(FIh, LargeNAsymptote) {
  const int n = 10000;
  const double target = 1 - 3.0 / (4 * n);
  EXPECT_LE(std::abs(f_ih(n) - target), 0.1 * target);
}

TEST(FCorr, PublishedFormValues) {
  const double two = 0.5 * std::pow(1 - 1 / std::sqrt(3.0), 2);
  EXPECT_NEAR(f_corr(2), two, 1e-15);
  EXPECT_NEAR(f_corr(2), 0.08932, 1e-5);
  EXPECT_NEAR(f_corr(6), 0.2327, 5e-4);
  EXPECT_NEAR(400 * f_corr(400), 2.0, 0.1);
}

TEST(FCorr, ShapeOverN) {
  // rises up to n = 6, then decreases
  for (int n = 1; n < 6; ++n) EXPECT_LT(f_corr(n), f_corr(n + 1)) << n;
  for (int n = 6; n < 200; ++n) EXPECT_GT(f_corr(n), f_corr(n + 1)) << n;
}

TEST(ClosedForms, FiniteInUnitIntervalUpTo1000) {
  for (int n = 1; n <= 1000; ++n) {
    for (double v : {f_ih(n), f_corr(n), correction_fidelity(n)}) {
      ASSERT_TRUE(std::isfinite(v)) << n;
      ASSERT_GE(v, 0.0) << n;
      ASSERT_LE(v, 1.0) << n;
    }
  }
}

TEST(CorrectionFidelity, MatchesDenseTrace) {
  EXPECT_EQ(correction_fidelity(1), 0.0);
  for (const auto& [n, v] : kCorrectionByTrace) EXPECT_NEAR(correction_fidelity(n), v, 1e-12) << n;
}

TEST(CorrectionFidelity, IsOneEighthOfPublishedForm) {
  for (int n = 2; n <= 200; ++n) {
    EXPECT_NEAR(f_corr(n) / correction_fidelity(n), 8.0, 1e-10) << n;
  }
}

TEST(NoiselessFidelity, CornerValues) {
  for (int n = 1; n <= 12; ++n) {
    EXPECT_NEAR(fidelity_noiseless_povm(n, {1, 0}), f_ih(n), 1e-15);
    EXPECT_NEAR(fidelity_noiseless_povm(n, {1, std::numbers::pi}), correction_fidelity(n), 1e-15);
    for (double t : {0.0, 1.0, 3.0})
      EXPECT_NEAR(fidelity_noiseless_povm(n, {0, t}), (f_ih(n) + correction_fidelity(n)) / 2, 1e-15);
  }
}

TEST(NoiselessFidelity, DependsOnlyOnProjectedGamma) {
  const double c = 0.3;
  for (double g : {0.4, 0.6, 0.9}) {
    const double t = std::acos(c / g);
    EXPECT_NEAR(fidelity_noiseless_povm(9, {g, t}), fidelity_noiseless_povm(9, {c, 0.0}), 1e-14);
    EXPECT_NEAR(fidelity_noiseless_povm(9, {g, -t + 2 * std::numbers::pi}),
                fidelity_noiseless_povm(9, {c, 0.0}), 1e-14);
  }
}

TEST(TeleportFidelity, Conversion) {
  EXPECT_DOUBLE_EQ(teleport_fidelity(1.0), 1.0);
  EXPECT_DOUBLE_EQ(teleport_fidelity(0.25), 0.5);
  EXPECT_NEAR(teleport_fidelity(0.2327), 0.48847, 5e-6);
  EXPECT_THROW(teleport_fidelity(-0.01), std::domain_error);
  EXPECT_THROW(teleport_fidelity(1.01), std::domain_error);
}

TEST(SpinBlockSpectrum, TwoPorts) {
  const SpinBlockSpectrum s = spin_block_spectrum(2);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].s, Spin::from_twice(1));
  EXPECT_DOUBLE_EQ(s.blocks[0].lambda_minus, 0.25);
  EXPECT_DOUBLE_EQ(s.blocks[0].lambda_plus, 0.75);
  const std::map<int, std::uint64_t> expected = {{2, 2}, {6, 2}};
  EXPECT_EQ(s.multiplicities(), expected);
  EXPECT_EQ(s.support_dimension(), 4u);
  EXPECT_DOUBLE_EQ(s.trace(), 2.0);
}

TEST(SpinBlockSpectrum, OnePortIsSingleBlock) {
  const SpinBlockSpectrum s = spin_block_spectrum(1);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_FALSE(s.blocks[0].has_minus());
  const std::map<int, std::uint64_t> expected = {{4, 1}};  // eigenvalue 1
  EXPECT_EQ(s.multiplicities(), expected);
}

TEST(SpinBlockSpectrum, MatchesDenseCountsAndTrace) {
  // Eigenvalue multiplicities of the dense sum of sigma_i, in units of 2^{-(N+1)}.
  const std::map<int, std::map<int, std::uint64_t>> dense = {
      {3, {{2, 6}, {6, 2}, {8, 3}}},
      {4, {{2, 12}, {4, 4}, {8, 6}, {10, 4}}},
      {5, {{2, 20}, {4, 15}, {8, 5}, {10, 12}, {12, 5}}},
      {6, {{2, 30}, {4, 36}, {6, 10}, {10, 18}, {12, 20}, {14, 6}}},
  };
  for (const auto& [n, counts] : dense) {
    const SpinBlockSpectrum s = spin_block_spectrum(n);
    EXPECT_EQ(s.multiplicities(), counts) << n;
    EXPECT_EQ((1ull << (n + 1)) - s.support_dimension(), static_cast<std::uint64_t>(n + 2)) << n;
  }
  for (int n = 1; n <= 20; ++n) EXPECT_NEAR(spin_block_spectrum(n).trace(), n, 1e-12) << n;
}

TEST(Kim, FormulaAndComparison) {
  EXPECT_DOUBLE_EQ(kim_fidelity(9, 1.0), f_ih(9));
  EXPECT_DOUBLE_EQ(kim_fidelity(9, 0.0), f_ih(9) / 3 + 1.0 / 6);
  for (double g = 0.0; g <= 1.0001; g += 0.25) {
    const double kim = kim_fidelity(9, g), ours = fidelity_noiseless_povm(9, {std::min(g, 1.0), 0});
    if (g < 1.0) {
      EXPECT_GT(kim, ours + 1e-9) << g;
    } else {
      EXPECT_NEAR(kim, ours, 1e-12);
    }
  }
}

TEST(Bounds, BeigiKonigValues) {
  EXPECT_DOUBLE_EQ(beigi_konig_bound(9, 1.0), 1.0 / 3);
  EXPECT_DOUBLE_EQ(beigi_konig_bound(9, 0.0), 4.0 / 9);
  EXPECT_DOUBLE_EQ(beigi_konig_bound(2, 1.0), -0.25);
}

TEST(Bounds, KnillBarnumValues) {
  EXPECT_DOUBLE_EQ(knill_barnum_bound(2), 0.75);
  EXPECT_DOUBLE_EQ(knill_barnum_bound(3), 0.5);
  EXPECT_DOUBLE_EQ(knill_barnum_bound(5), 0.0);
}

TEST(Bounds, HelstromTwoPorts) {
  EXPECT_NEAR(helstrom_bound_n2(1.0), 0.25 * (1 + std::sqrt(3.0) / 2), 1e-16);
  EXPECT_NEAR(helstrom_bound_n2(1.0), 0.46651, 1e-5);
  EXPECT_DOUBLE_EQ(helstrom_bound_n2(0.0), 0.375);
  EXPECT_NEAR(helstrom_bound_n2(1.0), f_ih(2), 1e-15);
  EXPECT_THROW(helstrom_bound_n2(1.5), std::domain_error);
}
