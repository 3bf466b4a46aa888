#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "pbtlab/closed_form.hpp"
#include "pbtlab/ensemble.hpp"

using namespace pbtlab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<DephasingParams> grid(int count_g, int count_t) {
  std::vector<DephasingParams> out;
  for (int a = 0; a < count_g; ++a)
    for (int b = 0; b < count_t; ++b)
      out.emplace_back(count_g == 1 ? 1.0 : a / double(count_g - 1),
                       count_t == 1 ? 0.0 : kPi * b / (count_t - 1));
  return out;
}

}  // namespace

TEST(DephasingParams, RejectsOutOfRangeModulus) {
  EXPECT_THROW(DephasingParams(-0.1, 0.0), std::domain_error);
  EXPECT_THROW(DephasingParams(1.1, 0.0), std::domain_error);
  EXPECT_NO_THROW(DephasingParams(0.0, 5.0));
  const DephasingParams p(0.5, kPi / 3);
  EXPECT_NEAR(std::abs(p.gamma() - std::polar(0.5, kPi / 3)), 0.0, 1e-16);
}

TEST(PhaseRotation, DiagonalValues) {
  EXPECT_LT(oracle::max_abs_diff(phase_rotation(0.0), Matrix::Identity(2, 2)), 1e-16);
  const auto r = phase_rotation(kPi);
  EXPECT_NEAR(std::abs(r(0, 0) - Complex(-1, 0)), 0.0, 1e-15);
  EXPECT_EQ(r(1, 1), Complex(1.0));
  const auto h = phase_rotation(kPi / 2);
  EXPECT_NEAR(std::abs(h(0, 0) - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_EQ(h(0, 1), Complex(0.0));
}

TEST(DecoheredBell, LimitingCases) {
  const Matrix pm = oracle::projector(bell_psi_minus());
  EXPECT_LT(oracle::max_abs_diff(decohered_bell(DephasingParams(1, 0)).matrix(), pm), 1e-15);
  for (double t : {0.0, 1.0, 2.5}) {
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = expected(2, 2) = 0.5;
    EXPECT_LT(oracle::max_abs_diff(decohered_bell(DephasingParams(0, t)).matrix(), expected), 1e-15);
  }
}

TEST(DecoheredBell, PurityAndChannelForm) {
  for (const auto& p : grid(5, 5)) {
    const HermitianOp rho = decohered_bell(p);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
    EXPECT_NEAR(trace_product(rho.matrix(), rho.matrix()).real(), (1 + p.gamma_abs * p.gamma_abs) / 2,
                1e-14);
    EXPECT_LT(oracle::max_abs_diff(rho.matrix(), oracle::channel_on_singlet(p)), 1e-14);
    EXPECT_GE(eig_hermitian(rho).eigenvalues.minCoeff(), -1e-15);
  }
}

TEST(SignalState, EtaLimits) {
  for (int n : {1, 2, 3}) {
    for (int i = 1; i <= n; ++i) {
      const HermitianOp s = signal_state(SignalKind::sigma, i, n);
      const HermitianOp w = signal_state(SignalKind::omega, i, n);
      EXPECT_LT(oracle::max_abs_diff(signal_state(SignalKind::eta, i, n, {1, 0}).matrix(), s.matrix()),
                1e-15);
      EXPECT_LT(oracle::max_abs_diff(signal_state(SignalKind::eta, i, n, {0, 0}).matrix(),
                                     ((s + w) * 0.5).matrix()),
                1e-15);
    }
  }
}

TEST(SignalState, PairOverlapIsGammaIndependent) {
  for (int n = 2; n <= 5; ++n) {
    const SignalEnsemble e = make_ensemble(SignalKind::sigma, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          EXPECT_NEAR(trace_product(e.states[i].matrix(), e.states[j].matrix()).real(),
                      std::ldexp(1.0, -(n + 1)), 1e-15);
    for (const auto& p : grid(3, 3)) {
      const SignalEnsemble eta = make_ensemble(SignalKind::eta, n, p);
      EXPECT_NEAR(trace_product(eta.states[0].matrix(), eta.states[1].matrix()).real(),
                  std::ldexp(1.0, -(n + 1)), 1e-15);
    }
  }
}

TEST(SignalState, PortOutOfRangeThrows) {
  EXPECT_THROW(signal_state(SignalKind::sigma, 0, 3), std::domain_error);
  EXPECT_THROW(signal_state(SignalKind::sigma, 4, 3), std::domain_error);
  EXPECT_THROW(make_ensemble(SignalKind::eta, 0), std::domain_error);
}

TEST(SignalState, MatchesReducedResourceState) {
  for (int n : {2, 3, 4}) {
    for (const auto& p : grid(5, 5)) {
      for (int i = 1; i <= n; ++i) {
        const HermitianOp direct = oracle::eta_from_resource(i, n, p);
        const HermitianOp built = signal_state(SignalKind::eta, i, n, p);
        ASSERT_LT(oracle::max_abs_diff(direct.matrix(), built.matrix()), 1e-12)
            << "n=" << n << " port " << i << " gamma " << p.gamma_abs << " theta " << p.theta;
      }
    }
  }
}

TEST(SignalState, PortSwapCovariance) {
  const int n = 4;
  const DephasingParams p(0.6, 0.9);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::vector<int> order(n + 1);
      for (int q = 0; q <= n; ++q) order[q] = q;
      std::swap(order[i - 1], order[j - 1]);
      const Matrix moved = permute_qubits(signal_state(SignalKind::eta, i, n, p).matrix(), order);
      EXPECT_EQ(moved, signal_state(SignalKind::eta, j, n, p).matrix());
    }
  }
}

TEST(SignalState, RankFollowsNoise) {
  for (int n = 2; n <= 4; ++n) {
    for (double g : {0.0, 0.3, 0.7}) {
      EXPECT_EQ(eig_hermitian(signal_state(SignalKind::eta, 1, n, {g, 0.4})).rank(), 1 << n);
    }
    EXPECT_EQ(eig_hermitian(signal_state(SignalKind::eta, 1, n, {1.0, 0.4})).rank(), 1 << (n - 1));
  }
}

TEST(SignalState, PairwiseFidelityIsOneHalf) {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& p : grid(3, 3)) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, p);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          EXPECT_NEAR(state_fidelity(e.states[i], e.states[j]), 0.5, 1e-9)
              << "n=" << n << " gamma " << p.gamma_abs << " theta " << p.theta;
    }
  }
}

TEST(EnsembleAverage, SingleStateAndErrors) {
  const HermitianOp s = signal_state(SignalKind::sigma, 1, 2);
  const std::vector<HermitianOp> one = {s};
  EXPECT_EQ(ensemble_average(one, true).matrix(), s.matrix());
  EXPECT_THROW(ensemble_average(std::vector<HermitianOp>{}, true), std::domain_error);
  const std::vector<HermitianOp> mixed = {s, signal_state(SignalKind::sigma, 1, 3)};
  EXPECT_THROW(ensemble_average(mixed, false), std::domain_error);
}

TEST(EnsembleAverage, PurityOfNormalizedAverage) {
  EXPECT_NEAR(average_purity(2, 1.0), 0.3125, 1e-16);
  for (int n = 1; n <= 5; ++n) {
    for (double g : {0.0, 0.4, 1.0}) {
      const SignalEnsemble e = make_ensemble(SignalKind::eta, n, {g, 1.3});
      const HermitianOp avg = e.normalized_average();
      EXPECT_NEAR(trace_product(avg.matrix(), avg.matrix()).real(), average_purity(n, g), 1e-14);
    }
  }
  const SignalEnsemble e = make_ensemble(SignalKind::eta, 2, {1.0, 0.0});
  const HermitianOp avg = e.normalized_average();
  EXPECT_NEAR(trace_product(avg.matrix(), avg.matrix()).real(), 0.3125, 1e-15);
}

TEST(SignalEnsemble, StatesAreNormalizedStates) {
  for (int n = 1; n <= 4; ++n) {
    const SignalEnsemble e = make_ensemble(SignalKind::eta, n, {0.35, 2.0});
    EXPECT_NEAR(e.average_unnormalized.trace(), n, 1e-9);
    for (const auto& s : e.states) {
      EXPECT_NEAR(s.trace(), 1.0, 1e-10);
      EXPECT_GE(eig_hermitian(s).eigenvalues.minCoeff(), -1e-10);
    }
  }
}
