#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pbtlab/ensemble.hpp"

namespace pbtlab {

// Half-integer spin stored as twice its value.
struct Spin {
  int twice = 0;
  static constexpr Spin from_twice(int t) { return Spin{t}; }
  constexpr double value() const { return twice / 2.0; }
  friend constexpr bool operator==(Spin, Spin) = default;
};

// Number of spin-s irreps in n spin-1/2 systems.
std::uint64_t degeneracy(int n, Spin s);
bool admissible(int n, Spin s);

double f_ih(int n);
// Correction term in its published closed form (sum over k = 0..N).
double f_corr(int n);
// (1/4) sum_i tr(Pi_i omega_i) for the noiseless POVM, evaluated block by
// block over the admissible spins of N-1 qubits. Equals f_corr(n) / 8.
double correction_fidelity(int n);

// (1+|G|cos t)/2 f_ih + (1-|G|cos t)/2 correction_fidelity
double fidelity_noiseless_povm(int n, const DephasingParams& params);

double teleport_fidelity(double ent_fidelity);

struct SpinBlock {
  Spin s;  // spin of the N-1 ports other than the measured one
  double lambda_minus = 0.0;  // (N-2s+1)/2^{N+1}; absent for s = 0
  double lambda_plus = 0.0;   // (N+2s+3)/2^{N+1}
  // (2s+1) g(s) and (2s+1) g(s-1)
  std::uint64_t degeneracy_minus_i = 0, degeneracy_minus_ii = 0;
  // (2s+1) g(s+1) and (2s+1) g(s)
  std::uint64_t degeneracy_plus_i = 0, degeneracy_plus_ii = 0;

  bool has_minus() const { return s.twice > 0; }
  std::uint64_t degeneracy_minus() const { return degeneracy_minus_i + degeneracy_minus_ii; }
  std::uint64_t degeneracy_plus() const { return degeneracy_plus_i + degeneracy_plus_ii; }
};

struct SpinBlockSpectrum {
  int n_ports = 0;
  std::vector<SpinBlock> blocks;

  // Distinct nonzero eigenvalues in units of 1/2^{N+1} with multiplicities.
  std::map<int, std::uint64_t> multiplicities() const;
  std::uint64_t support_dimension() const;
  double trace() const;
};

// Spectrum of the unnormalized noiseless average sum_i sigma_i.
SpinBlockSpectrum spin_block_spectrum(int n);

double kim_fidelity(int n, double gamma_abs);
double beigi_konig_bound(int n, double gamma_abs);
double knill_barnum_bound(int n);
double helstrom_bound_n2(double gamma_abs);

// tr(eta_bar^2) of the normalized average.
double average_purity(int n, double gamma_abs);

}  // namespace pbtlab
