#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pbtlab/povm.hpp"

namespace pbtlab {

inline constexpr double kImaginaryResidueTol = 1e-10;

struct FidelityResult {
  int n_ports = 0;
  DephasingParams params;
  PovmSource povm_source = PovmSource::noise_adapted;
  double ent_fidelity = 0.0;
  double teleport_fidelity = 0.0;
  std::vector<double> per_port_traces;  // tr(Pi_i eta_i)

  // N/4 * success probability
  double success_probability() const { return 4 * ent_fidelity / n_ports; }
};

// F = (1/4) sum_i tr(Pi_i eta_i)
FidelityResult ent_fidelity(const Povm& povm, const SignalEnsemble& ensemble);

// |tr Pi_i [(|Psi+><Psi-| - |Psi-><Psi+|)_{A_i B} (x) I / 2^{N-1}]|
double mixed_term(const Povm& povm, int port, int n_ports);

struct ComparisonRow {
  int n_ports = 0;
  double gamma_abs = 0.0;
  double noiseless = 0.0;              // direct trace, noiseless POVM
  double noiseless_closed_form = 0.0;
  double noise_adapted = 0.0;          // direct trace, PGM of the noisy ensemble
  double beigi_konig = 0.0;
  std::optional<double> helstrom;      // N = 2 only
};

// theta = 0 throughout.
std::vector<ComparisonRow> compare_noise_adapted(int n, std::span<const double> gamma_grid);
ComparisonRow compare_point(int n, double gamma_abs, const Povm& noiseless);

// Helstrom success probability of a two-state ensemble as entanglement
// fidelity, (1/4)(1 + ||eta_1 - eta_2||_1 / 2).
double helstrom_optimal_n2(const SignalEnsemble& ensemble);

}  // namespace pbtlab
