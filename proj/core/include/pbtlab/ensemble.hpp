#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "pbtlab/linops.hpp"

namespace pbtlab {

// Single-qubit dephasing: Gamma = gamma_abs * exp(i theta).
struct DephasingParams {
  double gamma_abs = 1.0;
  double theta = 0.0;

  DephasingParams() = default;
  DephasingParams(double gamma_abs, double theta);

  Complex gamma() const { return std::polar(gamma_abs, theta); }
  // |Gamma| cos(theta), the only combination the noiseless fidelity sees.
  double projected() const { return gamma_abs * std::cos(theta); }
};

enum class SignalKind { sigma, omega, eta };

// diag(exp(-i theta), 1)
Eigen::Matrix2cd phase_rotation(double theta);

// |Psi-> = (|01> - |10>)/sqrt2, |Psi+> = (|01> + |10>)/sqrt2
Eigen::Vector4cd bell_psi_minus();
Eigen::Vector4cd bell_psi_plus();

Eigen::Matrix4cd decohered_bell_block(const DephasingParams& params);
HermitianOp decohered_bell(const DephasingParams& params);

// Two-qubit block of the signal state on (A_i, B); the full state is
// block (x) I / 2^{N-1}.
Eigen::Matrix4cd signal_block(SignalKind kind, const DephasingParams& params);

// Register (A_1, ..., A_N, B); port i in 1..N sits on qubit i-1, B on qubit N.
HermitianOp signal_state(SignalKind kind, int port, int n_ports,
                         const DephasingParams& params = {});

// Places a 4x4 block on (A_port, B) tensored with I / 2^{N-1}.
HermitianOp embed_port_block(const Eigen::Matrix4cd& block, int port, int n_ports);

HermitianOp ensemble_average(std::span<const HermitianOp> states, bool normalized);

struct SignalEnsemble {
  int n_ports = 0;
  DephasingParams params;
  SignalKind kind = SignalKind::eta;
  std::vector<HermitianOp> states;
  HermitianOp average_unnormalized;
  // Shared two-qubit block of every state, when the ensemble has the
  // standard port structure. Enables the fast multiply in pgm.
  std::optional<Eigen::Matrix4cd> port_block;

  int qubit_count() const { return states.front().qubit_count(); }
  HermitianOp normalized_average() const;
};

SignalEnsemble make_ensemble(SignalKind kind, int n_ports, const DephasingParams& params = {});
// Ensemble from arbitrary states (no port structure).
SignalEnsemble make_ensemble(std::vector<HermitianOp> states);

}  // namespace pbtlab
