#include "pbtlab/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pbtlab {

DephasingParams::DephasingParams(double gamma_abs_, double theta_)
    : gamma_abs(gamma_abs_), theta(theta_) {
  if (!(gamma_abs >= 0.0 && gamma_abs <= 1.0)) {
    throw std::domain_error("DephasingParams: gamma_abs must lie in [0, 1]");
  }
  if (!std::isfinite(theta)) throw std::domain_error("DephasingParams: theta is not finite");
}

Eigen::Matrix2cd phase_rotation(double theta) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Zero();
  r(0, 0) = std::polar(1.0, -theta);
  r(1, 1) = 1.0;
  return r;
}

Eigen::Vector4cd bell_psi_minus() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = std::numbers::sqrt2 / 2;
  v(2) = -std::numbers::sqrt2 / 2;
  return v;
}

Eigen::Vector4cd bell_psi_plus() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = std::numbers::sqrt2 / 2;
  v(2) = std::numbers::sqrt2 / 2;
  return v;
}

Eigen::Matrix4cd decohered_bell_block(const DephasingParams& p) {
  const Eigen::Vector4cd m = bell_psi_minus(), pl = bell_psi_plus();
  const double c = p.projected();
  const double s = p.gamma_abs * std::sin(p.theta);
  const Complex i(0.0, 1.0);
  Eigen::Matrix4cd rho = (1 + c) / 2 * (m * m.adjoint()) + (1 - c) / 2 * (pl * pl.adjoint()) +
                         i * (s / 2) * (pl * m.adjoint() - m * pl.adjoint());
  return rho;
}

HermitianOp decohered_bell(const DephasingParams& params) {
  return HermitianOp::hermitian_part(decohered_bell_block(params));
}

Eigen::Matrix4cd signal_block(SignalKind kind, const DephasingParams& params) {
  const Eigen::Vector4cd m = bell_psi_minus(), pl = bell_psi_plus();
  switch (kind) {
    case SignalKind::sigma:
      return m * m.adjoint();
    case SignalKind::omega:
      return pl * pl.adjoint();
    case SignalKind::eta: {
      const double g = params.gamma_abs;
      const Eigen::Matrix4cd mix =
          (1 + g) / 2 * (m * m.adjoint()) + (1 - g) / 2 * (pl * pl.adjoint());
      Eigen::Matrix4cd rb = Eigen::Matrix4cd::Zero();
      rb.block<2, 2>(0, 0) = phase_rotation(params.theta);
      rb.block<2, 2>(2, 2) = phase_rotation(params.theta);
      return rb * mix * rb.adjoint();
    }
  }
  throw std::domain_error("signal_block: unknown kind");
}

HermitianOp embed_port_block(const Eigen::Matrix4cd& block, int port, int n_ports) {
  if (n_ports < 1) throw std::domain_error("embed_port_block: n_ports must be >= 1");
  if (port < 1 || port > n_ports) {
    throw std::domain_error("embed_port_block: port " + std::to_string(port) +
                            " out of range 1.." + std::to_string(n_ports));
  }
  const int q = n_ports + 1;
  const Eigen::Index d = Eigen::Index{1} << q;
  const Eigen::Index ma = Eigen::Index{1} << (q - port);  // qubit port-1
  const Eigen::Index mb = 1;                              // qubit N (B)
  const double scale = std::ldexp(1.0, -(n_ports - 1));
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index base = 0; base < d; ++base) {
    if (base & (ma | mb)) continue;
    const Eigen::Index idx[4] = {base, base | mb, base | ma, base | ma | mb};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) m(idx[r], idx[c]) = scale * block(r, c);
    }
  }
  return HermitianOp::hermitian_part(m);
}

HermitianOp signal_state(SignalKind kind, int port, int n_ports, const DephasingParams& params) {
  return embed_port_block(signal_block(kind, params), port, n_ports);
}

HermitianOp ensemble_average(std::span<const HermitianOp> states, bool normalized) {
  if (states.empty()) throw std::domain_error("ensemble_average: empty sequence");
  HermitianOp sum = states.front();
  for (std::size_t k = 1; k < states.size(); ++k) sum += states[k];
  return normalized ? sum * (1.0 / static_cast<double>(states.size())) : sum;
}

HermitianOp SignalEnsemble::normalized_average() const {
  return average_unnormalized * (1.0 / static_cast<double>(states.size()));
}

SignalEnsemble make_ensemble(SignalKind kind, int n_ports, const DephasingParams& params) {
  if (n_ports < 1) throw std::domain_error("make_ensemble: n_ports must be >= 1");
  SignalEnsemble e;
  e.n_ports = n_ports;
  e.params = kind == SignalKind::eta ? params : DephasingParams{};
  e.kind = kind;
  const Eigen::Matrix4cd block = signal_block(kind, params);
  e.port_block = block;
  e.states.reserve(n_ports);
  for (int i = 1; i <= n_ports; ++i) e.states.push_back(embed_port_block(block, i, n_ports));
  e.average_unnormalized = ensemble_average(e.states, false);
  return e;
}

SignalEnsemble make_ensemble(std::vector<HermitianOp> states) {
  if (states.empty()) throw std::domain_error("make_ensemble: empty sequence");
  SignalEnsemble e;
  e.n_ports = static_cast<int>(states.size());
  e.states = std::move(states);
  e.average_unnormalized = ensemble_average(e.states, false);
  return e;
}

}  // namespace pbtlab
