#include "pbtlab/fidelity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "pbtlab/closed_form.hpp"

namespace pbtlab {

FidelityResult ent_fidelity(const Povm& povm, const SignalEnsemble& ensemble) {
  if (povm.size() != static_cast<int>(ensemble.states.size())) {
    throw std::domain_error("ent_fidelity: POVM and ensemble sizes differ");
  }
  FidelityResult r;
  r.n_ports = ensemble.n_ports;
  r.params = ensemble.params;
  r.povm_source = povm.source;
  double sum = 0.0;
  for (int i = 0; i < povm.size(); ++i) {
    const auto& el = povm.elements[i];
    const auto& st = ensemble.states[i];
    if (el.dim() != st.dim()) throw std::domain_error("ent_fidelity: dimension mismatch");
    const Complex t = trace_product(el.matrix(), st.matrix());
    if (std::abs(t.imag()) > kImaginaryResidueTol) {
      throw NumericalError("ent_fidelity: trace has imaginary residue " +
                               std::to_string(t.imag()),
                           std::abs(t.imag()));
    }
    r.per_port_traces.push_back(t.real());
    sum += t.real();
  }
  r.ent_fidelity = sum / 4;
  r.teleport_fidelity = (2 * r.ent_fidelity + 1) / 3;
  return r;
}

double mixed_term(const Povm& povm, int port, int n_ports) {
  if (port < 1 || port > povm.size()) throw std::domain_error("mixed_term: port out of range");
  const Eigen::Vector4cd m = bell_psi_minus(), p = bell_psi_plus();
  const Eigen::Matrix4cd block = p * m.adjoint() - m * p.adjoint();
  // Anti-Hermitian; embed without the Hermitian projection.
  const int q = n_ports + 1;
  const Eigen::Index d = Eigen::Index{1} << q;
  if (povm.elements[port - 1].dim() != d) throw std::domain_error("mixed_term: dimension mismatch");
  const Matrix x = apply_two_qubit_right(Matrix::Identity(d, d), block, port - 1, n_ports, q) *
                   std::ldexp(1.0, -(n_ports - 1));
  return std::abs(trace_product(povm.elements[port - 1].matrix(), x));
}

ComparisonRow compare_point(int n, double gamma_abs, const Povm& noiseless) {
  const DephasingParams params(gamma_abs, 0.0);
  const SignalEnsemble e = make_ensemble(SignalKind::eta, n, params);
  ComparisonRow row;
  row.n_ports = n;
  row.gamma_abs = gamma_abs;
  row.noiseless = ent_fidelity(noiseless, e).ent_fidelity;
  row.noiseless_closed_form = fidelity_noiseless_povm(n, params);
  row.noise_adapted = ent_fidelity(pgm(e), e).ent_fidelity;
  row.beigi_konig = beigi_konig_bound(n, gamma_abs);
  if (n == 2) row.helstrom = helstrom_bound_n2(gamma_abs);
  return row;
}

std::vector<ComparisonRow> compare_noise_adapted(int n, std::span<const double> gamma_grid) {
  const Povm noiseless = noiseless_povm(n);
  std::vector<ComparisonRow> rows;
  rows.reserve(gamma_grid.size());
  for (double g : gamma_grid) rows.push_back(compare_point(n, g, noiseless));
  return rows;
}

double helstrom_optimal_n2(const SignalEnsemble& ensemble) {
  if (ensemble.states.size() != 2) {
    throw std::domain_error("helstrom_optimal_n2: ensemble must have exactly 2 states");
  }
  const double tn = trace_norm(ensemble.states[0] - ensemble.states[1]);
  return 0.25 * (1 + tn / 2);
}

}  // namespace pbtlab
