#include "pbtlab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pbtlab {

namespace {

void require_psd_members(const SignalEnsemble& e, double rank_tol) {
  auto check = [&](const SpectralDecomposition& eig) {
    if (eig.eigenvalues.minCoeff() < -rank_tol * eig.max_abs_eigenvalue() - 1e-14) {
      throw std::domain_error("pgm: ensemble member is not positive semidefinite");
    }
  };
  if (e.port_block) {
    check(eig_hermitian(Matrix(*e.port_block), rank_tol));
    return;
  }
  for (const auto& s : e.states) check(eig_hermitian(s, rank_tol));
}

Matrix kernel_projector(const SpectralDecomposition& eig) {
  const double cut = eig.rank_tol * eig.max_abs_eigenvalue();
  const Eigen::Index d = eig.eigenvalues.size();
  Eigen::Index first = 0;
  while (first < d && eig.eigenvalues(first) > cut) ++first;
  const auto v = eig.eigenvectors.rightCols(d - first);
  return v * v.adjoint();
}

// Clamps tiny negative eigenvalues of a nearly PSD operator to zero.
HermitianOp psd_cleanup(const Matrix& m) {
  const HermitianOp h = HermitianOp::hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  Eigen::VectorXd lam = solver.eigenvalues();
  const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1.0);
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) < 0 && lam(k) > -kPositivityTol * scale) lam(k) = 0;
  }
  return HermitianOp::hermitian_part(solver.eigenvectors() * lam.cast<Complex>().asDiagonal() *
                                    solver.eigenvectors().adjoint());
}

Matrix sandwich(const Matrix& a, const SignalEnsemble& e, int index) {
  if (e.port_block) {
    const double scale = std::ldexp(1.0, -(e.n_ports - 1));
    const Matrix right = apply_two_qubit_right(a, *e.port_block * scale, index, e.n_ports,
                                               e.n_ports + 1);
    return right * a;
  }
  return a * e.states[index].matrix() * a;
}

}  // namespace

const char* to_string(PovmSource source) {
  switch (source) {
    case PovmSource::noiseless:
      return "noiseless";
    case PovmSource::noise_adapted:
      return "noise_adapted";
    case PovmSource::taylor:
      return "taylor";
  }
  return "unknown";
}

Povm merge_defect(Povm povm) {
  const double share = 1.0 / povm.size();
  for (auto& el : povm.elements) el += povm.defect * share;
  povm.defect = HermitianOp::zero(povm.defect.qubit_count());
  return povm;
}

Povm pgm(const SignalEnsemble& ensemble, const PgmOptions& options) {
  if (ensemble.states.empty()) throw std::domain_error("pgm: empty ensemble");
  require_psd_members(ensemble, options.rank_tol);
  const SpectralDecomposition eig = eig_hermitian(ensemble.average_unnormalized, options.rank_tol);
  const HermitianOp inv_root = func_on_support(eig, [](double x) { return 1 / std::sqrt(x); });

  Povm out;
  out.rank_tol = options.rank_tol;
  out.source = ensemble.kind == SignalKind::sigma && ensemble.port_block ? PovmSource::noiseless
                                                                        : PovmSource::noise_adapted;
  out.elements.reserve(ensemble.states.size());
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    out.elements.push_back(
        HermitianOp::hermitian_part(sandwich(inv_root.matrix(), ensemble, static_cast<int>(i))));
  }
  out.defect = HermitianOp::hermitian_part(kernel_projector(eig));
  return options.merge_defect ? merge_defect(std::move(out)) : out;
}

Povm noiseless_povm(int n, const PgmOptions& options) {
  return pgm(make_ensemble(SignalKind::sigma, n), options);
}

Povm rotated_noiseless_povm(int n, double theta, const PgmOptions& options) {
  Povm p = noiseless_povm(n, options);
  const Eigen::Index d = Eigen::Index{1} << (n + 1);
  Eigen::VectorXcd diag(d);
  for (Eigen::Index k = 0; k < d; ++k) diag(k) = (k & 1) ? Complex(1.0) : std::polar(1.0, -theta);
  auto rotate = [&](const HermitianOp& op) {
    Matrix m = diag.asDiagonal() * op.matrix() * diag.conjugate().asDiagonal();
    return HermitianOp::hermitian_part(m);
  };
  for (auto& el : p.elements) el = rotate(el);
  p.defect = rotate(p.defect);
  return p;
}

Povm pgm_taylor(const SignalEnsemble& ensemble, int order) {
  if (order < 1) throw std::domain_error("pgm_taylor: order must be >= 1");
  if (ensemble.states.empty()) throw std::domain_error("pgm_taylor: empty ensemble");
  const double n = static_cast<double>(ensemble.states.size());
  const Eigen::Index d = ensemble.average_unnormalized.dim();
  const Matrix eye = Matrix::Identity(d, d);
  const Matrix y = ensemble.average_unnormalized.matrix() / n - eye;

  // binomial(-1/2, k)
  std::vector<double> c(order + 1);
  c[0] = 1.0;
  for (int k = 1; k <= order; ++k) c[k] = c[k - 1] * (-(2.0 * k - 1) / (2.0 * k));

  Matrix t = c[order] * eye;
  for (int k = order - 1; k >= 0; --k) {
    Matrix next = y * t;
    next.diagonal().array() += c[k];
    t = std::move(next);
  }

  Povm out;
  out.source = PovmSource::taylor;
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) {
    Matrix el = sandwich(t, ensemble, static_cast<int>(i)) / n;
    total += el;
    out.elements.push_back(HermitianOp::hermitian_part(el));
  }
  out.defect = psd_cleanup(eye - total);
  return out;
}

PovmReport validate(const Povm& povm) {
  PovmReport r;
  const Eigen::Index d = povm.defect.dim();
  Matrix total = povm.defect.matrix();
  for (const auto& el : povm.elements) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(el.matrix(), Eigen::EigenvaluesOnly);
    const double lmin = solver.eigenvalues().minCoeff();
    const double scale = std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    r.min_eigenvalues.push_back(lmin);
    if (lmin < -kPositivityTol * scale) r.positive = false;
    if (el.dim() == d) total += el.matrix();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> dsolver(povm.defect.matrix(), Eigen::EigenvaluesOnly);
  r.defect_min_eigenvalue = dsolver.eigenvalues().minCoeff();
  if (r.defect_min_eigenvalue < -kPositivityTol) r.positive = false;
  r.completeness_residual = (total - Matrix::Identity(d, d)).norm();
  r.complete = r.completeness_residual <= kCompletenessTol;
  return r;
}

PovmReport validate(const Povm& povm, const SignalEnsemble& ensemble) {
  PovmReport r = validate(povm);
  for (const auto& s : ensemble.states) {
    if (s.dim() != povm.defect.dim()) {
      r.orthogonal_defect = false;
      r.defect_support_overlap = INFINITY;
      break;
    }
    r.defect_support_overlap = std::max(
        r.defect_support_overlap, std::abs(trace_product(povm.defect.matrix(), s.matrix())));
  }
  if (r.defect_support_overlap > kDefectOverlapTol) r.orthogonal_defect = false;
  return r;
}

}  // namespace pbtlab
