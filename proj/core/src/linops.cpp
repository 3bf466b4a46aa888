#include "pbtlab/linops.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pbtlab {

namespace {

inline int bit_of(Eigen::Index idx, int qubit, int qubits) {
  return static_cast<int>((idx >> (qubits - 1 - qubit)) & 1);
}

void check_psd(const SpectralDecomposition& eig, const char* who) {
  const double scale = eig.max_abs_eigenvalue();
  if (eig.eigenvalues.size() > 0 && eig.eigenvalues.minCoeff() < -eig.rank_tol * scale) {
    throw std::domain_error(std::string(who) + ": operator is not positive semidefinite");
  }
}

}  // namespace

int qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::domain_error("dimension is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

HermitianOp::HermitianOp() : m_(Matrix::Zero(1, 1)), qubits_(0) {}

HermitianOp HermitianOp::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols()) throw std::domain_error("HermitianOp: matrix is not square");
  const int q = qubits_for_dim(m.rows());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw std::domain_error("HermitianOp: matrix deviates from Hermitian by " +
                            std::to_string(dev));
  }
  return HermitianOp(std::move(m), q);
}

HermitianOp HermitianOp::hermitian_part(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("HermitianOp: matrix is not square");
  const int q = qubits_for_dim(m.rows());
  Matrix h = 0.5 * (m + m.adjoint());
  return HermitianOp(std::move(h), q);
}

HermitianOp HermitianOp::identity(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return HermitianOp(Matrix::Identity(d, d), qubits);
}

HermitianOp HermitianOp::zero(int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return HermitianOp(Matrix::Zero(d, d), qubits);
}

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
  HermitianOp r = *this;
  r += o;
  return r;
}

HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
  if (o.dim() != dim()) throw std::domain_error("HermitianOp: dimension mismatch");
  return HermitianOp(m_ - o.m_, qubits_);
}

HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(m_ * s, qubits_); }

HermitianOp& HermitianOp::operator+=(const HermitianOp& o) {
  if (o.dim() != dim()) throw std::domain_error("HermitianOp: dimension mismatch");
  m_ += o.m_;
  return *this;
}

double SpectralDecomposition::max_abs_eigenvalue() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

Eigen::Index SpectralDecomposition::rank() const {
  const double cut = rank_tol * max_abs_eigenvalue();
  return (eigenvalues.array() > cut).count();
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
  const Eigen::Index da = a.dim(), db = b.dim();
  Matrix k(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      k.block(i * db, j * db, db, db) = a(i, j) * b.matrix();
    }
  }
  return HermitianOp::hermitian_part(k);
}

HermitianOp partial_trace(const HermitianOp& op, std::span<const int> keep) {
  const int q = op.qubit_count();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::domain_error("partial_trace: duplicate qubit index");
  }
  for (int k : kept) {
    if (k < 0 || k >= q) throw std::domain_error("partial_trace: qubit index out of range");
  }
  std::vector<int> traced;
  for (int k = 0; k < q; ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  auto scatter = [&](Eigen::Index kidx, Eigen::Index tidx) {
    Eigen::Index full = 0;
    for (int p = 0; p < nk; ++p) {
      if ((kidx >> (nk - 1 - p)) & 1) full |= Eigen::Index{1} << (q - 1 - kept[p]);
    }
    for (int p = 0; p < nt; ++p) {
      if ((tidx >> (nt - 1 - p)) & 1) full |= Eigen::Index{1} << (q - 1 - traced[p]);
    }
    return full;
  };
  const Eigen::Index dk = Eigen::Index{1} << nk, dt = Eigen::Index{1} << nt;
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += op(scatter(r, t), scatter(c, t));
      out(r, c) = acc;
    }
  }
  return HermitianOp::hermitian_part(out);
}

Matrix permute_qubits(const Matrix& op, std::span<const int> order) {
  const int q = qubits_for_dim(op.rows());
  if (static_cast<int>(order.size()) != q) {
    throw std::domain_error("permute_qubits: order has wrong length");
  }
  std::vector<int> seen(order.begin(), order.end());
  std::sort(seen.begin(), seen.end());
  for (int k = 0; k < q; ++k) {
    if (seen[k] != k) throw std::domain_error("permute_qubits: order is not a permutation");
  }
  const Eigen::Index d = op.rows();
  std::vector<Eigen::Index> map(d);
  for (Eigen::Index idx = 0; idx < d; ++idx) {
    Eigen::Index old = 0;
    for (int p = 0; p < q; ++p) {
      if (bit_of(idx, p, q)) old |= Eigen::Index{1} << (q - 1 - order[p]);
    }
    map[idx] = old;
  }
  Matrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) out(r, c) = op(map[r], map[c]);
  }
  return out;
}

HermitianOp permute_qubits(const HermitianOp& op, std::span<const int> order) {
  return HermitianOp::from_matrix(permute_qubits(op.matrix(), order));
}

SpectralDecomposition eig_hermitian(const HermitianOp& op, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge", 0.0);
  }
  SpectralDecomposition out;
  out.rank_tol = rank_tol;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

SpectralDecomposition eig_hermitian(const Matrix& m, double rank_tol) {
  return eig_hermitian(HermitianOp::from_matrix(m), rank_tol);
}

HermitianOp func_on_support(const SpectralDecomposition& eig,
                            const std::function<double(double)>& f) {
  check_psd(eig, "func_on_support");
  const double cut = eig.rank_tol * eig.max_abs_eigenvalue();
  const Eigen::Index d = eig.eigenvalues.size();
  Eigen::Index kept = 0;
  while (kept < d && eig.eigenvalues(kept) > cut) ++kept;
  if (kept == 0) return HermitianOp::zero(qubits_for_dim(d));
  Eigen::VectorXd mapped(kept);
  for (Eigen::Index k = 0; k < kept; ++k) mapped(k) = f(eig.eigenvalues(k));
  const auto v = eig.eigenvectors.leftCols(kept);
  Matrix scaled = v * mapped.cast<Complex>().asDiagonal();
  return HermitianOp::hermitian_part(scaled * v.adjoint());
}

HermitianOp func_on_support(const HermitianOp& op, const std::function<double(double)>& f,
                            double rank_tol) {
  return func_on_support(eig_hermitian(op, rank_tol), f);
}

double trace_norm(const HermitianOp& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const Matrix& a) {
  // BDCSVD in Eigen 3.4.0 returns wrong singular values for some products of
  // degenerate projectors (off by a few percent); two-sided Jacobi is exact.
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double state_fidelity(const HermitianOp& a, const HermitianOp& b, double rank_tol) {
  if (a.dim() != b.dim()) throw std::domain_error("state_fidelity: dimension mismatch");
  auto root = [](double x) { return std::sqrt(x); };
  const HermitianOp ra = func_on_support(eig_hermitian(a, rank_tol), root);
  const HermitianOp rb = func_on_support(eig_hermitian(b, rank_tol), root);
  return trace_norm(Matrix(ra.matrix() * rb.matrix()));
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::domain_error("trace_product: dimension mismatch");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

Matrix apply_two_qubit_right(const Matrix& x, const Eigen::Matrix4cd& block, int qa, int qb,
                             int qubits) {
  if (qa == qb || qa < 0 || qb < 0 || qa >= qubits || qb >= qubits) {
    throw std::domain_error("apply_two_qubit_right: invalid qubit pair");
  }
  if (x.cols() != (Eigen::Index{1} << qubits)) {
    throw std::domain_error("apply_two_qubit_right: dimension mismatch");
  }
  const Eigen::Index ma = Eigen::Index{1} << (qubits - 1 - qa);
  const Eigen::Index mb = Eigen::Index{1} << (qubits - 1 - qb);
  const Eigen::Index d = x.cols();
  Matrix out(x.rows(), d);
  for (Eigen::Index base = 0; base < d; ++base) {
    if (base & (ma | mb)) continue;
    const Eigen::Index idx[4] = {base, base | mb, base | ma, base | ma | mb};
    for (int j = 0; j < 4; ++j) {
      auto col = out.col(idx[j]);
      col = x.col(idx[0]) * block(0, j);
      for (int k = 1; k < 4; ++k) {
        if (block(k, j) != Complex(0.0)) col += x.col(idx[k]) * block(k, j);
      }
    }
  }
  return out;
}

}  // namespace pbtlab
