#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pbtlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDefaultRankTol = 1e-12;

// Raised when an iterative numerical procedure fails to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Dense Hermitian operator on a register of qubits. Qubit 0 is the most
// significant bit of the row/column index.
class HermitianOp {
 public:
  HermitianOp();

  // Checks shape and Hermiticity (absolute entrywise tolerance).
  static HermitianOp from_matrix(Matrix m, double tol = kHermitianTol);
  // Replaces m by its Hermitian part; for results that are Hermitian by
  // construction up to round-off.
  static HermitianOp hermitian_part(const Matrix& m);
  static HermitianOp identity(int qubits);
  static HermitianOp zero(int qubits);

  int qubit_count() const { return qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }

  HermitianOp operator+(const HermitianOp& o) const;
  HermitianOp operator-(const HermitianOp& o) const;
  HermitianOp operator*(double s) const;
  HermitianOp& operator+=(const HermitianOp& o);

 private:
  HermitianOp(Matrix m, int qubits) : m_(std::move(m)), qubits_(qubits) {}
  Matrix m_;
  int qubits_;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;  // descending
  Matrix eigenvectors;          // columns pair with eigenvalues
  double rank_tol = kDefaultRankTol;

  double max_abs_eigenvalue() const;
  // Number of eigenvalues above rank_tol * max |lambda|.
  Eigen::Index rank() const;
  Matrix reconstruct() const;
};

int qubits_for_dim(Eigen::Index dim);

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b);

// Result acts on the kept qubits in ascending order.
HermitianOp partial_trace(const HermitianOp& op, std::span<const int> keep);

// new qubit p is old qubit order[p]
HermitianOp permute_qubits(const HermitianOp& op, std::span<const int> order);
Matrix permute_qubits(const Matrix& op, std::span<const int> order);

SpectralDecomposition eig_hermitian(const HermitianOp& op, double rank_tol = kDefaultRankTol);
SpectralDecomposition eig_hermitian(const Matrix& m, double rank_tol = kDefaultRankTol);

// f applied to eigenvalues above rank_tol * lambda_max, zero elsewhere.
HermitianOp func_on_support(const SpectralDecomposition& eig,
                            const std::function<double(double)>& f);
HermitianOp func_on_support(const HermitianOp& op, const std::function<double(double)>& f,
                            double rank_tol = kDefaultRankTol);

double trace_norm(const HermitianOp& a);
// Sum of singular values, for general square matrices.
double trace_norm(const Matrix& a);

double state_fidelity(const HermitianOp& a, const HermitianOp& b,
                      double rank_tol = kDefaultRankTol);

// tr(a b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

// x * (block on qubits qa, qb), identity elsewhere. qa is the more
// significant qubit of the 4x4 block.
Matrix apply_two_qubit_right(const Matrix& x, const Eigen::Matrix4cd& block, int qa, int qb,
                             int qubits);

}  // namespace pbtlab
