#ifndef RONM_CORE_HPP
#define RONM_CORE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ronm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Raised when a numerical object is outside the domain an operation needs
/// (non-PD precision, singular Hessian point, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller-side contract was violated (bad lambda, x outside K, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is not defined for this configuration.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid experiment or environment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative routine stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Symmetric matrix. Every arithmetic update goes through symmetrize(), so
/// entries(i, j) == entries(j, i) holds bit-for-bit.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m) : m_(m) {
    if (m.rows() != m.cols()) throw PreconditionError("SymMatrix: matrix is not square");
    symmetrize();
  }

  static SymMatrix identity(Eigen::Index d, double scale = 1.0) {
    return SymMatrix(Matrix::Identity(d, d) * scale);
  }
  static SymMatrix zero(Eigen::Index d) { return SymMatrix(Matrix::Zero(d, d)); }

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  SymMatrix& operator+=(const SymMatrix& o) {
    m_ += o.m_;
    symmetrize();
    return *this;
  }
  SymMatrix& add_scaled(const SymMatrix& o, double c) {
    m_ += c * o.m_;
    symmetrize();
    return *this;
  }
  SymMatrix& add_identity(double c) {
    m_.diagonal().array() += c;
    return *this;
  }
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator*(double c, const SymMatrix& a) { return SymMatrix(c * a.m_); }

  Vector eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  double min_eigenvalue() const { return eigenvalues().minCoeff(); }
  double max_eigenvalue() const { return eigenvalues().maxCoeff(); }
  /// Recomputed on every call.
  bool is_psd(double tol = 0.0) const { return min_eigenvalue() >= -tol; }
  bool is_pd() const {
    Eigen::LLT<Matrix> llt(m_);
    return llt.info() == Eigen::Success && min_eigenvalue() > 0.0;
  }

 private:
  void symmetrize() {
    for (Eigen::Index i = 0; i < m_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
        const double v = 0.5 * (m_(i, j) + m_(j, i));
        m_(i, j) = v;
        m_(j, i) = v;
      }
  }

  Matrix m_;
};

inline Vector make_vector(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

}  // namespace ronm

#endif  // RONM_CORE_HPP
