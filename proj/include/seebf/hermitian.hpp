#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace seebf {

using cdouble = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Relative PSD acceptance: lambda_min >= -kPsdTolerance * max(1, lambda_max).
inline constexpr double kPsdTolerance = 1e-8;

/// Complex Hermitian matrix value. The constructor projects its argument
/// onto the Hermitian subspace, so A == A^H holds bit-exactly afterwards.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMat& a);

  static HermitianMatrix zero(Eigen::Index n);
  static HermitianMatrix identity(Eigen::Index n);
  /// v v^H
  static HermitianMatrix outer(const CVec& v);
  static HermitianMatrix from_real(const RMat& a);

  Eigen::Index dim() const noexcept { return a_.rows(); }
  const CMat& mat() const noexcept { return a_; }
  cdouble operator()(Eigen::Index r, Eigen::Index c) const { return a_(r, c); }

  double trace() const { return a_.trace().real(); }
  /// Re Tr(A B); exact trace of the product for Hermitian operands.
  double inner(const HermitianMatrix& b) const;
  /// x^H A x
  double quadratic(const CVec& x) const;

  /// Ascending eigenvalues.
  RVec eigenvalues() const;
  /// Ascending eigenvalues and matching unit eigenvectors.
  std::pair<RVec, CMat> eigen() const;
  double min_eigenvalue() const;
  bool is_psd(double rel_tol = kPsdTolerance) const;

  /// L^H A L for a rectangular map L.
  HermitianMatrix congruence(const CMat& l) const;

  HermitianMatrix& operator+=(const HermitianMatrix& b);
  HermitianMatrix& operator-=(const HermitianMatrix& b);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) {
    return a += b;
  }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) {
    return a -= b;
  }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

 private:
  CMat a_;
};

}  // namespace seebf
