#include "seebf/hermitian.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "seebf/errors.hpp"

namespace seebf {

HermitianMatrix::HermitianMatrix(const CMat& a) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch("HermitianMatrix: matrix is not square");
  }
  a_ = 0.5 * (a + a.adjoint());
  for (Eigen::Index i = 0; i < a_.rows(); ++i) a_(i, i) = cdouble(a_(i, i).real(), 0.0);
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(CMat::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(CMat::Identity(n, n));
}

HermitianMatrix HermitianMatrix::outer(const CVec& v) {
  return HermitianMatrix(v * v.adjoint());
}

HermitianMatrix HermitianMatrix::from_real(const RMat& a) {
  return HermitianMatrix(CMat(a.cast<cdouble>()));
}

double HermitianMatrix::inner(const HermitianMatrix& b) const {
  if (b.dim() != dim()) throw DimensionMismatch("HermitianMatrix::inner");
  // Tr(AB) = sum_jk A_jk B_kj = sum_jk A_jk conj(B_jk)
  return (a_.array() * b.a_.array().conjugate()).sum().real();
}

double HermitianMatrix::quadratic(const CVec& x) const {
  if (x.size() != dim()) throw DimensionMismatch("HermitianMatrix::quadratic");
  return x.dot(a_ * x).real();
}

RVec HermitianMatrix::eigenvalues() const {
  if (dim() == 0) return RVec();
  Eigen::SelfAdjointEigenSolver<CMat> es(a_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::pair<RVec, CMat> HermitianMatrix::eigen() const {
  if (dim() == 0) return {RVec(), CMat()};
  Eigen::SelfAdjointEigenSolver<CMat> es(a_);
  return {es.eigenvalues(), es.eigenvectors()};
}

double HermitianMatrix::min_eigenvalue() const {
  if (dim() == 0) return 0.0;
  return eigenvalues()(0);
}

bool HermitianMatrix::is_psd(double rel_tol) const {
  if (dim() == 0) return true;
  const RVec ev = eigenvalues();
  const double scale = std::max(1.0, ev(ev.size() - 1));
  return ev(0) >= -rel_tol * scale;
}

HermitianMatrix HermitianMatrix::congruence(const CMat& l) const {
  if (l.rows() != dim()) throw DimensionMismatch("HermitianMatrix::congruence");
  return HermitianMatrix(CMat(l.adjoint() * a_ * l));
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& b) {
  if (b.dim() != dim()) throw DimensionMismatch("HermitianMatrix +=");
  a_ += b.a_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& b) {
  if (b.dim() != dim()) throw DimensionMismatch("HermitianMatrix -=");
  a_ -= b.a_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  a_ *= s;
  return *this;
}

}  // namespace seebf
