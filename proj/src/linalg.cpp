#include "seebf/linalg.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace seebf {

RMat embed(const CMat& a) {
  const Eigen::Index r = a.rows(), c = a.cols();
  RMat out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = a.real();
  out.topRightCorner(r, c) = -a.imag();
  out.bottomLeftCorner(r, c) = a.imag();
  out.bottomRightCorner(r, c) = a.real();
  return out;
}

RMat embed_hermitian(const HermitianMatrix& a) { return embed(a.mat()); }

EigenPair dominant_eig(const HermitianMatrix& a) {
  auto [vals, vecs] = a.eigen();
  const Eigen::Index k = vals.size() - 1;
  return {vals(k), vecs.col(k)};
}

double rank_ratio(const HermitianMatrix& a) {
  if (a.dim() < 2) return 0.0;
  const RVec ev = a.eigenvalues();
  const Eigen::Index k = ev.size() - 1;
  if (ev(k) <= 0.0) return 0.0;
  return std::max(ev(k - 1), 0.0) / ev(k);
}

CMat null_space_basis(const CMat& a, double rel_tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() == 0) return CMat::Identity(n, n);
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU);
  const RVec& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * std::max(smax, 1e-300)) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

}  // namespace seebf
