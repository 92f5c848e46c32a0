#pragma once

#include "seebf/hermitian.hpp"

namespace seebf {

/// Real representation [[Re A, -Im A], [Im A, Re A]] of a complex matrix.
/// It is multiplicative and maps A^H to the transpose, so PSD-ness and
/// congruences carry over to the real symmetric image.
RMat embed(const CMat& a);
RMat embed_hermitian(const HermitianMatrix& a);

struct EigenPair {
  double value = 0.0;
  CVec vector;
};

/// Largest eigenvalue and a unit eigenvector.
EigenPair dominant_eig(const HermitianMatrix& a);

/// lambda_2 / lambda_1 for a PSD matrix (0 for rank <= 1, 0 for the zero matrix).
double rank_ratio(const HermitianMatrix& a);

/// Orthonormal basis of ker(A^H), i.e. of the orthogonal complement of the
/// column space of A. Returns an n x 0 matrix when the kernel is trivial.
CMat null_space_basis(const CMat& a, double rel_tol = 1e-10);

}  // namespace seebf
