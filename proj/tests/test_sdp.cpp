#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "seebf/errors.hpp"
#include "seebf/linalg.hpp"
#include "seebf/sdp.hpp"

using namespace seebf;
using namespace seebf::sdp;

TEST(MatrixGroup, HermitianRoundTrip) {
  ConicProblem p;
  const int g = p.add_group(GroupKind::kHermitian, 3);
  CMat a(3, 3);
  a << 2.0, cdouble(0.5, 1.0), cdouble(-1.0, 0.25), cdouble(0.5, -1.0), 3.0, cdouble(0.0, 2.0),
      cdouble(-1.0, -0.25), cdouble(0.0, -2.0), 1.5;
  const HermitianMatrix h(a);
  RVec y = RVec::Zero(p.num_vars);
  p.groups[g].set_value(h, y);
  EXPECT_EQ(p.num_vars, 9);
  EXPECT_LT((p.groups[g].value(y).mat() - a).norm(), 1e-15);
  EXPECT_LT((p.groups[g].embedded_value(y) - embed(a)).norm(), 1e-15);
}

TEST(MatrixGroup, InnerCoefficientsMatchTrace) {
  ConicProblem p;
  const int g = p.add_group(GroupKind::kHermitian, 4);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  CMat a(4, 4), b(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {nd(rng), nd(rng)}, b(i, j) = {nd(rng), nd(rng)};
  const HermitianMatrix ha(a), hb(b);
  RVec y = RVec::Zero(p.num_vars);
  p.groups[g].set_value(hb, y);
  EXPECT_NEAR(p.groups[g].inner_coefficients(ha).dot(y), ha.inner(hb), 1e-12);
  EXPECT_NEAR(p.groups[g].trace_coefficients().dot(y), hb.trace(), 1e-12);
}

TEST(Embedding, MultiplicativeAndAdjoint) {
  CMat a = CMat::Random(3, 2), b = CMat::Random(2, 4);
  EXPECT_LT((embed(a * b) - embed(a) * embed(b)).norm(), 1e-12);
  EXPECT_LT((embed(a.adjoint()) - embed(a).transpose()).norm(), 1e-12);
}

TEST(Linalg, DominantEigAndNullSpace) {
  CVec v(3);
  v << 1.0, cdouble(0.0, 2.0), -1.0;
  const auto e = dominant_eig(HermitianMatrix::outer(v));
  EXPECT_NEAR(e.value, v.squaredNorm(), 1e-12);
  EXPECT_NEAR(std::abs(e.vector.dot(v)), v.norm(), 1e-12);
  EXPECT_NEAR(rank_ratio(HermitianMatrix::outer(v)), 0.0, 1e-12);

  CMat h = CMat::Random(5, 2);
  const CMat n = null_space_basis(h);
  ASSERT_EQ(n.cols(), 3);
  EXPECT_LT((h.adjoint() * n).norm(), 1e-12);
  EXPECT_LT((n.adjoint() * n - CMat::Identity(3, 3)).norm(), 1e-12);
}

// min Tr(V) s.t. V PSD, V_11 = 1. Optimum 1 at V = e1 e1^T.
TEST(Solver, TraceWithFixedEntry) {
  ConicProblem p;
  const int g = p.add_group(GroupKind::kSymmetric, 3);
  p.add_objective(p.groups[g], p.groups[g].trace_coefficients());
  p.add_psd_group(g, "V");
  RVec e = RVec::Zero(p.num_vars);
  e(0) = 1.0;
  p.add_equality(e, 1.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal) << s.message;
  EXPECT_NEAR(s.objective, 1.0, 1e-6);
}

// min x s.t. x >= 0, x >= 3.
TEST(Solver, ScalarLinear) {
  ConicProblem p;
  const int x = p.add_scalar();
  p.add_objective(x, 1.0);
  RVec a(1);
  a << 1.0;
  p.add_linear_row(a, 0.0);
  p.add_linear_row(a, -3.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal) << s.message;
  EXPECT_NEAR(s.y(0), 3.0, 1e-6);
}

// max lambda_min-type problem: min t s.t. t I - A PSD gives lambda_max(A).
TEST(Solver, LargestEigenvalueLmi) {
  RMat a(3, 3);
  a << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  ConicProblem p;
  const int t = p.add_scalar();
  p.add_objective(t, 1.0);
  PsdBlock b;
  b.constant = -a;
  b.scalar_terms.push_back({t, RMat::Identity(3, 3)});
  p.add_block(b);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  const double lmax = Eigen::SelfAdjointEigenSolver<RMat>(a).eigenvalues()(2);
  EXPECT_NEAR(s.y(t), lmax, 1e-6);
}

// The same Hermitian problem solved through a complex group and through
// an explicitly embedded real group must agree.
TEST(Solver, HermitianMatchesRealEmbedding) {
  CVec h(3);
  h << cdouble(1.0, 0.5), cdouble(-0.3, 0.8), cdouble(0.2, -1.1);
  const HermitianMatrix hh = HermitianMatrix::outer(h);
  // min Tr(W) s.t. h^H W h >= 2, W PSD. Optimum 2 / |h|^2.
  ConicProblem p;
  const int g = p.add_group(GroupKind::kHermitian, 3);
  p.add_objective(p.groups[g], p.groups[g].trace_coefficients());
  p.add_psd_group(g, "W");
  p.add_linear_row(p.groups[g].inner_coefficients(hh), -2.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, 2.0 / h.squaredNorm(), 1e-6);

  ConicProblem q;
  const int gr = q.add_group(GroupKind::kSymmetric, 6);
  q.add_objective(q.groups[gr], 0.5 * q.groups[gr].trace_coefficients());
  q.add_psd_group(gr, "W_embedded");
  q.add_linear_row(0.5 * q.groups[gr].inner_coefficients(HermitianMatrix::from_real(embed_hermitian(hh))),
                   -2.0);
  const auto sr = solve(q);
  ASSERT_EQ(sr.status, Status::kOptimal);
  EXPECT_NEAR(sr.objective, s.objective, 1e-6);
}

TEST(Solver, DetectsInfeasibility) {
  // V PSD and V_11 = -1.
  ConicProblem p;
  const int g = p.add_group(GroupKind::kSymmetric, 2);
  p.add_objective(p.groups[g], p.groups[g].trace_coefficients());
  p.add_psd_group(g, "V");
  RVec e = RVec::Zero(p.num_vars);
  e(0) = 1.0;
  p.add_equality(e, -1.0);
  const auto s = solve(p);
  EXPECT_EQ(s.status, Status::kInfeasible);
}

TEST(Solver, DetectsUnboundedness) {
  // min -t s.t. t >= 0.
  ConicProblem p;
  const int t = p.add_scalar();
  p.add_objective(t, -1.0);
  RVec a(1);
  a << 1.0;
  p.add_linear_row(a, 0.0);
  const auto s = solve(p);
  EXPECT_EQ(s.status, Status::kUnbounded);
}

TEST(Solver, WarmStartOnSolvedProblemReturnsImmediately) {
  ConicProblem p;
  const int g = p.add_group(GroupKind::kSymmetric, 3);
  p.add_objective(p.groups[g], p.groups[g].trace_coefficients());
  p.add_psd_group(g, "V");
  RVec e = RVec::Zero(p.num_vars);
  e(0) = 1.0;
  p.add_equality(e, 1.0);
  const auto s = solve(p);
  ASSERT_EQ(s.status, Status::kOptimal);
  const auto w = solve(p, {}, &s);
  EXPECT_EQ(w.status, Status::kOptimal);
  EXPECT_LE(w.iterations, 2);
}

TEST(Problem, WriteAndValidate) {
  ConicProblem p;
  const int g = p.add_group(GroupKind::kHermitian, 2);
  p.add_psd_group(g, "W");
  std::ostringstream os;
  write_problem(os, p);
  EXPECT_NE(os.str().find("block 0 size 4 label W"), std::string::npos);
  p.blocks[0].matrix_terms[0].map = RMat::Identity(3, 4);
  EXPECT_THROW(p.validate(), DimensionMismatch);
}
