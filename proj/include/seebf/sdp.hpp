#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seebf/hermitian.hpp"

namespace seebf::sdp {

// Conic problems are stated in linear-matrix-inequality form over a real
// decision vector y:
//
//   minimize    c^T y + offset
//   subject to  F_b(y) = C_b + sum_i y_i A_{b,i}  PSD       for every block b
//               a_r^T y + b_r >= 0                          for every linear row r
//               e_k^T y = f_k                               for every equality k
//
// Matrix-valued decision variables are declared as groups. A group occupies
// a contiguous slice of y and enters blocks through congruence terms
// coef * L^T V L, where V is the group's (real-embedded) matrix value. This
// structure is what keeps the Schur complement assembly cheap.

enum class GroupKind {
  kSymmetric,  ///< real symmetric k x k, k(k+1)/2 parameters
  kHermitian,  ///< complex Hermitian k x k, k^2 parameters, embedded as 2k x 2k
};

struct BasisEntry {
  int row;
  int col;
  double value;
};

class MatrixGroup {
 public:
  MatrixGroup(GroupKind kind, int dim, int offset);

  GroupKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  int offset() const noexcept { return offset_; }
  int param_count() const noexcept { return static_cast<int>(basis_.size()); }
  int embedded_size() const noexcept { return kind_ == GroupKind::kHermitian ? 2 * dim_ : dim_; }
  /// Sparse embedded matrix of each parameter.
  const std::vector<std::vector<BasisEntry>>& basis() const noexcept { return basis_; }
  /// Hermitian groups only: the complex basis matrix of each parameter.
  const std::vector<std::vector<std::pair<std::pair<int, int>, cdouble>>>& complex_basis() const noexcept {
    return cbasis_;
  }

  /// Embedded (real) matrix value for the group's slice of y.
  RMat embedded_value(const RVec& y) const;
  /// The complex value (real groups are returned with zero imaginary part).
  HermitianMatrix value(const RVec& y) const;
  /// Writes the parameters of `v` into the group's slice of y.
  void set_value(const HermitianMatrix& v, RVec& y) const;
  /// Coefficients of Tr(V) in the group's parameters.
  RVec trace_coefficients() const;
  /// Coefficients of Re Tr(A V) for a fixed Hermitian A.
  RVec inner_coefficients(const HermitianMatrix& a) const;

 private:
  GroupKind kind_;
  int dim_;
  int offset_;
  std::vector<std::vector<BasisEntry>> basis_;
  std::vector<std::vector<std::pair<std::pair<int, int>, cdouble>>> cbasis_;
};

/// coef * map^T V map, map is (group embedded size) x (block size).
struct MatrixTerm {
  int group = 0;
  double coef = 1.0;
  RMat map;
  bool complex_map = false;  ///< map is the real embedding of a complex map
};

/// y_var * coef
struct ScalarTerm {
  int var = 0;
  RMat coef;
};

struct PsdBlock {
  std::string label;
  /// Every coefficient is the embedding of a complex Hermitian matrix.
  bool hermitian = false;
  RMat constant;
  std::vector<MatrixTerm> matrix_terms;
  std::vector<ScalarTerm> scalar_terms;

  Eigen::Index size() const { return constant.rows(); }
};

struct ConicProblem {
  int num_vars = 0;
  std::vector<MatrixGroup> groups;
  RVec objective;
  double objective_offset = 0.0;
  std::vector<PsdBlock> blocks;
  RMat lin_a;  ///< rows a_r^T
  RVec lin_b;
  RMat eq_a;
  RVec eq_b;

  /// New free scalar variable; returns its index in y.
  int add_scalar();
  /// New matrix group; returns the group id.
  int add_group(GroupKind kind, int dim);
  void add_objective(int var, double coef);
  void add_objective(const MatrixGroup& g, const RVec& coefs);
  /// a^T y + b >= 0
  void add_linear_row(const RVec& a, double b);
  /// a^T y == b
  void add_equality(const RVec& a, double b);
  void add_block(PsdBlock block);
  /// V_group PSD on its own.
  void add_psd_group(int group, const std::string& label);

  /// Throws DimensionMismatch when a term or row is inconsistent.
  void validate() const;

  /// F_b(y) for every block.
  std::vector<RMat> block_values(const RVec& y) const;
};

/// Hermitian-form helpers: the block is embedded as a 2d x 2d real block.
MatrixTerm hermitian_term(int group, double coef, const CMat& map);
ScalarTerm hermitian_scalar_term(int var, const HermitianMatrix& coef);

enum class Status { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

const char* to_string(Status s);

struct SolverOptions {
  double tol = 1e-7;
  double infeasibility_tol = 1e-8;
  /// Accepted dual residual once it stops improving with pres, gap <= tol.
  double relaxed_tol = 1e-5;
  int max_iterations = 120;
  bool verbose = false;  ///< per-iteration log on stderr
};

struct ConicSolution {
  Status status = Status::kNumericalFailure;
  RVec y;
  std::vector<RMat> slack;        ///< Z_b, PSD, approximately F_b(y)
  std::vector<RMat> multiplier;   ///< X_b, PSD dual matrices
  RVec lin_slack;
  RVec lin_multiplier;
  RVec eq_multiplier;
  double objective = 0.0;         ///< c^T y + offset
  double dual_objective = 0.0;
  double primal_residual = 0.0;   ///< relative infeasibility of y
  double dual_residual = 0.0;     ///< relative stationarity residual
  double gap = 0.0;               ///< relative duality gap
  double certificate_residual = 0.0;
  int iterations = 0;
  std::string message;
};

/// Primal-dual interior-point solve (HKM direction, Mehrotra corrector,
/// infeasible start). `warm` restarts from a previous iterate of the same problem.
ConicSolution solve(const ConicProblem& p, const SolverOptions& opts = {},
                    const ConicSolution* warm = nullptr);

/// Writes the problem as text: a header with dimensions followed by sparse
/// (block, variable, row, col, value) triplets of every coefficient matrix.
void write_problem(std::ostream& os, const ConicProblem& p);

}  // namespace seebf::sdp
