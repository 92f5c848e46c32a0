#include <ostream>

#include "seebf/errors.hpp"
#include "seebf/linalg.hpp"
#include "seebf/sdp.hpp"

namespace seebf::sdp {

MatrixGroup::MatrixGroup(GroupKind kind, int dim, int offset)
    : kind_(kind), dim_(dim), offset_(offset) {
  if (dim < 0) throw DomainError("MatrixGroup: negative dimension");
  const int k = dim;
  for (int j = 0; j < k; ++j) {
    if (kind == GroupKind::kHermitian) {
      basis_.push_back({{j, j, 1.0}, {j + k, j + k, 1.0}});
      cbasis_.push_back({{{j, j}, 1.0}});
    } else {
      basis_.push_back({{j, j, 1.0}});
    }
  }
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      if (kind == GroupKind::kHermitian) {
        // real part of V_jl
        basis_.push_back({{j, l, 1.0}, {l, j, 1.0}, {j + k, l + k, 1.0}, {l + k, j + k, 1.0}});
        // imaginary part of V_jl
        basis_.push_back({{j, l + k, -1.0}, {l + k, j, -1.0}, {l, j + k, 1.0}, {j + k, l, 1.0}});
        cbasis_.push_back({{{j, l}, 1.0}, {{l, j}, 1.0}});
        cbasis_.push_back({{{j, l}, cdouble(0.0, 1.0)}, {{l, j}, cdouble(0.0, -1.0)}});
      } else {
        basis_.push_back({{j, l, 1.0}, {l, j, 1.0}});
      }
    }
  }
}

RMat MatrixGroup::embedded_value(const RVec& y) const {
  const int s = embedded_size();
  RMat v = RMat::Zero(s, s);
  for (int p = 0; p < param_count(); ++p) {
    const double yp = y(offset_ + p);
    if (yp == 0.0) continue;
    for (const auto& e : basis_[p]) v(e.row, e.col) += yp * e.value;
  }
  return v;
}

HermitianMatrix MatrixGroup::value(const RVec& y) const {
  const int k = dim_;
  CMat v = CMat::Zero(k, k);
  int p = offset_;
  for (int j = 0; j < k; ++j) v(j, j) = y(p++);
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      if (kind_ == GroupKind::kHermitian) {
        const cdouble z(y(p), y(p + 1));
        p += 2;
        v(j, l) = z;
        v(l, j) = std::conj(z);
      } else {
        v(j, l) = v(l, j) = y(p++);
      }
    }
  }
  return HermitianMatrix(v);
}

void MatrixGroup::set_value(const HermitianMatrix& v, RVec& y) const {
  if (v.dim() != dim_) throw DimensionMismatch("MatrixGroup::set_value");
  int p = offset_;
  for (int j = 0; j < dim_; ++j) y(p++) = v(j, j).real();
  for (int j = 0; j < dim_; ++j) {
    for (int l = j + 1; l < dim_; ++l) {
      y(p++) = v(j, l).real();
      if (kind_ == GroupKind::kHermitian) y(p++) = v(j, l).imag();
    }
  }
}

RVec MatrixGroup::trace_coefficients() const {
  RVec c = RVec::Zero(param_count());
  c.head(dim_).setOnes();
  return c;
}

RVec MatrixGroup::inner_coefficients(const HermitianMatrix& a) const {
  if (a.dim() != dim_) throw DimensionMismatch("MatrixGroup::inner_coefficients");
  RVec c(param_count());
  int p = 0;
  for (int j = 0; j < dim_; ++j) c(p++) = a(j, j).real();
  for (int j = 0; j < dim_; ++j) {
    for (int l = j + 1; l < dim_; ++l) {
      c(p++) = 2.0 * a(j, l).real();
      if (kind_ == GroupKind::kHermitian) c(p++) = 2.0 * a(j, l).imag();
    }
  }
  return c;
}

int ConicProblem::add_scalar() {
  objective.conservativeResize(num_vars + 1);
  objective(num_vars) = 0.0;
  if (lin_a.rows() > 0) lin_a.conservativeResize(Eigen::NoChange, num_vars + 1), lin_a.col(num_vars).setZero();
  if (eq_a.rows() > 0) eq_a.conservativeResize(Eigen::NoChange, num_vars + 1), eq_a.col(num_vars).setZero();
  return num_vars++;
}

int ConicProblem::add_group(GroupKind kind, int dim) {
  MatrixGroup g(kind, dim, num_vars);
  const int added = g.param_count();
  objective.conservativeResize(num_vars + added);
  objective.tail(added).setZero();
  if (lin_a.rows() > 0) {
    lin_a.conservativeResize(Eigen::NoChange, num_vars + added);
    lin_a.rightCols(added).setZero();
  }
  if (eq_a.rows() > 0) {
    eq_a.conservativeResize(Eigen::NoChange, num_vars + added);
    eq_a.rightCols(added).setZero();
  }
  num_vars += added;
  groups.push_back(std::move(g));
  return static_cast<int>(groups.size()) - 1;
}

void ConicProblem::add_objective(int var, double coef) { objective(var) += coef; }

void ConicProblem::add_objective(const MatrixGroup& g, const RVec& coefs) {
  objective.segment(g.offset(), g.param_count()) += coefs;
}

void ConicProblem::add_linear_row(const RVec& a, double b) {
  if (a.size() != num_vars) throw DimensionMismatch("add_linear_row");
  const Eigen::Index r = lin_a.rows();
  lin_a.conservativeResize(r + 1, num_vars);
  lin_b.conservativeResize(r + 1);
  lin_a.row(r) = a.transpose();
  lin_b(r) = b;
}

void ConicProblem::add_equality(const RVec& a, double b) {
  if (a.size() != num_vars) throw DimensionMismatch("add_equality");
  const Eigen::Index r = eq_a.rows();
  eq_a.conservativeResize(r + 1, num_vars);
  eq_b.conservativeResize(r + 1);
  eq_a.row(r) = a.transpose();
  eq_b(r) = b;
}

void ConicProblem::add_block(PsdBlock block) { blocks.push_back(std::move(block)); }

void ConicProblem::add_psd_group(int group, const std::string& label) {
  const auto& g = groups.at(static_cast<std::size_t>(group));
  const int s = g.embedded_size();
  PsdBlock b;
  b.label = label;
  b.constant = RMat::Zero(s, s);
  b.hermitian = g.kind() == GroupKind::kHermitian;
  b.matrix_terms.push_back({group, 1.0, RMat::Identity(s, s), b.hermitian});
  blocks.push_back(std::move(b));
}

void ConicProblem::validate() const {
  if (objective.size() != num_vars) throw DimensionMismatch("objective length");
  if (lin_a.rows() > 0 && lin_a.cols() != num_vars) throw DimensionMismatch("linear rows");
  if (lin_a.rows() != lin_b.size()) throw DimensionMismatch("linear rhs");
  if (eq_a.rows() > 0 && eq_a.cols() != num_vars) throw DimensionMismatch("equalities");
  if (eq_a.rows() != eq_b.size()) throw DimensionMismatch("equality rhs");
  for (const auto& b : blocks) {
    const Eigen::Index d = b.size();
    if (b.constant.cols() != d) throw DimensionMismatch("block constant: " + b.label);
    for (const auto& t : b.matrix_terms) {
      if (t.group < 0 || t.group >= static_cast<int>(groups.size())) {
        throw DimensionMismatch("block term group: " + b.label);
      }
      const auto& g = groups[static_cast<std::size_t>(t.group)];
      if (b.hermitian && (!t.complex_map || g.kind() != GroupKind::kHermitian)) {
        throw DimensionMismatch("hermitian block with a real term: " + b.label);
      }
      if (t.map.rows() != g.embedded_size() || t.map.cols() != d) {
        throw DimensionMismatch("block term map: " + b.label);
      }
    }
    for (const auto& t : b.scalar_terms) {
      if (t.var < 0 || t.var >= num_vars) throw DimensionMismatch("scalar term: " + b.label);
      if (t.coef.rows() != d || t.coef.cols() != d) {
        throw DimensionMismatch("scalar term size: " + b.label);
      }
    }
  }
}

std::vector<RMat> ConicProblem::block_values(const RVec& y) const {
  std::vector<RMat> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) {
    RMat f = b.constant;
    for (const auto& t : b.matrix_terms) {
      const RMat v = groups[static_cast<std::size_t>(t.group)].embedded_value(y);
      f.noalias() += t.coef * (t.map.transpose() * v * t.map);
    }
    for (const auto& t : b.scalar_terms) f += y(t.var) * t.coef;
    out.push_back(std::move(f));
  }
  return out;
}

MatrixTerm hermitian_term(int group, double coef, const CMat& map) {
  return {group, coef, embed(map), true};
}

ScalarTerm hermitian_scalar_term(int var, const HermitianMatrix& coef) {
  return {var, embed_hermitian(coef)};
}

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kNumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

void write_problem(std::ostream& os, const ConicProblem& p) {
  p.validate();
  os.precision(17);
  os << "# seebf conic problem, LMI form: min c'y + offset, F_b(y) psd, a'y + b >= 0, e'y = f\n";
  os << "vars " << p.num_vars << "\n";
  os << "offset " << p.objective_offset << "\n";
  os << "objective";
  for (Eigen::Index i = 0; i < p.objective.size(); ++i) os << ' ' << p.objective(i);
  os << "\n";
  os << "blocks " << p.blocks.size() << "\n";
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& blk = p.blocks[b];
    os << "block " << b << " size " << blk.size() << " label " << blk.label << "\n";
    // Triplets of the constant (var = -1) and each A_{b,i}, upper triangle only.
    auto emit = [&](long var, const RMat& m) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r <= c; ++r) {
          if (m(r, c) != 0.0) {
            os << b << ' ' << var << ' ' << r << ' ' << c << ' ' << m(r, c) << "\n";
          }
        }
      }
    };
    emit(-1, blk.constant);
    std::vector<RMat> per_var(static_cast<std::size_t>(p.num_vars));
    for (const auto& t : blk.matrix_terms) {
      const auto& g = p.groups[static_cast<std::size_t>(t.group)];
      for (int q = 0; q < g.param_count(); ++q) {
        RMat e = RMat::Zero(g.embedded_size(), g.embedded_size());
        for (const auto& be : g.basis()[q]) e(be.row, be.col) += be.value;
        auto& acc = per_var[static_cast<std::size_t>(g.offset() + q)];
        if (acc.size() == 0) acc = RMat::Zero(blk.size(), blk.size());
        acc += t.coef * t.map.transpose() * e * t.map;
      }
    }
    for (const auto& t : blk.scalar_terms) {
      auto& acc = per_var[static_cast<std::size_t>(t.var)];
      if (acc.size() == 0) acc = RMat::Zero(blk.size(), blk.size());
      acc += t.coef;
    }
    for (int v = 0; v < p.num_vars; ++v) {
      if (per_var[static_cast<std::size_t>(v)].size() > 0) emit(v, per_var[static_cast<std::size_t>(v)]);
    }
  }
  os << "linear " << p.lin_a.rows() << "\n";
  for (Eigen::Index r = 0; r < p.lin_a.rows(); ++r) {
    os << "row " << r << " rhs " << p.lin_b(r);
    for (Eigen::Index v = 0; v < p.lin_a.cols(); ++v) {
      if (p.lin_a(r, v) != 0.0) os << ' ' << v << ':' << p.lin_a(r, v);
    }
    os << "\n";
  }
  os << "equalities " << p.eq_a.rows() << "\n";
  for (Eigen::Index r = 0; r < p.eq_a.rows(); ++r) {
    os << "eq " << r << " rhs " << p.eq_b(r);
    for (Eigen::Index v = 0; v < p.eq_a.cols(); ++v) {
      if (p.eq_a(r, v) != 0.0) os << ' ' << v << ':' << p.eq_a(r, v);
    }
    os << "\n";
  }
}

}  // namespace seebf::sdp
