#pragma once

#include <string>
#include <vector>

#include "seebf/channel.hpp"
#include "seebf/config.hpp"
#include "seebf/hermitian.hpp"
#include "seebf/sdp.hpp"

namespace seebf {

/// exp(phi_n t / BW + r_aux / BW) - 1
double theta(double t, double phi_n, double bandwidth_hz, double r_aux_nats_s);

/// How the transmit covariances are parameterised. Variable j (beams
/// 0..N-1, then the AN covariance at index N) enters the transmit side as
/// lift_j V_j lift_j^H. A beam can instead be a fixed constant.
struct DecisionLayout {
  int n_lue = 0;
  std::vector<CMat> lifts;  ///< N_t x d_j; size n_lue + 1
  std::vector<bool> fixed;  ///< beam n is a constant, not a variable
  std::vector<HermitianMatrix> fixed_value;

  Eigen::Index n_tx() const { return lifts.front().rows(); }
  int an_index() const { return n_lue; }
  int var_dim(int j) const { return static_cast<int>(lifts[static_cast<std::size_t>(j)].cols()); }
  bool is_variable(int j) const {
    return var_dim(j) > 0 && (j == n_lue || !fixed[static_cast<std::size_t>(j)]);
  }

  /// W_n, Q free and N_t x N_t.
  static DecisionLayout full(int n_lue, Eigen::Index n_tx);
  /// W_n = Xi_n Wbar_n Xi_n^H, Q = Phi Qbar Phi^H.
  static DecisionLayout zero_forcing(const std::vector<CMat>& xi, const CMat& phi);
  /// Fixed beams, Q = Phi Qbar Phi^H.
  static DecisionLayout fixed_beams(const std::vector<HermitianMatrix>& beams, const CMat& phi);

  /// Full-size W_n or Q from reduced values (fixed beams ignore vars[n]).
  HermitianMatrix expand(int j, const std::vector<HermitianMatrix>& vars) const;
};

struct LinearTerm {
  int var = 0;
  double coef = 1.0;
  CMat map;  ///< d_var x k; contributes coef * map^H V_var map
};

/// constant + sum_j coef_j map_j^H V_j map_j, a k x k Hermitian affine expression.
struct LinearMatrixExpr {
  HermitianMatrix constant;
  std::vector<LinearTerm> terms;

  Eigen::Index dim() const { return constant.dim(); }
  HermitianMatrix evaluate(const std::vector<HermitianMatrix>& vars) const;
  /// m^H (expr) m
  LinearMatrixExpr congruence(const CMat& m) const;
  LinearMatrixExpr& operator+=(const LinearMatrixExpr& b);
  LinearMatrixExpr& operator*=(double s);
};

/// ((1+theta)/theta) Tr(H_n W_n) - sum_k Tr(H_n W_k) - Tr(H_n Q) >= noise.
struct PsrConstraint {
  int n = 0;
  double theta = 0.0;
  double noise_w = 0.0;
  CVec h;
  /// theta == 0: no rate is demanded and the constraint is dropped.
  bool vacuous = false;
  /// Left-hand side minus noise, as an affine expression Tr(expr) in the layout.
  LinearMatrixExpr lhs;

  /// lhs - noise for explicit covariances; >= 0 when satisfied.
  double residual(const std::vector<HermitianMatrix>& w, const HermitianMatrix& q) const;
};

PsrConstraint build_psr(int n, double t, const CVec& h_n, const SystemConfig& config,
                        const DecisionLayout& layout, double noise_w);

/// X_n = W_n / (1 - exp(-r_aux_norm)) - sum_k W_k - Q over the layout.
LinearMatrixExpr build_xn(int n, const DecisionLayout& layout, double r_aux_normalized);
/// Y = sum_k W_k + Q over the layout.
LinearMatrixExpr build_y(const DecisionLayout& layout);

/// expr(V) + aux * aux_coef, required PSD together with aux >= 0.
struct LmiBlock {
  std::string label;
  LinearMatrixExpr expr;
  HermitianMatrix aux_coef;

  HermitianMatrix evaluate(const std::vector<HermitianMatrix>& vars, double aux) const;
  /// Lowers the block into the conic solver. `group` maps layout variable
  /// index to solver group id (-1 when absent), `aux_var` is the solver
  /// index of the auxiliary scalar. `row_scale` scales the last row/column.
  sdp::PsdBlock to_conic(const std::vector<int>& group, int aux_var, double row_scale) const;
};

/// [[zeta I, 0], [0, noise - zeta Theta^2]] - Gt^H X_n Gt, Gt = [I, g_bar].
LmiBlock build_leakage_lmi(const CVec& g_bar, double theta_radius, double noise_w,
                           const LinearMatrixExpr& x_n);
/// [[eta I, 0], [0, -p_req/xi - eta Theta^2]] + Gt^H Y Gt.
LmiBlock build_harvest_lmi(const CVec& g_bar, double theta_radius, double p_req_over_xi,
                           const LinearMatrixExpr& y);

}  // namespace seebf
