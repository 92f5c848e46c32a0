#include "seebf/lmi.hpp"

#include <cmath>

#include "seebf/errors.hpp"
#include "seebf/linalg.hpp"

namespace seebf {

double theta(double t, double phi_n, double bandwidth_hz, double r_aux_nats_s) {
  if (!(t >= 0.0)) throw DomainError("theta: t must be nonnegative");
  if (!(bandwidth_hz > 0.0)) throw InvalidConfig("theta: bandwidth must be positive");
  return std::expm1(phi_n * t / bandwidth_hz + r_aux_nats_s / bandwidth_hz);
}

DecisionLayout DecisionLayout::full(int n_lue, Eigen::Index n_tx) {
  DecisionLayout l;
  l.n_lue = n_lue;
  l.lifts.assign(static_cast<std::size_t>(n_lue) + 1, CMat::Identity(n_tx, n_tx));
  l.fixed.assign(static_cast<std::size_t>(n_lue), false);
  l.fixed_value.assign(static_cast<std::size_t>(n_lue), HermitianMatrix());
  return l;
}

DecisionLayout DecisionLayout::zero_forcing(const std::vector<CMat>& xi, const CMat& phi) {
  DecisionLayout l;
  l.n_lue = static_cast<int>(xi.size());
  l.lifts = xi;
  l.lifts.push_back(phi);
  l.fixed.assign(xi.size(), false);
  l.fixed_value.assign(xi.size(), HermitianMatrix());
  return l;
}

DecisionLayout DecisionLayout::fixed_beams(const std::vector<HermitianMatrix>& beams, const CMat& phi) {
  DecisionLayout l;
  l.n_lue = static_cast<int>(beams.size());
  for (const auto& b : beams) l.lifts.push_back(CMat::Identity(b.dim(), b.dim()));
  l.lifts.push_back(phi);
  l.fixed.assign(beams.size(), true);
  l.fixed_value = beams;
  return l;
}

HermitianMatrix DecisionLayout::expand(int j, const std::vector<HermitianMatrix>& vars) const {
  const auto ju = static_cast<std::size_t>(j);
  if (j < n_lue && fixed[ju]) return fixed_value[ju];
  if (var_dim(j) == 0) return HermitianMatrix::zero(n_tx());
  return vars[ju].congruence(lifts[ju].adjoint());
}

HermitianMatrix LinearMatrixExpr::evaluate(const std::vector<HermitianMatrix>& vars) const {
  HermitianMatrix out = constant;
  for (const auto& t : terms) {
    out += t.coef * vars[static_cast<std::size_t>(t.var)].congruence(t.map);
  }
  return out;
}

LinearMatrixExpr LinearMatrixExpr::congruence(const CMat& m) const {
  LinearMatrixExpr out;
  out.constant = constant.congruence(m);
  for (const auto& t : terms) out.terms.push_back({t.var, t.coef, t.map * m});
  return out;
}

LinearMatrixExpr& LinearMatrixExpr::operator+=(const LinearMatrixExpr& b) {
  if (b.dim() != dim()) throw DimensionMismatch("LinearMatrixExpr +=");
  constant += b.constant;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return *this;
}

LinearMatrixExpr& LinearMatrixExpr::operator*=(double s) {
  constant *= s;
  for (auto& t : terms) t.coef *= s;
  return *this;
}

namespace {

// sum_j coef_j (layout covariance j) with fixed beams folded into the constant.
LinearMatrixExpr combine(const DecisionLayout& layout, const std::vector<double>& coef) {
  LinearMatrixExpr e;
  e.constant = HermitianMatrix::zero(layout.n_tx());
  for (int j = 0; j <= layout.n_lue; ++j) {
    const double c = coef[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    if (j < layout.n_lue && layout.fixed[static_cast<std::size_t>(j)]) {
      e.constant += c * layout.fixed_value[static_cast<std::size_t>(j)];
    } else if (layout.var_dim(j) > 0) {
      e.terms.push_back({j, c, layout.lifts[static_cast<std::size_t>(j)].adjoint()});
    }
  }
  return e;
}

CMat extended_channel(const CVec& g_bar) {
  const Eigen::Index n = g_bar.size();
  CMat gt = CMat::Zero(n, n + 1);
  gt.leftCols(n).setIdentity();
  gt.col(n) = g_bar;
  return gt;
}

HermitianMatrix corner_matrix(Eigen::Index n, double identity_part, double corner) {
  CMat m = CMat::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n).diagonal().setConstant(identity_part);
  m(n, n) = corner;
  return HermitianMatrix(m);
}

}  // namespace

PsrConstraint build_psr(int n, double t, const CVec& h_n, const SystemConfig& config,
                        const DecisionLayout& layout, double noise_w) {
  if (n < 0 || n >= layout.n_lue) throw DimensionMismatch("build_psr: LUE index");
  if (h_n.size() != layout.n_tx()) throw DimensionMismatch("build_psr: channel length");
  PsrConstraint c;
  c.n = n;
  c.noise_w = noise_w;
  c.h = h_n;
  c.theta = theta(t, config.psr_ratios[static_cast<std::size_t>(n)], config.bandwidth_hz,
                  config.r_aux_nats_s);
  c.vacuous = !(c.theta > 0.0);
  std::vector<double> coef(static_cast<std::size_t>(layout.n_lue) + 1, -1.0);
  coef[static_cast<std::size_t>(n)] = c.vacuous ? 0.0 : 1.0 / c.theta;
  CMat hcol = h_n;
  c.lhs = combine(layout, coef).congruence(hcol);
  return c;
}

double PsrConstraint::residual(const std::vector<HermitianMatrix>& w, const HermitianMatrix& q) const {
  if (vacuous) return 0.0;
  double lhs_v = (1.0 + theta) / theta * w[static_cast<std::size_t>(n)].quadratic(h) - q.quadratic(h);
  for (const auto& wk : w) lhs_v -= wk.quadratic(h);
  return lhs_v - noise_w;
}

LinearMatrixExpr build_xn(int n, const DecisionLayout& layout, double r_aux_normalized) {
  if (!(r_aux_normalized > 0.0)) {
    throw DomainError("build_xn: zero auxiliary rate leaves no admissible leakage");
  }
  if (n < 0 || n >= layout.n_lue) throw DimensionMismatch("build_xn: LUE index");
  std::vector<double> coef(static_cast<std::size_t>(layout.n_lue) + 1, -1.0);
  coef[static_cast<std::size_t>(n)] = 1.0 / std::expm1(r_aux_normalized);
  return combine(layout, coef);
}

LinearMatrixExpr build_y(const DecisionLayout& layout) {
  return combine(layout, std::vector<double>(static_cast<std::size_t>(layout.n_lue) + 1, 1.0));
}

HermitianMatrix LmiBlock::evaluate(const std::vector<HermitianMatrix>& vars, double aux) const {
  return expr.evaluate(vars) + aux * aux_coef;
}

sdp::PsdBlock LmiBlock::to_conic(const std::vector<int>& group, int aux_var, double row_scale) const {
  const Eigen::Index k = expr.dim();
  CMat d = CMat::Identity(k, k);
  d(k - 1, k - 1) = row_scale;
  sdp::PsdBlock b;
  b.label = label;
  b.hermitian = true;
  b.constant = embed_hermitian(expr.constant.congruence(d));
  for (const auto& t : expr.terms) {
    const int g = group[static_cast<std::size_t>(t.var)];
    if (g < 0) throw ContractViolation("LmiBlock::to_conic: variable without solver group");
    b.matrix_terms.push_back(sdp::hermitian_term(g, t.coef, t.map * d));
  }
  b.scalar_terms.push_back(sdp::hermitian_scalar_term(aux_var, aux_coef.congruence(d)));
  return b;
}

LmiBlock build_leakage_lmi(const CVec& g_bar, double theta_radius, double noise_w,
                           const LinearMatrixExpr& x_n) {
  if (g_bar.size() != x_n.dim()) throw DimensionMismatch("build_leakage_lmi");
  const Eigen::Index n = g_bar.size();
  LmiBlock b;
  b.label = "leakage";
  b.expr = x_n.congruence(extended_channel(g_bar));
  b.expr *= -1.0;
  b.expr.constant += corner_matrix(n, 0.0, noise_w);
  b.aux_coef = corner_matrix(n, 1.0, -theta_radius * theta_radius);
  return b;
}

LmiBlock build_harvest_lmi(const CVec& g_bar, double theta_radius, double p_req_over_xi,
                           const LinearMatrixExpr& y) {
  if (g_bar.size() != y.dim()) throw DimensionMismatch("build_harvest_lmi");
  const Eigen::Index n = g_bar.size();
  LmiBlock b;
  b.label = "harvest";
  b.expr = y.congruence(extended_channel(g_bar));
  b.expr.constant += corner_matrix(n, 0.0, -p_req_over_xi);
  b.aux_coef = corner_matrix(n, 1.0, -theta_radius * theta_radius);
  return b;
}

}  // namespace seebf
