#include "seebf/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seebf/errors.hpp"
#include "seebf/linalg.hpp"

namespace seebf {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kSdp: return "sdp";
    case Algorithm::kZfbf: return "zfbf";
    case Algorithm::kMrtZfbf: return "mrt-zfbf";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "sdp") return Algorithm::kSdp;
  if (s == "zfbf") return Algorithm::kZfbf;
  if (s == "mrt-zfbf" || s == "mrt_zfbf") return Algorithm::kMrtZfbf;
  throw InvalidConfig("unknown algorithm '" + s + "'");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class PsrMode { kInequality, kEquality, kNone };

int total_lue(const ChannelSet& c) { return static_cast<int>(c.h.size()); }

void check_instance(const ChannelSet& channels, const SystemConfig& config) {
  config.validate();
  channels.validate();
  if (total_lue(channels) != config.n_lue) throw DimensionMismatch("channel set LUE count");
  if (channels.n_tx() != config.n_tx) throw DimensionMismatch("channel set antenna count");
}

// Builds and solves the power minimisation over `layout`. All links are
// rescaled so every noise level (and the harvest threshold) becomes one.
PowerMinResult solve_on_layout(const DecisionLayout& layout, double t, const ChannelSet& channels,
                               const SystemConfig& config, PsrMode psr_mode,
                               const sdp::SolverOptions& opts) {
  if (!(t >= 0.0)) throw DomainError("power minimisation: t must be nonnegative");
  const int n_lue = layout.n_lue;
  sdp::ConicProblem p;
  std::vector<int> group(static_cast<std::size_t>(n_lue) + 1, -1);
  for (int j = 0; j <= n_lue; ++j) {
    if (!layout.is_variable(j)) continue;
    const int g = p.add_group(sdp::GroupKind::kHermitian, layout.var_dim(j));
    group[static_cast<std::size_t>(j)] = g;
    const CMat& lift = layout.lifts[static_cast<std::size_t>(j)];
    p.add_objective(p.groups[static_cast<std::size_t>(g)],
                    p.groups[static_cast<std::size_t>(g)].inner_coefficients(
                        HermitianMatrix(lift.adjoint() * lift)));
    p.add_psd_group(g, j < n_lue ? "W" + std::to_string(j) : "Q");
  }
  for (int n = 0; n < n_lue; ++n) {
    if (layout.fixed[static_cast<std::size_t>(n)]) {
      p.objective_offset += layout.fixed_value[static_cast<std::size_t>(n)].trace();
    }
  }

  auto affine_row = [&](const LinearMatrixExpr& e) {
    RVec a = RVec::Zero(p.num_vars);
    for (const auto& term : e.terms) {
      const auto& g = p.groups[static_cast<std::size_t>(group[static_cast<std::size_t>(term.var)])];
      a.segment(g.offset(), g.param_count()) +=
          term.coef * g.inner_coefficients(HermitianMatrix(term.map * term.map.adjoint()));
    }
    return a;
  };

  if (psr_mode != PsrMode::kNone) {
    const double su = std::sqrt(config.noise_lue_w);
    for (int n = 0; n < n_lue; ++n) {
      const CVec hs = channels.h[static_cast<std::size_t>(n)] / su;
      const PsrConstraint c = build_psr(n, t, hs, config, layout, 1.0);
      if (c.vacuous) continue;
      const double b = c.lhs.constant(0, 0).real() - 1.0;
      if (psr_mode == PsrMode::kInequality) {
        p.add_linear_row(affine_row(c.lhs), b);
      } else {
        p.add_equality(affine_row(c.lhs), -b);
      }
    }
  }

  const double r_aux = config.r_aux_normalized();
  std::vector<LinearMatrixExpr> xn;
  if (!channels.g_e_bar.empty()) {
    for (int n = 0; n < n_lue; ++n) xn.push_back(build_xn(n, layout, r_aux));
  }
  const LinearMatrixExpr y = build_y(layout);

  std::vector<int> zeta_var, eta_var;
  auto add_aux = [&]() {
    const int v = p.add_scalar();
    RVec a = RVec::Zero(p.num_vars);
    a(v) = 1.0;
    p.add_linear_row(a, 0.0);
    return v;
  };
  const double se = std::sqrt(config.noise_eve_w);
  for (std::size_t m = 0; m < channels.g_e_bar.size(); ++m) {
    const CVec gs = channels.g_e_bar[m] / se;
    const double th = channels.theta_e[m] / se;
    for (int n = 0; n < n_lue; ++n) {
      const int v = add_aux();
      zeta_var.push_back(v);
      auto blk = build_leakage_lmi(gs, th, 1.0, xn[static_cast<std::size_t>(n)]);
      p.add_block(blk.to_conic(group, v, 1.0 / std::max(1.0, gs.norm())));
    }
  }
  const double req = config.p_req_w / config.eh_eff;
  const double sh = req > 0.0 ? std::sqrt(req) : 1.0;
  for (std::size_t i = 0; i < channels.g_h_bar.size(); ++i) {
    const CVec gs = channels.g_h_bar[i] / sh;
    const int v = add_aux();
    eta_var.push_back(v);
    auto blk = build_harvest_lmi(gs, channels.theta_h[i] / sh, req / (sh * sh), y);
    p.add_block(blk.to_conic(group, v, 1.0 / std::max(1.0, gs.norm())));
  }

  PowerMinResult r;
  if (p.blocks.empty() && p.lin_a.rows() == 0) {
    // Only fixed beams and nothing to constrain.
    r.status = sdp::Status::kOptimal;
    for (int j = 0; j <= n_lue; ++j) r.reduced.push_back(HermitianMatrix::zero(layout.var_dim(j)));
  } else {
    const sdp::ConicSolution s = sdp::solve(p, opts);
    r.status = s.status;
    r.iterations = s.iterations;
    r.message = s.message;
    for (int j = 0; j <= n_lue; ++j) {
      const int g = group[static_cast<std::size_t>(j)];
      r.reduced.push_back(g >= 0 ? p.groups[static_cast<std::size_t>(g)].value(s.y)
                                 : HermitianMatrix::zero(layout.var_dim(j)));
    }
    for (int v : zeta_var) r.zeta.push_back(s.y(v));
    for (int v : eta_var) r.eta.push_back(s.y(v));
  }
  for (int n = 0; n < n_lue; ++n) r.solution.w.push_back(layout.expand(n, r.reduced));
  r.solution.q = layout.expand(n_lue, r.reduced);
  r.f_t = r.ok() ? r.solution.transmit_power() : kInf;
  return r;
}

DecisionLayout mrt_layout(double t, const ChannelSet& channels, const SystemConfig& config,
                          const ZfBases& bases) {
  const MrtBeams beams = mrt_zfbf_powers(t, channels, config);
  std::vector<HermitianMatrix> w;
  for (const auto& b : beams.beam) w.push_back(HermitianMatrix::outer(b));
  return DecisionLayout::fixed_beams(w, bases.phi);
}

DecisionLayout layout_for(Algorithm a, double t, const ChannelSet& channels, const SystemConfig& config) {
  switch (a) {
    case Algorithm::kSdp: return DecisionLayout::full(config.n_lue, config.n_tx);
    case Algorithm::kZfbf: {
      const ZfBases z = zfbf_bases(channels);
      return DecisionLayout::zero_forcing(z.xi, z.phi);
    }
    case Algorithm::kMrtZfbf: return mrt_layout(t, channels, config, zfbf_bases(channels));
  }
  throw InvalidConfig("unknown algorithm");
}

PsrMode psr_mode_for(Algorithm a) {
  switch (a) {
    case Algorithm::kSdp: return PsrMode::kInequality;
    case Algorithm::kZfbf: return PsrMode::kEquality;
    case Algorithm::kMrtZfbf: return PsrMode::kNone;
  }
  return PsrMode::kInequality;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace

PowerMinResult solve_power_min(double t, const ChannelSet& channels, const SystemConfig& config,
                               const sdp::SolverOptions& opts) {
  return solve_inner(Algorithm::kSdp, t, channels, config, opts);
}

ZfBases zfbf_bases(const ChannelSet& channels) {
  const int n = total_lue(channels);
  const Eigen::Index nt = channels.n_tx();
  if (nt <= n) throw InvalidConfig("zero forcing needs more antennas than LUEs");
  CMat h(nt, n);
  for (int k = 0; k < n; ++k) h.col(k) = channels.h[static_cast<std::size_t>(k)];
  ZfBases z;
  z.phi = null_space_basis(h);
  for (int k = 0; k < n; ++k) {
    CMat others(nt, n - 1);
    for (int j = 0, c = 0; j < n; ++j) {
      if (j != k) others.col(c++) = h.col(j);
    }
    z.xi.push_back(null_space_basis(others));
  }
  return z;
}

PowerMinResult solve_zfbf_power_min(double t, const ChannelSet& channels, const SystemConfig& config,
                                    const sdp::SolverOptions& opts) {
  return solve_inner(Algorithm::kZfbf, t, channels, config, opts);
}

MrtBeams mrt_zfbf_powers(double t, const ChannelSet& channels, const SystemConfig& config) {
  const ZfBases z = zfbf_bases(channels);
  MrtBeams out;
  for (int n = 0; n < total_lue(channels); ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const CVec a = z.xi[nu].adjoint() * channels.h[nu];
    const double a2 = a.squaredNorm();
    if (!(a2 > 0.0)) throw DomainError("mrt_zfbf_powers: LUE channel inside the others' span");
    const double th = theta(t, config.psr_ratios[nu], config.bandwidth_hz, config.r_aux_nats_s);
    const double pn = th * config.noise_lue_w / a2;
    out.power.push_back(pn);
    out.beam.push_back(std::sqrt(pn) * (z.xi[nu] * a) / std::sqrt(a2));
  }
  return out;
}

PowerMinResult solve_mrt_zfbf_an(double t, const ChannelSet& channels, const SystemConfig& config,
                                 const sdp::SolverOptions& opts) {
  return solve_inner(Algorithm::kMrtZfbf, t, channels, config, opts);
}

PowerMinResult solve_inner(Algorithm a, double t, const ChannelSet& channels,
                           const SystemConfig& config, const sdp::SolverOptions& opts) {
  check_instance(channels, config);
  return solve_on_layout(layout_for(a, t, channels, config), t, channels, config, psr_mode_for(a),
                         opts);
}

BeamformingSolution feasibility_recovery(const BeamformingSolution& sol, double t,
                                         const ChannelSet& channels, const SystemConfig& config) {
  if (sol.n_lue() != total_lue(channels)) throw DimensionMismatch("feasibility_recovery");
  const HermitianMatrix y = sol.total_covariance();
  BeamformingSolution out = sol;
  for (int n = 0; n < sol.n_lue(); ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const CVec& h = channels.h[nu];
    const double th = theta(t, config.psr_ratios[nu], config.bandwidth_hz, config.r_aux_nats_s);
    const double signal = sol.w[nu].quadratic(h);
    double yn = 0.0;
    if (th > 0.0) {
      if (!(signal > 0.0)) throw ContractViolation("feasibility_recovery: no signal power at LUE");
      yn = th / (1.0 + th) * (y.quadratic(h) + config.noise_lue_w) / signal;
      if (!(yn > 0.0) || yn > 1.0 + 1e-6) {
        throw ContractViolation("feasibility_recovery: scaling factor outside (0, 1]");
      }
    }
    out.w[nu] = yn * sol.w[nu];
    out.q += (1.0 - yn) * sol.w[nu];
  }
  return out;
}

BeamformingSolution rank_one_recovery(const BeamformingSolution& sol, const ChannelSet& channels,
                                      const SystemConfig& config) {
  if (sol.n_lue() != total_lue(channels) || sol.n_tx() != config.n_tx) {
    throw DimensionMismatch("rank_one_recovery");
  }
  if (!sol.is_psd(1e-6)) throw ContractViolation("rank_one_recovery: input is not PSD");
  BeamformingSolution out = sol;
  for (int n = 0; n < sol.n_lue(); ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const CVec& h = channels.h[nu];
    const CVec v = sol.w[nu].mat() * h;
    const double s = h.dot(v).real();
    const HermitianMatrix w1 = s > 0.0 ? HermitianMatrix::outer(v) * (1.0 / s)
                                       : HermitianMatrix::zero(sol.n_tx());
    out.q += sol.w[nu] - w1;
    out.w[nu] = w1;
  }
  // The move must be invisible to every LUE and to the total covariance.
  const double scale = std::max(1e-300, sol.transmit_power());
  if (rel_diff(out.transmit_power(), sol.transmit_power()) > 1e-9 ||
      (out.total_covariance() - sol.total_covariance()).mat().norm() > 1e-9 * scale) {
    throw ContractViolation("rank_one_recovery: total covariance changed");
  }
  for (int n = 0; n < sol.n_lue(); ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const CVec& h = channels.h[nu];
    const double ref = std::max(sol.total_covariance().quadratic(h), 1e-300);
    if (std::abs(out.w[nu].quadratic(h) - sol.w[nu].quadratic(h)) > 1e-7 * ref) {
      throw ContractViolation("rank_one_recovery: LUE signal power changed");
    }
  }
  return out;
}

void rank_one_recovery(PowerMinResult& r, const DecisionLayout& layout, const ChannelSet& channels) {
  const int n_lue = layout.n_lue;
  const auto an = static_cast<std::size_t>(n_lue);
  for (int n = 0; n < n_lue; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    if (!layout.is_variable(n)) continue;
    const CMat& lift = layout.lifts[nu];
    const CVec hb = lift.adjoint() * channels.h[nu];
    const HermitianMatrix& v = r.reduced[nu];
    const CVec vh = v.mat() * hb;
    const double s = hb.dot(vh).real();
    const HermitianMatrix v1 = s > 0.0 ? HermitianMatrix::outer(vh) * (1.0 / s)
                                       : HermitianMatrix::zero(v.dim());
    const HermitianMatrix moved = (v - v1).congruence(lift.adjoint());
    r.reduced[nu] = v1;
    r.solution.w[nu] = v1.congruence(lift.adjoint());
    r.solution.q += moved;
    if (layout.var_dim(n_lue) > 0) r.reduced[an] += moved.congruence(layout.lifts[an]);
  }
}

double ConstraintReport::worst_violation() const {
  double w = std::max(0.0, -worst_psd);
  for (double v : psr_relative) w = std::max(w, -v);
  for (double v : leakage_min_eig) w = std::max(w, -v);
  for (double v : harvest_min_eig) w = std::max(w, -v);
  return w;
}

ConstraintReport check_constraints(const BeamformingSolution& sol, const std::vector<double>& zeta,
                                   const std::vector<double>& eta, double t,
                                   const ChannelSet& channels, const SystemConfig& config) {
  const int n_lue = sol.n_lue();
  const DecisionLayout full = DecisionLayout::full(n_lue, sol.n_tx());
  std::vector<HermitianMatrix> vars = sol.w;
  vars.push_back(sol.q);
  ConstraintReport rep;
  for (int n = 0; n < n_lue; ++n) {
    const PsrConstraint c =
        build_psr(n, t, channels.h[static_cast<std::size_t>(n)], config, full, config.noise_lue_w);
    rep.psr_relative.push_back(c.vacuous ? 0.0 : c.residual(sol.w, sol.q) / config.noise_lue_w);
  }
  auto rel_min_eig = [](const HermitianMatrix& m) {
    const RVec ev = m.eigenvalues();
    return ev(0) / std::max(1.0, std::abs(ev(ev.size() - 1)));
  };
  const double se = std::sqrt(config.noise_eve_w);
  for (std::size_t m = 0; m < channels.g_e_bar.size(); ++m) {
    for (int n = 0; n < n_lue; ++n) {
      const LinearMatrixExpr xn = build_xn(n, full, config.r_aux_normalized());
      const auto blk = build_leakage_lmi(channels.g_e_bar[m] / se, channels.theta_e[m] / se, 1.0,
                                         xn);
      const double z = zeta.at(m * static_cast<std::size_t>(n_lue) + static_cast<std::size_t>(n));
      rep.leakage_min_eig.push_back(rel_min_eig(blk.evaluate(vars, z)));
    }
  }
  const double req = config.p_req_w / config.eh_eff;
  const double sh = req > 0.0 ? std::sqrt(req) : 1.0;
  for (std::size_t i = 0; i < channels.g_h_bar.size(); ++i) {
    const auto blk = build_harvest_lmi(channels.g_h_bar[i] / sh, channels.theta_h[i] / sh,
                                       req / (sh * sh), build_y(full));
    rep.harvest_min_eig.push_back(rel_min_eig(blk.evaluate(vars, eta.at(i))));
  }
  rep.worst_psd = 0.0;
  for (const auto& m : vars) rep.worst_psd = std::min(rep.worst_psd, rel_min_eig(m));
  return rep;
}

namespace {

// Power-limited upper bound on t: each LUE needs Tr(W_n) >= theta_n sigma^2 / ||h_n||^2.
double t_upper_bound(const ChannelSet& channels, const SystemConfig& config) {
  double ub = kInf;
  for (int n = 0; n < config.n_lue; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const double phi = config.psr_ratios[nu];
    if (!(phi > 0.0)) continue;
    const double g = channels.h[nu].squaredNorm() / config.noise_lue_w;
    ub = std::min(ub, config.bandwidth_hz / phi *
                          (std::log1p(config.p_max_w * g) - config.r_aux_normalized()));
  }
  return std::max(ub, 0.0);
}

}  // namespace

TmaxResult find_tmax(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                     const SearchOptions& opts) {
  check_instance(channels, config);
  TmaxResult res;
  const double pmax = config.p_max_w;
  auto eval = [&](double t) {
    ++res.evaluations;
    return solve_inner(a, t, channels, config, opts.solver);
  };
  PowerMinResult lo_r = eval(0.0);
  if (!lo_r.ok() || lo_r.f_t > pmax) {
    res.outage = true;
    res.at_tmax = std::move(lo_r);
    res.f_at_tmax = res.at_tmax.f_t;
    return res;
  }
  double lo = 0.0, flo = lo_r.f_t;
  double hi = t_upper_bound(channels, config);
  auto close = [&](double f) { return std::abs(f - pmax) <= opts.tmax_rel_tol * pmax; };
  if (close(flo) || hi <= 0.0) {
    res.f_at_tmax = flo;
    res.at_tmax = std::move(lo_r);
    return res;
  }
  PowerMinResult hi_r = eval(hi);
  double fhi = hi_r.ok() ? hi_r.f_t : kInf;
  if (fhi <= pmax || close(fhi)) {
    res.t_max = hi;
    res.f_at_tmax = fhi;
    res.at_tmax = std::move(hi_r);
    return res;
  }
  // Illinois false position on u(t) = ln f(t) - ln P^max; bisection while f(hi) is unknown.
  auto u = [&](double f) { return std::log(std::max(f, 1e-300)) - std::log(pmax); };
  double ulo = u(flo), uhi = std::isfinite(fhi) ? u(fhi) : kInf;
  int side = 0;
  for (int it = 0; it < 100 && hi - lo > 1e-12 * hi; ++it) {
    double tc = std::isfinite(uhi) ? (lo * uhi - hi * ulo) / (uhi - ulo) : 0.5 * (lo + hi);
    const double w = hi - lo;
    tc = std::clamp(tc, lo + 1e-3 * w, hi - 1e-3 * w);
    PowerMinResult rc = eval(tc);
    const double fc = rc.ok() ? rc.f_t : kInf;
    if (close(fc)) {
      res.t_max = tc;
      res.f_at_tmax = fc;
      res.at_tmax = std::move(rc);
      return res;
    }
    if (fc < pmax) {
      lo = tc;
      ulo = u(fc);
      lo_r = std::move(rc);
      if (side == -1 && std::isfinite(uhi)) uhi *= 0.5;
      side = -1;
    } else {
      hi = tc;
      uhi = std::isfinite(fc) ? u(fc) : kInf;
      if (side == 1) ulo *= 0.5;
      side = 1;
    }
  }
  res.t_max = lo;
  res.f_at_tmax = lo_r.f_t;
  res.at_tmax = std::move(lo_r);
  return res;
}

namespace {

struct Evaluated {
  bool ok = false;
  bool over_budget = false;
  BeamformingSolution sol;
  double f_t = kInf;
  double see = 0.0;
  std::string status;
};

Evaluated recover_and_score(Algorithm a, PowerMinResult r, double t, const ChannelSet& channels,
                            const SystemConfig& config, const SearchOptions& opts) {
  Evaluated e;
  e.status = sdp::to_string(r.status);
  if (!r.ok()) return e;
  e.f_t = r.f_t;
  if (r.f_t > config.p_max_w * (1.0 + opts.tmax_rel_tol)) {
    e.over_budget = true;
    e.status = "over-budget";
    return e;
  }
  const DecisionLayout layout = layout_for(a, t, channels, config);
  rank_one_recovery(r, layout, channels);
  e.sol = feasibility_recovery(r.solution, t, channels, config);
  e.ok = true;
  const double ptot = total_power(e.sol, config.amp_eff, circuit_power(config.p_sp_w, config.n_tx));
  e.see = t / ptot;
  return e;
}

SeeSolution outage_solution(Algorithm a, const SystemConfig& config, const TmaxResult& tmax) {
  SeeSolution s;
  s.algorithm = a;
  s.outage = true;
  s.solution = BeamformingSolution::zero(config.n_lue, config.n_tx);
  s.t_max = tmax.t_max;
  s.total_power_w = circuit_power(config.p_sp_w, config.n_tx);
  return s;
}

}  // namespace

SeeSolution tsbaj(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                  const SearchOptions& opts) {
  return tsbaj(a, channels, config, find_tmax(a, channels, config, opts), opts);
}

SeeSolution tsbaj(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                  const TmaxResult& tmax, const SearchOptions& opts) {
  check_instance(channels, config);
  if (tmax.outage) return outage_solution(a, config, tmax);
  if (opts.grid_divisions < 1) throw InvalidConfig("grid_divisions must be positive");
  SeeSolution s;
  s.algorithm = a;
  s.t_max = tmax.t_max;
  double best_see = -1.0;
  Evaluated best;
  auto visit = [&](double t, bool refinement) {
    PowerMinResult r = (t == tmax.t_max) ? tmax.at_tmax : solve_inner(a, t, channels, config, opts.solver);
    Evaluated e = recover_and_score(a, std::move(r), t, channels, config, opts);
    SearchPoint pt;
    pt.t = t;
    pt.f_t = e.f_t;
    pt.see = e.ok ? e.see : 0.0;
    pt.refinement = refinement;
    pt.status = e.status;
    if (!e.ok && !e.over_budget) {
      ++s.failed_points;
      s.warnings.push_back("t=" + std::to_string(t) + ": inner solve " + e.status);
    }
    if (e.ok && e.see > best_see) {
      best_see = e.see;
      best = e;
      s.t_star = t;
    }
    pt.asee = std::max(best_see, 0.0);
    s.trace.push_back(pt);
    return e;
  };

  const double dt = tmax.t_max / opts.grid_divisions;
  int flat = 0;
  for (int k = 0; k <= opts.grid_divisions; ++k) {
    const double t = k == opts.grid_divisions ? tmax.t_max : k * dt;
    const double before = std::max(best_see, 0.0);
    const Evaluated e = visit(t, false);
    ++s.grid_evaluations;
    if (e.over_budget) break;
    const double after = std::max(best_see, 0.0);
    if (before > 0.0 && after - before < opts.converge_rel * before) {
      if (++flat >= opts.converge_window) break;
    } else {
      flat = 0;
    }
    if (dt <= 0.0) break;
  }
  double step = dt;
  for (int r = 0; r < opts.refinements && dt > 0.0; ++r) {
    step *= 0.5;
    const double centre = s.t_star;
    for (double t : {centre - step, centre + step}) {
      if (t > 0.0 && t < tmax.t_max) visit(t, true);
    }
  }
  if (best_see < 0.0) {
    s.warnings.push_back("no grid point produced a feasible solution");
    s.solution = BeamformingSolution::zero(config.n_lue, config.n_tx);
    s.total_power_w = circuit_power(config.p_sp_w, config.n_tx);
    return s;
  }
  s.solution = best.sol;
  s.see_star = best_see;
  s.total_power_w = total_power(s.solution, config.amp_eff, circuit_power(config.p_sp_w, config.n_tx));
  s.metrics = evaluate_metrics(channels, s.solution, config);
  return s;
}

SearchPoint evaluate_at(Algorithm a, double t, const ChannelSet& channels, const SystemConfig& config,
                        const SearchOptions& opts) {
  check_instance(channels, config);
  Evaluated e = recover_and_score(a, solve_inner(a, t, channels, config, opts.solver), t, channels, config, opts);
  SearchPoint pt;
  pt.t = t;
  pt.f_t = e.f_t;
  pt.see = e.ok ? e.see : 0.0;
  pt.asee = pt.see;
  pt.status = e.status;
  return pt;
}

SeeSolution srm_solve(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                      const SearchOptions& opts) {
  return srm_solve(a, channels, config, find_tmax(a, channels, config, opts));
}

SeeSolution srm_solve(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                      const TmaxResult& tmax) {
  check_instance(channels, config);
  if (tmax.outage) return outage_solution(a, config, tmax);
  SearchOptions opts;
  Evaluated e = recover_and_score(a, tmax.at_tmax, tmax.t_max, channels, config, opts);
  SeeSolution s;
  s.algorithm = a;
  s.t_max = tmax.t_max;
  s.t_star = tmax.t_max;
  SearchPoint pt{tmax.t_max, e.f_t, e.ok ? e.see : 0.0, e.ok ? e.see : 0.0, false, e.status};
  s.trace.push_back(pt);
  s.grid_evaluations = 1;
  if (!e.ok) {
    s.failed_points = 1;
    s.warnings.push_back("solution at t_max unavailable: " + e.status);
    s.solution = BeamformingSolution::zero(config.n_lue, config.n_tx);
    s.total_power_w = circuit_power(config.p_sp_w, config.n_tx);
    return s;
  }
  s.solution = e.sol;
  s.see_star = e.see;
  s.total_power_w = total_power(s.solution, config.amp_eff, circuit_power(config.p_sp_w, config.n_tx));
  s.metrics = evaluate_metrics(channels, s.solution, config);
  return s;
}

bool RobustCheck::passed(double rel_tol) const {
  return worst_leakage_slack >= -rel_tol && worst_harvest_slack >= -rel_tol &&
         oracle_leakage_slack >= -rel_tol && oracle_harvest_slack >= -rel_tol;
}

RobustCheck check_robust(const BeamformingSolution& sol, const ChannelSet& channels,
                         const SystemConfig& config, int samples, std::uint64_t seed) {
  RobustCheck rc;
  rc.worst_leakage_slack = rc.worst_harvest_slack = kInf;
  rc.oracle_leakage_slack = rc.oracle_harvest_slack = kInf;
  const int n_lue = sol.n_lue();
  const double limit = std::expm1(config.r_aux_normalized());
  const HermitianMatrix y = sol.total_covariance();
  const double coef = 1.0 / -std::expm1(-config.r_aux_normalized());
  std::uint64_t stream = 0;
  for (std::size_t m = 0; m < channels.g_e_bar.size(); ++m) {
    const UncertaintyBall ball{channels.g_e_bar[m], channels.theta_e[m]};
    for (const CVec& g : sample_ball(ball, samples, trial_seed(seed, stream++))) {
      const double qy = y.quadratic(g);
      for (int n = 0; n < n_lue; ++n) {
        const double sig = sol.w[static_cast<std::size_t>(n)].quadratic(g);
        const double sinr = sig / (qy - sig + config.noise_eve_w);
        rc.worst_leakage_slack = std::min(rc.worst_leakage_slack, (limit - sinr) / limit);
      }
    }
    for (int n = 0; n < n_lue; ++n) {
      // sinr <= limit  <=>  g^H (W_n / (1 - e^{-R}) - Y) g <= noise
      const HermitianMatrix xn = coef * sol.w[static_cast<std::size_t>(n)] - y;
      const WorstCase wc = worst_case_quadratic(ball, xn, Sense::kMax);
      rc.oracle_leakage_slack =
          std::min(rc.oracle_leakage_slack, (config.noise_eve_w - wc.value) / config.noise_eve_w);
    }
  }
  const double req = config.p_req_w / config.eh_eff;
  for (std::size_t i = 0; i < channels.g_h_bar.size(); ++i) {
    const UncertaintyBall ball{channels.g_h_bar[i], channels.theta_h[i]};
    auto slack = [&](double q) { return req > 0.0 ? (q - req) / req : q; };
    for (const CVec& g : sample_ball(ball, samples, trial_seed(seed, stream++))) {
      rc.worst_harvest_slack = std::min(rc.worst_harvest_slack, slack(y.quadratic(g)));
    }
    rc.oracle_harvest_slack =
        std::min(rc.oracle_harvest_slack, slack(worst_case_quadratic(ball, y, Sense::kMin).value));
  }
  for (double* v : {&rc.worst_leakage_slack, &rc.worst_harvest_slack, &rc.oracle_leakage_slack,
                    &rc.oracle_harvest_slack}) {
    if (!std::isfinite(*v)) *v = 0.0;
  }
  return rc;
}

}  // namespace seebf
