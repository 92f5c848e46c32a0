#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seebf/channel.hpp"
#include "seebf/config.hpp"
#include "seebf/lmi.hpp"
#include "seebf/model.hpp"
#include "seebf/sdp.hpp"

namespace seebf {

enum class Algorithm { kSdp, kZfbf, kMrtZfbf };

const char* to_string(Algorithm a);
/// Accepts "sdp", "zfbf", "mrt-zfbf" (and "mrt_zfbf").
Algorithm parse_algorithm(const std::string& s);

struct PowerMinResult {
  sdp::Status status = sdp::Status::kNumericalFailure;
  double f_t = 0.0;  ///< sum_n Tr(W_n) + Tr(Q)
  BeamformingSolution solution;
  /// Layout-level values (W_bar_n, Q_bar for the zero-forcing family).
  std::vector<HermitianMatrix> reduced;
  std::vector<double> zeta;  ///< index m * N + n
  std::vector<double> eta;
  int iterations = 0;
  std::string message;

  bool ok() const { return status == sdp::Status::kOptimal; }
};

/// Power minimisation at sum secrecy rate t over full-size W_n, Q.
PowerMinResult solve_power_min(double t, const ChannelSet& channels, const SystemConfig& config,
                               const sdp::SolverOptions& opts = {});

struct ZfBases {
  CMat phi;             ///< N_t x (N_t - N), H^H phi = 0
  std::vector<CMat> xi; ///< N_t x (N_t - N + 1), h_k^H xi_n = 0 for k != n
};

ZfBases zfbf_bases(const ChannelSet& channels);

/// Zero-forcing beams W_n = Xi_n Wbar_n Xi_n^H with AN confined to span(Phi).
PowerMinResult solve_zfbf_power_min(double t, const ChannelSet& channels, const SystemConfig& config,
                                    const sdp::SolverOptions& opts = {});

struct MrtBeams {
  std::vector<double> power;  ///< p_n
  std::vector<CVec> beam;     ///< w_n, ||w_n||^2 = p_n
};

MrtBeams mrt_zfbf_powers(double t, const ChannelSet& channels, const SystemConfig& config);

/// AN-only optimisation around the fixed MRT-ZF beams.
PowerMinResult solve_mrt_zfbf_an(double t, const ChannelSet& channels, const SystemConfig& config,
                                 const sdp::SolverOptions& opts = {});

PowerMinResult solve_inner(Algorithm a, double t, const ChannelSet& channels,
                           const SystemConfig& config, const sdp::SolverOptions& opts = {});

/// Scales each W_n so its proportional-secrecy-rate constraint holds with
/// equality, moving the removed part into Q. Total transmit power is unchanged.
BeamformingSolution feasibility_recovery(const BeamformingSolution& sol, double t,
                                         const ChannelSet& channels, const SystemConfig& config);

/// Replaces every W_n by W_n h_n h_n^H W_n / (h_n^H W_n h_n) and moves the
/// remainder, which is invisible to LUE n, into Q.
BeamformingSolution rank_one_recovery(const BeamformingSolution& sol, const ChannelSet& channels,
                                      const SystemConfig& config);

/// Rank-one recovery on a layout-level result (reduced variables for ZF).
void rank_one_recovery(PowerMinResult& r, const DecisionLayout& layout, const ChannelSet& channels);

/// Residuals of every constraint of the power-minimisation problem at t.
struct ConstraintReport {
  std::vector<double> psr_relative;      ///< residual / noise; 0 when vacuous
  std::vector<double> leakage_min_eig;   ///< per (m, n), relative to block scale
  std::vector<double> harvest_min_eig;   ///< per i, relative to block scale
  double worst_psd = 0.0;                ///< most negative relative eigenvalue of W_n, Q

  double worst_violation() const;
};

ConstraintReport check_constraints(const BeamformingSolution& sol, const std::vector<double>& zeta,
                                   const std::vector<double>& eta, double t,
                                   const ChannelSet& channels, const SystemConfig& config);

struct TmaxResult {
  double t_max = 0.0;
  bool outage = false;  ///< f(0) > P^max or no feasible point at t = 0
  double f_at_tmax = 0.0;
  int evaluations = 0;
  PowerMinResult at_tmax;
};

struct SearchOptions {
  int grid_divisions = 10;      ///< dt = t_max / grid_divisions
  int refinements = 2;          ///< halvings of dt around the incumbent
  double converge_rel = 1e-4;   ///< ASEE relative-improvement threshold
  int converge_window = 3;      ///< consecutive points below the threshold
  double tmax_rel_tol = 1e-4;   ///< |f(t_max) - P^max| <= tol * P^max
  sdp::SolverOptions solver;
};

TmaxResult find_tmax(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                     const SearchOptions& opts = {});

struct SearchPoint {
  double t = 0.0;
  double f_t = 0.0;
  double see = 0.0;   ///< t / P^TOT(t), 0 when the point failed
  double asee = 0.0;  ///< running maximum
  bool refinement = false;
  std::string status;
};

struct SeeSolution {
  Algorithm algorithm = Algorithm::kSdp;
  bool outage = false;
  BeamformingSolution solution;
  double t_star = 0.0;
  double see_star = 0.0;
  double total_power_w = 0.0;
  double t_max = 0.0;
  std::vector<SearchPoint> trace;
  int grid_evaluations = 0;  ///< coarse-grid points visited before stopping
  int failed_points = 0;
  std::vector<std::string> warnings;
  MetricsReport metrics;
};

/// Two-stage search: t_max, then a grid over [0, t_max] with running-max SEE.
SeeSolution tsbaj(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                  const SearchOptions& opts = {});
/// Same, reusing a previously computed t_max.
SeeSolution tsbaj(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                  const TmaxResult& tmax, const SearchOptions& opts = {});

inline SeeSolution sdp_tsbaj(const ChannelSet& c, const SystemConfig& cfg, const SearchOptions& o = {}) {
  return tsbaj(Algorithm::kSdp, c, cfg, o);
}
inline SeeSolution zfbf_tsbaj(const ChannelSet& c, const SystemConfig& cfg, const SearchOptions& o = {}) {
  return tsbaj(Algorithm::kZfbf, c, cfg, o);
}
inline SeeSolution mrt_zfbf_tsbaj(const ChannelSet& c, const SystemConfig& cfg,
                                  const SearchOptions& o = {}) {
  return tsbaj(Algorithm::kMrtZfbf, c, cfg, o);
}

/// One search point: inner solve at t, both recoveries, SEE. `see` is 0
/// when the solve fails or f(t) exceeds the budget.
SearchPoint evaluate_at(Algorithm a, double t, const ChannelSet& channels, const SystemConfig& config,
                        const SearchOptions& opts = {});

/// Sum-secrecy-rate maximisation baseline: the solution at t = t_max.
SeeSolution srm_solve(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                      const SearchOptions& opts = {});
SeeSolution srm_solve(Algorithm a, const ChannelSet& channels, const SystemConfig& config,
                      const TmaxResult& tmax);

struct RobustCheck {
  double worst_leakage_slack = 0.0;  ///< min over samples of (limit - sinr) / limit
  double worst_harvest_slack = 0.0;  ///< min over samples of (P - P^REQ) / P^REQ
  double oracle_leakage_slack = 0.0;
  double oracle_harvest_slack = 0.0;
  bool passed(double rel_tol) const;
};

/// Leakage SINR and harvested power over sampled ball points and at the
/// exact trust-region extremum.
RobustCheck check_robust(const BeamformingSolution& sol, const ChannelSet& channels,
                         const SystemConfig& config, int samples, std::uint64_t seed);

}  // namespace seebf
