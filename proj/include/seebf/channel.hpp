#pragma once

#include <cstdint>
#include <vector>

#include "seebf/config.hpp"
#include "seebf/hermitian.hpp"

namespace seebf {

/// One channel realisation. LUE channels are known exactly; EVE and EHN
/// channels are estimates g_bar with a Euclidean uncertainty radius each.
struct ChannelSet {
  std::vector<CVec> h;
  std::vector<CVec> g_e_bar;
  std::vector<CVec> g_h_bar;
  std::vector<double> theta_e;
  std::vector<double> theta_h;

  Eigen::Index n_tx() const { return h.empty() ? 0 : h.front().size(); }
  /// Throws DimensionMismatch / InvalidConfig when the invariants fail.
  void validate() const;
};

struct UncertaintyBall {
  CVec center;
  double radius = 0.0;
};

enum class Sense { kMax, kMin };

struct WorstCase {
  double value = 0.0;
  CVec delta;  ///< perturbation attaining the extremum, ||delta|| <= radius
  double multiplier = 0.0;
  double kkt_residual = 0.0;
};

/// 17.3 + 24.9 log10(f_c / 1 GHz) + 38.3 log10(d / 1 m), in dB.
double pathloss_db(double carrier_hz, double distance_m);

/// Linear channel variance Omega^{-1} for a link.
double channel_variance(double carrier_hz, double distance_m);

/// Squared uncertainty radius for a link under the configured policy.
double uncertainty_radius_sq(const SystemConfig& config, double distance_m);

/// Independent RNG seed for trial `trial` of a run with master seed `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Rayleigh draw of all links; identical seeds give bit-identical channels.
ChannelSet draw_channels(const SystemConfig& config, std::uint64_t seed);

/// Extremum of (c + d)^H X (c + d) over ||d|| <= radius, solved as a
/// trust-region subproblem in the eigenbasis of X.
WorstCase worst_case_quadratic(const UncertaintyBall& ball, const HermitianMatrix& x,
                               Sense sense);

/// Uniform samples c + d over the ball.
std::vector<CVec> sample_ball(const UncertaintyBall& ball, int count, std::uint64_t seed);

}  // namespace seebf
