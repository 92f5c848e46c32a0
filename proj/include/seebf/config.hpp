#pragma once

#include <vector>

namespace seebf {

/// P_W = 10^((P_dBm - 30) / 10)
double dbm_to_w(double dbm);
double w_to_dbm(double w);

/// How the uncertainty radius of an estimated channel is derived from its
/// pathloss Omega (linear attenuation, channel variance Omega^{-1}).
enum class RadiusPolicy {
  kFractionOfVariance,     ///< Theta^2 = fraction * Omega^{-1}
  kFractionOfAttenuation,  ///< Theta^2 = fraction * Omega
};

/// Scalar parameters of one MISOME-SWIPT downlink scenario. All quantities
/// are in SI units (W, Hz, m) and rates are in nats/s.
struct SystemConfig {
  int n_tx = 7;
  int n_lue = 3;
  int n_eve = 2;
  int n_ehn = 2;

  double bandwidth_hz = 200e3;
  double carrier_hz = 900e6;

  double noise_lue_w = 1e-6;
  double noise_eve_w = 1e-6;
  double noise_ehn_w = 1e-6;

  double p_max_w = 19.952623149688797;  // 43 dBm
  double p_sp_w = 1.0;
  double amp_eff = 0.8;

  double eh_eff = 0.8;
  double p_req_w = 3.1622776601683794e-4;  // -5 dBm

  double r_aux_nats_s = 100e3;
  std::vector<double> psr_ratios{0.4, 0.3, 0.3};

  std::vector<double> lue_distances_m{16.0, 19.0, 22.0};
  std::vector<double> eve_distances_m{8.0, 8.0};
  std::vector<double> ehn_distances_m{6.0, 6.0};

  double uncertainty_fraction = 0.05;
  RadiusPolicy radius_policy = RadiusPolicy::kFractionOfVariance;

  /// Auxiliary-rate demand normalised by bandwidth (nats per channel use).
  double r_aux_normalized() const { return r_aux_nats_s / bandwidth_hz; }

  /// Throws InvalidConfig describing the first violated invariant.
  void validate() const;
};

/// The default evaluation scenario (N_t=7, N=3, M=2, I=2, 200 kHz, 900 MHz).
SystemConfig default_config();

}  // namespace seebf
