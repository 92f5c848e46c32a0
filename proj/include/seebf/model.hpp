#pragma once

#include <vector>

#include "seebf/channel.hpp"
#include "seebf/config.hpp"
#include "seebf/hermitian.hpp"

namespace seebf {

/// Transmit covariances: one beamforming matrix W_n per LUE plus the
/// artificial-noise covariance Q.
struct BeamformingSolution {
  std::vector<HermitianMatrix> w;
  HermitianMatrix q;

  static BeamformingSolution zero(int n_lue, Eigen::Index n_tx);

  Eigen::Index n_tx() const { return q.dim(); }
  int n_lue() const { return static_cast<int>(w.size()); }
  /// sum_n Tr(W_n) + Tr(Q)
  double transmit_power() const;
  /// sum_n W_n + Q
  HermitianMatrix total_covariance() const;
  bool is_psd(double rel_tol = kPsdTolerance) const;
};

struct MetricsReport {
  std::vector<double> lue_rate;                  ///< R_{u,n}, nats/s
  std::vector<std::vector<double>> leakage_rate;  ///< [m][n], at the estimated channel
  std::vector<double> secrecy_rate;              ///< R^SEC_{u,n}, nats/s
  std::vector<double> harvested_w;               ///< P_{h,i} at the estimated channel
  double transmit_w = 0.0;
  double total_power_w = 0.0;
  double see = 0.0;  ///< nats/joule
};

/// Tr(H_n W_n) / (sum_{k!=n} Tr(H_n W_k) + Tr(H_n Q) + noise)
double sinr_lue(const CVec& h_n, const BeamformingSolution& sol, int n, double noise_w);
/// BW ln(1 + sinr)
double rate_lue(double sinr, double bandwidth_hz);
/// Rate at which the message of LUE n leaks to an eavesdropper with channel g_e.
double leakage_rate(const CVec& g_e, const BeamformingSolution& sol, int n, double noise_w,
                    double bandwidth_hz);
double harvested_power(const CVec& g_h, const BeamformingSolution& sol, double eh_eff);
/// (rate - r_aux)^+
double secrecy_rate(double rate_lue, double r_aux);
/// P^SP (0.87 + 0.1 N_t + 0.03 N_t^2)
double circuit_power(double p_sp_w, int n_tx);
double total_power(const BeamformingSolution& sol, double amp_eff, double circuit_w);
double see(double sum_secrecy_nats_s, double total_power_w);
/// (sum x)^2 / (n sum x^2); reduces to 1 / (2 sum x^2) for two ratios summing to one.
double jain_index(const std::vector<double>& ratios);
/// Linear-harvester input power that delivers p_req through a logistic harvester
/// with shaping parameters (a, b, m_sat).
double nonlinear_eh_required_input(double p_req, double xi, double a, double b, double m_sat);

MetricsReport evaluate_metrics(const ChannelSet& channels, const BeamformingSolution& sol,
                               const SystemConfig& config);

}  // namespace seebf
