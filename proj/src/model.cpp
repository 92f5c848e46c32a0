#include "seebf/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seebf/errors.hpp"

namespace seebf {

BeamformingSolution BeamformingSolution::zero(int n_lue, Eigen::Index n_tx) {
  BeamformingSolution s;
  s.w.assign(static_cast<std::size_t>(n_lue), HermitianMatrix::zero(n_tx));
  s.q = HermitianMatrix::zero(n_tx);
  return s;
}

double BeamformingSolution::transmit_power() const {
  double p = q.trace();
  for (const auto& wn : w) p += wn.trace();
  return p;
}

HermitianMatrix BeamformingSolution::total_covariance() const {
  HermitianMatrix y = q;
  for (const auto& wn : w) y += wn;
  return y;
}

bool BeamformingSolution::is_psd(double rel_tol) const {
  return q.is_psd(rel_tol) &&
         std::all_of(w.begin(), w.end(), [&](const auto& m) { return m.is_psd(rel_tol); });
}

namespace {

void check_dims(const CVec& v, const BeamformingSolution& sol, int n) {
  if (v.size() != sol.n_tx()) throw DimensionMismatch("channel length differs from N_t");
  for (const auto& wn : sol.w) {
    if (wn.dim() != sol.n_tx()) throw DimensionMismatch("W_n size differs from N_t");
  }
  if (n < 0 || n >= sol.n_lue()) throw DimensionMismatch("LUE index out of range");
}

// Signal and interference-plus-noise powers of stream n seen through channel v.
std::pair<double, double> stream_powers(const CVec& v, const BeamformingSolution& sol, int n,
                                        double noise_w) {
  const double signal = sol.w[static_cast<std::size_t>(n)].quadratic(v);
  double denom = sol.q.quadratic(v) + noise_w;
  for (int k = 0; k < sol.n_lue(); ++k) {
    if (k != n) denom += sol.w[static_cast<std::size_t>(k)].quadratic(v);
  }
  return {std::max(signal, 0.0), denom};
}

}  // namespace

double sinr_lue(const CVec& h_n, const BeamformingSolution& sol, int n, double noise_w) {
  check_dims(h_n, sol, n);
  if (!(noise_w > 0.0)) throw InvalidConfig("sinr_lue: noise power must be positive");
  const auto [signal, denom] = stream_powers(h_n, sol, n, noise_w);
  return signal / denom;
}

double rate_lue(double sinr, double bandwidth_hz) {
  if (!(sinr >= 0.0)) throw DomainError("rate_lue: negative SINR");
  return bandwidth_hz * std::log1p(sinr);
}

double leakage_rate(const CVec& g_e, const BeamformingSolution& sol, int n, double noise_w,
                    double bandwidth_hz) {
  check_dims(g_e, sol, n);
  if (!(noise_w > 0.0)) throw InvalidConfig("leakage_rate: noise power must be positive");
  const auto [signal, denom] = stream_powers(g_e, sol, n, noise_w);
  return rate_lue(signal / denom, bandwidth_hz);
}

double harvested_power(const CVec& g_h, const BeamformingSolution& sol, double eh_eff) {
  if (!(eh_eff > 0.0 && eh_eff <= 1.0)) throw InvalidConfig("harvested_power: eh_eff");
  if (g_h.size() != sol.n_tx()) throw DimensionMismatch("harvested_power");
  return eh_eff * std::max(0.0, sol.total_covariance().quadratic(g_h));
}

double secrecy_rate(double rate_lue, double r_aux) { return std::max(rate_lue - r_aux, 0.0); }

double circuit_power(double p_sp_w, int n_tx) {
  const double nt = n_tx;
  return p_sp_w * (0.87 + 0.1 * nt + 0.03 * nt * nt);
}

double total_power(const BeamformingSolution& sol, double amp_eff, double circuit_w) {
  if (!(amp_eff > 0.0 && amp_eff <= 1.0)) throw InvalidConfig("total_power: amp_eff");
  return sol.transmit_power() / amp_eff + circuit_w;
}

double see(double sum_secrecy_nats_s, double total_power_w) {
  if (!(total_power_w > 0.0)) throw DomainError("see: total power must be positive");
  return sum_secrecy_nats_s / total_power_w;
}

double jain_index(const std::vector<double>& ratios) {
  if (ratios.empty()) throw DomainError("jain_index: empty input");
  const double s = std::accumulate(ratios.begin(), ratios.end(), 0.0);
  const double s2 = std::inner_product(ratios.begin(), ratios.end(), ratios.begin(), 0.0);
  if (!(s2 > 0.0)) throw DomainError("jain_index: all ratios are zero");
  return s * s / (static_cast<double>(ratios.size()) * s2);
}

double nonlinear_eh_required_input(double p_req, double xi, double a, double b, double m_sat) {
  if (!(xi > 0.0 && xi <= 1.0) || !(a > 0.0) || !(m_sat > 0.0) || p_req < 0.0) {
    throw InvalidConfig("nonlinear_eh_required_input: shaping parameters");
  }
  if (p_req >= m_sat) {
    throw InfeasibleDemand("nonlinear_eh_required_input: demand at or above saturation");
  }
  return xi / a * std::log((m_sat + p_req * std::exp(a * b)) / (m_sat - p_req));
}

MetricsReport evaluate_metrics(const ChannelSet& channels, const BeamformingSolution& sol,
                               const SystemConfig& config) {
  MetricsReport r;
  const int n_lue = sol.n_lue();
  double sum_sec = 0.0;
  for (int n = 0; n < n_lue; ++n) {
    const double rate = rate_lue(sinr_lue(channels.h[n], sol, n, config.noise_lue_w),
                                 config.bandwidth_hz);
    r.lue_rate.push_back(rate);
    r.secrecy_rate.push_back(secrecy_rate(rate, config.r_aux_nats_s));
    sum_sec += r.secrecy_rate.back();
  }
  for (const auto& g : channels.g_e_bar) {
    std::vector<double> row;
    for (int n = 0; n < n_lue; ++n) {
      row.push_back(leakage_rate(g, sol, n, config.noise_eve_w, config.bandwidth_hz));
    }
    r.leakage_rate.push_back(std::move(row));
  }
  for (const auto& g : channels.g_h_bar) {
    r.harvested_w.push_back(harvested_power(g, sol, config.eh_eff));
  }
  r.transmit_w = sol.transmit_power();
  r.total_power_w =
      total_power(sol, config.amp_eff, circuit_power(config.p_sp_w, static_cast<int>(sol.n_tx())));
  r.see = see(sum_sec, r.total_power_w);
  return r;
}

}  // namespace seebf
