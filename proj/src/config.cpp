#include "seebf/config.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "seebf/errors.hpp"

namespace seebf {

double dbm_to_w(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double w_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidConfig(what);
}

void require_positive_distances(const std::vector<double>& d, const char* name) {
  for (double v : d) require(v > 0.0, std::string(name) + " must be positive");
}

}  // namespace

void SystemConfig::validate() const {
  require(n_tx >= 1 && n_lue >= 1 && n_eve >= 0 && n_ehn >= 0, "counts out of range");
  require(n_tx >= n_lue + 1, "n_tx must be at least n_lue + 1");
  require(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
  require(carrier_hz > 0.0, "carrier_hz must be positive");
  require(noise_lue_w > 0.0 && noise_eve_w > 0.0 && noise_ehn_w > 0.0,
          "noise powers must be positive");
  require(p_max_w > 0.0, "p_max_w must be positive");
  require(p_sp_w > 0.0, "p_sp_w must be positive");
  require(amp_eff > 0.0 && amp_eff <= 1.0, "amp_eff must lie in (0, 1]");
  require(eh_eff > 0.0 && eh_eff <= 1.0, "eh_eff must lie in (0, 1]");
  require(p_req_w >= 0.0, "p_req_w must be nonnegative");
  require(r_aux_nats_s >= 0.0, "r_aux_nats_s must be nonnegative");
  require(uncertainty_fraction >= 0.0, "uncertainty_fraction must be nonnegative");

  require(static_cast<int>(psr_ratios.size()) == n_lue, "psr_ratios must have n_lue entries");
  for (double r : psr_ratios) require(r >= 0.0, "psr_ratios must be nonnegative");
  const double sum = std::accumulate(psr_ratios.begin(), psr_ratios.end(), 0.0);
  require(std::abs(sum - 1.0) <= 1e-9, "psr_ratios must sum to one");

  require(static_cast<int>(lue_distances_m.size()) == n_lue,
          "lue_distances_m must have n_lue entries");
  require(static_cast<int>(eve_distances_m.size()) == n_eve,
          "eve_distances_m must have n_eve entries");
  require(static_cast<int>(ehn_distances_m.size()) == n_ehn,
          "ehn_distances_m must have n_ehn entries");
  require_positive_distances(lue_distances_m, "lue_distances_m");
  require_positive_distances(eve_distances_m, "eve_distances_m");
  require_positive_distances(ehn_distances_m, "ehn_distances_m");
}

SystemConfig default_config() {
  SystemConfig c;
  c.noise_lue_w = dbm_to_w(-30.0);
  c.noise_eve_w = dbm_to_w(-30.0);
  c.noise_ehn_w = dbm_to_w(-30.0);
  c.p_max_w = dbm_to_w(43.0);
  c.p_req_w = dbm_to_w(-5.0);
  return c;
}

}  // namespace seebf
