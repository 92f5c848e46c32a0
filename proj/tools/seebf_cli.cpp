// seebf command-line front end: solve, sweep, complexity, selftest.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "seebf/algorithms.hpp"
#include "seebf/channel.hpp"
#include "seebf/complexity.hpp"
#include "seebf/config_io.hpp"
#include "seebf/errors.hpp"
#include "seebf/experiments.hpp"
#include "seebf/model.hpp"

namespace fs = std::filesystem;
using namespace seebf;

namespace {

struct AlgoChoice {
  Algorithm algorithm = Algorithm::kSdp;
  bool srm = false;
};

AlgoChoice parse_algo(const std::string& s) {
  AlgoChoice c;
  std::string k = s;
  if (k.rfind("srm-", 0) == 0) {
    c.srm = true;
    k = k.substr(4);
  }
  c.algorithm = parse_algorithm(k);
  return c;
}

std::string algo_label(const AlgoChoice& c) {
  return std::string(c.srm ? "srm-" : "") + to_string(c.algorithm);
}

int cmd_solve(const std::string& config_path, std::uint64_t seed, const std::string& algo, const std::string& out) {
  const SystemConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
  const AlgoChoice choice = parse_algo(algo);
  const std::uint64_t ch_seed = trial_seed(seed, 0);
  const ChannelSet ch = draw_channels(cfg, ch_seed);
  const TmaxResult tm = find_tmax(choice.algorithm, ch, cfg);
  const SeeSolution s = choice.srm ? srm_solve(choice.algorithm, ch, cfg, tm) : tsbaj(choice.algorithm, ch, cfg, tm);

  std::printf("algorithm        %s\n", algo_label(choice).c_str());
  std::printf("channel seed     %llu\n", static_cast<unsigned long long>(ch_seed));
  if (s.outage) {
    std::printf("status           outage (f(0) = %.6e W > P^max = %.6e W)\n", tm.f_at_tmax, cfg.p_max_w);
    return 0;
  }
  const MetricsReport& m = s.metrics;
  std::printf("t_max            %.6e nats/s\n", s.t_max);
  std::printf("t*               %.6e nats/s\n", s.t_star);
  std::printf("search points    %zu (coarse %d, failed %d)\n", s.trace.size(), s.grid_evaluations, s.failed_points);
  for (std::size_t n = 0; n < m.lue_rate.size(); ++n) {
    std::printf("LUE %zu            rate %.6e  secrecy %.6e nats/s\n", n + 1, m.lue_rate[n], m.secrecy_rate[n]);
  }
  for (std::size_t e = 0; e < m.leakage_rate.size(); ++e) {
    for (std::size_t n = 0; n < m.leakage_rate[e].size(); ++n) {
      std::printf("leak EVE %zu->%zu    %.6e nats/s\n", e + 1, n + 1, m.leakage_rate[e][n]);
    }
  }
  for (std::size_t i = 0; i < m.harvested_w.size(); ++i) {
    std::printf("EHN %zu harvested %.6e W (demand %.6e W)\n", i + 1, m.harvested_w[i], cfg.p_req_w);
  }
  std::printf("transmit power   %.6e W\n", m.transmit_w);
  std::printf("total power      %.6e W\n", m.total_power_w);
  std::printf("SEE              %.6e nats/J\n", m.see);
  for (const auto& w : s.warnings) std::printf("warning: %s\n", w.c_str());

  if (!out.empty()) {
    fs::create_directories(out);
    nlohmann::json j;
    j["algorithm"] = algo_label(choice);
    j["channel_seed"] = ch_seed;
    j["t_max"] = s.t_max;
    j["t_star"] = s.t_star;
    j["see"] = m.see;
    j["lue_rate"] = m.lue_rate;
    j["secrecy_rate"] = m.secrecy_rate;
    j["leakage_rate"] = m.leakage_rate;
    j["harvested_w"] = m.harvested_w;
    j["transmit_w"] = m.transmit_w;
    j["total_power_w"] = m.total_power_w;
    std::ofstream f(fs::path(out) / "solve.json");
    f << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const std::string& name, const std::string& config_path, std::uint64_t seed, bool seed_set, int trials,
              const std::string& out, int threads, int divisions, bool serial) {
  const ExperimentId id = parse_experiment_id(name);
  ExperimentSpec spec = default_spec(id);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    nlohmann::json probe = nlohmann::json::parse(in, nullptr, false);
    if (!probe.is_discarded() && probe.is_object() && probe.contains("experiment")) {
      spec = load_experiment(config_path);
      if (spec.id != id) throw InvalidConfig("config file describes a different experiment");
    } else {
      spec.base = load_config(config_path);
      if (id == ExperimentId::kFairness) {
        // Keep the two-LUE layout the sweep needs unless the file sets one.
        const ExperimentSpec d = default_spec(id);
        if (spec.base.n_lue != 2) {
          spec.base.n_lue = 2;
          spec.base.psr_ratios = d.base.psr_ratios;
          spec.base.lue_distances_m = d.base.lue_distances_m;
        }
      }
    }
  }
  if (seed_set) spec.master_seed = seed;
  if (trials > 0) spec.trials = trials;
  if (threads > 0) spec.threads = threads;
  if (divisions > 0) spec.grid_divisions = divisions;
  spec.validate();
  const SweepResult r = serial ? run_experiment_serial(spec) : run_experiment(spec);
  fs::create_directories(out);
  const fs::path path = fs::path(out) / (std::string(to_string(id)) + ".csv");
  emit_csv(r, path.string());
  std::printf("%s: %d trials x %zu grid points -> %s (%zu rows)\n", to_string(id), spec.trials, spec.grid.size(),
              path.string().c_str(), r.rows.size());
  return 0;
}

int cmd_complexity(const ComplexityInputs& in) {
  const Algorithm algs[3] = {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf};
  std::printf("N_t=%d N=%d M=%d I=%d epsilon=%g T=%d\n", in.n_tx, in.n_lue, in.n_eve, in.n_ehn, in.epsilon,
              in.t_search);
  std::printf("%-10s %12s %10s %14s %14s %14s %10s\n", "algorithm", "n_1", "n_2", "m_1", "m_2", "ops", "ratio");
  for (Algorithm a : algs) {
    const ComplexityTerms c = complexity_terms(a, in);
    std::printf("%-10s %12.4f %10.0f %14.0f %14.0f %14.6e %9.4f%%\n", to_string(a), c.n1, c.n2, c.m1, c.m2,
                ops_count(a, in), 100.0 * ops_ratio(a, in));
  }
  std::printf("SDP m_2 with (N_t+1)^2: ratios %.4f%% %.4f%%\n", 100.0 * ops_ratio(Algorithm::kZfbf, in, SdpM2::kProse),
              100.0 * ops_ratio(Algorithm::kMrtZfbf, in, SdpM2::kProse));
  if (in.n_tx == 7 && in.n_lue == 3 && in.n_eve == 2 && in.n_ehn == 2) {
    std::printf("implied T*log(1/epsilon) for the reference counts:\n");
    for (const auto& c : calibrate(in, kReferenceCounts7322)) {
      std::printf("  %-10s reference %.4e unit %.4e factor %.4f\n", to_string(c.algorithm), c.reference, c.unit_ops,
                  c.implied_factor);
    }
  }
  return 0;
}

// Fast end-to-end checks on closed-form cases.
int cmd_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, double detail) {
    std::printf("%s %-46s %.3e\n", ok ? "PASS" : "FAIL", name, detail);
    failures += !ok;
  };

  SystemConfig c = default_config();
  c.n_tx = 2;
  c.n_lue = 1;
  c.n_eve = 0;
  c.n_ehn = 0;
  c.psr_ratios = {1.0};
  c.lue_distances_m = {16.0};
  c.eve_distances_m.clear();
  c.ehn_distances_m.clear();
  const ChannelSet ch = draw_channels(c, trial_seed(1, 0));
  const double t = 2e5;
  const PowerMinResult r = solve_power_min(t, ch, c);
  const double closed = theta(t, 1.0, c.bandwidth_hz, c.r_aux_nats_s) * c.noise_lue_w / ch.h[0].squaredNorm();
  report("scalar power minimum vs closed form", r.ok() && std::abs(r.f_t - closed) <= 1e-6 * closed,
         std::abs(r.f_t - closed) / closed);

  const TmaxResult tm = find_tmax(Algorithm::kSdp, ch, c);
  const double tmax_closed =
      c.bandwidth_hz * (std::log1p(c.p_max_w * ch.h[0].squaredNorm() / c.noise_lue_w) - c.r_aux_normalized());
  report("scalar t_max vs closed form", std::abs(tm.t_max - tmax_closed) <= 1e-6 * tmax_closed,
         std::abs(tm.t_max - tmax_closed) / tmax_closed);

  const SystemConfig d = default_config();
  const ChannelSet ch7 = draw_channels(d, trial_seed(1, 0));
  const PowerMinResult full = solve_power_min(4e5, ch7, d);
  const PowerMinResult zf = solve_zfbf_power_min(4e5, ch7, d);
  report("default scenario SDP solve", full.ok(), full.f_t);
  report("ZFBF objective >= SDP objective", zf.ok() && zf.f_t >= full.f_t * (1 - 1e-6), zf.f_t - full.f_t);

  ComplexityInputs in;
  report("complexity n_2 = 204 for (7,3,2,2)", complexity_terms(Algorithm::kSdp, in).n2 == 204.0,
         complexity_terms(Algorithm::kSdp, in).n2);

  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust secrecy-energy-efficiency beamforming for MISOME-SWIPT downlinks"};
  app.require_subcommand(1);

  std::string config_path, out = ".", algo = "sdp";
  std::uint64_t seed = 1;
  int trials = 0, threads = 0, divisions = 0;
  bool serial = false;

  auto* solve = app.add_subcommand("solve", "Solve one seeded instance and print its metrics");
  solve->add_option("--config", config_path, "JSON configuration file");
  solve->add_option("--seed", seed, "Master seed; the channel uses trial 0 of it");
  solve->add_option("--algo", algo, "sdp | zfbf | mrt-zfbf | srm-sdp | srm-zfbf | srm-mrt-zfbf");
  solve->add_option("--out", out, "Directory for solve.json");

  std::string experiment;
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write <out>/<experiment>.csv");
  sweep->add_option("experiment", experiment, "convergence | see_vs_t | fairness | outage | aux_rate | harvest")
      ->required();
  sweep->add_option("--config", config_path, "JSON configuration or experiment file");
  auto* seed_opt = sweep->add_option("--seed", seed, "Master seed");
  sweep->add_option("--trials", trials, "Number of channel realisations");
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--threads", threads, "Worker threads (default: OpenMP default)");
  sweep->add_option("--grid-divisions", divisions, "Coarse search divisions of [0, t_max]");
  sweep->add_flag("--serial", serial, "Use the serial trial loop");
  sweep->add_option("--algo", algo, "Ignored; sweeps always run every algorithm");

  ComplexityInputs cin;
  auto* cx = app.add_subcommand("complexity", "Print the closed-form operation counts");
  cx->add_option("--nt", cin.n_tx, "Transmit antennas");
  cx->add_option("--n", cin.n_lue, "LUEs");
  cx->add_option("--m", cin.n_eve, "EVEs");
  cx->add_option("--i", cin.n_ehn, "EHNs");
  cx->add_option("--epsilon", cin.epsilon, "Solver accuracy");
  cx->add_option("--t-search", cin.t_search, "One-dimensional search points T");

  auto* st = app.add_subcommand("selftest", "Quick closed-form checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (solve->parsed()) {
      const bool out_given = solve->count("--out") > 0;
      return cmd_solve(config_path, seed, algo, out_given ? out : std::string());
    }
    if (sweep->parsed()) {
      return cmd_sweep(experiment, config_path, seed, seed_opt->count() > 0, trials, out, threads, divisions, serial);
    }
    if (cx->parsed()) return cmd_complexity(cin);
    if (st->parsed()) return cmd_selftest();
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
