#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seebf/algorithms.hpp"
#include "seebf/config.hpp"

namespace seebf {

enum class ExperimentId { kConvergence, kSeeVsT, kFairness, kOutage, kAuxRate, kHarvest };

const char* to_string(ExperimentId id);
/// Accepts "convergence", "see_vs_t", "fairness", "outage", "aux_rate",
/// "harvest" (dashes allowed in place of underscores).
ExperimentId parse_experiment_id(const std::string& s);

/// Name of the swept quantity for each experiment.
///   convergence: grid_divisions     see_vs_t: t_fraction (of t_max)
///   fairness:    psr_ratio_1         outage:   p_max_dbm
///   aux_rate:    r_aux_knats_s       harvest:  p_req_dbm
const char* sweep_variable(ExperimentId id);

struct ExperimentSpec {
  ExperimentId id = ExperimentId::kConvergence;
  SystemConfig base = default_config();
  std::vector<double> grid;
  int trials = 1;
  std::uint64_t master_seed = 1;
  /// Coarse search divisions for the two-stage search (not used by outage).
  int grid_divisions = SearchOptions{}.grid_divisions;
  /// Worker threads for the trial loop; 0 uses the OpenMP default.
  int threads = 0;

  void validate() const;
};

/// Defaults per experiment: base scenario, sweep grid and trial count.
ExperimentSpec default_spec(ExperimentId id);

/// The configuration for one grid point of a sweep.
SystemConfig config_at(const ExperimentSpec& spec, double x);

/// One CSV row: statistic `stat` of `algo` at grid value `x`. Raw per-trial
/// rows carry the trial index and its channel seed; aggregate rows use -1 and 0.
struct ResultRow {
  double x = 0.0;
  std::string algo;
  std::string stat;
  int trial = -1;
  std::uint64_t seed = 0;
  int index = -1;  ///< position within a search trace, -1 otherwise
  double value = 0.0;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<ResultRow> rows;

  /// First aggregate row matching (x, algo, stat); NaN when absent.
  double aggregate(double x, const std::string& algo, const std::string& stat) const;
  std::vector<ResultRow> raw(const std::string& algo, const std::string& stat) const;
};

/// Per-trial outcome of one algorithm at one grid point.
struct TrialOutcome {
  bool outage = false;
  double see = 0.0;
  double t_star = 0.0;
  double t_max = 0.0;
  int grid_evaluations = 0;
  int evaluations = 0;
  int failed_points = 0;
};

SweepResult run_experiment(const ExperimentSpec& spec);
/// Same computation with a plain serial trial loop; used as the reference
/// for the parallel path.
SweepResult run_experiment_serial(const ExperimentSpec& spec);

SweepResult run_convergence(const ExperimentSpec& spec);
SweepResult run_see_vs_t(const ExperimentSpec& spec);
SweepResult run_fairness(const ExperimentSpec& spec);
SweepResult run_outage(const ExperimentSpec& spec);
SweepResult run_aux_rate(const ExperimentSpec& spec);
SweepResult run_harvest(const ExperimentSpec& spec);

/// CSV schema version written in the first comment line.
constexpr int kCsvSchemaVersion = 1;

/// "# seebf-sweep v1 experiment=<id> seed=<s> trials=<n>" followed by the
/// header "x,algo,stat,trial,seed,index,value" and one row per ResultRow,
/// floats in %.17e.
std::string to_csv(const SweepResult& r);
void emit_csv(const SweepResult& r, const std::string& path);

/// Mean and standard error of a sample; se is 0 for fewer than two values.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};
MeanSe mean_se(const std::vector<double>& v);

}  // namespace seebf
