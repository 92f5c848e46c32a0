#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "seebf/errors.hpp"
#include "seebf/experiments.hpp"

using namespace seebf;

namespace {

ExperimentSpec small_outage() {
  ExperimentSpec s = default_spec(ExperimentId::kOutage);
  s.trials = 12;
  s.master_seed = 5;
  return s;
}

ExperimentSpec small_harvest() {
  ExperimentSpec s = default_spec(ExperimentId::kHarvest);
  s.grid = {-20, -5};
  s.trials = 2;
  s.master_seed = 3;
  s.grid_divisions = 4;
  return s;
}

}  // namespace

TEST(Experiments, IdNames) {
  for (ExperimentId id : {ExperimentId::kConvergence, ExperimentId::kSeeVsT, ExperimentId::kFairness,
                          ExperimentId::kOutage, ExperimentId::kAuxRate, ExperimentId::kHarvest}) {
    EXPECT_EQ(parse_experiment_id(to_string(id)), id);
  }
  EXPECT_EQ(parse_experiment_id("see-vs-t"), ExperimentId::kSeeVsT);
  EXPECT_THROW(parse_experiment_id("bogus"), Error);
}

TEST(Experiments, Validation) {
  ExperimentSpec s = default_spec(ExperimentId::kOutage);
  s.grid = {};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s.grid = {30, 30};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = default_spec(ExperimentId::kOutage);
  s.trials = 0;
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = default_spec(ExperimentId::kFairness);
  s.base.n_lue = 3;
  s.base.psr_ratios = {0.4, 0.3, 0.3};
  s.base.lue_distances_m = {16, 17, 18};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = default_spec(ExperimentId::kConvergence);
  s.grid = {2.5};
  EXPECT_THROW(s.validate(), InvalidConfig);
  s = default_spec(ExperimentId::kSeeVsT);
  s.grid = {0.5, 1.5};
  EXPECT_THROW(s.validate(), InvalidConfig);
  EXPECT_THROW(run_fairness(default_spec(ExperimentId::kOutage)), InvalidConfig);
}

TEST(Experiments, ConfigAt) {
  EXPECT_NEAR(config_at(default_spec(ExperimentId::kOutage), 30).p_max_w, 1.0, 1e-15);
  EXPECT_NEAR(config_at(default_spec(ExperimentId::kHarvest), -10).p_req_w, 1e-4, 1e-19);
  EXPECT_DOUBLE_EQ(config_at(default_spec(ExperimentId::kAuxRate), 50).r_aux_nats_s, 50e3);
  const SystemConfig f = config_at(default_spec(ExperimentId::kFairness), 0.3);
  EXPECT_DOUBLE_EQ(f.psr_ratios[0], 0.3);
  EXPECT_DOUBLE_EQ(f.psr_ratios[1], 0.7);
}

TEST(Experiments, MeanSe) {
  const MeanSe m = mean_se({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.se, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(m.count, 4);
  EXPECT_EQ(mean_se({7.0}).se, 0.0);
  EXPECT_EQ(mean_se({}).count, 0);
}

TEST(Experiments, OutageMonotoneAndShared) {
  const SweepResult r = run_outage(small_outage());
  for (const char* algo : {"sdp", "zfbf", "mrt-zfbf", "mrt-zfbf-own"}) {
    double prev = 1.0;
    for (double x : r.spec.grid) {
      const double f = r.aggregate(x, algo, "outage_freq");
      ASSERT_FALSE(std::isnan(f)) << algo << " " << x;
      EXPECT_LE(f, prev) << algo << " " << x;
      prev = f;
    }
  }
  for (double x : r.spec.grid) {
    EXPECT_EQ(r.aggregate(x, "zfbf", "outage_freq"), r.aggregate(x, "mrt-zfbf", "outage_freq"));
    // The full relaxation is never worse than a restricted layout.
    EXPECT_LE(r.aggregate(x, "sdp", "outage_freq"), r.aggregate(x, "zfbf", "outage_freq"));
    EXPECT_LE(r.aggregate(x, "zfbf", "outage_freq"), r.aggregate(x, "mrt-zfbf-own", "outage_freq"));
  }
  EXPECT_EQ(r.raw("sdp", "outage").size(), r.spec.grid.size() * 12u);
}

TEST(Experiments, CsvHeaderAndDeterminism) {
  const ExperimentSpec s = small_outage();
  const std::string a = to_csv(run_experiment(s));
  const std::string b = to_csv(run_experiment(s));
  EXPECT_EQ(a, b);
  std::istringstream in(a);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  EXPECT_EQ(l1, "# seebf-sweep v1 experiment=outage sweep=p_max_dbm seed=5 trials=12");
  EXPECT_EQ(l2, "x,algo,stat,trial,seed,index,value");
  EXPECT_EQ(std::count(l3.begin(), l3.end(), ','), 6);
  ExperimentSpec other = s;
  other.master_seed = 6;
  EXPECT_NE(to_csv(run_experiment(other)), a);
}

TEST(Experiments, SerialMatchesParallel) {
  const ExperimentSpec s = small_outage();
  EXPECT_EQ(to_csv(run_experiment_serial(s)), to_csv(run_experiment(s)));
  ExperimentSpec h = small_harvest();
  h.threads = 2;
  EXPECT_EQ(to_csv(run_experiment_serial(h)), to_csv(run_experiment(h)));
}

TEST(Experiments, HarvestRows) {
  const SweepResult r = run_harvest(small_harvest());
  for (double x : r.spec.grid) {
    for (const char* algo : {"sdp", "zfbf", "mrt-zfbf", "srm-sdp", "srm-zfbf", "srm-mrt-zfbf"}) {
      EXPECT_FALSE(std::isnan(r.aggregate(x, algo, "see_mean"))) << algo;
      EXPECT_FALSE(std::isnan(r.aggregate(x, algo, "outage_freq"))) << algo;
    }
    for (const char* algo : {"zfbf", "mrt-zfbf", "srm-sdp"}) {
      const double n = r.aggregate(x, algo, "gap_count");
      if (n > 0) EXPECT_GE(r.aggregate(x, algo, "gap"), -1e-6) << algo;
    }
  }
  EXPECT_EQ(r.raw("sdp", "grid_evaluations").size(), 4u);
  EXPECT_TRUE(r.raw("srm-sdp", "grid_evaluations").empty());
}

TEST(Experiments, FairnessJain) {
  ExperimentSpec s = default_spec(ExperimentId::kFairness);
  s.grid = {0.1, 0.3, 0.5, 0.7, 0.9};
  s.trials = 1;
  s.grid_divisions = 3;
  const SweepResult r = run_fairness(s);
  EXPECT_DOUBLE_EQ(r.aggregate(0.5, "all", "jain"), 1.0);
  EXPECT_NEAR(r.aggregate(0.1, "all", "jain"), r.aggregate(0.9, "all", "jain"), 1e-15);
  EXPECT_NEAR(r.aggregate(0.3, "all", "jain"), r.aggregate(0.7, "all", "jain"), 1e-15);
  EXPECT_LT(r.aggregate(0.1, "all", "jain"), r.aggregate(0.3, "all", "jain"));
  EXPECT_NEAR(r.aggregate(0.1, "all", "jain"), 1.0 / (2.0 * (0.01 + 0.81)), 1e-15);
}

TEST(Experiments, ConvergenceTrace) {
  ExperimentSpec s = default_spec(ExperimentId::kConvergence);
  s.grid = {4};
  const SweepResult r = run_convergence(s);
  for (const char* algo : {"sdp", "zfbf", "mrt-zfbf"}) {
    const auto ev = r.raw(algo, "evaluations");
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(r.raw(algo, "trace_t").size(), static_cast<std::size_t>(ev[0].value)) << algo;
    const auto ts = r.raw(algo, "trace_t");
    for (std::size_t k = 0; k < ts.size(); ++k) EXPECT_EQ(ts[k].index, static_cast<int>(k));
  }
}
