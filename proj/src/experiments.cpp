#include "seebf/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>

#include "seebf/channel.hpp"
#include "seebf/errors.hpp"
#include "seebf/model.hpp"

namespace seebf {

const char* to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::kConvergence: return "convergence";
    case ExperimentId::kSeeVsT: return "see_vs_t";
    case ExperimentId::kFairness: return "fairness";
    case ExperimentId::kOutage: return "outage";
    case ExperimentId::kAuxRate: return "aux_rate";
    case ExperimentId::kHarvest: return "harvest";
  }
  return "?";
}

ExperimentId parse_experiment_id(const std::string& s) {
  std::string k = s;
  std::replace(k.begin(), k.end(), '-', '_');
  for (ExperimentId id : {ExperimentId::kConvergence, ExperimentId::kSeeVsT, ExperimentId::kFairness,
                          ExperimentId::kOutage, ExperimentId::kAuxRate, ExperimentId::kHarvest}) {
    if (k == to_string(id)) return id;
  }
  throw InvalidConfig("unknown experiment '" + s + "'");
}

const char* sweep_variable(ExperimentId id) {
  switch (id) {
    case ExperimentId::kConvergence: return "grid_divisions";
    case ExperimentId::kSeeVsT: return "t_fraction";
    case ExperimentId::kFairness: return "psr_ratio_1";
    case ExperimentId::kOutage: return "p_max_dbm";
    case ExperimentId::kAuxRate: return "r_aux_knats_s";
    case ExperimentId::kHarvest: return "p_req_dbm";
  }
  return "?";
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

void ExperimentSpec::validate() const {
  base.validate();
  if (grid.empty()) throw InvalidConfig("experiment grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidConfig("experiment grid must be strictly increasing");
  }
  if (trials < 1) throw InvalidConfig("trials must be >= 1");
  if (grid_divisions < 1) throw InvalidConfig("grid_divisions must be >= 1");
  if (threads < 0) throw InvalidConfig("threads must be >= 0");
  switch (id) {
    case ExperimentId::kConvergence:
      for (double x : grid) {
        if (x < 1.0 || x != std::floor(x)) throw InvalidConfig("convergence grid holds integer divisions >= 1");
      }
      break;
    case ExperimentId::kSeeVsT:
      if (grid.front() < 0.0 || grid.back() > 1.0) throw InvalidConfig("t_fraction grid must lie in [0, 1]");
      break;
    case ExperimentId::kFairness:
      if (base.n_lue != 2) throw InvalidConfig("fairness sweep needs exactly two LUEs");
      if (grid.front() < 0.0 || grid.back() > 1.0) throw InvalidConfig("psr_ratio_1 grid must lie in [0, 1]");
      break;
    case ExperimentId::kAuxRate:
      if (grid.front() <= 0.0) throw InvalidConfig("r_aux_knats_s grid must be positive");
      break;
    case ExperimentId::kOutage:
    case ExperimentId::kHarvest:
      break;
  }
}

ExperimentSpec default_spec(ExperimentId id) {
  ExperimentSpec s;
  s.id = id;
  s.base = default_config();
  s.trials = 200;
  switch (id) {
    case ExperimentId::kConvergence:
      s.grid = {10, 20, 40};
      s.trials = 1;
      break;
    case ExperimentId::kSeeVsT:
      s.grid = linspace(0.0, 1.0, 21);
      break;
    case ExperimentId::kFairness:
      s.base.n_lue = 2;
      s.base.psr_ratios = {0.5, 0.5};
      s.base.lue_distances_m = {16.0, 19.0};
      s.grid = linspace(0.1, 0.9, 9);
      break;
    case ExperimentId::kOutage:
      s.grid = {30, 32, 34, 36, 38, 40, 42, 43, 44, 46};
      s.trials = 500;
      break;
    case ExperimentId::kAuxRate:
      s.grid = {10, 30, 50, 70, 90, 110, 130};
      break;
    case ExperimentId::kHarvest:
      s.grid = {-20, -15, -10, -5, 0};
      break;
  }
  return s;
}

SystemConfig config_at(const ExperimentSpec& spec, double x) {
  SystemConfig c = spec.base;
  switch (spec.id) {
    case ExperimentId::kConvergence:
    case ExperimentId::kSeeVsT:
      break;
    case ExperimentId::kFairness:
      c.psr_ratios = {x, 1.0 - x};
      break;
    case ExperimentId::kOutage:
      c.p_max_w = dbm_to_w(x);
      break;
    case ExperimentId::kAuxRate:
      c.r_aux_nats_s = x * 1e3;
      break;
    case ExperimentId::kHarvest:
      c.p_req_w = dbm_to_w(x);
      break;
  }
  return c;
}

double SweepResult::aggregate(double x, const std::string& algo, const std::string& stat) const {
  for (const auto& r : rows) {
    if (r.trial < 0 && r.x == x && r.algo == algo && r.stat == stat) return r.value;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<ResultRow> SweepResult::raw(const std::string& algo, const std::string& stat) const {
  std::vector<ResultRow> out;
  for (const auto& r : rows) {
    if (r.trial >= 0 && r.algo == algo && r.stat == stat) out.push_back(r);
  }
  return out;
}

MeanSe mean_se(const std::vector<double>& v) {
  MeanSe m;
  m.count = static_cast<int>(v.size());
  if (v.empty()) return m;
  double s = 0.0;
  for (double x : v) s += x;
  m.mean = s / m.count;
  if (m.count > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / (m.count - 1) / m.count);
  }
  return m;
}

namespace {

constexpr Algorithm kAlgos[3] = {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf};
const char* const kTsNames[3] = {"sdp", "zfbf", "mrt-zfbf"};
const char* const kSrmNames[3] = {"srm-sdp", "srm-zfbf", "srm-mrt-zfbf"};

// Runs fn(i) for i in [0, n), in parallel when asked. Exceptions are
// collected per task and the first one (by index) is rethrown.
template <class Fn>
void for_each_task(int n, bool parallel, int threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  if (parallel) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

SearchOptions search_options(const ExperimentSpec& spec) {
  SearchOptions o;
  o.grid_divisions = spec.grid_divisions;
  return o;
}

TrialOutcome outcome_of(const SeeSolution& s) {
  TrialOutcome o;
  o.outage = s.outage || !(s.see_star > 0.0);
  o.see = o.outage ? 0.0 : s.see_star;
  o.t_star = s.t_star;
  o.t_max = s.t_max;
  o.grid_evaluations = s.grid_evaluations;
  o.evaluations = static_cast<int>(s.trace.size());
  o.failed_points = s.failed_points;
  return o;
}

// Three TsBAJ runs and, optionally, the three SRM baselines on one instance.
struct FamilyOutcome {
  TrialOutcome ts[3];
  TrialOutcome srm[3];
};

FamilyOutcome run_family(const ChannelSet& ch, const SystemConfig& cfg, const SearchOptions& opts,
                         bool with_srm) {
  FamilyOutcome f;
  for (int a = 0; a < 3; ++a) {
    const TmaxResult tm = find_tmax(kAlgos[a], ch, cfg, opts);
    f.ts[a] = outcome_of(tsbaj(kAlgos[a], ch, cfg, tm, opts));
    if (with_srm) f.srm[a] = outcome_of(srm_solve(kAlgos[a], ch, cfg, tm));
  }
  return f;
}

class RowSink {
 public:
  explicit RowSink(SweepResult& r) : r_(r) {}

  void raw(double x, const std::string& algo, const std::string& stat, int trial, double v, int index = -1) {
    r_.rows.push_back({x, algo, stat, trial, trial_seed(r_.spec.master_seed, static_cast<std::uint64_t>(trial)),
                       index, v});
  }
  void agg(double x, const std::string& algo, const std::string& stat, double v) {
    r_.rows.push_back({x, algo, stat, -1, 0, -1, v});
  }

  // Raw rows and SEE/outage aggregates for one algorithm at one grid point.
  void outcomes(double x, const std::string& algo, const std::vector<TrialOutcome>& per_trial, bool search) {
    std::vector<double> sees;
    int outages = 0;
    for (std::size_t t = 0; t < per_trial.size(); ++t) {
      const TrialOutcome& o = per_trial[t];
      const int ti = static_cast<int>(t);
      raw(x, algo, "see", ti, o.see);
      raw(x, algo, "outage", ti, o.outage ? 1.0 : 0.0);
      raw(x, algo, "t_star", ti, o.t_star);
      raw(x, algo, "t_max", ti, o.t_max);
      if (search) {
        raw(x, algo, "grid_evaluations", ti, o.grid_evaluations);
        raw(x, algo, "failed_points", ti, o.failed_points);
      }
      if (o.outage) {
        ++outages;
      } else {
        sees.push_back(o.see);
      }
    }
    const MeanSe m = mean_se(sees);
    agg(x, algo, "see_mean", m.mean);
    agg(x, algo, "see_se", m.se);
    agg(x, algo, "see_count", m.count);
    agg(x, algo, "outage_freq", static_cast<double>(outages) / static_cast<double>(per_trial.size()));
  }

  // (mean SEE_sdp - mean SEE_pi) / mean SEE_sdp over trials where both are feasible.
  void gap(double x, const std::string& algo, const std::vector<TrialOutcome>& sdp,
           const std::vector<TrialOutcome>& other) {
    double a = 0.0, b = 0.0;
    int n = 0;
    for (std::size_t t = 0; t < sdp.size(); ++t) {
      if (sdp[t].outage || other[t].outage) continue;
      a += sdp[t].see;
      b += other[t].see;
      ++n;
    }
    agg(x, algo, "gap", n > 0 ? (a - b) / a : std::numeric_limits<double>::quiet_NaN());
    agg(x, algo, "gap_count", n);
  }

 private:
  SweepResult& r_;
};

ChannelSet trial_channels(const ExperimentSpec& spec, const SystemConfig& cfg, int trial) {
  return draw_channels(cfg, trial_seed(spec.master_seed, static_cast<std::uint64_t>(trial)));
}

SweepResult run_convergence_impl(const ExperimentSpec& spec, bool parallel) {
  spec.validate();
  const int ng = static_cast<int>(spec.grid.size());
  struct Cell {
    SeeSolution s[3];
  };
  std::vector<Cell> cells(static_cast<std::size_t>(ng * spec.trials));
  for_each_task(ng * spec.trials, parallel, spec.threads, [&](int i) {
    const int g = i / spec.trials, t = i % spec.trials;
    const SystemConfig cfg = config_at(spec, spec.grid[static_cast<std::size_t>(g)]);
    const ChannelSet ch = trial_channels(spec, cfg, t);
    SearchOptions o = search_options(spec);
    o.grid_divisions = static_cast<int>(spec.grid[static_cast<std::size_t>(g)]);
    for (int a = 0; a < 3; ++a) cells[static_cast<std::size_t>(i)].s[a] = tsbaj(kAlgos[a], ch, cfg, o);
  });
  SweepResult r;
  r.spec = spec;
  RowSink sink(r);
  for (int g = 0; g < ng; ++g) {
    const double x = spec.grid[static_cast<std::size_t>(g)];
    for (int a = 0; a < 3; ++a) {
      std::vector<TrialOutcome> per;
      for (int t = 0; t < spec.trials; ++t) {
        const SeeSolution& s = cells[static_cast<std::size_t>(g * spec.trials + t)].s[a];
        per.push_back(outcome_of(s));
        for (std::size_t k = 0; k < s.trace.size(); ++k) {
          const SearchPoint& p = s.trace[k];
          const int ki = static_cast<int>(k);
          sink.raw(x, kTsNames[a], "trace_t", t, p.t, ki);
          sink.raw(x, kTsNames[a], "trace_see", t, p.see, ki);
          sink.raw(x, kTsNames[a], "trace_asee", t, p.asee, ki);
          sink.raw(x, kTsNames[a], "trace_refinement", t, p.refinement ? 1.0 : 0.0, ki);
        }
        sink.raw(x, kTsNames[a], "evaluations", t, static_cast<double>(s.trace.size()));
      }
      sink.outcomes(x, kTsNames[a], per, true);
    }
  }
  return r;
}

SweepResult run_see_vs_t_impl(const ExperimentSpec& spec, bool parallel) {
  spec.validate();
  const int ng = static_cast<int>(spec.grid.size());
  struct Cell {
    std::vector<SearchPoint> pts[3];
    bool outage[3] = {false, false, false};
  };
  std::vector<Cell> cells(static_cast<std::size_t>(spec.trials));
  const SearchOptions o = search_options(spec);
  for_each_task(spec.trials, parallel, spec.threads, [&](int t) {
    const ChannelSet ch = trial_channels(spec, spec.base, t);
    Cell& c = cells[static_cast<std::size_t>(t)];
    for (int a = 0; a < 3; ++a) {
      const TmaxResult tm = find_tmax(kAlgos[a], ch, spec.base, o);
      c.outage[a] = tm.outage;
      for (double frac : spec.grid) {
        if (tm.outage) {
          c.pts[a].push_back(SearchPoint{});
        } else {
          c.pts[a].push_back(evaluate_at(kAlgos[a], frac * tm.t_max, ch, spec.base, o));
        }
      }
    }
  });
  SweepResult r;
  r.spec = spec;
  RowSink sink(r);
  for (int g = 0; g < ng; ++g) {
    const double x = spec.grid[static_cast<std::size_t>(g)];
    for (int a = 0; a < 3; ++a) {
      std::vector<double> sees;
      int bad = 0;
      for (int t = 0; t < spec.trials; ++t) {
        const Cell& c = cells[static_cast<std::size_t>(t)];
        const SearchPoint& p = c.pts[a][static_cast<std::size_t>(g)];
        sink.raw(x, kTsNames[a], "t", t, p.t);
        sink.raw(x, kTsNames[a], "see", t, p.see);
        if (c.outage[a] || p.status != "optimal") {
          ++bad;
        } else {
          sees.push_back(p.see);
        }
      }
      const MeanSe m = mean_se(sees);
      sink.agg(x, kTsNames[a], "see_mean", m.mean);
      sink.agg(x, kTsNames[a], "see_se", m.se);
      sink.agg(x, kTsNames[a], "see_count", m.count);
      sink.agg(x, kTsNames[a], "outage_freq", static_cast<double>(bad) / spec.trials);
    }
  }
  return r;
}

// Fairness, aux_rate and harvest: the TsBAJ family at every (grid, trial).
SweepResult run_family_sweep(const ExperimentSpec& spec, bool parallel, bool with_srm) {
  spec.validate();
  const int ng = static_cast<int>(spec.grid.size());
  std::vector<FamilyOutcome> cells(static_cast<std::size_t>(ng * spec.trials));
  const SearchOptions o = search_options(spec);
  for_each_task(ng * spec.trials, parallel, spec.threads, [&](int i) {
    const int g = i / spec.trials, t = i % spec.trials;
    const SystemConfig cfg = config_at(spec, spec.grid[static_cast<std::size_t>(g)]);
    cells[static_cast<std::size_t>(i)] = run_family(trial_channels(spec, cfg, t), cfg, o, with_srm);
  });
  SweepResult r;
  r.spec = spec;
  RowSink sink(r);
  for (int g = 0; g < ng; ++g) {
    const double x = spec.grid[static_cast<std::size_t>(g)];
    std::vector<TrialOutcome> ts[3], srm[3];
    for (int t = 0; t < spec.trials; ++t) {
      const FamilyOutcome& f = cells[static_cast<std::size_t>(g * spec.trials + t)];
      for (int a = 0; a < 3; ++a) {
        ts[a].push_back(f.ts[a]);
        srm[a].push_back(f.srm[a]);
      }
    }
    for (int a = 0; a < 3; ++a) sink.outcomes(x, kTsNames[a], ts[a], true);
    if (with_srm) {
      for (int a = 0; a < 3; ++a) sink.outcomes(x, kSrmNames[a], srm[a], false);
    }
    for (int a = 1; a < 3; ++a) sink.gap(x, kTsNames[a], ts[0], ts[a]);
    if (with_srm) {
      for (int a = 0; a < 3; ++a) sink.gap(x, kSrmNames[a], ts[0], srm[a]);
    }
    if (spec.id == ExperimentId::kFairness) sink.agg(x, "all", "jain", jain_index(config_at(spec, x).psr_ratios));
  }
  return r;
}

SweepResult run_outage_impl(const ExperimentSpec& spec, bool parallel) {
  spec.validate();
  // f(0) does not depend on P^max, so one solve per trial and algorithm
  // serves the whole grid.
  struct Cell {
    bool ok[3] = {false, false, false};
    double f0[3] = {0.0, 0.0, 0.0};
  };
  std::vector<Cell> cells(static_cast<std::size_t>(spec.trials));
  for_each_task(spec.trials, parallel, spec.threads, [&](int t) {
    const ChannelSet ch = trial_channels(spec, spec.base, t);
    for (int a = 0; a < 3; ++a) {
      const PowerMinResult res = solve_inner(kAlgos[a], 0.0, ch, spec.base);
      cells[static_cast<std::size_t>(t)].ok[a] = res.ok();
      cells[static_cast<std::size_t>(t)].f0[a] = res.ok() ? res.f_t : std::numeric_limits<double>::infinity();
    }
  });
  SweepResult r;
  r.spec = spec;
  RowSink sink(r);
  // The ZF family shares the zero-forcing feasibility test; the MRT beams'
  // own test is reported separately as "mrt-zfbf-own".
  const int source[4] = {0, 1, 1, 2};
  const char* const names[4] = {"sdp", "zfbf", "mrt-zfbf", "mrt-zfbf-own"};
  for (double x : spec.grid) {
    const double p_max = dbm_to_w(x);
    for (int k = 0; k < 4; ++k) {
      const int a = source[k];
      int outages = 0;
      for (int t = 0; t < spec.trials; ++t) {
        const Cell& c = cells[static_cast<std::size_t>(t)];
        const bool out = !c.ok[a] || c.f0[a] > p_max;
        outages += out;
        sink.raw(x, names[k], "outage", t, out ? 1.0 : 0.0);
        sink.raw(x, names[k], "f0", t, c.f0[a]);
      }
      sink.agg(x, names[k], "outage_freq", static_cast<double>(outages) / spec.trials);
    }
  }
  return r;
}

SweepResult dispatch(const ExperimentSpec& spec, bool parallel) {
  switch (spec.id) {
    case ExperimentId::kConvergence: return run_convergence_impl(spec, parallel);
    case ExperimentId::kSeeVsT: return run_see_vs_t_impl(spec, parallel);
    case ExperimentId::kFairness: return run_family_sweep(spec, parallel, false);
    case ExperimentId::kOutage: return run_outage_impl(spec, parallel);
    case ExperimentId::kAuxRate:
    case ExperimentId::kHarvest: return run_family_sweep(spec, parallel, true);
  }
  throw InvalidConfig("unknown experiment");
}

ExperimentSpec with_id(ExperimentSpec spec, ExperimentId id) {
  if (spec.id != id) throw InvalidConfig(std::string("spec is not a ") + to_string(id) + " experiment");
  return spec;
}

}  // namespace

SweepResult run_experiment(const ExperimentSpec& spec) { return dispatch(spec, true); }
SweepResult run_experiment_serial(const ExperimentSpec& spec) { return dispatch(spec, false); }

SweepResult run_convergence(const ExperimentSpec& spec) {
  return run_experiment(with_id(spec, ExperimentId::kConvergence));
}
SweepResult run_see_vs_t(const ExperimentSpec& spec) { return run_experiment(with_id(spec, ExperimentId::kSeeVsT)); }
SweepResult run_fairness(const ExperimentSpec& spec) {
  return run_experiment(with_id(spec, ExperimentId::kFairness));
}
SweepResult run_outage(const ExperimentSpec& spec) { return run_experiment(with_id(spec, ExperimentId::kOutage)); }
SweepResult run_aux_rate(const ExperimentSpec& spec) {
  return run_experiment(with_id(spec, ExperimentId::kAuxRate));
}
SweepResult run_harvest(const ExperimentSpec& spec) { return run_experiment(with_id(spec, ExperimentId::kHarvest)); }

std::string to_csv(const SweepResult& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "# seebf-sweep v%d experiment=%s sweep=%s seed=%llu trials=%d\n", kCsvSchemaVersion,
                to_string(r.spec.id), sweep_variable(r.spec.id),
                static_cast<unsigned long long>(r.spec.master_seed), r.spec.trials);
  out += buf;
  out += "x,algo,stat,trial,seed,index,value\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.17e,%s,%s,%d,%llu,%d,%.17e\n", row.x, row.algo.c_str(), row.stat.c_str(),
                  row.trial, static_cast<unsigned long long>(row.seed), row.index, row.value);
    out += buf;
  }
  return out;
}

void emit_csv(const SweepResult& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << to_csv(r);
}

}  // namespace seebf
