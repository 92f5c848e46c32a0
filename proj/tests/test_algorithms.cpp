#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "seebf/algorithms.hpp"
#include "seebf/errors.hpp"
#include "seebf/linalg.hpp"

using namespace seebf;

using oracle::scalar_config;
using oracle::small_config;

namespace {

// First trial of a default-scenario run that is feasible for all three algorithms.
ChannelSet default_instance(const SystemConfig& c) {
  for (std::uint64_t k = 0;; ++k) {
    ChannelSet ch = draw_channels(c, trial_seed(1, k));
    if (solve_inner(Algorithm::kMrtZfbf, 0.0, ch, c).f_t <= c.p_max_w) return ch;
  }
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Algorithm, Names) {
  for (Algorithm a : {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_EQ(parse_algorithm("mrt_zfbf"), Algorithm::kMrtZfbf);
  EXPECT_THROW(parse_algorithm("mrt"), InvalidConfig);
}

TEST(ZfBases, NullSpaceProperties) {
  const SystemConfig c = default_config();
  const ChannelSet ch = draw_channels(c, 5);
  const ZfBases z = zfbf_bases(ch);
  ASSERT_EQ(z.phi.cols(), 4);
  EXPECT_LT((z.phi.adjoint() * z.phi - CMat::Identity(4, 4)).norm(), 1e-12);
  for (int n = 0; n < 3; ++n) {
    const CMat& xi = z.xi[static_cast<std::size_t>(n)];
    ASSERT_EQ(xi.cols(), 5);
    EXPECT_LT((xi.adjoint() * xi - CMat::Identity(5, 5)).norm(), 1e-12);
    EXPECT_LT((ch.h[static_cast<std::size_t>(n)].adjoint() * z.phi).norm(), 1e-10 * ch.h[0].norm());
    for (int k = 0; k < 3; ++k) {
      if (k != n) EXPECT_LT((ch.h[static_cast<std::size_t>(k)].adjoint() * xi).norm(), 1e-10 * ch.h[0].norm());
    }
  }
}

TEST(ZfBases, SingleUserBasisIsUnitary) {
  const SystemConfig c = scalar_config();
  const ZfBases z = zfbf_bases(draw_channels(c, 3));
  EXPECT_EQ(z.xi[0].cols(), 3);
  EXPECT_LT((z.xi[0] * z.xi[0].adjoint() - CMat::Identity(3, 3)).norm(), 1e-12);
}

TEST(Mrt, SinrEqualsTheta) {
  const SystemConfig c = default_config();
  const ChannelSet ch = draw_channels(c, 8);
  const double t = 2e5;
  const MrtBeams b = mrt_zfbf_powers(t, ch, c);
  BeamformingSolution s;
  for (const auto& w : b.beam) s.w.push_back(HermitianMatrix::outer(w));
  s.q = HermitianMatrix::zero(7);
  for (int n = 0; n < 3; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    const double th = theta(t, c.psr_ratios[nu], c.bandwidth_hz, c.r_aux_nats_s);
    EXPECT_NEAR(sinr_lue(ch.h[nu], s, n, c.noise_lue_w), th, 1e-9 * th);
    EXPECT_NEAR(b.beam[nu].squaredNorm(), b.power[nu], 1e-12 * b.power[nu]);
  }
  // p_n is proportional to theta_n(t).
  const MrtBeams b0 = mrt_zfbf_powers(0.0, ch, c);
  const double ratio = theta(t, 0.4, 200e3, 100e3) / theta(0.0, 0.4, 200e3, 100e3);
  EXPECT_NEAR(b.power[0] / b0.power[0], ratio, 1e-12 * ratio);
}

TEST(Mrt, SingleUserIsPureMrt) {
  const SystemConfig c = scalar_config();
  const ChannelSet ch = draw_channels(c, 4);
  const MrtBeams b = mrt_zfbf_powers(1e5, ch, c);
  EXPECT_NEAR(b.power[0], oracle::scalar_power(1e5, ch.h[0], c), 1e-12 * b.power[0]);
  const CVec dir = b.beam[0] / b.beam[0].norm();
  EXPECT_NEAR(std::abs(dir.dot(ch.h[0])), ch.h[0].norm(), 1e-12 * ch.h[0].norm());
}

TEST(PowerMin, ScalarClosedForm) {
  const SystemConfig c = scalar_config();
  const ChannelSet ch = draw_channels(c, 2);
  for (Algorithm a : {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf}) {
    for (double t : {0.0, 1e5, 5e5}) {
      const PowerMinResult r = solve_inner(a, t, ch, c);
      ASSERT_TRUE(r.ok()) << to_string(a) << " " << r.message;
      const double f = oracle::scalar_power(t, ch.h[0], c);
      EXPECT_NEAR(r.f_t, f, 1e-6 * f) << to_string(a) << " t=" << t;
    }
  }
}

TEST(PowerMin, NoDemandGivesZero) {
  SystemConfig c = scalar_config();
  c.r_aux_nats_s = 0.0;
  c.p_req_w = 0.0;
  const PowerMinResult r = solve_power_min(0.0, draw_channels(c, 2), c);
  ASSERT_TRUE(r.ok());
  // Interior-point iterates stop short of the boundary; compare with the budget.
  EXPECT_LT(r.f_t, 1e-8 * c.p_max_w);
}

TEST(PowerMin, MrtWithoutEveOrEhnUsesNoNoise) {
  const SystemConfig c = scalar_config();
  const PowerMinResult r = solve_mrt_zfbf_an(2e5, draw_channels(c, 6), c);
  ASSERT_TRUE(r.ok());
  EXPECT_LT(r.solution.q.trace(), 1e-6 * r.f_t);
}

TEST(PowerMin, ZeroForcingStructure) {
  const SystemConfig c = default_config();
  const ChannelSet ch = default_instance(c);
  const double t = 2e5;
  const PowerMinResult r = solve_zfbf_power_min(t, ch, c);
  ASSERT_TRUE(r.ok()) << r.message;
  const double scale = r.f_t * ch.h[0].squaredNorm();
  for (int n = 0; n < 3; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    EXPECT_LT(std::abs(r.solution.q.quadratic(ch.h[nu])), 1e-10 * scale);
    for (int k = 0; k < 3; ++k) {
      if (k != n) EXPECT_LT(std::abs(r.solution.w[static_cast<std::size_t>(k)].quadratic(ch.h[nu])), 1e-10 * scale);
    }
    // Equality rate constraint.
    const double th = theta(t, c.psr_ratios[nu], c.bandwidth_hz, c.r_aux_nats_s);
    EXPECT_NEAR(r.solution.w[nu].quadratic(ch.h[nu]), th * c.noise_lue_w, 1e-6 * th * c.noise_lue_w);
  }
}

TEST(PowerMin, DominanceAndMonotonicity) {
  const SystemConfig c = default_config();
  const ChannelSet ch = default_instance(c);
  const TmaxResult tm = find_tmax(Algorithm::kSdp, ch, c);
  ASSERT_FALSE(tm.outage);
  double last = -1.0;
  for (int k = 0; k < 20; ++k) {
    const double t = tm.t_max * k / 19.0;
    const PowerMinResult s = solve_power_min(t, ch, c);
    ASSERT_TRUE(s.ok());
    EXPECT_GE(s.f_t, last - 10 * 1e-7 * s.f_t);
    last = s.f_t;
    if (k % 6 == 0) {
      const PowerMinResult z = solve_zfbf_power_min(t, ch, c);
      const PowerMinResult m = solve_mrt_zfbf_an(t, ch, c);
      ASSERT_TRUE(z.ok());
      EXPECT_LE(s.f_t, z.f_t * (1 + 1e-6));
      if (m.ok()) EXPECT_LE(z.f_t, m.f_t * (1 + 1e-6));
    }
  }
}

TEST(PowerMin, MatchesBruteForceAtTwoAntennas) {
  const SystemConfig c = small_config();
  std::uint64_t k = 0;
  ChannelSet ch;
  TmaxResult tm;
  do {
    ch = draw_channels(c, trial_seed(3, k++));
    tm = find_tmax(Algorithm::kSdp, ch, c);
  } while (tm.outage);
  const double t = 0.5 * tm.t_max;
  const PowerMinResult r = solve_power_min(t, ch, c);
  ASSERT_TRUE(r.ok());
  const oracle::BruteForceResult b = oracle::BruteForce2x2(t, ch, c).solve();
  EXPECT_LE(r.f_t, b.power * (1 + 1e-6));
  EXPECT_NEAR(b.power, r.f_t, 0.02 * r.f_t);
}

TEST(FeasibilityRecovery, HandExample) {
  SystemConfig c = scalar_config();
  c.n_tx = 2;
  c.noise_lue_w = 1.0;
  c.r_aux_nats_s = c.bandwidth_hz * std::log(2.0);  // theta(0) = 1
  ChannelSet ch;
  CVec h(2);
  h << 1.0, 0.0;
  ch.h = {h};
  BeamformingSolution s;
  RMat w = RMat::Zero(2, 2);
  w(0, 0) = 2.0;
  s.w = {HermitianMatrix::from_real(w)};
  s.q = HermitianMatrix::zero(2);
  const BeamformingSolution out = feasibility_recovery(s, 0.0, ch, c);
  EXPECT_NEAR(out.w[0](0, 0).real(), 1.5, 1e-15);
  EXPECT_NEAR(out.q(0, 0).real(), 0.5, 1e-15);
  // (1 + theta) / theta Tr(H W) = 3 = Tr(H W) + Tr(H Q) + sigma^2.
  EXPECT_NEAR(2.0 * out.w[0].quadratic(h), out.w[0].quadratic(h) + out.q.quadratic(h) + 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(out.transmit_power(), s.transmit_power());
}

TEST(FeasibilityRecovery, ActiveInputUnchanged) {
  SystemConfig c = scalar_config();
  c.n_tx = 2;
  c.noise_lue_w = 1.0;
  c.r_aux_nats_s = c.bandwidth_hz * std::log(2.0);
  ChannelSet ch;
  CVec h(2);
  h << 1.0, 0.0;
  ch.h = {h};
  BeamformingSolution s;
  RMat w = RMat::Zero(2, 2);
  w(0, 0) = 1.0;
  s.w = {HermitianMatrix::from_real(w)};
  s.q = HermitianMatrix::zero(2);
  const BeamformingSolution out = feasibility_recovery(s, 0.0, ch, c);
  EXPECT_EQ(out.w[0].mat(), s.w[0].mat());
  // Infeasible input: y would exceed one.
  s.w[0] *= 0.5;
  EXPECT_THROW(feasibility_recovery(s, 0.0, ch, c), ContractViolation);
}

TEST(RankOneRecovery, RemovesComponentInvisibleToLue) {
  SystemConfig c = scalar_config();
  ChannelSet ch;
  CVec h(3), v(3), pi(3);
  h << 1.0, cdouble(0.0, 1.0), 0.5;
  v << 0.3, 1.0, cdouble(0.2, -0.4);
  pi << 0.0, 0.5, cdouble(0.0, 1.0);  // h^H pi = -0.5i + 0.5i = 0
  ASSERT_LT(std::abs(h.dot(pi)), 1e-15);
  ch.h = {h};
  BeamformingSolution s;
  s.w = {HermitianMatrix::outer(v) + HermitianMatrix::outer(pi)};
  s.q = HermitianMatrix::identity(3) * 0.1;
  const BeamformingSolution out = rank_one_recovery(s, ch, c);
  EXPECT_LT((out.w[0].mat() - HermitianMatrix::outer(v).mat()).norm(), 1e-12);
  EXPECT_LT((out.q.mat() - (s.q + HermitianMatrix::outer(pi)).mat()).norm(), 1e-12);
  // Rank-one input passes through.
  BeamformingSolution r1 = s;
  r1.w[0] = HermitianMatrix::outer(v);
  EXPECT_LT((rank_one_recovery(r1, ch, c).w[0].mat() - r1.w[0].mat()).norm(), 1e-12);
}

TEST(Recovery, DefaultInstance) {
  const SystemConfig c = default_config();
  const ChannelSet ch = default_instance(c);
  const double t = 3e5;
  PowerMinResult r = solve_power_min(t, ch, c);
  ASSERT_TRUE(r.ok());
  const BeamformingSolution r1 = rank_one_recovery(r.solution, ch, c);
  for (const auto& w : r1.w) EXPECT_LE(rank_ratio(w), 1e-6);
  EXPECT_NEAR(r1.transmit_power(), r.f_t, 1e-12 * r.f_t);
  const BeamformingSolution fr = feasibility_recovery(r1, t, ch, c);
  EXPECT_NEAR(fr.transmit_power(), r1.transmit_power(), 1e-12 * r1.transmit_power());
  const ConstraintReport rep = check_constraints(fr, r.zeta, r.eta, t, ch, c);
  for (double v : rep.psr_relative) EXPECT_LE(std::abs(v), 1e-8);
  EXPECT_LE(rep.worst_violation(), 1e-6);
  const RobustCheck rc = check_robust(fr, ch, c, 2000, 9);
  EXPECT_TRUE(rc.passed(1e-6)) << rc.worst_leakage_slack << " " << rc.worst_harvest_slack << " "
                               << rc.oracle_leakage_slack << " " << rc.oracle_harvest_slack;
}

TEST(Tmax, ScalarClosedForm) {
  const SystemConfig c = scalar_config();
  const ChannelSet ch = draw_channels(c, 2);
  const TmaxResult tm = find_tmax(Algorithm::kSdp, ch, c);
  ASSERT_FALSE(tm.outage);
  const double expect = oracle::scalar_tmax(ch.h[0], c);
  EXPECT_NEAR(tm.t_max, expect, 1e-6 * expect);
  SystemConfig big = c;
  big.p_max_w *= 2.0;
  EXPECT_GE(find_tmax(Algorithm::kSdp, ch, big).t_max, tm.t_max);
  SystemConfig tiny = c;
  tiny.p_max_w = 0.5 * oracle::scalar_power(0.0, ch.h[0], c);
  const TmaxResult out = find_tmax(Algorithm::kSdp, ch, tiny);
  EXPECT_TRUE(out.outage);
  EXPECT_EQ(out.t_max, 0.0);
}

TEST(Tmax, BudgetMet) {
  const SystemConfig c = default_config();
  const ChannelSet ch = default_instance(c);
  const TmaxResult tm = find_tmax(Algorithm::kZfbf, ch, c);
  ASSERT_FALSE(tm.outage);
  EXPECT_NEAR(tm.f_at_tmax, c.p_max_w, 1e-4 * c.p_max_w);
}

TEST(Tsbaj, ScalarMatchesGoldenSection) {
  const SystemConfig c = scalar_config();
  const ChannelSet ch = draw_channels(c, 2);
  const SearchOptions o;
  for (Algorithm a : {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf}) {
    const SeeSolution s = tsbaj(a, ch, c, o);
    ASSERT_FALSE(s.outage);
    const double tmax = oracle::scalar_tmax(ch.h[0], c);
    const double best = oracle::golden_max([&](double t) { return oracle::scalar_see(t, ch.h[0], c); }, 0.0, tmax);
    EXPECT_LE(std::abs(s.t_star - best), tmax / o.grid_divisions) << to_string(a);
    EXPECT_NEAR(s.see_star, oracle::scalar_see(s.t_star, ch.h[0], c), 1e-6 * s.see_star);
    for (std::size_t k = 1; k < s.trace.size(); ++k) EXPECT_GE(s.trace[k].asee, s.trace[k - 1].asee);
    EXPECT_LE(static_cast<int>(s.trace.size()), o.grid_divisions + 1 + 2 * o.refinements);
  }
}

TEST(Tsbaj, LargeCircuitPowerPushesToTmax) {
  SystemConfig c = scalar_config();
  c.p_sp_w = 1e6;
  const ChannelSet ch = draw_channels(c, 2);
  const SeeSolution s = sdp_tsbaj(ch, c);
  EXPECT_NEAR(s.t_star, s.t_max, 1e-9 * s.t_max);
}

TEST(Tsbaj, OrderingOnDefaultInstance) {
  const SystemConfig c = default_config();
  const ChannelSet ch = default_instance(c);
  SeeSolution ts[3], srm[3];
  const Algorithm algos[3] = {Algorithm::kSdp, Algorithm::kZfbf, Algorithm::kMrtZfbf};
  for (int a = 0; a < 3; ++a) {
    const TmaxResult tm = find_tmax(algos[a], ch, c);
    ts[a] = tsbaj(algos[a], ch, c, tm);
    srm[a] = srm_solve(algos[a], ch, c, tm);
    ASSERT_FALSE(ts[a].outage);
    EXPECT_EQ(ts[a].failed_points, 0);
    EXPECT_LE(srm[a].see_star, ts[a].see_star * (1 + 1e-9));
    EXPECT_GE(srm[a].t_star, ts[a].t_star);
    EXPECT_NEAR(rel(ts[a].see_star, ts[a].metrics.see), 0.0, 1e-6);
    for (std::size_t k = 1; k < ts[a].trace.size(); ++k) EXPECT_GE(ts[a].trace[k].asee, ts[a].trace[k - 1].asee);
  }
  EXPECT_GE(ts[0].see_star, ts[1].see_star * (1 - 1e-6));
  EXPECT_GE(ts[1].see_star, ts[2].see_star * (1 - 1e-6));
}

TEST(EvaluateAt, MatchesSearchPoint) {
  const SystemConfig c = scalar_config();
  const ChannelSet ch = draw_channels(c, 2);
  const SearchPoint p = evaluate_at(Algorithm::kSdp, 2e5, ch, c);
  EXPECT_EQ(p.status, "optimal");
  EXPECT_NEAR(p.see, oracle::scalar_see(2e5, ch.h[0], c), 1e-6 * p.see);
  EXPECT_THROW(evaluate_at(Algorithm::kSdp, -1.0, ch, c), DomainError);
}
