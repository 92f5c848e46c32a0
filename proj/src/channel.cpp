#include "seebf/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "seebf/errors.hpp"

namespace seebf {

void ChannelSet::validate() const {
  if (h.empty()) throw InvalidConfig("ChannelSet: no LUE channels");
  const Eigen::Index n = n_tx();
  auto check = [n](const std::vector<CVec>& vs, const char* name) {
    for (const auto& v : vs) {
      if (v.size() != n) throw DimensionMismatch(std::string("ChannelSet: ") + name);
    }
  };
  check(h, "h");
  check(g_e_bar, "g_e_bar");
  check(g_h_bar, "g_h_bar");
  if (theta_e.size() != g_e_bar.size() || theta_h.size() != g_h_bar.size()) {
    throw DimensionMismatch("ChannelSet: radius count");
  }
  for (double t : theta_e) {
    if (!(t >= 0.0)) throw InvalidConfig("ChannelSet: negative radius");
  }
  for (double t : theta_h) {
    if (!(t >= 0.0)) throw InvalidConfig("ChannelSet: negative radius");
  }
}

double pathloss_db(double carrier_hz, double distance_m) {
  if (!(carrier_hz > 0.0) || !(distance_m > 0.0)) {
    throw DomainError("pathloss_db: carrier and distance must be positive");
  }
  return 17.3 + 24.9 * std::log10(carrier_hz / 1e9) + 38.3 * std::log10(distance_m);
}

double channel_variance(double carrier_hz, double distance_m) {
  return std::pow(10.0, -pathloss_db(carrier_hz, distance_m) / 10.0);
}

double uncertainty_radius_sq(const SystemConfig& config, double distance_m) {
  const double variance = channel_variance(config.carrier_hz, distance_m);
  switch (config.radius_policy) {
    case RadiusPolicy::kFractionOfVariance:
      return config.uncertainty_fraction * variance;
    case RadiusPolicy::kFractionOfAttenuation:
      return config.uncertainty_fraction / variance;
  }
  return 0.0;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

CVec draw_cscg(std::mt19937_64& rng, Eigen::Index n, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = cdouble(re, im);
  }
  return v;
}

}  // namespace

ChannelSet draw_channels(const SystemConfig& config, std::uint64_t seed) {
  config.validate();
  std::mt19937_64 rng(seed);
  ChannelSet ch;
  for (int n = 0; n < config.n_lue; ++n) {
    ch.h.push_back(draw_cscg(rng, config.n_tx,
                             channel_variance(config.carrier_hz, config.lue_distances_m[n])));
  }
  for (int m = 0; m < config.n_eve; ++m) {
    const double d = config.eve_distances_m[m];
    ch.g_e_bar.push_back(draw_cscg(rng, config.n_tx, channel_variance(config.carrier_hz, d)));
    ch.theta_e.push_back(std::sqrt(uncertainty_radius_sq(config, d)));
  }
  for (int i = 0; i < config.n_ehn; ++i) {
    const double d = config.ehn_distances_m[i];
    ch.g_h_bar.push_back(draw_cscg(rng, config.n_tx, channel_variance(config.carrier_hz, d)));
    ch.theta_h.push_back(std::sqrt(uncertainty_radius_sq(config, d)));
  }
  return ch;
}

namespace {

// min sum_j lam_j |u_j|^2  s.t.  ||u - c|| <= radius, in the eigenbasis.
// Returns u - c.
struct TrsResult {
  CVec step;
  double mu = 0.0;
};

TrsResult solve_trs_min(const RVec& lam, const CVec& c, double radius) {
  const Eigen::Index n = lam.size();
  TrsResult res;
  res.step = CVec::Zero(n);
  if (radius == 0.0 || n == 0) return res;

  const double lam_min = lam.minCoeff();
  const double lam_scale = std::max(lam.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double tie = 1e-12 * lam_scale;
  const double mu_low = std::max(0.0, -lam_min);

  auto phi = [&](double mu, double* dphi) {
    double v = 0.0, d = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double den = lam(j) + mu;
      const double num = lam(j) * lam(j) * std::norm(c(j));
      if (num == 0.0) continue;
      v += num / (den * den);
      d += -2.0 * num / (den * den * den);
    }
    if (dphi) *dphi = d;
    return v;
  };
  auto step_at = [&](double mu) {
    CVec s(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      s(j) = (lam(j) == 0.0) ? cdouble(0.0) : -lam(j) * c(j) / (lam(j) + mu);
    }
    return s;
  };

  const double r2 = radius * radius;
  const double c_norm2 = c.squaredNorm();

  if (lam_min >= -tie) {
    // Convex: an interior minimiser exists when c is within reach of ker(lam).
    double v = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (lam(j) > tie) v += std::norm(c(j));
    }
    if (v <= r2) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (lam(j) > tie) res.step(j) = -c(j);
      }
      return res;
    }
  } else {
    // Components that become singular at mu_low.
    std::vector<bool> singular(n, false);
    double singular_mass = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(lam(j) + mu_low) <= tie) {
        singular[j] = true;
        singular_mass += std::norm(c(j));
      }
    }
    if (singular_mass <= 1e-28 * std::max(c_norm2, 1e-300)) {
      double v = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (singular[j]) continue;
        const double den = lam(j) + mu_low;
        v += lam(j) * lam(j) * std::norm(c(j)) / (den * den);
      }
      if (v <= r2) {
        // Hard case: fill the remaining radius along a singular direction.
        CVec s(n);
        Eigen::Index k = -1;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (singular[j]) {
            s(j) = -c(j);
            if (k < 0) k = j;
          } else {
            s(j) = -lam(j) * c(j) / (lam(j) + mu_low);
          }
        }
        const double rest = std::sqrt(std::max(0.0, r2 - s.squaredNorm()));
        s(k) += rest;
        res.step = s;
        res.mu = mu_low;
        return res;
      }
    }
  }

  // Boundary solution: phi(mu) = r^2 for mu > mu_low.
  double lo = mu_low;
  double hi = mu_low + lam_scale + std::sqrt(c_norm2) * lam_scale / radius + 1e-300;
  while (phi(hi, nullptr) > r2) hi = mu_low + 2.0 * (hi - mu_low);

  double mu = hi;
  for (int it = 0; it < 200; ++it) {
    double dphi = 0.0;
    const double v = phi(mu, &dphi);
    if (v > r2) lo = mu; else hi = mu;
    if (std::abs(v - r2) <= 1e-15 * r2 || hi - lo <= 1e-15 * hi) break;
    // Newton on 1/sqrt(phi) - 1/r, which is nearly linear in mu.
    const double sv = std::sqrt(v);
    const double f = 1.0 / sv - 1.0 / radius;
    const double df = -0.5 * dphi / (v * sv);
    double next = mu - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    mu = next;
  }
  res.step = step_at(mu);
  res.mu = mu;
  return res;
}

}  // namespace

WorstCase worst_case_quadratic(const UncertaintyBall& ball, const HermitianMatrix& x,
                               Sense sense) {
  if (ball.center.size() != x.dim()) throw DimensionMismatch("worst_case_quadratic");
  if (!(ball.radius >= 0.0)) throw DomainError("worst_case_quadratic: negative radius");

  auto [lam, u] = x.eigen();
  const double sign = (sense == Sense::kMax) ? -1.0 : 1.0;
  const RVec signed_lam = sign * lam;
  const CVec c = u.adjoint() * ball.center;

  TrsResult trs = solve_trs_min(signed_lam, c, ball.radius);

  WorstCase wc;
  wc.delta = u * trs.step;
  // Remove rounding drift outside the ball.
  const double dn = wc.delta.norm();
  if (dn > ball.radius && dn > 0.0) wc.delta *= ball.radius / dn;
  wc.multiplier = trs.mu;
  const CVec point = ball.center + wc.delta;
  wc.value = x.quadratic(point);

  // Stationarity (sign*X + mu I) point = mu * center, complementarity on the radius.
  const CVec stat = sign * (x.mat() * point) + trs.mu * wc.delta;
  const double scale = std::max({1.0, lam.cwiseAbs().maxCoeff() * point.norm(),
                                 trs.mu * ball.center.norm()});
  double comp = 0.0;
  if (ball.radius > 0.0 && trs.mu > 0.0) {
    comp = std::abs(wc.delta.norm() - ball.radius) / ball.radius;
  }
  // A zero radius pins the point; stationarity carries no information.
  wc.kkt_residual = ball.radius > 0.0 ? std::max(stat.norm() / scale, comp) : 0.0;
  return wc;
}

std::vector<CVec> sample_ball(const UncertaintyBall& ball, int count, std::uint64_t seed) {
  if (count < 0) throw DomainError("sample_ball: negative count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Index n = ball.center.size();
  const double real_dim = 2.0 * static_cast<double>(n);
  std::vector<CVec> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    CVec d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      d(i) = cdouble(re, im);
    }
    const double norm = d.norm();
    const double r = ball.radius * std::pow(unif(rng), 1.0 / real_dim);
    if (norm > 0.0) d *= r / norm;
    if (ball.radius == 0.0) d.setZero();
    out.push_back(ball.center + d);
  }
  return out;
}

}  // namespace seebf
