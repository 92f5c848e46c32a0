#include "seebf/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "seebf/errors.hpp"

namespace seebf::sdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const MatrixGroup& group_of(const ConicProblem& p, const MatrixTerm& t) {
  return p.groups[static_cast<std::size_t>(t.group)];
}

// A_b(y) without the constant.
RMat block_linear(const ConicProblem& p, const PsdBlock& b, const RVec& y) {
  RMat f = RMat::Zero(b.size(), b.size());
  for (const auto& t : b.matrix_terms) {
    const RMat v = group_of(p, t).embedded_value(y);
    f.noalias() += t.coef * (t.map.transpose() * v * t.map);
  }
  for (const auto& t : b.scalar_terms) f += y(t.var) * t.coef;
  return f;
}

// out_i += Tr(A_{b,i} m) for symmetric m.
void adjoint_add(const ConicProblem& p, const PsdBlock& b, const RMat& m, RVec& out) {
  for (const auto& t : b.matrix_terms) {
    const auto& g = group_of(p, t);
    const RMat gm = t.map * m * t.map.transpose();
    for (int q = 0; q < g.param_count(); ++q) {
      double acc = 0.0;
      for (const auto& e : g.basis()[q]) acc += e.value * gm(e.col, e.row);
      out(g.offset() + q) += t.coef * acc;
    }
  }
  for (const auto& t : b.scalar_terms) out(t.var) += t.coef.cwiseProduct(m).sum();
}

// Nearest real embedding [[A, -B], [B, A]] of a complex Hermitian matrix.
RMat embedding_part(const RMat& a) {
  const Eigen::Index k = a.rows() / 2;
  const RMat re = 0.25 * (a.topLeftCorner(k, k) + a.bottomRightCorner(k, k) + a.topLeftCorner(k, k).transpose() +
                          a.bottomRightCorner(k, k).transpose());
  const RMat im = 0.25 * (a.bottomLeftCorner(k, k) - a.topRightCorner(k, k) -
                          a.bottomLeftCorner(k, k).transpose() + a.topRightCorner(k, k).transpose());
  RMat out(2 * k, 2 * k);
  out << re, -im, im, re;
  return out;
}

CMat complex_part(const RMat& m, Eigen::Index rows, Eigen::Index cols) {
  CMat out(rows, cols);
  out.real() = m.topLeftCorner(rows, cols);
  out.imag() = m.bottomLeftCorner(rows, cols);
  return out;
}

// Matrix-matrix Schur entries of a Hermitian block for unit coefficients,
// computed on the complex form: Tr(A_p X A_q Zi) = 2 Re Tr(B_p P B_q R) with
// P = L1 X L2^H and R = L2 Zi L1^H, and Tr(E_ab P E_cd R) = P(b, c) R(d, a).
RMat schur_pair_complex(const MatrixGroup& g1, const MatrixGroup& g2, const CMat& pc, const CMat& rc) {
  const int k1 = g1.dim(), k2 = g2.dim();
  // kt(a * k1 + b, c * k2 + d) = P(b, c) R(d, a)
  CMat kt(k1 * k1, k2 * k2);
  for (int a = 0; a < k1; ++a) {
    for (int b = 0; b < k1; ++b) {
      const Eigen::Index row = a * k1 + b;
      for (int c = 0; c < k2; ++c) {
        const cdouble pbc = pc(b, c);
        for (int d = 0; d < k2; ++d) kt(row, c * k2 + d) = pbc * rc(d, a);
      }
    }
  }
  const auto& cb1 = g1.complex_basis();
  const auto& cb2 = g2.complex_basis();
  RMat u(g1.param_count(), g2.param_count());
  CVec sp(k2 * k2);
  for (int pp = 0; pp < g1.param_count(); ++pp) {
    sp.setZero();
    for (const auto& [ab, alpha] : cb1[static_cast<std::size_t>(pp)]) {
      sp += alpha * kt.row(ab.first * k1 + ab.second).transpose();
    }
    for (int qq = 0; qq < g2.param_count(); ++qq) {
      cdouble acc = 0.0;
      for (const auto& [cd, beta] : cb2[static_cast<std::size_t>(qq)]) acc += beta * sp(cd.first * k2 + cd.second);
      u(pp, qq) = 2.0 * acc.real();
    }
  }
  return u;
}

// Adds the block's contribution Tr(A_i X A_j Zi) to the Schur matrix.
void schur_add(const ConicProblem& p, const PsdBlock& b, const RMat& x, const RMat& zi, RMat& m) {
  const auto& mt = b.matrix_terms;
  const auto& st = b.scalar_terms;
  const bool herm = b.hermitian;
  if (herm) {
    const Eigen::Index k = b.size() / 2;
    // Averaging both halves cancels most of the inversion error in zi.
    const CMat xc = complex_part(embedding_part(x), k, k);
    const CMat zc = complex_part(embedding_part(zi), k, k);
    // Terms sharing a map and group size differ only by their coefficient.
    std::vector<CMat> lc;
    std::vector<std::size_t> cls(mt.size());
    for (std::size_t i = 0; i < mt.size(); ++i) {
      const CMat li = complex_part(mt[i].map, mt[i].map.rows() / 2, k);
      cls[i] = lc.size();
      for (std::size_t c = 0; c < lc.size(); ++c) {
        if (lc[c].rows() == li.rows() && lc[c] == li) {
          cls[i] = c;
          break;
        }
      }
      if (cls[i] == lc.size()) lc.push_back(li);
    }
    std::vector<RMat> unit(lc.size() * lc.size());
    for (std::size_t i1 = 0; i1 < mt.size(); ++i1) {
      const auto& g1 = group_of(p, mt[i1]);
      for (std::size_t i2 = i1; i2 < mt.size(); ++i2) {
        const auto& g2 = group_of(p, mt[i2]);
        RMat& u = unit[cls[i1] * lc.size() + cls[i2]];
        if (u.size() == 0) {
          const CMat& l1 = lc[cls[i1]];
          const CMat& l2 = lc[cls[i2]];
          u = schur_pair_complex(g1, g2, l1 * xc * l2.adjoint(), l2 * zc * l1.adjoint());
        }
        const double cc = mt[i1].coef * mt[i2].coef;
        m.block(g1.offset(), g2.offset(), g1.param_count(), g2.param_count()) += cc * u;
        if (i1 != i2) m.block(g2.offset(), g1.offset(), g2.param_count(), g1.param_count()) += cc * u.transpose();
      }
    }
  }
  for (std::size_t i1 = 0; i1 < mt.size(); ++i1) {
    const auto& t1 = mt[i1];
    const auto& g1 = group_of(p, t1);
    const RMat xl1 = x * t1.map.transpose();   // d x s1
    if (!herm) {
      const RMat zil1 = zi * t1.map.transpose();  // d x s1
      for (std::size_t i2 = i1; i2 < mt.size(); ++i2) {
        const auto& t2 = mt[i2];
        const auto& g2 = group_of(p, t2);
        const RMat pm = t2.map * xl1;   // L2 X L1^T  (s2 x s1)
        const RMat rm = t2.map * zil1;  // L2 Zi L1^T (s2 x s1)
        const double cc = t1.coef * t2.coef;
        // Tr(B_p L1 X L2^T B_q L2 Zi L1^T) = sum e f P1(b,c) R(d,a)
        // with P1 = L1 X L2^T = pm^T and R = L2 Zi L1^T = rm.
        for (int pp = 0; pp < g1.param_count(); ++pp) {
          const auto& bp = g1.basis()[pp];
          for (int qq = 0; qq < g2.param_count(); ++qq) {
            const auto& bq = g2.basis()[qq];
            double acc = 0.0;
            for (const auto& e : bp) {
              for (const auto& f : bq) acc += e.value * f.value * pm(f.row, e.col) * rm(f.col, e.row);
            }
            acc *= cc;
            m(g1.offset() + pp, g2.offset() + qq) += acc;
            if (i1 != i2) m(g2.offset() + qq, g1.offset() + pp) += acc;
          }
        }
      }
    }
    for (const auto& s : st) {
      // Tr(S X A_p Zi) = coef Tr(B_p L1 Zi S X L1^T)
      const RMat bm = t1.map * zi * s.coef * xl1;
      for (int pp = 0; pp < g1.param_count(); ++pp) {
        double acc = 0.0;
        for (const auto& e : g1.basis()[pp]) acc += e.value * bm(e.col, e.row);
        acc *= t1.coef;
        m(s.var, g1.offset() + pp) += acc;
        m(g1.offset() + pp, s.var) += acc;
      }
    }
  }
  for (std::size_t i1 = 0; i1 < st.size(); ++i1) {
    const RMat sx = st[i1].coef * x;
    for (std::size_t i2 = i1; i2 < st.size(); ++i2) {
      const double v = (sx * st[i2].coef).cwiseProduct(zi.transpose()).sum();
      m(st[i1].var, st[i2].var) += v;
      if (i1 != i2) m(st[i2].var, st[i1].var) += v;
    }
  }
}

// Largest alpha (possibly infinite) with x + alpha dx PSD.
double max_step_psd(const RMat& x, const RMat& dx) {
  if (x.size() == 0) return kInf;
  Eigen::LLT<RMat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  RMat t = llt.matrixL().solve(dx);
  t = llt.matrixL().solve(t.transpose()).transpose();
  t = 0.5 * (t + t.transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<RMat>(t, Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double max_step_lin(const RVec& x, const RVec& dx) {
  double a = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  }
  return a;
}

RMat sym(const RMat& a) { return 0.5 * (a + a.transpose()); }



bool invert_pd(const RMat& z, RMat& zi) {
  if (z.size() == 0) {
    zi = z;
    return true;
  }
  Eigen::LLT<RMat> llt(z);
  if (llt.info() != Eigen::Success) return false;
  zi = llt.solve(RMat::Identity(z.rows(), z.cols()));
  zi = sym(zi);
  return true;
}

// Frobenius norms of every coefficient matrix A_{b,i} touching block b.
std::vector<std::pair<int, double>> coefficient_norms(const ConicProblem& p, const PsdBlock& b) {
  std::vector<std::pair<int, double>> out;
  for (const auto& t : b.matrix_terms) {
    const auto& g = group_of(p, t);
    for (int q = 0; q < g.param_count(); ++q) {
      RMat a = RMat::Zero(b.size(), b.size());
      for (const auto& e : g.basis()[q]) {
        a.noalias() += e.value * t.map.row(e.row).transpose() * t.map.row(e.col);
      }
      out.emplace_back(g.offset() + q, std::abs(t.coef) * a.norm());
    }
  }
  for (const auto& t : b.scalar_terms) out.emplace_back(t.var, t.coef.norm());
  return out;
}

struct Direction {
  RVec dy, dlambda, dx_lin, ds_lin;
  std::vector<RMat> dx, dz;
};

}  // namespace

ConicSolution solve(const ConicProblem& p, const SolverOptions& opts, const ConicSolution* warm) {
  p.validate();
  const int n = p.num_vars;
  const std::size_t nb = p.blocks.size();
  const Eigen::Index nl = p.lin_a.rows();
  const Eigen::Index ne = p.eq_a.rows();
  const RMat lin_a = nl > 0 ? p.lin_a : RMat::Zero(0, n);
  const RMat eq_a = ne > 0 ? p.eq_a : RMat::Zero(0, n);

  double ncone = static_cast<double>(nl);
  for (const auto& b : p.blocks) ncone += static_cast<double>(b.size());
  if (ncone <= 0.0) throw DomainError("sdp::solve: problem has no conic constraints");

  double data_norm = p.lin_b.norm() + p.eq_b.norm();
  for (const auto& b : p.blocks) data_norm += b.constant.norm();
  const double c_norm = p.objective.norm();

  ConicSolution s;
  RVec y = RVec::Zero(n);
  RVec lam = RVec::Zero(ne);
  RVec xl(nl), sl(nl);
  std::vector<RMat> xb(nb), zb(nb);

  const bool use_warm = warm != nullptr && warm->y.size() == n && warm->slack.size() == nb &&
                        warm->multiplier.size() == nb && warm->lin_slack.size() == nl &&
                        warm->lin_multiplier.size() == nl && warm->eq_multiplier.size() == ne;
  if (use_warm) {
    y = warm->y;
    lam = warm->eq_multiplier;
    xl = warm->lin_multiplier.cwiseMax(1e-14);
    sl = warm->lin_slack.cwiseMax(1e-14);
    for (std::size_t b = 0; b < nb; ++b) {
      xb[b] = warm->multiplier[b];
      zb[b] = warm->slack[b];
      if (xb[b].rows() != p.blocks[b].size() || zb[b].rows() != p.blocks[b].size()) {
        throw DimensionMismatch("sdp::solve: warm start block size");
      }
    }
  } else {
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& blk = p.blocks[b];
      const double d = static_cast<double>(blk.size());
      double zp = std::max(10.0, std::sqrt(d));
      double zd = std::max({10.0, std::sqrt(d), blk.constant.norm()});
      for (const auto& [var, nrm] : coefficient_norms(p, blk)) {
        zp = std::max(zp, d * (1.0 + std::abs(p.objective(var))) / (1.0 + nrm));
        zd = std::max(zd, nrm);
      }
      xb[b] = zp * RMat::Identity(blk.size(), blk.size());
      zb[b] = zd * RMat::Identity(blk.size(), blk.size());
    }
    for (Eigen::Index r = 0; r < nl; ++r) {
      double zp = 10.0, zd = std::max(10.0, std::abs(p.lin_b(r)));
      for (int i = 0; i < n; ++i) {
        const double a = std::abs(lin_a(r, i));
        if (a == 0.0) continue;
        zp = std::max(zp, (1.0 + std::abs(p.objective(i))) / (1.0 + a));
        zd = std::max(zd, a);
      }
      xl(r) = zp;
      sl(r) = zd;
    }
  }

  std::vector<RMat> fy(nb), rb(nb), zi(nb);
  int stalls = 0;
  std::vector<double> dres_history;
  for (int iter = 0;; ++iter) {
    s.iterations = iter;
    // Residuals and objectives.
    double pres2 = 0.0, ctx = 0.0, mu = 0.0;
    RVec aty = RVec::Zero(n);
    for (std::size_t b = 0; b < nb; ++b) {
      const auto& blk = p.blocks[b];
      fy[b] = blk.constant + block_linear(p, blk, y);
      rb[b] = fy[b] - zb[b];
      pres2 += rb[b].squaredNorm();
      ctx += blk.constant.cwiseProduct(xb[b]).sum();
      mu += xb[b].cwiseProduct(zb[b]).sum();
      adjoint_add(p, blk, xb[b], aty);
    }
    RVec rl = RVec::Zero(nl);
    if (nl > 0) {
      rl = lin_a * y + p.lin_b - sl;
      pres2 += rl.squaredNorm();
      aty += lin_a.transpose() * xl;
      mu += xl.dot(sl);
    }
    RVec re = RVec::Zero(ne);
    if (ne > 0) {
      re = p.eq_b - eq_a * y;
      pres2 += re.squaredNorm();
      aty += eq_a.transpose() * lam;
    }
    mu /= ncone;
    const RVec rd = p.objective - aty;
    const double pobj = p.objective.dot(y);
    const double dobj = -ctx - (nl > 0 ? p.lin_b.dot(xl) : 0.0) + (ne > 0 ? p.eq_b.dot(lam) : 0.0);
    s.primal_residual = std::sqrt(pres2) / (1.0 + data_norm);
    s.dual_residual = rd.norm() / (1.0 + c_norm);
    s.gap = mu * ncone / (1.0 + std::abs(pobj) + std::abs(dobj));
    s.objective = pobj + p.objective_offset;
    s.dual_objective = dobj + p.objective_offset;

    auto finish = [&](Status st, const std::string& msg) {
      s.status = st;
      s.message = msg;
      s.y = y;
      s.slack = zb;
      s.multiplier = xb;
      s.lin_slack = sl;
      s.lin_multiplier = xl;
      s.eq_multiplier = lam;
      return s;
    };

    if (opts.verbose) {
      std::fprintf(stderr, "%3d pobj %+.10e dobj %+.10e pres %.2e dres %.2e gap %.2e mu %.2e\n", iter,
                   s.objective, s.dual_objective, s.primal_residual, s.dual_residual, s.gap, mu);
    }
    if (s.primal_residual <= opts.tol && s.dual_residual <= opts.tol && s.gap <= opts.tol) {
      return finish(Status::kOptimal, "converged");
    }
    dres_history.push_back(s.dual_residual);
    if (s.primal_residual <= opts.tol && s.gap <= opts.tol && s.dual_residual <= opts.relaxed_tol &&
        dres_history.size() > 5 && s.dual_residual > 0.5 * dres_history[dres_history.size() - 6]) {
      return finish(Status::kOptimal, "converged, dual residual stalled");
    }
    // Farkas-type certificate: A^*X + A_l^T x + E^T lambda ~ 0 with positive dual objective.
    if (dobj > 0.0 && s.primal_residual > opts.tol) {
      const double cert = aty.norm() / dobj;
      if (cert < opts.infeasibility_tol) {
        s.certificate_residual = cert;
        return finish(Status::kInfeasible, "primal infeasibility certificate");
      }
    }
    if (pobj < 0.0 && s.dual_residual > opts.tol) {
      double viol = 0.0;
      for (std::size_t b = 0; b < nb; ++b) viol += (rb[b] - p.blocks[b].constant).norm();
      if (nl > 0) viol += (rl - p.lin_b).norm();
      if (ne > 0) viol += (p.eq_b - re).norm();
      const double cert = viol * std::max(1.0, c_norm) / -pobj;
      if (cert < opts.infeasibility_tol) {
        s.certificate_residual = cert;
        return finish(Status::kUnbounded, "improving ray");
      }
    }
    if (iter >= opts.max_iterations) return finish(Status::kNumericalFailure, "iteration limit");

    // Schur complement.
    RMat m = RMat::Zero(n, n);
    for (std::size_t b = 0; b < nb; ++b) {
      if (!invert_pd(zb[b], zi[b])) return finish(Status::kNumericalFailure, "slack lost definiteness");
      schur_add(p, p.blocks[b], xb[b], zi[b], m);
    }
    RVec dlin(nl);
    if (nl > 0) {
      dlin = xl.cwiseQuotient(sl);
      m.noalias() += lin_a.transpose() * dlin.asDiagonal() * lin_a;
    }
    m = sym(m);
    const double reg = 1e-14 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    m.diagonal().array() += reg;
    Eigen::LLT<RMat> llt(m);
    Eigen::LDLT<RMat> ldlt;
    const bool use_llt = llt.info() == Eigen::Success;
    if (!use_llt) {
      ldlt.compute(m);
      if (ldlt.info() != Eigen::Success) return finish(Status::kNumericalFailure, "Schur factorization");
    }
    auto hsolve = [&](const RMat& rhs) -> RMat { return use_llt ? RMat(llt.solve(rhs)) : RMat(ldlt.solve(rhs)); };
    RMat hinv_et;
    Eigen::ColPivHouseholderQR<RMat> eq_qr;
    if (ne > 0) {
      hinv_et = hsolve(eq_a.transpose());
      eq_qr.compute(eq_a * hinv_et);
    }

    // Given K_b (complementarity target minus X) and k (linear analogue), compute a direction.
    auto direction = [&](const std::vector<RMat>& kb, const RVec& kl) {
      Direction d;
      RVec h = -rd;
      for (std::size_t b = 0; b < nb; ++b) {
        adjoint_add(p, p.blocks[b], sym(kb[b] - xb[b] * rb[b] * zi[b]), h);
      }
      if (nl > 0) h += lin_a.transpose() * (kl - dlin.cwiseProduct(rl));
      RVec hy = hsolve(h);
      if (ne > 0) {
        d.dlambda = eq_qr.solve(RVec(re - eq_a * hy));
        d.dy = hy + hinv_et * d.dlambda;
      } else {
        d.dlambda = RVec::Zero(0);
        d.dy = hy;
      }
      d.dx.resize(nb);
      d.dz.resize(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        d.dz[b] = block_linear(p, p.blocks[b], d.dy) + rb[b];
        d.dx[b] = sym(kb[b] - xb[b] * d.dz[b] * zi[b]);
      }
      if (nl > 0) {
        d.ds_lin = lin_a * d.dy + rl;
        d.dx_lin = kl - dlin.cwiseProduct(d.ds_lin);
      } else {
        d.ds_lin = d.dx_lin = RVec::Zero(0);
      }
      return d;
    };
    auto steps = [&](const Direction& d) {
      double ap = max_step_lin(xl, d.dx_lin), ad = max_step_lin(sl, d.ds_lin);
      for (std::size_t b = 0; b < nb; ++b) {
        ap = std::min(ap, max_step_psd(xb[b], d.dx[b]));
        ad = std::min(ad, max_step_psd(zb[b], d.dz[b]));
      }
      return std::pair<double, double>(ap, ad);
    };

    // Predictor.
    std::vector<RMat> kb(nb);
    for (std::size_t b = 0; b < nb; ++b) kb[b] = -xb[b];
    RVec kl = -xl;
    const Direction aff = direction(kb, kl);
    auto [ap_aff, ad_aff] = steps(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      mu_aff += (xb[b] + ap_aff * aff.dx[b]).cwiseProduct(zb[b] + ad_aff * aff.dz[b]).sum();
    }
    if (nl > 0) mu_aff += (xl + ap_aff * aff.dx_lin).dot(sl + ad_aff * aff.ds_lin);
    mu_aff /= ncone;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b) {
      kb[b] = sigma * mu * zi[b] - xb[b] - aff.dx[b] * aff.dz[b] * zi[b];
    }
    if (nl > 0) {
      kl = (RVec::Constant(nl, sigma * mu) - xl.cwiseProduct(sl) - aff.dx_lin.cwiseProduct(aff.ds_lin))
               .cwiseQuotient(sl);
    }
    const Direction d = direction(kb, kl);
    auto [ap, ad] = steps(d);
    const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
    if (opts.verbose) {
      std::fprintf(stderr, "    sigma %.2e alpha_p %.3e alpha_d %.3e\n", sigma, std::min(1.0, gamma * ap),
                   std::min(1.0, gamma * ad));
    }
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (std::max(ap, ad) < 1e-10) {
      if (++stalls >= 3) return finish(Status::kNumericalFailure, "step length collapsed");
    } else {
      stalls = 0;
    }

    y += ad * d.dy;
    if (ne > 0) lam += ap * d.dlambda;
    for (std::size_t b = 0; b < nb; ++b) {
      xb[b] = sym(xb[b] + ap * d.dx[b]);
      zb[b] = sym(zb[b] + ad * d.dz[b]);
      if (p.blocks[b].hermitian) {
        xb[b] = embedding_part(xb[b]);
        zb[b] = embedding_part(zb[b]);
      }
    }
    if (nl > 0) {
      xl += ap * d.dx_lin;
      sl += ad * d.ds_lin;
    }
  }
}

}  // namespace seebf::sdp
