#include "cdplab/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cdplab/errors.hpp"

namespace cdplab {

namespace {

using Mat = Eigen::MatrixXcd;
using Blocks = std::vector<Mat>;

struct BlockEntry {
  std::size_t constraint;
  std::size_t row;
  std::size_t col;
  Complex value;
};

// Constraint entries regrouped per block, and per constraint within the block.
struct Layout {
  std::vector<std::vector<std::vector<BlockEntry>>> by_block;  // [block][touching constraint][entries]
};

Layout make_layout(const SdpProblem& p) {
  Layout l;
  l.by_block.resize(p.block_sizes.size());
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    std::vector<std::vector<BlockEntry>> per_block(p.block_sizes.size());
    for (const auto& e : p.constraints[k]) per_block[e.block].push_back({k, e.row, e.col, e.value});
    for (std::size_t blk = 0; blk < per_block.size(); ++blk)
      if (!per_block[blk].empty()) l.by_block[blk].push_back(std::move(per_block[blk]));
  }
  return l;
}

Mat herm(const Mat& m) { return (m + m.adjoint()) * 0.5; }

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].adjoint() * b[k]).trace().real();
  return s;
}

double fro(const Blocks& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

Eigen::VectorXd apply_a(const SdpProblem& p, const Blocks& x) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    double s = 0.0;
    for (const auto& e : p.constraints[k])
      s += (std::conj(e.value) * x[e.block](static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col))).real();
    out(static_cast<Eigen::Index>(k)) = s;
  }
  return out;
}

Blocks apply_at(const SdpProblem& p, const Eigen::VectorXd& y) {
  Blocks out;
  for (std::size_t n : p.block_sizes) out.push_back(Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    const double yk = y(static_cast<Eigen::Index>(k));
    if (yk == 0.0) continue;
    for (const auto& e : p.constraints[k])
      out[e.block](static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += yk * e.value;
  }
  return out;
}

// Largest alpha with m + alpha*d PSD; infinity when unbounded.
double max_step(const Blocks& m, const Blocks& d) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < m.size(); ++k) {
    Eigen::LLT<Mat> llt(m[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    const Mat linv_d = llt.matrixL().solve(d[k]);
    const Mat z = llt.matrixL().solve(linv_d.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<Mat> es(herm(z), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

Mat to_eigen(const ComplexMatrix& m) {
  Mat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  return out;
}

ComplexMatrix from_eigen(const Mat& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return out;
}

void validate(const SdpProblem& p) {
  if (p.block_sizes.empty()) throw InvalidInput("solve_sdp: no blocks");
  if (p.c.size() != p.block_sizes.size()) throw InvalidInput("solve_sdp: one objective block per variable block");
  if (p.b.size() != p.constraints.size()) throw InvalidInput("solve_sdp: b and constraint counts differ");
  for (std::size_t k = 0; k < p.c.size(); ++k)
    if (p.c[k].rows() != p.block_sizes[k] || p.c[k].cols() != p.block_sizes[k])
      throw InvalidInput("solve_sdp: objective block " + std::to_string(k) + " has the wrong size");
  for (std::size_t k = 0; k < p.constraints.size(); ++k)
    for (const auto& e : p.constraints[k])
      if (e.block >= p.block_sizes.size() || e.row >= p.block_sizes[e.block] || e.col >= p.block_sizes[e.block])
        throw InvalidInput("solve_sdp: constraint " + std::to_string(k) + " has an out-of-range entry");
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opt) {
  validate(p);
  const Layout layout = make_layout(p);
  const std::size_t nb = p.block_sizes.size();
  const auto m = static_cast<Eigen::Index>(p.constraints.size());
  Eigen::VectorXd b(m);
  for (Eigen::Index k = 0; k < m; ++k) b(k) = p.b[static_cast<std::size_t>(k)];
  Blocks c;
  for (const auto& blk : p.c) c.push_back(herm(to_eigen(blk)));

  double total_dim = 0.0;
  for (std::size_t n : p.block_sizes) total_dim += static_cast<double>(n);
  const double norm_b = b.norm();
  const double norm_c = fro(c);

  // Scaled identity start.
  double xi = std::max(10.0, std::sqrt(total_dim));
  double eta = std::max({10.0, std::sqrt(total_dim), norm_c});
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    double a_norm = 0.0;
    for (const auto& e : p.constraints[k]) a_norm += std::norm(e.value);
    a_norm = std::sqrt(a_norm);
    xi = std::max(xi, total_dim * (1.0 + std::abs(p.b[k])) / (1.0 + a_norm));
    eta = std::max(eta, a_norm);
  }
  Blocks x, s;
  for (std::size_t n : p.block_sizes) {
    const auto ni = static_cast<Eigen::Index>(n);
    x.push_back(Mat::Identity(ni, ni) * xi);
    s.push_back(Mat::Identity(ni, ni) * eta);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  SdpSolution sol;
  int stalls = 0;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd rp = b - apply_a(p, x);
    const Blocks aty = apply_at(p, y);
    Blocks rd(nb);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = c[k] - aty[k] - s[k];
    const double pobj = inner(c, x);
    const double dobj = b.dot(y);
    const double pres = rp.norm() / (1.0 + norm_b);
    const double dres = fro(rd) / (1.0 + norm_c);
    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = pobj - dobj;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.iterations = iter;

    if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(pres) || !std::isfinite(dres)) {
      throw SolverFailed("solve_sdp: numerical breakdown", pres, dres, sol.gap);
    }
    const bool converged =
        rel_gap <= opt.gap_tolerance && pres <= opt.feasibility_tolerance && dres <= opt.feasibility_tolerance;
    const bool acceptable =
        rel_gap <= opt.accept_tolerance && pres <= opt.accept_tolerance && dres <= opt.accept_tolerance;
    if (converged || (acceptable && stalls >= 3)) break;
    if (iter >= opt.max_iterations) {
      if (acceptable) break;
      throw SolverFailed("solve_sdp: iteration cap " + std::to_string(opt.max_iterations) + " reached", pres, dres,
                         sol.gap);
    }

    Blocks sinv(nb);
    bool slack_ok = true;
    for (std::size_t k = 0; k < nb && slack_ok; ++k) {
      Eigen::LLT<Mat> llt(s[k]);
      slack_ok = llt.info() == Eigen::Success;
      if (slack_ok) sinv[k] = herm(llt.solve(Mat::Identity(s[k].rows(), s[k].cols())));
    }
    if (!slack_ok) {
      if (acceptable) break;
      throw SolverFailed("solve_sdp: dual slack lost definiteness", pres, dres, sol.gap);
    }

    // Schur complement M_ij = <A_i, X A_j S^-1>.
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t blk = 0; blk < nb; ++blk) {
      const auto& touching = layout.by_block[blk];
      const Mat& xb = x[blk];
      const Mat& sb = sinv[blk];
      for (std::size_t i = 0; i < touching.size(); ++i)
        for (std::size_t j = i; j < touching.size(); ++j) {
          double acc = 0.0;
          for (const auto& e : touching[i])
            for (const auto& f : touching[j])
              acc += (std::conj(e.value) * f.value * xb(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(f.row)) *
                      sb(static_cast<Eigen::Index>(f.col), static_cast<Eigen::Index>(e.col)))
                         .real();
          const auto ci = static_cast<Eigen::Index>(touching[i].front().constraint);
          const auto cj = static_cast<Eigen::Index>(touching[j].front().constraint);
          schur(ci, cj) += acc;
          if (ci != cj) schur(cj, ci) += acc;
        }
    }
    // Near the optimum the Schur matrix can lose numerical definiteness; retry
    // with a growing diagonal shift before giving up.
    Eigen::LDLT<Eigen::MatrixXd> factor(schur);
    const double diag_scale = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    for (double shift = 1e-14; shift <= 1e-8 && (factor.info() != Eigen::Success || !factor.isPositive());
         shift *= 100.0) {
      factor.compute(schur + Eigen::MatrixXd::Identity(m, m) * (shift * diag_scale));
    }
    if (factor.info() != Eigen::Success || !factor.isPositive()) {
      if (acceptable) break;
      throw SolverFailed("solve_sdp: Schur complement factorization failed", pres, dres, sol.gap);
    }

    Blocks xrs(nb);
    for (std::size_t k = 0; k < nb; ++k) xrs[k] = x[k] * rd[k] * sinv[k];
    const Eigen::VectorXd a_xrs = apply_a(p, xrs);
    const Eigen::VectorXd a_sinv = apply_a(p, sinv);
    const double mu = inner(x, s) / total_dim;

    struct Direction {
      Eigen::VectorXd dy;
      Blocks dx, ds;
    };
    auto direction = [&](double sigma_mu, const Blocks* g) {
      Eigen::VectorXd rhs = b - sigma_mu * a_sinv + a_xrs;
      if (g) rhs += apply_a(p, *g);
      Direction d;
      d.dy = factor.solve(rhs);
      const Blocks at_dy = apply_at(p, d.dy);
      d.dx.resize(nb);
      d.ds.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        d.ds[k] = herm(rd[k] - at_dy[k]);
        Mat t = sigma_mu * sinv[k] - x[k] - x[k] * d.ds[k] * sinv[k];
        if (g) t -= (*g)[k];
        d.dx[k] = herm(t);
      }
      return d;
    };

    const Direction pred = direction(0.0, nullptr);
    const double ap_aff = std::min(1.0, opt.step_fraction * max_step(x, pred.dx));
    const double ad_aff = std::min(1.0, opt.step_fraction * max_step(s, pred.ds));
    Blocks xa(nb), sa(nb), g(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      xa[k] = x[k] + ap_aff * pred.dx[k];
      sa[k] = s[k] + ad_aff * pred.ds[k];
      g[k] = pred.dx[k] * pred.ds[k] * sinv[k];
    }
    const double mu_aff = inner(xa, sa) / total_dim;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    const Direction corr = direction(sigma * mu, &g);
    const double ap = std::min(1.0, opt.step_fraction * max_step(x, corr.dx));
    const double ad = std::min(1.0, opt.step_fraction * max_step(s, corr.ds));
    if (ap < 1e-10 && ad < 1e-10) {
      ++stalls;
      if (stalls > 5) {
        if (acceptable) break;
        throw SolverFailed("solve_sdp: step length collapsed", pres, dres, sol.gap);
      }
    } else if (ap < 1e-3 || ad < 1e-3) {
      ++stalls;
    } else {
      stalls = 0;
    }
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = herm(x[k] + ap * corr.dx[k]);
      s[k] = herm(s[k] + ad * corr.ds[k]);
    }
    y += ad * corr.dy;
  }
  for (std::size_t k = 0; k < nb; ++k) {
    sol.x.push_back(from_eigen(x[k]));
    sol.s.push_back(from_eigen(s[k]));
  }
  sol.y.assign(y.data(), y.data() + y.size());
  return sol;
}

}  // namespace cdplab
