#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>

#include "cdplab/cdp.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/parallel.hpp"
#include "cdplab/random.hpp"
#include "cdplab/sdp.hpp"

namespace cdplab {

namespace {

struct Candidate {
  double ratio = std::numeric_limits<double>::infinity();
  double diamond = 0.0;
  ChannelPair pair;
  std::string family;
};

// Eigenbasis of rho_A with eigenvalues descending, so the last column is the
// smallest eigenvector.
ComplexMatrix descending_eigenbasis(const ComplexMatrix& h) {
  const EigenResult eig = hermitian_eigen(h);
  const std::size_t d = eig.values.size();
  ComplexMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c) u.set_col(c, eig.vectors.col(d - 1 - c));
  return u;
}

ComplexMatrix normalized_hermitian(const ComplexMatrix& m) {
  const ComplexMatrix h = m.hermitian_part();
  return h * (1.0 / frobenius_norm(h));
}

// Accept-if-better random-direction descent over Hermitian probes.
std::pair<ComplexMatrix, double> descend_probe(const BipartiteState& rho, ComplexMatrix a, int steps, Rng& rng) {
  const std::size_t d = rho.dA();
  a = normalized_hermitian(a);
  double f = probe_ratio(rho, a);
  double t = 0.3;
  for (int s = 0; s < steps && f > 1e-14; ++s) {
    const ComplexMatrix h = normalized_hermitian(random_hermitian(rng, d));
    const ComplexMatrix trial = normalized_hermitian(a + t * h);
    const double g = probe_ratio(rho, trial);
    if (g < f) {
      a = trial;
      f = g;
      t = std::min(1.0, 1.5 * t);
    } else {
      t *= 0.7;
      if (t < 1e-9) t = 0.3;
    }
  }
  return {a, f};
}

// Largest-modulus eigenvector of a Hermitian probe, after flipping the sign so
// that the matching eigenvalue is positive.
std::vector<Complex> top_direction(const ComplexMatrix& a) {
  const EigenResult eig = hermitian_eigen(a);
  const bool low = std::abs(eig.values.front()) > std::abs(eig.values.back());
  return eig.vectors.col(low ? 0 : eig.values.size() - 1);
}

void add_dense(std::vector<SdpEntry>& row, std::size_t block, const ComplexMatrix& m, double scale) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != Complex(0.0)) row.push_back({block, r, c, scale * m(r, c)});
}

// min ||Tr_A[(A (x) 1) rho]||_1 over Hermitian A with ||A||_inf <= 1 and A v = v.
// Convex for fixed v; A = 1 - W R W^dagger with W spanning v-perp and 0 <= R <= 2
// keeps the program strictly feasible. Blocks: P, Q (dB), R, T = 2 - R (dA - 1).
std::optional<ComplexMatrix> anchored_probe(const BipartiteState& rho, const std::vector<Complex>& v) {
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  const std::size_t k = dA - 1;
  const EigenResult perp = hermitian_eigen(ComplexMatrix::identity(dA) - ComplexMatrix::outer(v, v));
  ComplexMatrix w(dA, k);
  for (std::size_t c = 0; c < k; ++c) w.set_col(c, perp.vectors.col(c + 1));

  SdpProblem p;
  p.block_sizes = {dB, dB, k, k};
  p.c = {ComplexMatrix::identity(dB), ComplexMatrix::identity(dB), ComplexMatrix(k, k), ComplexMatrix(k, k)};
  const ComplexMatrix& m = rho.matrix();
  const ComplexMatrix rho_b = rho.reduced_b();
  for (const ComplexMatrix& e : hermitian_operator_basis(dB)) {
    // M(a, a') = sum_{b, b'} E(b', b) rho(a b, a' b'), so Tr(X M) = Tr((X (x) E) rho).
    ComplexMatrix partner(dA, dA);
    for (std::size_t a = 0; a < dA; ++a)
      for (std::size_t a2 = 0; a2 < dA; ++a2)
        for (std::size_t b = 0; b < dB; ++b)
          for (std::size_t b2 = 0; b2 < dB; ++b2) partner(a, a2) += e(b2, b) * m(a * dB + b, a2 * dB + b2);
    std::vector<SdpEntry> row;
    add_dense(row, 0, e, 1.0);
    add_dense(row, 1, e, -1.0);
    add_dense(row, 2, (w.adjoint() * partner * w).hermitian_part(), 1.0);
    p.constraints.push_back(std::move(row));
    p.b.push_back(hs_inner(e, rho_b).real());
  }
  for (const ComplexMatrix& f : hermitian_operator_basis(k)) {
    std::vector<SdpEntry> row;
    add_dense(row, 2, f, 1.0);
    add_dense(row, 3, f, 1.0);
    p.constraints.push_back(std::move(row));
    p.b.push_back(2.0 * f.trace().real());
  }
  try {
    const SdpSolution sol = solve_sdp(p);
    return (ComplexMatrix::identity(dA) - w * sol.x[2] * w.adjoint()).hermitian_part();
  } catch (const SolverFailed&) {
    return std::nullopt;
  }
}

constexpr int kAnchorSteps = 16;

// Anchored probes from each starting direction, then accept-if-better moves of
// the best anchor.
std::pair<ComplexMatrix, double> refine_anchored(const BipartiteState& rho, const std::vector<std::vector<Complex>>& dirs,
                                                 ComplexMatrix a, double f, Rng& rng) {
  std::vector<Complex> best_v;
  auto attempt = [&](const std::vector<Complex>& v) {
    const auto probe = anchored_probe(rho, v);
    if (!probe) return false;
    const double g = probe_ratio(rho, *probe);
    if (!(g < f)) return false;
    a = *probe;
    f = g;
    best_v = v;
    return true;
  };
  for (const auto& v : dirs) attempt(v);
  if (best_v.empty()) best_v = top_direction(a);
  double t = 0.3;
  for (int s = 0; s < kAnchorSteps && f > 1e-14; ++s) {
    std::vector<Complex> v = best_v;
    for (auto& z : v) z += t * rng.complex_normal();
    const double n = vector_norm(v);
    for (auto& z : v) z /= n;
    if (attempt(v)) {
      t = std::min(1.0, 1.5 * t);
    } else {
      t *= 0.5;
    }
  }
  return {a, f};
}

// K_k (sum K^dagger K)^{-1/2}
std::vector<ComplexMatrix> renormalize_kraus(std::vector<ComplexMatrix> kraus) {
  ComplexMatrix s(kraus[0].cols(), kraus[0].cols());
  for (const auto& k : kraus) s += k.adjoint() * k;
  const ComplexMatrix inv_sqrt =
      hermitian_function(s.hermitian_part(), [](double x) { return x > 1e-300 ? 1.0 / std::sqrt(x) : 0.0; });
  for (auto& k : kraus) k = k * inv_sqrt;
  return kraus;
}

QuantumChannel perturb_channel(const QuantumChannel& ch, double t, Rng& rng) {
  std::vector<ComplexMatrix> kraus = ch.kraus();
  for (auto& k : kraus) {
    const double scale = t / std::sqrt(static_cast<double>(k.size()));
    k.add_scaled(scale, random_ginibre(rng, k.rows(), k.cols()));
  }
  return QuantumChannel(renormalize_kraus(std::move(kraus)));
}

struct PairRun {
  double ratio = std::numeric_limits<double>::infinity();
  double diamond = 0.0;
  std::optional<ChannelPair> pair;
};

PairRun random_pair_descent(const BipartiteState& rho, int steps, Rng rng) {
  const std::size_t dA = rho.dA();
  const std::size_t d_out = 2 + rng.index(dA);
  // At least ceil(dA / d_out) Kraus operators so that the isometry exists.
  const std::size_t n_min = (dA + d_out - 1) / d_out;
  const std::size_t n0 = std::max(n_min, 1 + rng.index(3));
  const std::size_t n1 = std::max(n_min, 1 + rng.index(3));
  ChannelPair pair{random_channel(rng, dA, d_out, n0), random_channel(rng, dA, d_out, n1)};
  PairRun run;
  auto evaluate = [&](const ChannelPair& p) -> std::optional<WitnessEvaluation> {
    const WitnessEvaluation ev = evaluate_witness(rho, p);
    if (ev.diamond < 1e-6) return std::nullopt;
    return ev;
  };
  try {
    if (auto ev = evaluate(pair)) {
      run.ratio = ev->ratio;
      run.diamond = ev->diamond;
      run.pair = pair;
    }
  } catch (const InvalidInput&) {
  }
  if (!run.pair) return run;
  double t = 0.2;
  for (int s = 0; s < steps; ++s) {
    ChannelPair trial = *run.pair;
    if (s % 2 == 0) {
      trial.first = perturb_channel(trial.first, t, rng);
    } else {
      trial.second = perturb_channel(trial.second, t, rng);
    }
    std::optional<WitnessEvaluation> ev;
    try {
      ev = evaluate(trial);
    } catch (const InvalidInput&) {
    }
    if (ev && ev->ratio < run.ratio) {
      run.ratio = ev->ratio;
      run.diamond = ev->diamond;
      run.pair = std::move(trial);
      t = std::min(1.0, 1.5 * t);
    } else {
      t *= 0.6;
    }
  }
  return run;
}

// ||rho - (Lambda_U (x) id)(rho)||_1 for the block dephasing with the given
// labels in basis U: the off-block part of rho in the rotated frame.
double dephasing_disturbance(const BipartiteState& rho, const ComplexMatrix& u, const std::vector<std::size_t>& labels) {
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  const ComplexMatrix ub = kron(u, ComplexMatrix::identity(dB));
  ComplexMatrix m = ub.adjoint() * rho.matrix() * ub;
  for (std::size_t a = 0; a < dA; ++a)
    for (std::size_t a2 = 0; a2 < dA; ++a2)
      if (labels[a] == labels[a2])
        for (std::size_t b = 0; b < dB; ++b)
          for (std::size_t b2 = 0; b2 < dB; ++b2) m(a * dB + b, a2 * dB + b2) = 0.0;
  return trace_norm_hermitian(m.hermitian_part());
}

struct BasisRun {
  double value = std::numeric_limits<double>::infinity();
  ComplexMatrix basis;
};

constexpr int kBasisSteps = 300;

// Multi-restart accept-if-better descent over U <- U exp(i t H).
BasisRun minimize_over_bases(const BipartiteState& rho, const std::vector<std::size_t>& labels, int restarts,
                             const Rng& root) {
  const std::size_t dA = rho.dA();
  BasisRun best;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Rng rng = root.split(static_cast<std::uint64_t>(r));
    ComplexMatrix u = r == 0 ? descending_eigenbasis(rho.reduced_a()) : random_unitary(rng, dA);
    double f = dephasing_disturbance(rho, u, labels);
    double t = 0.5;
    for (int s = 0; s < kBasisSteps && f > 1e-13 && t > 1e-8; ++s) {
      const ComplexMatrix h = normalized_hermitian(random_hermitian(rng, dA));
      const ComplexMatrix trial = u * unitary_exp(h, t);
      const double g = dephasing_disturbance(rho, trial, labels);
      if (g < f) {
        u = trial;
        f = g;
        t = std::min(M_PI, 1.5 * t);
      } else {
        t *= 0.6;
      }
    }
    if (f < best.value) {
      best.value = f;
      best.basis = u;
    }
    if (best.value < 1e-12) break;
  }
  return best;
}

// Integer partitions of n into at least two parts, parts non-increasing.
void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    if (cur.size() >= 2) out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

AdversarialEstimate cdp_adversarial_estimate(const BipartiteState& rho, const EstimatorBudget& budget,
                                             std::uint64_t seed, const std::vector<ChannelPair>& warm_start) {
  const std::size_t dA = rho.dA();
  if (dA < 2) throw InvalidInput("cdp_adversarial_estimate: dA must be at least 2");
  const Rng root = Rng(seed).split("cdp_adversarial_estimate");
  Candidate best;
  auto consider = [&](const ChannelPair& pair, const std::string& family) {
    const WitnessEvaluation ev = evaluate_witness(rho, pair);
    if (ev.ratio < best.ratio) best = {ev.ratio, ev.diamond, pair, family};
  };

  // (a) dephasing witness in the eigenbasis of rho_A.
  consider(pure_witness_channels(descending_eigenbasis(rho.reduced_a())), "eq9");

  // (b) perturbation pairs: start probes from the OSD bound, the factors and the
  // Gell-Mann elements, then descend over general Hermitian probes.
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho);
  const GeneralBounds gb = cdp_bounds_general(osd, budget.rotations, derive_seed(seed, "osd-rotations"));
  std::vector<std::pair<double, ComplexMatrix>> starts;
  starts.emplace_back(probe_ratio(rho, gb.best_probe), gb.best_probe);
  for (const auto& a : osd.ops_A) starts.emplace_back(probe_ratio(rho, a), a);
  for (const auto& f : hermitian_operator_basis(dA)) starts.emplace_back(probe_ratio(rho, f), f);
  std::stable_sort(starts.begin(), starts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  ComplexMatrix best_probe = starts.front().second;
  double best_probe_value = starts.front().first;
  const std::size_t n_starts = std::min<std::size_t>(starts.size(), std::max(1, budget.probe_starts));
  for (std::size_t s = 0; s < n_starts; ++s) {
    Rng rng = root.split("probe").split(static_cast<std::uint64_t>(s));
    auto [a, f] = descend_probe(rho, starts[s].second, budget.probe_steps, rng);
    if (f < best_probe_value) {
      best_probe_value = f;
      best_probe = a;
    }
  }
  {
    std::vector<std::vector<Complex>> dirs{top_direction(best_probe)};
    const ComplexMatrix eb = descending_eigenbasis(rho.reduced_a());
    for (std::size_t c = 0; c < dA; ++c) dirs.push_back(eb.col(c));
    Rng rng = root.split("anchored");
    std::tie(best_probe, best_probe_value) = refine_anchored(rho, dirs, best_probe, best_probe_value, rng);
  }
  const ComplexMatrix g = hermitian_operator_basis(dA)[1];
  consider(perturbation_channels(best_probe, g, -1.0 * g).channels, "perturbation");

  // (c) random CPTP pairs with accept-if-better descent.
  const Rng pair_root = root.split("random-pairs");
  const auto runs = parallel_map(static_cast<std::size_t>(std::max(0, budget.random_pairs)), [&](std::size_t i) {
    return random_pair_descent(rho, budget.descent_steps, pair_root.split(static_cast<std::uint64_t>(i)));
  });
  for (const auto& run : runs)
    if (run.pair && run.ratio < best.ratio) best = {run.ratio, run.diamond, *run.pair, "random-descent"};

  for (const auto& w : warm_start) {
    if (w.first.d_in() != dA || w.second.d_in() != dA) continue;
    try {
      consider(w, "warm-start");
    } catch (const InvalidInput&) {
    }
  }

  AdversarialEstimate out;
  out.estimate = best.ratio;
  out.witness = best.pair;
  out.family = best.family;
  out.witness_diamond = best.diamond;
  return out;
}

double cdp_discord_bound(const BipartiteState& rho, int restarts, std::uint64_t seed) {
  std::vector<std::size_t> labels(rho.dA());
  for (std::size_t a = 0; a < labels.size(); ++a) labels[a] = a;
  const BasisRun run = minimize_over_bases(rho, labels, restarts, Rng(seed).split("cdp_discord_bound"));
  return std::max(0.0, run.value);
}

double cdp_osr_reduction_bound(const BipartiteState& rho, int restarts, std::uint64_t seed, double threshold) {
  const std::size_t dA = rho.dA();
  const std::size_t full = dA * dA;
  if (operator_schmidt(rho, threshold).rank < full) return 0.0;
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  partitions(dA, dA, cur, parts);
  const Rng root = Rng(seed).split("cdp_osr_reduction_bound");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < parts.size(); ++p) {
    std::vector<std::size_t> labels;
    for (std::size_t blk = 0; blk < parts[p].size(); ++blk) labels.insert(labels.end(), parts[p][blk], blk);
    const BasisRun run = minimize_over_bases(rho, labels, restarts, root.split(static_cast<std::uint64_t>(p)));
    if (!(run.value < best)) continue;
    const QuantumChannel lambda = block_dephasing_channel(run.basis, labels);
    if (operator_schmidt(lambda.apply_on_a(rho), threshold).rank >= full) continue;
    best = run.value;
  }
  return std::isfinite(best) ? best : 2.0;
}

}  // namespace cdplab
