#include "cdplab/diamond.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/parallel.hpp"
#include "cdplab/random.hpp"
#include "cdplab/sdp.hpp"

namespace cdplab {

namespace {

constexpr int kMaxAscentSteps = 2000;
constexpr double kAscentStop = 1e-14;

// sign(O) and ||O||_1 from one eigendecomposition.
struct SignedNorm {
  ComplexMatrix sign;
  double norm = 0.0;
};

SignedNorm signed_norm(const ComplexMatrix& o) {
  const EigenResult eig = hermitian_eigen(o.hermitian_part());
  const std::size_t n = eig.values.size();
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  const double zero = 1e-14 * std::max(scale, 1e-300);
  SignedNorm out;
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double v = eig.values[c];
    out.norm += std::abs(v);
    const double s = v > zero ? 1.0 : (v < -zero ? -1.0 : 0.0);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= s;
  }
  out.sign = scaled * eig.vectors.adjoint();
  return out;
}

std::vector<Complex> top_eigenvector(const ComplexMatrix& h) {
  const EigenResult eig = hermitian_eigen(h.hermitian_part());
  return eig.vectors.col(eig.values.size() - 1);
}

// Iterates `step` (returns the objective of the current point and moves to the
// next one) until the objective stops improving.
template <typename Step>
std::pair<double, int> run_ascent(Step&& step) {
  double best = -1.0;
  int flat = 0;
  int it = 0;
  for (; it < kMaxAscentSteps; ++it) {
    const double f = step();
    if (f > best + kAscentStop * std::max(1.0, f)) {
      best = f;
      flat = 0;
    } else {
      best = std::max(best, f);
      if (++flat >= 3) break;
    }
  }
  return {best, it + 1};
}

std::vector<Complex> normalized(std::vector<Complex> v) {
  const double n = vector_norm(v);
  for (auto& z : v) z /= n;
  return v;
}

struct AscentRun {
  double value = 0.0;
  std::vector<Complex> c;  // C as row-major d_in x d_in, c[a * d + i] = C(a, i)
  int iterations = 0;
};

// psi index (i, a) = C(a, i).
std::vector<Complex> input_from_c(const std::vector<Complex>& c, std::size_t d) {
  std::vector<Complex> psi(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t i = 0; i < d; ++i) psi[i * d + a] = c[a * d + i];
  return psi;
}

AscentRun ascend_diamond(const HermitianPreservingMap& map, std::vector<Complex> c) {
  const std::size_t d = map.d_in();
  const std::size_t dout = map.d_out();
  const ComplexMatrix& j = map.choi();
  AscentRun run;
  std::vector<Complex> best_c = c;
  double best_value = -1.0;
  auto step = [&]() {
    const auto psi = input_from_c(c, d);
    const ComplexMatrix out = map.apply_on_a(ComplexMatrix::outer(psi, psi), d);
    const SignedNorm sn = signed_norm(out);
    if (sn.norm > best_value) {
      best_value = sn.norm;
      best_c = c;
    }
    // H_{(a',j),(a,i)} = sum_{o,o'} M_{(o',a'),(o,a)} J_{(i,o),(j,o')}
    ComplexMatrix h(d * d, d * d);
    for (std::size_t a2 = 0; a2 < d; ++a2)
      for (std::size_t jj = 0; jj < d; ++jj)
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t i = 0; i < d; ++i) {
            Complex s = 0.0;
            for (std::size_t o = 0; o < dout; ++o)
              for (std::size_t o2 = 0; o2 < dout; ++o2)
                s += sn.sign(o2 * d + a2, o * d + a) * j(i * dout + o, jj * dout + o2);
            h(a2 * d + jj, a * d + i) = s;
          }
    c = top_eigenvector(h);
    return sn.norm;
  };
  const auto [value, iters] = run_ascent(step);
  run.value = std::max(value, best_value);
  run.c = best_c;
  run.iterations = iters;
  return run;
}

struct OneNormRun {
  double value = 0.0;
  std::vector<Complex> psi;
  int iterations = 0;
};

OneNormRun ascend_one_norm(const HermitianPreservingMap& map, const HermitianPreservingMap& adj,
                           std::vector<Complex> psi) {
  OneNormRun run;
  double best_value = -1.0;
  std::vector<Complex> best_psi = psi;
  auto step = [&]() {
    const SignedNorm sn = signed_norm(map.apply(ComplexMatrix::outer(psi, psi)));
    if (sn.norm > best_value) {
      best_value = sn.norm;
      best_psi = psi;
    }
    psi = top_eigenvector(adj.apply(sn.sign));
    return sn.norm;
  };
  const auto [value, iters] = run_ascent(step);
  run.value = std::max(value, best_value);
  run.psi = best_psi;
  run.iterations = iters;
  return run;
}

SdpProblem diamond_problem(const HermitianPreservingMap& map) {
  const std::size_t din = map.d_in();
  const std::size_t dout = map.d_out();
  const std::size_t n = din * dout;
  SdpProblem p;
  p.block_sizes = {n, n, n, din};
  p.c = {-1.0 * map.choi(), map.choi(), ComplexMatrix(n, n), ComplexMatrix(din, din)};
  const double h = 1.0 / std::sqrt(2.0);
  // <E, P0 + P1 + W> - <Tr_out E, sigma> = 0 for a Hermitian basis E of n x n.
  auto add = [&](std::vector<std::pair<std::pair<std::size_t, std::size_t>, Complex>> e) {
    std::vector<SdpEntry> entries;
    for (std::size_t blk = 0; blk < 3; ++blk)
      for (const auto& [rc, v] : e) entries.push_back({blk, rc.first, rc.second, v});
    for (const auto& [rc, v] : e)
      if (rc.first % dout == rc.second % dout) entries.push_back({3, rc.first / dout, rc.second / dout, -v});
    p.constraints.push_back(std::move(entries));
    p.b.push_back(0.0);
  };
  for (std::size_t r = 0; r < n; ++r) add({{{r, r}, Complex(1.0)}});
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      add({{{r, c}, Complex(h)}, {{c, r}, Complex(h)}});
      add({{{r, c}, Complex(0.0, -h)}, {{c, r}, Complex(0.0, h)}});
    }
  std::vector<SdpEntry> trace;
  for (std::size_t i = 0; i < din; ++i) trace.push_back({3, i, i, Complex(1.0)});
  p.constraints.push_back(std::move(trace));
  p.b.push_back(1.0);
  return p;
}

}  // namespace

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw InvalidInput("trace_distance: operands have different dimensions");
  }
  return 0.5 * trace_norm_hermitian(rho - sigma);
}

double trace_distance(const BipartiteState& rho, const BipartiteState& sigma) {
  if (rho.dA() != sigma.dA() || rho.dB() != sigma.dB()) {
    throw InvalidInput("trace_distance: states have different splits");
  }
  return trace_distance(rho.matrix(), sigma.matrix());
}

OneNormResult superop_one_norm(const HermitianPreservingMap& map, int restarts, std::uint64_t seed) {
  const std::size_t d = map.d_in();
  const HermitianPreservingMap adj = map.adjoint();
  const Rng root = Rng(seed).split("superop_one_norm");
  const auto runs = parallel_map(static_cast<std::size_t>(std::max(1, restarts)), [&](std::size_t r) {
    std::vector<Complex> psi;
    if (r == 0) {
      psi.assign(d, Complex(1.0 / std::sqrt(static_cast<double>(d))));
    } else {
      Rng rng = root.split(static_cast<std::uint64_t>(r));
      psi = random_unit_vector(rng, d);
    }
    return ascend_one_norm(map, adj, std::move(psi));
  });
  OneNormResult out;
  out.value = -1.0;
  for (const auto& run : runs)
    if (run.value > out.value) {
      out.value = run.value;
      out.witness = run.psi;
    }
  return out;
}

std::string to_string(DiamondMethod m) {
  switch (m) {
    case DiamondMethod::Sdp:
      return "sdp";
    case DiamondMethod::Ascent:
      return "ascent";
    case DiamondMethod::Both:
      return "both";
  }
  return "unknown";
}

DiamondResult diamond_norm_sdp(const HermitianPreservingMap& map) {
  if (map.choi().max_abs() == 0.0) return {};
  const SdpSolution sol = solve_sdp(diamond_problem(map));
  DiamondResult r;
  r.method = DiamondMethod::Sdp;
  r.sdp_value = std::max(0.0, -0.5 * (sol.primal_objective + sol.dual_objective));
  r.sdp_gap = sol.gap;
  r.value = r.sdp_value;
  r.iterations = sol.iterations;
  return r;
}

DiamondResult diamond_norm_ascent(const HermitianPreservingMap& map, int restarts, std::uint64_t seed) {
  const std::size_t d = map.d_in();
  const Rng root = Rng(seed).split("diamond_norm_ascent");
  const auto runs = parallel_map(static_cast<std::size_t>(std::max(1, restarts)), [&](std::size_t r) {
    std::vector<Complex> c(d * d);
    if (r == 0) {
      for (std::size_t i = 0; i < d; ++i) c[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    } else {
      Rng rng = root.split(static_cast<std::uint64_t>(r));
      c = random_unit_vector(rng, d * d);
    }
    return ascend_diamond(map, std::move(c));
  });
  DiamondResult out;
  out.method = DiamondMethod::Ascent;
  const AscentRun* best = &runs.front();
  for (const auto& run : runs) {
    out.iterations += run.iterations;
    if (run.value > best->value) best = &run;
  }
  out.ascent_value = std::max(0.0, best->value);
  out.value = out.ascent_value;
  // Replace C by |C| = sqrt(C^dagger C); the value is invariant under the unitary polar factor.
  ComplexMatrix cm(d, d, best->c);
  const ComplexMatrix pc = psd_sqrt((cm.adjoint() * cm).hermitian_part());
  out.witness_input = normalized(input_from_c(std::vector<Complex>(pc.entries().begin(), pc.entries().end()), d));
  return out;
}

DiamondResult diamond_norm(const HermitianPreservingMap& map, int restarts, std::uint64_t seed) {
  DiamondResult sdp = diamond_norm_sdp(map);
  const DiamondResult asc = diamond_norm_ascent(map, restarts, seed);
  sdp.method = DiamondMethod::Both;
  sdp.ascent_value = asc.ascent_value;
  sdp.witness_input = asc.witness_input;
  return sdp;
}

double output_trace_norm(const HermitianPreservingMap& map, const ComplexMatrix& x) {
  if (x.rows() % map.d_in() != 0) throw InvalidInput("output_trace_norm: size is not a multiple of d_in");
  return trace_norm_hermitian(map.apply_on_a(x, x.rows() / map.d_in()).hermitian_part());
}

WattCheck check_watt_inequality(const HermitianPreservingMap& map, const ComplexMatrix& x, double diamond) {
  if (!x.is_hermitian()) throw NotHermitian("check_watt_inequality: X must be Hermitian");
  WattCheck w;
  w.lhs = output_trace_norm(map, x);
  w.rhs = diamond * trace_norm_hermitian(x);
  return w;
}

WattCheck check_watt_inequality(const HermitianPreservingMap& map, const ComplexMatrix& x) {
  return check_watt_inequality(map, x, diamond_norm_sdp(map).value);
}

ConjugationSup conjugation_sup_check(const ComplexMatrix& x, int samples, std::uint64_t seed) {
  if (!x.is_square()) throw InvalidInput("conjugation_sup_check: X must be square");
  if (!x.is_hermitian()) throw NotHermitian("conjugation_sup_check: X must be Hermitian");
  const std::size_t d = x.rows();
  const ComplexMatrix xt = x.transpose();
  auto value = [&](const std::vector<Complex>& c) {
    const ComplexMatrix cm(d, d, c);
    return trace_norm_hermitian((cm * x * cm.adjoint()).hermitian_part());
  };
  ConjugationSup out;
  const EigenResult eig = hermitian_eigen(x);
  out.infinity_norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const std::size_t top = std::abs(eig.values.front()) > std::abs(eig.values.back()) ? 0 : d - 1;
  const auto v = eig.vectors.col(top);
  const ComplexMatrix proj = ComplexMatrix::outer(v, v);
  out.rank_one_value = value(std::vector<Complex>(proj.entries().begin(), proj.entries().end()));

  Rng rng = Rng(seed).split("conjugation_sup_check");
  double best = out.rank_one_value;
  for (int s = 0; s < std::max(1, samples); ++s) {
    std::vector<Complex> c = random_unit_vector(rng, d * d);
    best = std::max(best, value(c));
    if (s < 4) {
      auto step = [&]() {
        const ComplexMatrix cm(d, d, c);
        const SignedNorm sn = signed_norm(cm * x * cm.adjoint());
        c = top_eigenvector(kron(sn.sign, xt));
        return sn.norm;
      };
      best = std::max(best, run_ascent(step).first);
    }
  }
  out.sup_estimate = best;
  return out;
}

}  // namespace cdplab
