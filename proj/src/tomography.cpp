#include "cdplab/tomography.hpp"

#include <algorithm>
#include <iomanip>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/parallel.hpp"
#include "cdplab/random.hpp"

namespace cdplab {

namespace {

// Tr_B[(1 (x) B) X] for X on (d_out * dB)
ComplexMatrix weighted_trace_b(const ComplexMatrix& x, const ComplexMatrix& b, std::size_t d_out, std::size_t dB) {
  ComplexMatrix out(d_out, d_out);
  for (std::size_t o = 0; o < d_out; ++o)
    for (std::size_t o2 = 0; o2 < d_out; ++o2) {
      Complex s = 0.0;
      for (std::size_t bb = 0; bb < dB; ++bb)
        for (std::size_t c = 0; c < dB; ++c) s += b(bb, c) * x(o * dB + c, o2 * dB + bb);
      out(o, o2) = s;
    }
  return out;
}

}  // namespace

ReconstructionResult reconstruct_channel(const ComplexMatrix& output, const OperatorSchmidtDecomposition& osd,
                                         const std::optional<QuantumChannel>& truth) {
  const std::size_t dA = osd.dA;
  const std::size_t dB = osd.dB;
  const std::size_t n = dA * dA;
  if (osd.rank < n) {
    throw NotTomographicallyComplete("reconstruct_channel: operator Schmidt rank " + std::to_string(osd.rank) +
                                     " < dA^2 = " + std::to_string(n));
  }
  if (!output.is_square() || output.rows() % dB != 0) {
    throw InvalidInput("reconstruct_channel: output must be square with a multiple of dB rows");
  }
  const std::size_t d_out = output.rows() / dB;

  // Lambda(A_i) = Tr_B[(1 (x) B_i) output] / r_i
  std::vector<ComplexMatrix> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    images.push_back(weighted_trace_b(output, osd.ops_B[i], d_out, dB) * (1.0 / osd.coefficients[i]));

  ReconstructionResult r;
  r.conditioning = 1.0 / osd.coefficients[n - 1];
  r.reconstructed_choi = ComplexMatrix(dA * d_out, dA * d_out);
  for (const auto& f : hermitian_operator_basis(dA)) {
    ComplexMatrix image(d_out, d_out);
    for (std::size_t i = 0; i < n; ++i) image.add_scaled(hs_inner(osd.ops_A[i], f), images[i]);
    r.reconstructed_choi += kron(f.transpose(), image);
  }
  if (truth) {
    if (truth->d_in() != dA || truth->d_out() != d_out) {
      throw InvalidInput("reconstruct_channel: reference channel has the wrong dimensions");
    }
    r.residual_to_truth = frobenius_norm(r.reconstructed_choi - truth->choi());
  }
  return r;
}

NoiseStats noise_sensitivity(const BipartiteState& rho, const QuantumChannel& channel, double noise_level,
                             int trials, std::uint64_t seed) {
  if (noise_level < 0.0 || trials < 1) throw InvalidInput("noise_sensitivity: need noise_level >= 0 and trials >= 1");
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho);
  const ComplexMatrix exact = channel.apply_on_a(rho.matrix(), rho.dB());
  const Rng root = Rng(seed).split("noise_sensitivity");
  const auto residuals = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t t) {
    ComplexMatrix noisy = exact;
    if (noise_level > 0.0) {
      Rng rng = root.split(static_cast<std::uint64_t>(t));
      const ComplexMatrix h = random_hermitian(rng, exact.rows());
      noisy.add_scaled(noise_level / frobenius_norm(h), h);
    }
    return *reconstruct_channel(noisy, osd, channel).residual_to_truth;
  });
  NoiseStats s;
  s.r_min = osd.coefficients[rho.dA() * rho.dA() - 1];
  s.noise_level = noise_level;
  s.trials = trials;
  for (double v : residuals) {
    s.mean_residual += v;
    s.max_residual = std::max(s.max_residual, v);
  }
  s.mean_residual /= static_cast<double>(trials);
  return s;
}

std::vector<SensitivityRow> isotropic_sensitivity_sweep(std::size_t d, const std::vector<double>& ps,
                                                        double noise_level, int trials, std::uint64_t seed) {
  Rng rng = Rng(seed).split("isotropic_sensitivity_sweep");
  const QuantumChannel channel = unitary_channel(random_unitary(rng, d));
  std::vector<SensitivityRow> rows;
  for (double p : ps) rows.push_back({p, noise_sensitivity(isotropic_state(d, p), channel, noise_level, trials, seed)});
  return rows;
}

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows) {
  out << "p,r_min,noise_level,mean_residual,max_residual,trials\n";
  out << std::setprecision(17);
  for (const auto& r : rows)
    out << r.p << ',' << r.stats.r_min << ',' << r.stats.noise_level << ',' << r.stats.mean_residual << ','
        << r.stats.max_residual << ',' << r.stats.trials << '\n';
}

}  // namespace cdplab
