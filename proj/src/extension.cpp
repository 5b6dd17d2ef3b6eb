#include "cdplab/extension.hpp"

#include <cmath>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"

namespace cdplab {

namespace {

constexpr double kResidualLimit = 1e-8;

// Adds `v` to the orthonormal set `cols` if it has a component outside their span.
bool try_append(std::vector<std::vector<Complex>>& cols, std::vector<Complex> v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& c : cols) {
      const Complex overlap = vdot(c, v);
      for (std::size_t r = 0; r < v.size(); ++r) v[r] -= overlap * c[r];
    }
  const double norm = vector_norm(v);
  if (norm < 1e-6) return false;
  for (auto& z : v) z /= norm;
  cols.push_back(std::move(v));
  return true;
}

}  // namespace

ExtensionRecord purify_and_extend_check(const BipartiteState& rho) {
  const std::size_t dA = rho.dA();
  const std::size_t dB = rho.dB();
  const std::size_t dC = dA * dB;
  const std::size_t dBC = dB * dC;

  // Phi_ABC = sum_k sqrt(lambda_k) |w_k>_AB |k>_C, index (a, b, c).
  const EigenResult full = hermitian_eigen(rho.matrix());
  std::vector<Complex> phi(dA * dBC);
  for (std::size_t k = 0; k < dC; ++k) {
    const double lam = full.values[k];
    if (lam <= 0.0) continue;
    const double s = std::sqrt(lam);
    for (std::size_t ab = 0; ab < dC; ++ab) phi[ab * dC + k] = s * full.vectors(ab, k);
  }

  // Psi_AA' = sum_j sqrt(mu_j) |e_j>_A |j>_A'.
  const EigenResult marg = hermitian_eigen(rho.reduced_a());
  std::vector<Complex> psi(dA * dA);
  for (std::size_t j = 0; j < dA; ++j) {
    const double mu = std::max(0.0, marg.values[j]);
    for (std::size_t a = 0; a < dA; ++a) psi[a * dA + j] = std::sqrt(mu) * marg.vectors(a, j);
  }

  // Isometry columns U|j> = (<e_j| (x) 1) Phi / sqrt(mu_j) for mu_j > 0.
  const double mu_cut = 1e-12;
  std::vector<std::vector<Complex>> image(dA);
  std::vector<std::vector<Complex>> cols;
  std::vector<bool> filled(dA, false);
  for (std::size_t j = 0; j < dA; ++j) {
    if (marg.values[j] <= mu_cut) continue;
    std::vector<Complex> v(dBC);
    for (std::size_t a = 0; a < dA; ++a) {
      const Complex e = std::conj(marg.vectors(a, j));
      for (std::size_t r = 0; r < dBC; ++r) v[r] += e * phi[a * dBC + r];
    }
    const double inv = 1.0 / std::sqrt(marg.values[j]);
    for (auto& z : v) z *= inv;
    image[j] = v;
    cols.push_back(std::move(v));
    filled[j] = true;
  }
  // Complete on the kernel of rho_A with orthonormal vectors, C index 0 first.
  std::size_t next = 0;
  for (std::size_t j = 0; j < dA; ++j) {
    if (filled[j]) continue;
    while (next < dBC) {
      const std::size_t c = next / dB;
      const std::size_t b = next % dB;
      ++next;
      std::vector<Complex> cand(dBC);
      cand[b * dC + c] = 1.0;
      if (try_append(cols, std::move(cand))) {
        image[j] = cols.back();
        filled[j] = true;
        break;
      }
    }
    if (!filled[j]) throw ReconstructionFailed("purify_and_extend_check: could not complete the isometry", 1.0);
  }

  // Kraus operators K_c = (1_B (x) <c|) U.
  std::vector<ComplexMatrix> kraus;
  for (std::size_t c = 0; c < dC; ++c) {
    ComplexMatrix K(dB, dA);
    for (std::size_t b = 0; b < dB; ++b)
      for (std::size_t j = 0; j < dA; ++j) K(b, j) = image[j][b * dC + c];
    if (K.max_abs() > 1e-14) kraus.push_back(std::move(K));
  }

  ExtensionRecord rec{psi, QuantumChannel(std::move(kraus)), 0.0};
  const ComplexMatrix psi_op = ComplexMatrix::outer(psi, psi);
  const ComplexMatrix out = rec.channel.apply_on_b(psi_op, dA);
  rec.residual = (out - rho.matrix()).max_abs();
  if (!(rec.residual <= kResidualLimit)) {
    throw ReconstructionFailed("purify_and_extend_check: residual " + std::to_string(rec.residual), rec.residual);
  }
  return rec;
}

}  // namespace cdplab
