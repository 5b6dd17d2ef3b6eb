#include "cdplab/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/errors.hpp"

namespace cdplab {

BipartiteState::BipartiteState(ComplexMatrix rho, std::size_t dA, std::size_t dB) : dA_(dA), dB_(dB) {
  if (dA == 0 || dB == 0) throw InvalidInput("BipartiteState: dimensions must be positive");
  if (rho.rows() != dA * dB || rho.cols() != dA * dB) {
    throw InvalidInput("BipartiteState: expected " + std::to_string(dA * dB) + "x" + std::to_string(dA * dB) +
                       " matrix for dA=" + std::to_string(dA) + ", dB=" + std::to_string(dB) + ", got " +
                       std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
  if (!rho.all_finite()) throw ValidationError("BipartiteState: non-finite entry");
  const double defect = rho.hermiticity_defect();
  if (defect > kStateTolerance) {
    throw ValidationError("BipartiteState: not Hermitian (max |rho - rho^dagger| = " + std::to_string(defect) + ")");
  }
  rho = rho.hermitian_part();
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw ValidationError("BipartiteState: trace is " + std::to_string(tr) + ", expected 1");
  }
  const EigenResult eig = hermitian_eigen(rho);
  const double min_eig = eig.values.front();
  if (min_eig < -kStateTolerance) {
    throw ValidationError("BipartiteState: not positive semidefinite (minimum eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
  if (min_eig < 0.0) {
    const std::size_t n = eig.values.size();
    ComplexMatrix scaled = eig.vectors;
    double total = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const double v = std::max(0.0, eig.values[c]);
      total += v;
      for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= v;
    }
    rho = (scaled * eig.vectors.adjoint()).hermitian_part();
    rho *= 1.0 / total;
  }
  rho_ = std::move(rho);
}

BipartiteState BipartiteState::from_pure(std::span<const Complex> psi, std::size_t dA, std::size_t dB) {
  if (psi.size() != dA * dB) throw InvalidInput("from_pure: vector length must be dA*dB");
  const double norm = vector_norm(psi);
  if (std::abs(norm - 1.0) > kStateTolerance) {
    throw InvalidInput("from_pure: vector is not normalized (norm " + std::to_string(norm) + ")");
  }
  ComplexMatrix rho = ComplexMatrix::outer(psi, psi);
  return {Trusted{}, rho.hermitian_part(), dA, dB};
}

BipartiteState BipartiteState::product(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  return {kron(rho_a, rho_b), rho_a.rows(), rho_b.rows()};
}

double BipartiteState::purity() const { return hs_inner(rho_, rho_).real(); }

BipartiteState BipartiteState::swapped() const {
  ComplexMatrix out(dim(), dim());
  for (std::size_t a = 0; a < dA_; ++a)
    for (std::size_t b = 0; b < dB_; ++b)
      for (std::size_t a2 = 0; a2 < dA_; ++a2)
        for (std::size_t b2 = 0; b2 < dB_; ++b2) out(b * dA_ + a, b2 * dA_ + a2) = rho_(a * dB_ + b, a2 * dB_ + b2);
  return {Trusted{}, std::move(out), dB_, dA_};
}

std::size_t PureBipartiteState::schmidt_rank(double tol) const {
  return static_cast<std::size_t>(
      std::count_if(schmidt_coefficients.begin(), schmidt_coefficients.end(), [&](double p) { return p > tol; }));
}

PureBipartiteState schmidt_decompose(std::span<const Complex> psi, std::size_t dA, std::size_t dB) {
  if (dA == 0 || dB == 0 || psi.size() != dA * dB) {
    throw InvalidInput("schmidt_decompose: vector length must equal dA*dB");
  }
  const double norm = vector_norm(psi);
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kStateTolerance) {
    throw InvalidInput("schmidt_decompose: vector is not normalized (norm " + std::to_string(norm) + ")");
  }
  ComplexMatrix coeff(dA, dB, std::vector<Complex>(psi.begin(), psi.end()));
  SvdResult s = svd(coeff);
  PureBipartiteState out;
  out.dA = dA;
  out.dB = dB;
  out.amplitudes.assign(psi.begin(), psi.end());
  out.schmidt_coefficients.resize(s.singular_values.size());
  for (std::size_t k = 0; k < s.singular_values.size(); ++k)
    out.schmidt_coefficients[k] = s.singular_values[k] * s.singular_values[k];
  out.basis_a = std::move(s.u);
  out.basis_b = s.v.conjugate();
  return out;
}

std::vector<Complex> schmidt_form_vector(std::span<const double> p, std::size_t dA, std::size_t dB) {
  if (p.size() > std::min(dA, dB)) throw InvalidInput("schmidt_form_vector: too many coefficients");
  std::vector<Complex> psi(dA * dB);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < 0.0) throw InvalidInput("schmidt_form_vector: negative coefficient");
    psi[k * dB + k] = std::sqrt(p[k]);
  }
  return psi;
}

std::vector<Complex> maximally_entangled_vector(std::size_t d) {
  std::vector<Complex> psi(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = amp;
  return psi;
}

BipartiteState isotropic_state(std::size_t d, double p) {
  if (d == 0) throw InvalidInput("isotropic_state: d must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("isotropic_state: p must lie in [0, 1]");
  const auto phi = maximally_entangled_vector(d);
  ComplexMatrix rho = ComplexMatrix::identity(d * d) * ((1.0 - p) / static_cast<double>(d * d));
  rho.add_scaled(p, ComplexMatrix::outer(phi, phi));
  return {std::move(rho), d, d};
}

BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  const ComplexMatrix u = kron(ua, ub);
  return {(u * state.matrix() * u.adjoint()).hermitian_part(), state.dA(), state.dB()};
}

std::vector<Complex> random_pure_vector(Rng& rng, std::size_t dA, std::size_t dB) {
  return random_unit_vector(rng, dA * dB);
}

BipartiteState random_state(Rng& rng, std::size_t dA, std::size_t dB, std::size_t rank) {
  return {random_density(rng, dA * dB, rank), dA, dB};
}

BipartiteState random_product_state(Rng& rng, std::size_t dA, std::size_t dB) {
  const std::size_t ra = 1 + rng.index(dA);
  const std::size_t rb = 1 + rng.index(dB);
  return BipartiteState::product(random_density(rng, dA, ra), random_density(rng, dB, rb));
}

BipartiteState random_separable_state(Rng& rng, std::size_t dA, std::size_t dB, std::size_t terms) {
  if (terms == 0) throw InvalidInput("random_separable_state: need at least one term");
  ComplexMatrix rho(dA * dB, dA * dB);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = -std::log(1.0 - rng.uniform()));
  for (std::size_t t = 0; t < terms; ++t) {
    const BipartiteState term = random_product_state(rng, dA, dB);
    rho.add_scaled(w[t] / total, term.matrix());
  }
  return {rho.hermitian_part(), dA, dB};
}

BipartiteState random_classical_on_a(Rng& rng, std::size_t dA, std::size_t dB) {
  const ComplexMatrix basis = random_unitary(rng, dA);
  std::vector<double> w(dA);
  double total = 0.0;
  for (auto& x : w) total += (x = -std::log(1.0 - rng.uniform()));
  ComplexMatrix rho(dA * dB, dA * dB);
  for (std::size_t i = 0; i < dA; ++i) {
    const auto a = basis.col(i);
    const ComplexMatrix proj = ComplexMatrix::outer(a, a);
    const ComplexMatrix rho_b = random_density(rng, dB, 1 + rng.index(dB));
    rho.add_scaled(w[i] / total, kron(proj, rho_b));
  }
  return {rho.hermitian_part(), dA, dB};
}

}  // namespace cdplab
