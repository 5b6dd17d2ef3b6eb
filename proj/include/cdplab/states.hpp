#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdplab/linalg.hpp"
#include "cdplab/matrix.hpp"
#include "cdplab/random.hpp"

namespace cdplab {

/// Tolerance used when validating density matrices.
inline constexpr double kStateTolerance = 1e-10;

/// Density matrix on a dA*dB space with a declared A|B split.
///
/// Construction validates Hermiticity, unit trace and positivity within
/// kStateTolerance. Eigenvalues in [-kStateTolerance, 0) are clipped to zero
/// and the matrix renormalized; anything more negative throws ValidationError.
class BipartiteState {
 public:
  BipartiteState(ComplexMatrix rho, std::size_t dA, std::size_t dB);

  static BipartiteState from_pure(std::span<const Complex> psi, std::size_t dA, std::size_t dB);
  static BipartiteState product(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

  std::size_t dA() const noexcept { return dA_; }
  std::size_t dB() const noexcept { return dB_; }
  std::size_t dim() const noexcept { return dA_ * dB_; }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

  ComplexMatrix reduced_a() const { return partial_trace(rho_, dA_, dB_, Subsystem::B); }
  ComplexMatrix reduced_b() const { return partial_trace(rho_, dA_, dB_, Subsystem::A); }
  double purity() const;
  /// The same state with the roles of A and B exchanged.
  BipartiteState swapped() const;

 private:
  struct Trusted {};
  BipartiteState(Trusted, ComplexMatrix rho, std::size_t dA, std::size_t dB)
      : rho_(std::move(rho)), dA_(dA), dB_(dB) {}

  ComplexMatrix rho_;
  std::size_t dA_ = 0;
  std::size_t dB_ = 0;
};

/// Pure bipartite state together with its Schmidt decomposition
/// psi = sum_k sqrt(p_k) |a_k> (x) |b_k>.
struct PureBipartiteState {
  std::size_t dA = 0;
  std::size_t dB = 0;
  std::vector<Complex> amplitudes;             ///< length dA*dB, index a*dB + b
  std::vector<double> schmidt_coefficients;    ///< p_k descending, length min(dA, dB)
  ComplexMatrix basis_a;                       ///< dA x dA unitary, column k = a_k
  ComplexMatrix basis_b;                       ///< dB x dB unitary, column k = b_k

  std::size_t schmidt_rank(double tol = 1e-12) const;
  BipartiteState density() const { return BipartiteState::from_pure(amplitudes, dA, dB); }
};

/// Throws InvalidInput unless |psi| = 1 within 1e-10 and the length is dA*dB.
PureBipartiteState schmidt_decompose(std::span<const Complex> psi, std::size_t dA, std::size_t dB);

/// Pure state from Schmidt coefficients p_k in the computational bases.
std::vector<Complex> schmidt_form_vector(std::span<const double> p, std::size_t dA, std::size_t dB);

/// (1/sqrt(d)) sum_i |ii>
std::vector<Complex> maximally_entangled_vector(std::size_t d);

/// (1 - p) 1/d^2 + p |psi+><psi+|, p in [0, 1].
BipartiteState isotropic_state(std::size_t d, double p);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger
BipartiteState apply_local_unitaries(const BipartiteState& state, const ComplexMatrix& ua,
                                     const ComplexMatrix& ub);

// Random families used by property sweeps and the estimator.
std::vector<Complex> random_pure_vector(Rng& rng, std::size_t dA, std::size_t dB);
BipartiteState random_state(Rng& rng, std::size_t dA, std::size_t dB, std::size_t rank);
BipartiteState random_product_state(Rng& rng, std::size_t dA, std::size_t dB);
/// Convex mixture of `terms` random product states with random weights.
BipartiteState random_separable_state(Rng& rng, std::size_t dA, std::size_t dB, std::size_t terms);
/// sum_i p_i |a_i><a_i| (x) rho_i for a Haar-random basis {a_i}.
BipartiteState random_classical_on_a(Rng& rng, std::size_t dA, std::size_t dB);

}  // namespace cdplab
