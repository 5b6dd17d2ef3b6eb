#pragma once

#include <cstddef>
#include <vector>

#include "cdplab/matrix.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

/// Default relative cutoff for counting operator Schmidt coefficients.
inline constexpr double kDefaultOsrThreshold = 1e-10;

/// rho = sum_i r_i A_i (x) B_i with Hermitian, Hilbert-Schmidt orthonormal factors.
///
/// `coefficients` has min(dA^2, dB^2) entries (descending). `ops_A` holds all
/// dA^2 left factors and `ops_B` all dB^2 right factors; factors past the
/// coefficient list complete the bases and carry no weight.
struct OperatorSchmidtDecomposition {
  std::size_t dA = 0;
  std::size_t dB = 0;
  std::vector<double> coefficients;
  std::vector<ComplexMatrix> ops_A;
  std::vector<ComplexMatrix> ops_B;
  std::size_t rank = 0;
  double threshold = kDefaultOsrThreshold;

  /// r_k with k = dA^2 (1-based), or 0 when dA^2 exceeds the coefficient count.
  double coefficient_at(std::size_t one_based) const;
  /// sum_i r_i A_i (x) B_i
  ComplexMatrix reconstruct() const;
};

/// C_ij = <<F_i (x) G_j | rho>>. Throws InvalidInput if either basis is not
/// Hilbert-Schmidt orthonormal (within 1e-10) or has the wrong size.
ComplexMatrix correlation_matrix(const BipartiteState& rho, const std::vector<ComplexMatrix>& basis_a,
                                 const std::vector<ComplexMatrix>& basis_b);

/// OSD from the real correlation matrix in the Gell-Mann (x) Gell-Mann basis.
/// Paired signs are fixed so that Tr(A_i) >= 0; when the trace vanishes the
/// first nonzero diagonal entry (else the first nonzero entry) of A_i is made positive.
OperatorSchmidtDecomposition operator_schmidt(const BipartiteState& rho, double threshold = kDefaultOsrThreshold);

/// Count of coefficients above threshold * max(r_1, 1e-300).
std::size_t count_rank(const std::vector<double>& coefficients, double threshold);

double realignment_sum(const OperatorSchmidtDecomposition& osd);
/// sum r_i <= 1 + 1e-10
bool passes_realignment(const OperatorSchmidtDecomposition& osd);

struct TailCorrelation {
  double lhs = 0.0;  ///< Tr(rho^2) - r_1^2
  double rhs = 0.0;  ///< ||rho - sigma_A (x) sigma_B||_2^2
  bool holds() const { return lhs <= rhs + 1e-10; }
};
TailCorrelation tail_correlation_bound(const BipartiteState& rho, const ComplexMatrix& sigma_a,
                                       const ComplexMatrix& sigma_b);

/// Largest value the smallest coefficient r_{d^2} of a state with sum r_i <= 1
/// can take: (d(d^2-1) - sqrt(d^2-1)) / (d(d^2-1)^2 + d^3 - 2d). Throws InvalidInput for d < 2.
double r_cn(std::size_t d);
/// The closed form (d(d^2-1) - sqrt(d^2-1)) / (d(d^2-1)^2 + d^3) found in the
/// literature. It lies below 1/(d(d+1)), the value attained by the separable
/// isotropic state at p = 1/(d+1), so it is not a valid cap; kept for comparison.
double r_cn_printed(std::size_t d);

struct LowestOscCap {
  double r_last = 0.0;  ///< r_{d^2}
  double cap = 0.0;     ///< sqrt(Tr(rho^2) - 1/d^2)
  bool holds() const { return r_last <= cap + 1e-10; }
};
/// Requires dA == dB, else InvalidInput.
LowestOscCap lowest_osc_cap(const BipartiteState& rho);

}  // namespace cdplab
