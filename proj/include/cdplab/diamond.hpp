#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdplab/channels.hpp"
#include "cdplab/matrix.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

inline constexpr int kDefaultRestarts = 32;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// 1/2 ||rho - sigma||_1 for Hermitian operators of equal size.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double trace_distance(const BipartiteState& rho, const BipartiteState& sigma);

struct OneNormResult {
  double value = 0.0;
  std::vector<Complex> witness;  ///< unit input vector of length d_in
};

/// sup over pure inputs of ||M(|psi><psi|)||_1 by alternating maximization with restarts.
OneNormResult superop_one_norm(const HermitianPreservingMap& map, int restarts = kDefaultRestarts,
                               std::uint64_t seed = kDefaultSeed);

enum class DiamondMethod { Sdp, Ascent, Both };
std::string to_string(DiamondMethod m);

struct DiamondResult {
  double value = 0.0;
  DiamondMethod method = DiamondMethod::Sdp;
  double sdp_value = 0.0;     ///< set when the SDP ran
  double sdp_gap = 0.0;       ///< primal - dual objective of the SDP
  double ascent_value = 0.0;  ///< set when the ascent ran
  std::vector<Complex> witness_input;  ///< ascent optimizer on d_in * d_in (index i * d_in + a)
  int iterations = 0;
};

/// SDP: maximize <J, P0 - P1> s.t. P0 + P1 <= sigma (x) 1, Tr sigma = 1, P0, P1 >= 0.
/// Throws SolverFailed when the interior point method does not converge.
DiamondResult diamond_norm_sdp(const HermitianPreservingMap& map);

/// Alternating ascent over inputs (1 (x) C)|Omega>, ||C||_2 = 1. Certified lower bound.
DiamondResult diamond_norm_ascent(const HermitianPreservingMap& map, int restarts = kDefaultRestarts,
                                  std::uint64_t seed = kDefaultSeed);

/// Runs both methods; value is the SDP value.
DiamondResult diamond_norm(const HermitianPreservingMap& map, int restarts = kDefaultRestarts,
                           std::uint64_t seed = kDefaultSeed);

/// ||(M (x) id)(X)||_1 for Hermitian X on d_in * dB, with dB = X.rows() / d_in.
double output_trace_norm(const HermitianPreservingMap& map, const ComplexMatrix& x);

struct WattCheck {
  double lhs = 0.0;  ///< ||(M (x) id)(X)||_1
  double rhs = 0.0;  ///< ||M||_diamond ||X||_1
  bool holds() const { return lhs <= rhs + 1e-8; }
};
WattCheck check_watt_inequality(const HermitianPreservingMap& map, const ComplexMatrix& x);
/// Same, reusing a known diamond norm.
WattCheck check_watt_inequality(const HermitianPreservingMap& map, const ComplexMatrix& x, double diamond);

struct ConjugationSup {
  double sup_estimate = 0.0;    ///< best ||C X C^dagger||_1 found over ||C||_2 = 1
  double infinity_norm = 0.0;   ///< ||X||_inf
  double rank_one_value = 0.0;  ///< value at C = |x><x| for the top eigenvector x
};
/// Random samples, alternating ascent, and the rank-one construction.
ConjugationSup conjugation_sup_check(const ComplexMatrix& x, int samples = 64, std::uint64_t seed = kDefaultSeed);

}  // namespace cdplab
