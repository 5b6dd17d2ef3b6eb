#pragma once

#include <cstddef>
#include <vector>

#include "cdplab/matrix.hpp"

namespace cdplab {

/// One nonzero of a Hermitian constraint matrix. Both (row, col) and (col, row)
/// must be listed for off-diagonal entries.
struct SdpEntry {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value;
};

/// Block-diagonal complex Hermitian SDP in standard form:
///   minimize <C, X>  s.t.  <A_k, X> = b_k,  X >= 0
///   maximize b.y     s.t.  C - sum_k y_k A_k = S >= 0
/// with <A, X> = Re Tr(A^dagger X).
struct SdpProblem {
  std::vector<std::size_t> block_sizes;
  std::vector<ComplexMatrix> c;                    ///< one Hermitian matrix per block
  std::vector<std::vector<SdpEntry>> constraints;  ///< A_k as sparse entry lists
  std::vector<double> b;
};

struct SdpOptions {
  int max_iterations = 500;
  double gap_tolerance = 1e-9;          ///< relative duality gap target
  double feasibility_tolerance = 1e-9;  ///< relative primal/dual residual target
  double accept_tolerance = 1e-7;       ///< accepted on stagnation when all measures are below this
  double step_fraction = 0.98;
};

struct SdpSolution {
  std::vector<ComplexMatrix> x;
  std::vector<ComplexMatrix> s;
  std::vector<double> y;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;               ///< primal - dual objective
  double primal_residual = 0.0;   ///< ||b - A(X)|| / (1 + ||b||)
  double dual_residual = 0.0;     ///< ||C - A*(y) - S||_F / (1 + ||C||_F)
  int iterations = 0;
};

/// Primal-dual interior point method (HKM direction, Mehrotra predictor-corrector).
/// Throws SolverFailed with the final residuals when it does not converge.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

}  // namespace cdplab
