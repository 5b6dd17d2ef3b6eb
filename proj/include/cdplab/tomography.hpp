#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cdplab/channels.hpp"
#include "cdplab/matrix.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

struct ReconstructionResult {
  ComplexMatrix reconstructed_choi;
  std::optional<double> residual_to_truth;  ///< ||J - J_truth||_2 when the generating channel is known
  double conditioning = 0.0;                ///< 1 / r_{dA^2}
};

/// Rebuilds the Choi matrix of Lambda from output = (Lambda (x) id)(rho) using the
/// OSD of rho: Lambda[F] = sum_i (1/r_i) <<A_i|F>> Tr_B[(1 (x) B_i) output], run on
/// the Gell-Mann inputs F. Throws NotTomographicallyComplete when OSR < dA^2.
ReconstructionResult reconstruct_channel(const ComplexMatrix& output, const OperatorSchmidtDecomposition& osd,
                                         const std::optional<QuantumChannel>& truth = {});

struct NoiseStats {
  double r_min = 0.0;
  double noise_level = 0.0;
  double mean_residual = 0.0;
  double max_residual = 0.0;
  int trials = 0;
};

/// Adds Hermitian GUE noise of 2-norm `noise_level` to the exact output state,
/// reconstructs and collects the Choi residual over `trials`.
NoiseStats noise_sensitivity(const BipartiteState& rho, const QuantumChannel& channel, double noise_level,
                             int trials, std::uint64_t seed);

struct SensitivityRow {
  double p = 0.0;
  NoiseStats stats;
};

/// Isotropic sweep over `ps` with a fixed noise level and a Haar-random unitary channel.
std::vector<SensitivityRow> isotropic_sensitivity_sweep(std::size_t d, const std::vector<double>& ps,
                                                        double noise_level, int trials, std::uint64_t seed);

/// CSV with header p,r_min,noise_level,mean_residual,max_residual,trials.
void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows);

}  // namespace cdplab
