#pragma once

#include <vector>

#include "cdplab/channels.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

/// Purification of rho_A together with a channel that maps it onto rho_AB.
struct ExtensionRecord {
  std::vector<Complex> purification;  ///< Psi_AA' on dA * dA, built from the eigenbasis of rho_A
  QuantumChannel channel;             ///< A' -> B
  double residual = 0.0;              ///< max-entry error of (id (x) channel)(Psi) against rho_AB
};

/// Purifies rho_AB to Phi_ABC, relates it to Psi_AA' through an isometry
/// A' -> BC and traces out C. Throws ReconstructionFailed when the residual
/// exceeds 1e-8.
ExtensionRecord purify_and_extend_check(const BipartiteState& rho);

}  // namespace cdplab
