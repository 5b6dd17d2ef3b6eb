#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cdplab/matrix.hpp"
#include "cdplab/random.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

/// Trace-preservation tolerance for channel construction.
inline constexpr double kChannelTolerance = 1e-9;

/// Hermiticity-preserving linear map stored by its Choi matrix
/// J = sum_ij |i><j| (x) M(|i><j|), indexed (in, out), Tr J = d_in for channels.
class HermitianPreservingMap {
 public:
  HermitianPreservingMap(ComplexMatrix choi, std::size_t d_in, std::size_t d_out);

  static HermitianPreservingMap zero(std::size_t d_in, std::size_t d_out);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  const ComplexMatrix& choi() const noexcept { return choi_; }

  /// M(x) for a d_in x d_in operator x.
  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// (M (x) id)(x) for an operator on (d_in * dB).
  ComplexMatrix apply_on_a(const ComplexMatrix& x, std::size_t dB) const;
  /// (id (x) M)(x) for an operator on (dA * d_in).
  ComplexMatrix apply_on_b(const ComplexMatrix& x, std::size_t dA) const;
  /// Adjoint with respect to the Hilbert-Schmidt product: Tr(Y M(X)) = Tr(M*(Y) X).
  HermitianPreservingMap adjoint() const;

  HermitianPreservingMap& operator*=(double s);

 private:
  ComplexMatrix choi_;
  std::size_t d_in_;
  std::size_t d_out_;
};

/// Completely positive trace-preserving map with Kraus operators (d_out x d_in)
/// and the derived Choi matrix.
class QuantumChannel {
 public:
  /// Throws InvalidInput on inconsistent shapes and NotTracePreserving when
  /// sum K^dagger K differs from the identity by more than kChannelTolerance.
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  /// Throws NotHermitian, NotCompletelyPositive or NotTracePreserving.
  static QuantumChannel from_choi(const ComplexMatrix& choi, std::size_t d_in, std::size_t d_out);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const ComplexMatrix& choi() const noexcept { return map_.choi(); }
  const HermitianPreservingMap& as_map() const noexcept { return map_; }

  ComplexMatrix apply(const ComplexMatrix& x) const { return map_.apply(x); }
  ComplexMatrix apply_on_a(const ComplexMatrix& x, std::size_t dB) const { return map_.apply_on_a(x, dB); }
  ComplexMatrix apply_on_b(const ComplexMatrix& x, std::size_t dA) const { return map_.apply_on_b(x, dA); }

  /// Output state of (channel (x) id) on a bipartite state; dimensions (d_out, dB).
  BipartiteState apply_on_a(const BipartiteState& state) const;
  /// Output state of (id (x) channel); dimensions (dA, d_out).
  BipartiteState apply_on_b(const BipartiteState& state) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t d_in_;
  std::size_t d_out_;
  HermitianPreservingMap map_;
};

ComplexMatrix choi_of(std::span<const ComplexMatrix> kraus);
/// Kraus operators from the eigendecomposition of a PSD Choi matrix. Eigenvalues
/// below -kChannelTolerance throw NotCompletelyPositive; tiny ones are dropped.
std::vector<ComplexMatrix> kraus_of(const ComplexMatrix& choi, std::size_t d_in, std::size_t d_out);

/// a - b; dimensions must agree.
HermitianPreservingMap difference(const QuantumChannel& a, const QuantumChannel& b);
HermitianPreservingMap difference(const HermitianPreservingMap& a, const HermitianPreservingMap& b);

QuantumChannel identity_channel(std::size_t d);
QuantumChannel unitary_channel(const ComplexMatrix& u);
/// X -> Tr(X) sigma.
QuantumChannel replacement_channel(std::size_t d_in, const ComplexMatrix& sigma);
/// X -> Tr(X) 1/d_out.
QuantumChannel fully_depolarizing_channel(std::size_t d_in, std::size_t d_out);
/// X -> (1 - q) X + q Tr(X) 1/d.
QuantumChannel depolarizing_channel(std::size_t d, double q);
/// Complete dephasing in the computational basis.
QuantumChannel dephasing_channel(std::size_t d);
/// Complete dephasing in the orthonormal basis given by the columns of u.
QuantumChannel dephasing_channel(const ComplexMatrix& u);
/// Block dephasing: projectors onto spans of the columns of u grouped by `blocks`
/// (each entry is a block label in [0, number of blocks)).
QuantumChannel block_dephasing_channel(const ComplexMatrix& u, std::span<const std::size_t> blocks);
/// Random channel from a Haar isometry d_in -> d_out * n_kraus.
QuantumChannel random_channel(Rng& rng, std::size_t d_in, std::size_t d_out, std::size_t n_kraus);

}  // namespace cdplab
