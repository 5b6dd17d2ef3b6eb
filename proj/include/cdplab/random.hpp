#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "cdplab/matrix.hpp"

namespace cdplab {

/// splitmix64 finalizer; used for deterministic seed splitting.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Seeded generator. Every randomized procedure takes one of these (or a seed)
/// so results are reproducible on a given platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  Rng split(std::string_view tag) const { return Rng(derive_seed(seed_, tag)); }
  Rng split(std::uint64_t index) const { return Rng(derive_seed(seed_, index)); }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-random unitary.
ComplexMatrix random_unitary(Rng& rng, std::size_t d);
/// Haar-random isometry (rows >= cols).
ComplexMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols);
/// GUE-distributed Hermitian matrix (unnormalized).
ComplexMatrix random_hermitian(Rng& rng, std::size_t d);
std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n);
/// Induced-measure density matrix of the given rank.
ComplexMatrix random_density(Rng& rng, std::size_t d, std::size_t rank);
/// Haar-random real orthogonal k x k matrix, returned as a row-major vector.
std::vector<double> random_orthogonal(Rng& rng, std::size_t k);

}  // namespace cdplab
