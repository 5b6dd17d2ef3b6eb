#include "cdplab/random.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"

namespace cdplab {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view tag) {
  // FNV-1a over the tag, then mixed with the root.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_seed(root ^ mix_seed(h));
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return mix_seed(root ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.entries()) z = rng.complex_normal() * (1.0 / std::sqrt(2.0));
  return g;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t d) { return random_isometry(rng, d, d); }

ComplexMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  if (rows < cols) throw InvalidInput("random_isometry: rows must be >= cols");
  return orthonormalize_columns(random_ginibre(rng, rows, cols));
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t d) {
  return random_ginibre(rng, d, d).hermitian_part();
}

std::vector<Complex> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& z : v) z = rng.complex_normal();
  const double norm = vector_norm(v);
  for (auto& z : v) z /= norm;
  return v;
}

ComplexMatrix random_density(Rng& rng, std::size_t d, std::size_t rank) {
  if (rank == 0 || rank > d) throw InvalidInput("random_density: rank out of range");
  const ComplexMatrix g = random_ginibre(rng, d, rank);
  ComplexMatrix rho = (g * g.adjoint()).hermitian_part();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

std::vector<double> random_orthogonal(Rng& rng, std::size_t k) {
  Eigen::MatrixXd g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (std::size_t c = 0; c < k; ++c)
    if (r(c, c) < 0) q.col(c) *= -1.0;
  std::vector<double> out(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i * k + j] = q(i, j);
  return out;
}

}  // namespace cdplab
