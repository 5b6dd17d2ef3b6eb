#pragma once
// Hand-rolled random generators for property tests. Deliberately independent of
// cdplab::Rng so that sweeps do not share sampling code with the library.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cdplab/channels.hpp"
#include "cdplab/matrix.hpp"
#include "cdplab/states.hpp"

namespace gen {

using cdplab::Complex;
using cdplab::ComplexMatrix;

struct Source {
  explicit Source(std::uint64_t seed) : eng(seed) {}
  std::mt19937_64 eng;
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(eng); }
  Complex cgauss() { return {gauss(), gauss()}; }
};

inline ComplexMatrix ginibre(Source& s, std::size_t r, std::size_t c) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = s.cgauss();
  return m;
}

inline ComplexMatrix hermitian(Source& s, std::size_t d) { return ginibre(s, d, d).hermitian_part(); }

// Gram-Schmidt on the columns of a Ginibre matrix.
inline ComplexMatrix unitary(Source& s, std::size_t d) {
  ComplexMatrix g = ginibre(s, d, d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(g(r, p)) * g(r, c);
      for (std::size_t r = 0; r < d; ++r) g(r, c) -= dot * g(r, p);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < d; ++r) n += std::norm(g(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < d; ++r) g(r, c) /= n;
  }
  return g;
}

inline std::vector<Complex> unit_vector(Source& s, std::size_t n) {
  std::vector<Complex> v(n);
  double norm = 0.0;
  for (auto& z : v) {
    z = s.cgauss();
    norm += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(norm);
  return v;
}

// G G^dagger / Tr with G of shape d x rank.
inline ComplexMatrix density(Source& s, std::size_t d, std::size_t rank) {
  const ComplexMatrix g = ginibre(s, d, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho.hermitian_part();
}

inline cdplab::BipartiteState state(Source& s, std::size_t dA, std::size_t dB) {
  return cdplab::BipartiteState(density(s, dA * dB, s.pick(1, dA * dB)), dA, dB);
}

// Kraus operators from the blocks of a random isometry d_in -> d_out * n.
inline cdplab::QuantumChannel channel(Source& s, std::size_t d_in, std::size_t d_out, std::size_t n) {
  const ComplexMatrix u = unitary(s, d_out * n > d_in ? d_out * n : d_in);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix op(d_out, d_in);
    for (std::size_t o = 0; o < d_out; ++o)
      for (std::size_t i = 0; i < d_in; ++i) op(o, i) = u(k * d_out + o, i);
    kraus.push_back(std::move(op));
  }
  return cdplab::QuantumChannel(std::move(kraus));
}

inline cdplab::BipartiteState separable(Source& s, std::size_t d, std::size_t terms) {
  ComplexMatrix rho(d * d, d * d);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = s.unit() + 1e-3);
  for (std::size_t t = 0; t < terms; ++t) {
    const ComplexMatrix a = density(s, d, s.pick(1, d));
    const ComplexMatrix b = density(s, d, s.pick(1, d));
    ComplexMatrix ab(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t l = 0; l < d; ++l) ab(i * d + k, j * d + l) = a(i, j) * b(k, l);
    rho.add_scaled(w[t] / total, ab);
  }
  return cdplab::BipartiteState(rho.hermitian_part(), d, d);
}

}  // namespace gen
