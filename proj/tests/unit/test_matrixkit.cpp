#include <doctest.h>

#include <cmath>
#include <limits>

#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/matrix.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cdplab;

namespace {

double spectral_norm_2(const ComplexMatrix& m) { return p_norm(m, NormKind::Infinity); }

}  // namespace

TEST_CASE("svd") {
  SUBCASE("identity") {
    const auto r = svd(ComplexMatrix::identity(2));
    CHECK(r.singular_values[0] == doctest::Approx(1.0));
    CHECK(r.singular_values[1] == doctest::Approx(1.0));
  }
  SUBCASE("diag(3, -4)") {
    const auto r = svd(ComplexMatrix{{3.0, 0.0}, {0.0, -4.0}});
    CHECK(r.singular_values[0] == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(r.singular_values[1] == doctest::Approx(3.0).epsilon(1e-14));
  }
  SUBCASE("random reconstruction") {
    gen::Source s(1);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix m = gen::ginibre(s, 4, 4);
      const auto r = svd(m);
      ComplexMatrix us = r.u;
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t row = 0; row < 4; ++row) us(row, c) *= r.singular_values[c];
      const ComplexMatrix back = oracle::matmul(us, r.v.adjoint());
      CHECK(spectral_norm_2(back - m) <= 1e-10 * spectral_norm_2(m));
      for (std::size_t i = 1; i < 4; ++i) CHECK(r.singular_values[i - 1] >= r.singular_values[i]);
      CHECK(r.singular_values[3] >= 0.0);
    }
  }
  SUBCASE("rectangular") {
    gen::Source s(2);
    const ComplexMatrix m = gen::ginibre(s, 3, 5);
    const auto r = svd(m);
    CHECK(r.singular_values.size() == 3);
    CHECK(r.u.rows() == 3);
    CHECK(r.v.rows() == 5);
  }
  SUBCASE("non-finite input") {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(m), InvalidInput);
  }
}

TEST_CASE("hermitian_eigen") {
  SUBCASE("Pauli Z") {
    const auto r = hermitian_eigen(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}});
    CHECK(r.values[0] == doctest::Approx(-1.0));
    CHECK(r.values[1] == doctest::Approx(1.0));
  }
  SUBCASE("maximally mixed qubit") {
    const auto v = hermitian_eigenvalues(ComplexMatrix::identity(2) * 0.5);
    CHECK(v[0] == doctest::Approx(0.5));
    CHECK(v[1] == doctest::Approx(0.5));
  }
  SUBCASE("random 3x3 against the Jacobi oracle") {
    gen::Source s(3);
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix h = gen::hermitian(s, 3);
      const auto r = hermitian_eigen(h);
      const auto ref = oracle::eigenvalues(h);
      double sum = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(r.values[i] - ref[i]) <= 1e-10);
        sum += r.values[i];
      }
      CHECK(std::abs(sum - h.trace().real()) <= 1e-10);
      const ComplexMatrix vv = oracle::matmul(r.vectors.adjoint(), r.vectors);
      CHECK(oracle::max_diff(vv, ComplexMatrix::identity(3)) <= 1e-10);
      const ComplexMatrix back = oracle::matmul(oracle::matmul(r.vectors, ComplexMatrix::diagonal(r.values)),
                                                r.vectors.adjoint());
      CHECK(spectral_norm_2(back - h) <= 1e-10 * spectral_norm_2(h));
    }
  }
  SUBCASE("non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix{{1.0, 2.0}, {0.0, 1.0}}), NotHermitian);
  }
}

TEST_CASE("p_norm") {
  const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  CHECK(p_norm(z, 1.0) == doctest::Approx(2.0));
  CHECK(p_norm(z, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));
  CHECK(p_norm(z, 2.0) == doctest::Approx(std::sqrt(2.0)));
  gen::Source s(4);
  const auto x = gen::unit_vector(s, 3);
  const ComplexMatrix proj = ComplexMatrix::outer(x, x);
  for (NormKind k : {NormKind::One, NormKind::Two, NormKind::Infinity}) CHECK(p_norm(proj, k) == doctest::Approx(1.0));
  CHECK_THROWS_AS(p_norm(z, 3.0), InvalidInput);
}

TEST_CASE("kron") {
  CHECK(oracle::max_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)) == 0.0);
  const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}};
  const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
  const ComplexMatrix k = kron(p0, p1);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(k(i, j) == Complex(i == 1 && j == 1 ? 1.0 : 0.0));
  gen::Source s(5);
  for (int t = 0; t < 10; ++t) {
    const auto a = gen::ginibre(s, 2, 3), b = gen::ginibre(s, 3, 2), c = gen::ginibre(s, 3, 2), d = gen::ginibre(s, 2, 3);
    const ComplexMatrix lhs = kron(a, b) * kron(c, d);
    const ComplexMatrix rhs = oracle::kron(oracle::matmul(a, c), oracle::matmul(b, d));
    CHECK(oracle::max_diff(lhs, rhs) <= 1e-12 * (1.0 + oracle::frobenius(rhs)));
  }
}

TEST_CASE("partial_trace") {
  const auto phi = std::vector<Complex>{1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  const ComplexMatrix bell = ComplexMatrix::outer(phi, phi);
  CHECK(oracle::max_diff(partial_trace(bell, 2, 2, Subsystem::B), ComplexMatrix::identity(2) * 0.5) <= 1e-15);
  gen::Source s(6);
  const ComplexMatrix ra = gen::density(s, 2, 2), rb = gen::density(s, 3, 3);
  CHECK(oracle::max_diff(partial_trace(kron(ra, rb), 2, 3, Subsystem::B), ra) <= 1e-14);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dA = s.pick(1, 3), dB = s.pick(1, 3);
    const ComplexMatrix rho = gen::density(s, dA * dB, dA * dB);
    const ComplexMatrix tb = partial_trace(rho, dA, dB, Subsystem::B);
    const ComplexMatrix ta = partial_trace(rho, dA, dB, Subsystem::A);
    CHECK(std::abs(tb.trace() - 1.0) <= 1e-12);
    CHECK(oracle::max_diff(tb, oracle::trace_out_b(rho, dA, dB)) <= 1e-14);
    CHECK(oracle::max_diff(ta, oracle::trace_out_a(rho, dA, dB)) <= 1e-14);
    // A then B and B then A both give the full trace.
    CHECK(std::abs(partial_trace(tb, dA, 1, Subsystem::A).trace() - rho.trace()) <= 1e-12);
    CHECK(std::abs(partial_trace(ta, 1, dB, Subsystem::B).trace() - rho.trace()) <= 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(5), 2, 2, Subsystem::A), InvalidInput);
}

TEST_CASE("hermitian_operator_basis") {
  for (std::size_t d = 1; d <= 4; ++d) {
    const auto basis = hermitian_operator_basis(d);
    REQUIRE(basis.size() == d * d);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(basis[i].is_hermitian());
      if (i > 0) CHECK(std::abs(basis[i].trace()) <= 1e-14);
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK(std::abs(hs_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
  }
  // d = 2: normalized Paulis, identity first.
  const auto b2 = hermitian_operator_basis(2);
  CHECK(oracle::max_diff(b2[0], ComplexMatrix::identity(2) * (1.0 / std::sqrt(2.0))) <= 1e-15);
  CHECK(std::abs(b2[1](0, 1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("Hermiticity query uses a relative tolerance") {
  ComplexMatrix m = ComplexMatrix::identity(2) * 1e6;
  m(0, 1) = 1e-8;
  CHECK(m.is_hermitian());
  m(0, 1) = 1e-3;
  CHECK_FALSE(m.is_hermitian());
}

TEST_CASE("property: norm ordering on 200 random matrices") {
  gen::Source s(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = s.pick(1, 5), c = s.pick(1, 5);
    ComplexMatrix m = gen::ginibre(s, r, std::min(r, c)) * gen::ginibre(s, std::min(r, c), c);
    const double n1 = p_norm(m, NormKind::One), n2 = p_norm(m, NormKind::Two), ninf = p_norm(m, NormKind::Infinity);
    const double rank = static_cast<double>(std::min(r, c));
    CHECK(ninf <= n2 * (1 + 1e-12));
    CHECK(n2 <= n1 * (1 + 1e-12));
    CHECK(n1 <= std::sqrt(rank) * n2 * (1 + 1e-12));
    CHECK(std::abs(n2 - oracle::frobenius(m)) <= 1e-12 * (1 + n2));
  }
}

TEST_CASE("property: trace norm from the positive and negative parts") {
  gen::Source s(9);
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix x = gen::hermitian(s, s.pick(2, 6));
    const auto e = hermitian_eigen(x);
    double plus = 0.0, minus = 0.0;
    for (double v : e.values) (v > 0 ? plus : minus) += std::abs(v);
    CHECK(std::abs(trace_norm_hermitian(x) - (plus + minus)) <= 1e-10);
    CHECK(std::abs(trace_norm_hermitian(x) - oracle::trace_norm(x)) <= 1e-10);
  }
}

TEST_CASE("spectral helpers") {
  gen::Source s(10);
  const ComplexMatrix h = gen::hermitian(s, 3);
  const ComplexMatrix u = unitary_exp(h, 0.7);
  CHECK(oracle::max_diff(u * u.adjoint(), ComplexMatrix::identity(3)) <= 1e-12);
  const ComplexMatrix rho = gen::density(s, 3, 2);
  const ComplexMatrix r = psd_sqrt(rho);
  CHECK(oracle::max_diff(r * r, rho) <= 1e-12);
  const ComplexMatrix q = orthonormalize_columns(gen::ginibre(s, 4, 2));
  CHECK(oracle::max_diff(q.adjoint() * q, ComplexMatrix::identity(2)) <= 1e-12);
  const ComplexMatrix sg = hermitian_sign(ComplexMatrix{{2.0, 0.0}, {0.0, -3.0}}, 1e-12);
  CHECK(sg(0, 0) == Complex(1.0));
  CHECK(sg(1, 1) == Complex(-1.0));
}
