#include <doctest.h>

#include <cmath>

#include "cdplab/channels.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/extension.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/states.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cdplab;

TEST_CASE("BipartiteState validation") {
  CHECK_NOTHROW(BipartiteState(ComplexMatrix::identity(4) * 0.25, 2, 2));
  CHECK_THROWS_AS(BipartiteState(ComplexMatrix::identity(4) * 0.3, 2, 2), ValidationError);
  CHECK_THROWS_AS(BipartiteState(ComplexMatrix::identity(4) * 0.25, 2, 3), InvalidInput);
  ComplexMatrix neg = ComplexMatrix::diagonal(std::vector<double>{0.6, 0.5, -0.1, 0.0});
  CHECK_THROWS_AS(BipartiteState(neg, 2, 2), ValidationError);
  ComplexMatrix nh = ComplexMatrix::identity(4) * 0.25;
  nh(0, 1) = 0.1;
  CHECK_THROWS_AS(BipartiteState(nh, 2, 2), ValidationError);

  // Rounding-level negativity is clipped.
  ComplexMatrix tiny = ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5 + 1e-11, -1e-11, 0.0});
  const BipartiteState clipped(tiny, 2, 2);
  for (double v : hermitian_eigenvalues(clipped.matrix())) CHECK(v >= 0.0);
  CHECK(std::abs(clipped.matrix().trace() - 1.0) <= 1e-14);
}

TEST_CASE("schmidt_decompose") {
  SUBCASE("Bell") {
    const auto s = schmidt_decompose(maximally_entangled_vector(2), 2, 2);
    CHECK(s.schmidt_coefficients[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.schmidt_coefficients[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("product") {
    const auto s = schmidt_decompose(std::vector<Complex>{1.0, 0.0, 0.0, 0.0}, 2, 2);
    CHECK(s.schmidt_coefficients[0] == doctest::Approx(1.0));
    CHECK(std::abs(s.schmidt_coefficients[1]) <= 1e-14);
    CHECK(s.schmidt_rank() == 1);
  }
  SUBCASE("(0.8, 0.2)") {
    const std::vector<double> p{0.8, 0.2};
    const auto s = schmidt_decompose(schmidt_form_vector(p, 2, 2), 2, 2);
    CHECK(s.schmidt_coefficients[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(s.schmidt_coefficients[1] == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("unnormalized input") {
    CHECK_THROWS_AS(schmidt_decompose(std::vector<Complex>{1.0, 1.0, 0.0, 0.0}, 2, 2), InvalidInput);
  }
  SUBCASE("basis vectors rebuild the state") {
    gen::Source s(11);
    for (int t = 0; t < 20; ++t) {
      const std::size_t dA = s.pick(2, 3), dB = s.pick(2, 4);
      const auto psi = gen::unit_vector(s, dA * dB);
      const auto sd = schmidt_decompose(psi, dA, dB);
      std::vector<Complex> back(dA * dB, 0.0);
      for (std::size_t k = 0; k < sd.schmidt_coefficients.size(); ++k)
        for (std::size_t a = 0; a < dA; ++a)
          for (std::size_t b = 0; b < dB; ++b)
            back[a * dB + b] += std::sqrt(sd.schmidt_coefficients[k]) * sd.basis_a(a, k) * sd.basis_b(b, k);
      double err = 0.0;
      for (std::size_t i = 0; i < back.size(); ++i) err = std::max(err, std::abs(back[i] - psi[i]));
      CHECK(err <= 1e-10);
    }
  }
}

TEST_CASE("channel action on A") {
  gen::Source s(12);
  const BipartiteState rho = gen::state(s, 2, 3);
  SUBCASE("identity") {
    CHECK(oracle::max_diff(identity_channel(2).apply_on_a(rho).matrix(), rho.matrix()) <= 1e-14);
  }
  SUBCASE("fully depolarizing") {
    const ComplexMatrix out = fully_depolarizing_channel(2, 2).apply_on_a(rho).matrix();
    CHECK(oracle::max_diff(out, oracle::kron(ComplexMatrix::identity(2) * 0.5, rho.reduced_b())) <= 1e-14);
  }
  SUBCASE("random Kraus channels against the direct Kraus sum") {
    for (int t = 0; t < 20; ++t) {
      const auto ch = gen::channel(s, 2, s.pick(1, 3), 2);
      const ComplexMatrix out = ch.apply_on_a(rho.matrix(), 3);
      CHECK(std::abs(out.trace() - 1.0) <= 1e-10);
      CHECK(oracle::max_diff(out, oracle::apply_on_a(ch.kraus(), rho.matrix(), 3)) <= 1e-12);
    }
  }
}

TEST_CASE("property: channels act locally on 100 random pairs") {
  gen::Source s(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t dA = s.pick(2, 3), dB = s.pick(2, 3), dout = s.pick(2, 3);
    const BipartiteState rho = gen::state(s, dA, dB);
    const auto ch = gen::channel(s, dA, dout, s.pick(1, 3) + 1);
    const ComplexMatrix lhs = partial_trace(ch.apply_on_a(rho.matrix(), dB), dout, dB, Subsystem::B);
    CHECK(oracle::max_diff(lhs, ch.apply(rho.reduced_a())) <= 1e-10);
  }
}

TEST_CASE("property: local unitaries keep Schmidt coefficients") {
  gen::Source s(14);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dA = s.pick(2, 3), dB = s.pick(2, 3);
    const auto psi = gen::unit_vector(s, dA * dB);
    const ComplexMatrix u = oracle::kron(gen::unitary(s, dA), gen::unitary(s, dB));
    const auto moved = cdplab::apply(u, psi);
    const auto a = schmidt_decompose(psi, dA, dB).schmidt_coefficients;
    const auto b = schmidt_decompose(moved, dA, dB).schmidt_coefficients;
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10);
  }
}

TEST_CASE("isotropic_state") {
  CHECK(oracle::max_diff(isotropic_state(2, 0.0).matrix(), ComplexMatrix::identity(4) * 0.25) <= 1e-15);
  const auto phi = maximally_entangled_vector(2);
  CHECK(oracle::max_diff(isotropic_state(2, 1.0).matrix(), ComplexMatrix::outer(phi, phi)) <= 1e-15);
  const auto ev = oracle::eigenvalues(isotropic_state(3, 0.5).matrix());
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(ev[i] - 0.5 / 9.0) <= 1e-12);
  CHECK(std::abs(ev[8] - (0.5 / 9.0 + 0.5)) <= 1e-12);
  CHECK_THROWS_AS(isotropic_state(2, 1.5), InvalidInput);
}

TEST_CASE("choi_of / kraus_of") {
  const auto phi = maximally_entangled_vector(2);
  CHECK(oracle::max_diff(identity_channel(2).choi(), ComplexMatrix::outer(phi, phi) * 2.0) <= 1e-14);
  CHECK(oracle::max_diff(dephasing_channel(2).choi(),
                         ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0, 0.0, 1.0})) <= 1e-14);
  gen::Source s(15);
  for (int t = 0; t < 20; ++t) {
    const auto ch = gen::channel(s, 2, 2, 2);
    CHECK(oracle::max_diff(ch.choi(), oracle::choi_from_kraus(ch.kraus())) <= 1e-12);
    const auto k = kraus_of(ch.choi(), 2, 2);
    CHECK(oracle::max_diff(choi_of(k), ch.choi()) <= 1e-9);
    const auto rebuilt = QuantumChannel::from_choi(ch.choi(), 2, 2);
    CHECK(std::abs(rebuilt.choi().trace() - 2.0) <= 1e-10);
  }
}

TEST_CASE("channel constructors reject invalid input") {
  CHECK_THROWS_AS(QuantumChannel(std::vector<ComplexMatrix>{ComplexMatrix::identity(2) * 0.9}), NotTracePreserving);
  CHECK_THROWS_AS(QuantumChannel(std::vector<ComplexMatrix>{ComplexMatrix::identity(2), ComplexMatrix::identity(3)}),
                  InvalidInput);
  CHECK_THROWS_AS(QuantumChannel(std::vector<ComplexMatrix>{}), InvalidInput);
  ComplexMatrix bad = ComplexMatrix::diagonal(std::vector<double>{1.5, 0.0, 0.0, -0.5});
  CHECK_THROWS_AS(QuantumChannel::from_choi(bad, 2, 2), NotCompletelyPositive);
  CHECK_THROWS_AS(QuantumChannel::from_choi(ComplexMatrix::identity(4) * 0.25, 2, 2), NotTracePreserving);
  ComplexMatrix nh = ComplexMatrix::identity(4) * 0.5;
  nh(0, 3) = 0.3;
  CHECK_THROWS_AS(QuantumChannel::from_choi(nh, 2, 2), NotHermitian);
}

TEST_CASE("Hermitian-preserving map adjoint") {
  gen::Source s(16);
  const auto a = gen::channel(s, 2, 3, 2), b = gen::channel(s, 2, 3, 2);
  const HermitianPreservingMap m = difference(a, b);
  const HermitianPreservingMap ma = m.adjoint();
  CHECK(ma.d_in() == 3);
  CHECK(ma.d_out() == 2);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix x = gen::hermitian(s, 2), y = gen::hermitian(s, 3);
    CHECK(std::abs(hs_inner(y, m.apply(x)) - hs_inner(ma.apply(y), x)) <= 1e-12);
  }
}

TEST_CASE("purify_and_extend_check") {
  SUBCASE("pure state") {
    gen::Source s(17);
    const auto psi = gen::unit_vector(s, 4);
    const auto rec = purify_and_extend_check(BipartiteState::from_pure(psi, 2, 2));
    CHECK(rec.residual <= 1e-10);
    // A pure state needs no environment: the channel is a single isometry.
    CHECK(kraus_of(rec.channel.choi(), 2, 2).size() == 1);
  }
  SUBCASE("maximally mixed") {
    CHECK(purify_and_extend_check(isotropic_state(2, 0.0)).residual <= 1e-8);
  }
  SUBCASE("isotropic p = 0.5") {
    CHECK(purify_and_extend_check(isotropic_state(2, 0.5)).residual <= 1e-8);
  }
  SUBCASE("random states, asymmetric splits") {
    gen::Source s(18);
    for (int t = 0; t < 20; ++t) {
      const BipartiteState rho = gen::state(s, s.pick(2, 3), s.pick(2, 3));
      const auto rec = purify_and_extend_check(rho);
      CHECK(rec.residual <= 1e-8);
      CHECK(rec.channel.d_in() == rho.dA());
      CHECK(rec.channel.d_out() == rho.dB());
    }
  }
}

TEST_CASE("canonical channel families are CPTP") {
  gen::Source s(19);
  const ComplexMatrix sigma = gen::density(s, 3, 2);
  const std::vector<std::size_t> blocks{0, 0, 1};
  const std::vector<QuantumChannel> all{identity_channel(3),
                                        unitary_channel(gen::unitary(s, 3)),
                                        replacement_channel(2, sigma),
                                        fully_depolarizing_channel(3, 2),
                                        depolarizing_channel(3, 0.3),
                                        dephasing_channel(3),
                                        dephasing_channel(gen::unitary(s, 3)),
                                        block_dephasing_channel(gen::unitary(s, 3), blocks)};
  for (const auto& ch : all) {
    const ComplexMatrix tr = partial_trace(ch.choi(), ch.d_in(), ch.d_out(), Subsystem::B);
    CHECK(oracle::max_diff(tr, ComplexMatrix::identity(ch.d_in())) <= 1e-12);
    CHECK(oracle::eigenvalues(ch.choi()).front() >= -1e-12);
  }
}
