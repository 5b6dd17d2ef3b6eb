#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cdplab/channels.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/random.hpp"
#include "cdplab/states.hpp"
#include "cdplab/tomography.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cdplab;

TEST_CASE("reconstruct_channel examples") {
  SUBCASE("identity on the Bell state") {
    const auto rho = isotropic_state(2, 1.0);
    const auto ch = identity_channel(2);
    const auto r = reconstruct_channel(ch.apply_on_a(rho).matrix(), operator_schmidt(rho), ch);
    const auto phi = maximally_entangled_vector(2);
    CHECK(oracle::max_diff(r.reconstructed_choi, ComplexMatrix::outer(phi, phi) * 2.0) <= 1e-9);
    REQUIRE(r.residual_to_truth.has_value());
    CHECK(*r.residual_to_truth <= 1e-9);
    CHECK(r.conditioning == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("random unitary on isotropic p = 0.3") {
    Rng rng(60);
    const auto rho = isotropic_state(2, 0.3);
    const auto ch = unitary_channel(random_unitary(rng, 2));
    const auto r = reconstruct_channel(ch.apply_on_a(rho).matrix(), operator_schmidt(rho), ch);
    CHECK(*r.residual_to_truth <= 1e-8);
    CHECK(r.conditioning >= 1.0);
  }
  SUBCASE("classical-on-A input is rejected") {
    Rng rng(61);
    const auto rho = random_classical_on_a(rng, 2, 2);
    CHECK_THROWS_AS(reconstruct_channel(rho.matrix(), operator_schmidt(rho)), NotTomographicallyComplete);
  }
}

TEST_CASE("property: round trip on 50 random pairs") {
  gen::Source s(62);
  for (int t = 0; t < 50; ++t) {
    const auto rho = gen::state(s, 2, s.pick(2, 3));
    const auto osd = operator_schmidt(rho);
    if (osd.rank < 4) continue;
    const auto ch = gen::channel(s, 2, s.pick(2, 3), s.pick(1, 3) + 1);
    const auto out = ch.apply_on_a(rho.matrix(), rho.dB());
    const auto r = reconstruct_channel(out, osd, ch);
    CHECK(*r.residual_to_truth <= 1e-8);
    CHECK(std::abs(*r.residual_to_truth - oracle::frobenius(r.reconstructed_choi - ch.choi())) <= 1e-14);
    // Noiseless data from a CPTP map gives a valid Choi matrix.
    CHECK(oracle::eigenvalues(r.reconstructed_choi).front() >= -1e-8);
    const ComplexMatrix tr = partial_trace(r.reconstructed_choi, 2, ch.d_out(), Subsystem::B);
    CHECK(oracle::max_diff(tr, ComplexMatrix::identity(2)) <= 1e-8);
  }
}

TEST_CASE("property: reconstruction is linear in the output") {
  gen::Source s(63);
  const auto rho = isotropic_state(2, 0.6);
  const auto osd = operator_schmidt(rho);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix x = gen::hermitian(s, 4), y = gen::hermitian(s, 4);
    const double a = s.gauss(), b = s.gauss();
    const ComplexMatrix lhs = reconstruct_channel(x * a + y * b, osd).reconstructed_choi;
    const ComplexMatrix rhs = reconstruct_channel(x, osd).reconstructed_choi * a +
                              reconstruct_channel(y, osd).reconstructed_choi * b;
    CHECK(oracle::max_diff(lhs, rhs) <= 1e-9);
  }
}

TEST_CASE("noise_sensitivity") {
  const auto rho = isotropic_state(2, 0.5);
  Rng rng(64);
  const auto ch = unitary_channel(random_unitary(rng, 2));
  const auto quiet = noise_sensitivity(rho, ch, 0.0, 3, 1);
  CHECK(quiet.max_residual <= 1e-9);
  CHECK(quiet.trials == 3);
  CHECK(quiet.r_min == doctest::Approx(0.25).epsilon(1e-10));

  const auto rows = isotropic_sensitivity_sweep(2, {1.0, 0.5, 0.1}, 1e-6, 20, 7);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].stats.mean_residual < rows[1].stats.mean_residual);
  CHECK(rows[1].stats.mean_residual < rows[2].stats.mean_residual);

  // Same smallest coefficient, different states: comparable amplification.
  const auto a = noise_sensitivity(isotropic_state(2, 0.5), ch, 1e-6, 20, 8);
  const auto b = noise_sensitivity(apply_local_unitaries(isotropic_state(2, 0.5), random_unitary(rng, 2),
                                                         random_unitary(rng, 2)),
                                   ch, 1e-6, 20, 8);
  CHECK(std::abs(a.r_min - b.r_min) <= 1e-12);
  CHECK(a.mean_residual <= 3.0 * b.mean_residual);
  CHECK(b.mean_residual <= 3.0 * a.mean_residual);
}

TEST_CASE("write_sensitivity_csv") {
  std::ostringstream out;
  write_sensitivity_csv(out, {{0.5, {0.25, 1e-6, 2e-6, 3e-6, 4}}});
  const std::string text = out.str();
  CHECK(text.rfind("p,r_min,noise_level,mean_residual,max_residual,trials\n", 0) == 0);
  CHECK(text.find("0.5,0.25,") != std::string::npos);
  CHECK(text.back() == '\n');
}
