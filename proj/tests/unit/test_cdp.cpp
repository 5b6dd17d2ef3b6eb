#include <doctest.h>

#include <cmath>

#include "cdplab/cdp.hpp"
#include "cdplab/channels.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/random.hpp"
#include "cdplab/states.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cdplab;

namespace {

PureBipartiteState pure_from(std::vector<double> p, std::size_t d) {
  return schmidt_decompose(schmidt_form_vector(p, d, d), d, d);
}

EstimatorBudget small_budget() {
  EstimatorBudget b;
  b.random_pairs = 2;
  b.descent_steps = 4;
  b.probe_steps = 60;
  return b;
}

}  // namespace

TEST_CASE("cdp_pure_exact") {
  CHECK(cdp_pure_exact(pure_from({0.5, 0.5}, 2)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdp_pure_exact(pure_from({1.0, 0.0}, 2)) == doctest::Approx(0.0));
  CHECK(cdp_pure_exact(pure_from({0.8, 0.2}, 2)) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cdp_pure_exact(pure_from({0.6, 0.3, 0.1}, 3)) == doctest::Approx(0.1).epsilon(1e-12));
  // dA larger than dB: the dA-th coefficient does not exist.
  gen::Source s(40);
  CHECK(cdp_pure_exact(schmidt_decompose(gen::unit_vector(s, 6), 3, 2)) == 0.0);
}

TEST_CASE("pure_witness_channels") {
  const auto w = pure_witness_channels(2);
  const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
  ComplexMatrix e0 = ComplexMatrix::zeros(3, 3), e1 = ComplexMatrix::zeros(3, 3);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  CHECK(oracle::max_diff(w.first.apply(p1), e0) <= 1e-15);
  CHECK(oracle::max_diff(w.second.apply(p1), e1) <= 1e-15);

  const auto psi = pure_from({0.8, 0.2}, 2);
  const auto ev = evaluate_witness(psi.density(), pure_witness_channels(psi));
  CHECK(ev.numerator == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(ev.diamond == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(ev.ratio == doctest::Approx(0.2).epsilon(1e-7));

  const auto bell = pure_from({0.5, 0.5}, 2);
  CHECK(evaluate_witness(bell.density(), pure_witness_channels(bell)).ratio == doctest::Approx(0.5).epsilon(1e-7));

  // Same channels in both slots are rejected as a witness.
  CHECK_THROWS_AS(evaluate_witness(bell.density(), ChannelPair{w.first, w.first}), InvalidInput);
}

TEST_CASE("property: witness ratio in a rotated Schmidt basis") {
  gen::Source s(41);
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = s.pick(2, 3);
    const auto psi = schmidt_decompose(gen::unit_vector(s, d * d), d, d);
    const auto ev = evaluate_witness(psi.density(), pure_witness_channels(psi));
    CHECK(std::abs(ev.ratio - psi.schmidt_coefficients[d - 1]) <= 1e-7);
  }
}

TEST_CASE("cdp_bounds_general") {
  SUBCASE("OSR below dA^2") {
    Rng rng(42);
    const auto g = cdp_bounds_general(operator_schmidt(random_classical_on_a(rng, 2, 2)));
    CHECK(g.lower == 0.0);
    CHECK(g.sqrt_form <= 1e-12);
  }
  SUBCASE("isotropic d=2") {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      const auto g = cdp_bounds_general(operator_schmidt(isotropic_state(2, p)));
      CHECK(g.lower == doctest::Approx(p / std::pow(2.0, 3.5)).epsilon(1e-10));
      CHECK(g.upper_unclamped == doctest::Approx(p).epsilon(1e-9));
      CHECK(g.upper == doctest::Approx(std::min(p, 0.5)).epsilon(1e-9));
      CHECK(g.upper_unclamped <= g.sqrt_form + 1e-9);
    }
  }
  SUBCASE("ordering on random states") {
    gen::Source s(43);
    for (int t = 0; t < 20; ++t) {
      const auto g = cdp_bounds_general(operator_schmidt(gen::state(s, 2, 2)));
      CHECK(g.lower <= g.upper);
      CHECK(g.upper_unclamped <= g.upper_canonical + 1e-12);
      CHECK(g.upper_canonical <= g.sqrt_form + 1e-9);
    }
  }
}

TEST_CASE("perturbation_pair") {
  const auto osd = operator_schmidt(isotropic_state(2, 0.4));
  const auto rho = isotropic_state(2, 0.4);
  for (std::size_t l = 0; l < 4; ++l) {
    const auto pp = perturbation_pair(osd, l);
    const auto ev = evaluate_witness(rho, pp.channels);
    CHECK(std::abs(ev.numerator - pp.exact_numerator) <= 1e-9);
    CHECK(std::abs(ev.diamond - pp.exact_diamond) <= 1e-7);
    CHECK(std::abs(ev.ratio - pp.exact_ratio) <= 1e-7);
    CHECK(pp.epsilon == doctest::Approx(0.9 * pp.epsilon_cap));
  }
  // Off-diagonal probe on the isotropic state: ratio p.
  const ComplexMatrix x{{0.0, 1.0 / std::sqrt(2.0)}, {1.0 / std::sqrt(2.0), 0.0}};
  CHECK(probe_ratio(rho, x) == doctest::Approx(0.4).epsilon(1e-12));
  const auto hb = hermitian_operator_basis(2);
  const auto px = perturbation_channels(x, hb[3], -hb[3]);
  CHECK(evaluate_witness(rho, px.channels).ratio == doctest::Approx(0.4).epsilon(1e-7));

  CHECK_THROWS_AS(perturbation_channels(x, hb[3], -hb[3], px.epsilon_cap * 1.5), NotCompletelyPositive);
  CHECK_THROWS_AS(perturbation_pair(osd, 4), InvalidInput);
}

TEST_CASE("property: perturbation ratio matches the closed form for every factor") {
  gen::Source s(44);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dA = 2, dB = s.pick(2, 3);
    const auto rho = gen::state(s, dA, dB);
    const auto osd = operator_schmidt(rho);
    for (std::size_t l = 0; l < dA * dA; ++l) {
      const auto pp = perturbation_pair(osd, l);
      const double r = l < osd.coefficients.size() ? osd.coefficients[l] : 0.0;
      const double closed = r * oracle::trace_norm(osd.ops_B[l]) / p_norm(osd.ops_A[l], NormKind::Infinity);
      CHECK(std::abs(pp.exact_ratio - closed) <= 1e-12);
      CHECK(std::abs(evaluate_witness(rho, pp.channels).ratio - closed) <= 1e-7);
    }
  }
}

TEST_CASE("cdp_adversarial_estimate") {
  const auto b = small_budget();
  CHECK(cdp_adversarial_estimate(pure_from({0.8, 0.2}, 2).density(), b).estimate ==
        doctest::Approx(0.2).epsilon(1e-7));
  CHECK(cdp_adversarial_estimate(isotropic_state(2, 1.0), b).estimate == doctest::Approx(0.5).epsilon(1e-7));
  const double iso = cdp_adversarial_estimate(isotropic_state(2, 0.5), b).estimate;
  CHECK(iso >= 0.2 - 1e-7);
  CHECK(iso <= 0.5 + 1e-7);
  // Product state: nothing to correlate with.
  gen::Source s(45);
  const auto prod = BipartiteState::product(gen::density(s, 2, 2), gen::density(s, 2, 2));
  CHECK(cdp_adversarial_estimate(prod, b).estimate <= 1e-9);
}

TEST_CASE("larger probe than partner: the estimate vanishes") {
  gen::Source s(46);
  for (int t = 0; t < 3; ++t) {
    const auto rho = gen::state(s, 3, 2);
    const auto osd = operator_schmidt(rho);
    CHECK(osd.coefficient_at(9) == 0.0);
    CHECK(cdp_bounds_general(osd).lower == 0.0);
    const auto est = cdp_adversarial_estimate(rho, small_budget());
    CHECK(est.estimate <= 1e-9);
  }
}

TEST_CASE("cdp_isotropic_bounds") {
  const auto one = cdp_isotropic_bounds(2, 1.0);
  CHECK(one.lower == doctest::Approx(0.5));
  CHECK(one.upper == doctest::Approx(0.5));
  const auto zero = cdp_isotropic_bounds(3, 0.0);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 0.0);
  const auto mid = cdp_isotropic_bounds(3, 0.6);
  CHECK(mid.lower == doctest::Approx(0.6 / 3.4).epsilon(1e-12));
  CHECK(mid.upper == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(detect_isotropic(isotropic_state(3, 0.6)).value() == doctest::Approx(0.6).epsilon(1e-12));
  gen::Source s(47);
  CHECK_FALSE(detect_isotropic(gen::state(s, 2, 2)).has_value());
}

TEST_CASE("cdp_discord_bound") {
  Rng rng(48);
  CHECK(cdp_discord_bound(random_classical_on_a(rng, 2, 2), 8) <= 1e-9);
  CHECK(cdp_discord_bound(isotropic_state(2, 1.0), 16) == doctest::Approx(1.0).epsilon(1e-6));
  gen::Source s(49);
  const ComplexMatrix ra = ComplexMatrix::diagonal(std::vector<double>{0.7, 0.3});
  CHECK(cdp_discord_bound(BipartiteState::product(ra, gen::density(s, 3, 3)), 8) <= 1e-9);
}

TEST_CASE("cdp_osr_reduction_bound") {
  Rng rng(50);
  CHECK(cdp_osr_reduction_bound(random_classical_on_a(rng, 2, 2), 4) == 0.0);
  CHECK(cdp_osr_reduction_bound(isotropic_state(2, 1.0), 8) == doctest::Approx(1.0).epsilon(1e-6));
  gen::Source s(51);
  for (int t = 0; t < 3; ++t) {
    const auto rho = gen::state(s, 2, 2);
    CHECK(cdp_osr_reduction_bound(rho, 4) >= cdp_adversarial_estimate(rho, small_budget()).estimate - 1e-6);
  }
}

TEST_CASE("cdp_continuity_check") {
  const auto b = small_budget();
  const auto same = cdp_continuity_check(isotropic_state(2, 0.5), isotropic_state(2, 0.5), b);
  CHECK(same.bound_diff <= 1e-12);
  CHECK(same.trace_norm <= 1e-12);
  CHECK(cdp_continuity_check(isotropic_state(2, 0.5), isotropic_state(2, 0.6), b).holds());
  const auto pure = cdp_continuity_check(pure_from({1.0, 0.0}, 2).density(), pure_from({0.9, 0.1}, 2).density(), b);
  CHECK(pure.bound_diff == doctest::Approx(0.1).epsilon(1e-6));
  CHECK(pure.holds());
}

TEST_CASE("cdp_lower_bound_pure_lemma") {
  const auto w = pure_witness_channels(2);
  const auto delta = difference(w.first, w.second);
  const auto prod = cdp_lower_bound_pure_lemma(pure_from({1.0, 0.0}, 2), delta);
  CHECK(prod.lhs == 0.0);
  CHECK(prod.holds());
  const auto bell = cdp_lower_bound_pure_lemma(pure_from({0.5, 0.5}, 2), delta);
  CHECK(bell.lhs == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(bell.rhs == doctest::Approx(1.0).epsilon(1e-9));
  gen::Source s(52);
  for (int t = 0; t < 20; ++t) {
    const std::size_t d = s.pick(2, 3);
    const auto psi = schmidt_decompose(gen::unit_vector(s, d * d), d, d);
    const auto m = difference(gen::channel(s, d, 2, 3), gen::channel(s, d, 2, 3));
    CHECK(cdp_lower_bound_pure_lemma(psi, m).holds());
  }
}

TEST_CASE("cdp_monotonicity_check") {
  const auto b = small_budget();
  const auto bell = isotropic_state(2, 1.0);
  const auto same = cdp_monotonicity_check(bell, identity_channel(2), b);
  CHECK(same.holds());
  CHECK(same.estimate_after == doctest::Approx(same.estimate_before).epsilon(1e-9));
  const auto deph = cdp_monotonicity_check(bell, dephasing_channel(2), b);
  CHECK(deph.holds());
  CHECK(deph.estimate_after <= 0.5 + 1e-7);
  gen::Source s(53);
  const auto rho = gen::state(s, 2, 2);
  const auto repl = cdp_monotonicity_check(rho, replacement_channel(2, gen::density(s, 2, 2)), b);
  CHECK(repl.holds());
  CHECK(repl.estimate_after <= 1e-9);
  CHECK(operator_schmidt(replacement_channel(2, gen::density(s, 2, 2)).apply_on_b(rho)).rank == 1);
}

TEST_CASE("separable_cap_check") {
  gen::Source s(54);
  for (int t = 0; t < 20; ++t) CHECK(separable_cap_check(gen::separable(s, 2, s.pick(1, 4))).holds());
  const auto boundary = separable_cap_check(isotropic_state(2, 1.0 / 3.0));
  CHECK(boundary.premise);
  CHECK(boundary.r_last == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(boundary.holds());
  CHECK(boundary.upper_sqrt_form > boundary.printed_cap);
  const auto bell = separable_cap_check(isotropic_state(2, 1.0));
  CHECK_FALSE(bell.premise);
  CHECK(bell.holds());
}

TEST_CASE("cdp_report") {
  CdpOptions opt;
  opt.budget = small_budget();
  opt.discord_restarts = 8;
  opt.osr_reduction_restarts = 4;
  SUBCASE("Bell") {
    const auto r = cdp_report(isotropic_state(2, 1.0), "bell_d2", opt);
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.lower_bound == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.upper_bound == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.adversarial_estimate == doctest::Approx(0.5).epsilon(1e-7));
  }
  SUBCASE("isotropic p = 0.5") {
    const auto r = cdp_report(isotropic_state(2, 0.5), "iso", opt);
    CHECK_FALSE(r.exact.has_value());
    CHECK(r.lower_bound == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(r.upper_bound == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.lower_bound <= r.adversarial_estimate + 1e-7);
    CHECK(r.adversarial_estimate <= r.upper_bound + 1e-7);
    std::vector<std::string> tags;
    for (const auto& e : r.bound_provenance) tags.push_back(e.tag);
    const std::vector<std::string> want{"thm2-lower", "thm2-upper", "eq12-lower", "eq12-upper",
                                        "discord",    "osr-reduction", "adversarial"};
    CHECK(tags == want);
  }
  SUBCASE("deterministic under a fixed seed") {
    gen::Source s(55);
    const auto rho = gen::state(s, 2, 2);
    const auto a = cdp_report(rho, "x", opt), b = cdp_report(rho, "x", opt);
    CHECK(a.adversarial_estimate == b.adversarial_estimate);
    CHECK(a.witness_family == b.witness_family);
  }
}

TEST_CASE("property: local unitaries on A leave pure-state estimates unchanged") {
  gen::Source s(56);
  const auto b = small_budget();
  for (int t = 0; t < 6; ++t) {
    const std::size_t d = 2 + t % 2;
    const auto rho = BipartiteState::from_pure(gen::unit_vector(s, d * d), d, d);
    const auto moved = apply_local_unitaries(rho, gen::unitary(s, d), ComplexMatrix::identity(d));
    const double e0 = cdp_adversarial_estimate(rho, b).estimate;
    const double e1 = cdp_adversarial_estimate(moved, b).estimate;
    CHECK(std::abs(e0 - e1) <= 1e-6);
    CHECK(std::abs(cdp_pure_exact(*as_pure(rho)) - cdp_pure_exact(*as_pure(moved))) <= 1e-10);
  }
}
