#include <algorithm>
#include <cmath>
#include <string>

#include "cdplab/cdp.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/random.hpp"

namespace cdplab {

ContinuityCheck cdp_continuity_check(const BipartiteState& rho, const BipartiteState& sigma,
                                     const EstimatorBudget& budget, std::uint64_t seed) {
  if (rho.dA() != sigma.dA() || rho.dB() != sigma.dB()) {
    throw InvalidInput("cdp_continuity_check: states have different splits");
  }
  const AdversarialEstimate a = cdp_adversarial_estimate(rho, budget, seed);
  const AdversarialEstimate b = cdp_adversarial_estimate(sigma, budget, seed, {a.witness});
  ContinuityCheck c;
  c.estimate_rho = a.estimate;
  c.estimate_sigma = b.estimate;
  // Cross-evaluate the other way without rerunning the search.
  if (b.family != "warm-start") c.estimate_rho = std::min(a.estimate, evaluate_witness(rho, b.witness).ratio);
  c.bound_diff = std::abs(c.estimate_rho - c.estimate_sigma);
  c.trace_norm = trace_norm_hermitian(rho.matrix() - sigma.matrix());
  return c;
}

PureLemmaCheck cdp_lower_bound_pure_lemma(const PureBipartiteState& psi, const HermitianPreservingMap& map) {
  if (psi.dA != psi.dB) throw InvalidInput("cdp_lower_bound_pure_lemma: requires dA == dB");
  if (map.d_in() != psi.dA) throw InvalidInput("cdp_lower_bound_pure_lemma: map must act on A");
  PureLemmaCheck c;
  c.lhs = cdp_pure_exact(psi) * diamond_norm_sdp(map).value;
  const ComplexMatrix proj = ComplexMatrix::outer(psi.amplitudes, psi.amplitudes);
  c.rhs = trace_norm_hermitian(map.apply_on_a(proj, psi.dB).hermitian_part());
  return c;
}

bool MonotonicityCheck::holds() const {
  if (estimate_after > estimate_before + kEstimatorMargin) return false;
  if (exact_before && exact_after && *exact_after > *exact_before + 1e-7) return false;
  return true;
}

MonotonicityCheck cdp_monotonicity_check(const BipartiteState& rho, const QuantumChannel& gamma_b,
                                         const EstimatorBudget& budget, std::uint64_t seed) {
  if (gamma_b.d_in() != rho.dB()) throw InvalidInput("cdp_monotonicity_check: channel must act on B");
  const BipartiteState processed = gamma_b.apply_on_b(rho);
  MonotonicityCheck c;
  const std::uint64_t rot_seed = derive_seed(seed, "osd-rotations");
  c.before = cdp_bounds_general(operator_schmidt(rho), budget.rotations, rot_seed);
  c.after = cdp_bounds_general(operator_schmidt(processed), budget.rotations, rot_seed);
  const AdversarialEstimate before = cdp_adversarial_estimate(rho, budget, seed);
  const AdversarialEstimate after = cdp_adversarial_estimate(processed, budget, seed, {before.witness});
  c.estimate_before = before.estimate;
  c.estimate_after = after.estimate;
  const auto pure_before = as_pure(rho);
  const auto pure_after = as_pure(processed);
  if (pure_before && pure_after) {
    c.exact_before = cdp_pure_exact(*pure_before);
    c.exact_after = cdp_pure_exact(*pure_after);
  }
  return c;
}

SeparableCapCheck separable_cap_check(const BipartiteState& rho) {
  if (rho.dA() != rho.dB()) throw InvalidInput("separable_cap_check: requires dA == dB");
  const std::size_t d = rho.dA();
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho);
  SeparableCapCheck c;
  c.realignment_sum = realignment_sum(osd);
  c.premise = c.realignment_sum <= 1.0 + 1e-10;
  c.r_last = osd.coefficients.back();
  c.upper_sqrt_form = c.r_last * static_cast<double>(d);
  c.cap = r_cn(d) * static_cast<double>(d);
  c.printed_cap = r_cn_printed(d) * static_cast<double>(d);
  return c;
}

CdpReport cdp_report(const BipartiteState& rho, const std::string& state_id, const CdpOptions& options) {
  CdpReport r;
  r.state_id = state_id;
  r.dA = rho.dA();
  r.dB = rho.dB();

  const AdversarialEstimate est = cdp_adversarial_estimate(rho, options.budget, options.seed);
  const OperatorSchmidtDecomposition osd = operator_schmidt(rho, options.threshold);
  const GeneralBounds gb =
      cdp_bounds_general(osd, options.budget.rotations, derive_seed(options.seed, "osd-rotations"));

  r.lower_bound = gb.lower;
  r.upper_bound = gb.upper;
  r.bound_provenance.push_back({"thm2-lower", "lower", gb.lower});
  r.bound_provenance.push_back({"thm2-upper", "upper", gb.upper});

  if (const auto pure = as_pure(rho)) {
    const double exact = cdp_pure_exact(*pure);
    r.exact = exact;
    r.lower_bound = std::max(r.lower_bound, exact);
    r.upper_bound = std::min(r.upper_bound, exact);
    r.bound_provenance.push_back({"thm1", "exact", exact});
  }
  if (const auto p = detect_isotropic(rho)) {
    const IsotropicBounds ib = cdp_isotropic_bounds(rho.dA(), *p);
    r.lower_bound = std::max(r.lower_bound, ib.lower);
    r.upper_bound = std::min(r.upper_bound, ib.upper);
    r.bound_provenance.push_back({"eq12-lower", "lower", ib.lower});
    r.bound_provenance.push_back({"eq12-upper", "upper", ib.upper});
  }
  // Disturbance bounds are recorded but not folded into upper_bound: they are
  // not ordered against the estimate.
  r.bound_provenance.push_back(
      {"discord", "upper", cdp_discord_bound(rho, options.discord_restarts, derive_seed(options.seed, "discord"))});
  r.bound_provenance.push_back({"osr-reduction", "upper",
                                cdp_osr_reduction_bound(rho, options.osr_reduction_restarts,
                                                        derive_seed(options.seed, "osr-reduction"),
                                                        options.threshold)});

  r.adversarial_estimate = est.estimate;
  r.witness_family = est.family;
  r.witness_channels = est.witness;
  r.bound_provenance.push_back({"adversarial", "estimate", est.estimate});
  return r;
}

}  // namespace cdplab
