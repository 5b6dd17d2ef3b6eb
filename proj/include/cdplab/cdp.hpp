#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdplab/channels.hpp"
#include "cdplab/diamond.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

/// Margin applied when comparing heuristic estimates across different states.
inline constexpr double kEstimatorMargin = 1e-4;

/// Default-constructed pairs hold the trivial channel on C^1 as a placeholder.
struct ChannelPair {
  QuantumChannel first{std::vector<ComplexMatrix>{ComplexMatrix::identity(1)}};
  QuantumChannel second{std::vector<ComplexMatrix>{ComplexMatrix::identity(1)}};
};

/// ||(Delta (x) id)(rho)||_1, ||Delta||_diamond and their ratio for Delta = first - second.
struct WitnessEvaluation {
  double numerator = 0.0;
  double diamond = 0.0;
  double ratio = 0.0;
};
/// Diamond norm by SDP. Throws InvalidInput if the channels do not act on A or
/// are indistinguishable (diamond norm below 1e-9).
WitnessEvaluation evaluate_witness(const BipartiteState& rho, const ChannelPair& pair);

// ---------------------------------------------------------------- pure states

/// p_{dA}, the dA-th Schmidt coefficient (0 when dA exceeds the Schmidt rank or dB).
double cdp_pure_exact(const PureBipartiteState& psi);

/// X -> Tr(P X)|2><2| + <e|X|e>|0><0| and the same with |1><1|, where e is the
/// last column of `basis` and P projects onto the other columns. Output dimension 3.
ChannelPair pure_witness_channels(const ComplexMatrix& basis);
/// Computational-basis version (e = |dA - 1>).
ChannelPair pure_witness_channels(std::size_t dA);
/// Pair built in the Schmidt basis of psi on A, so that the ratio equals p_{dA}.
ChannelPair pure_witness_channels(const PureBipartiteState& psi);

// ------------------------------------------------------------- general bounds

struct GeneralBounds {
  double lower = 0.0;             ///< r_{dA^2} / dA^{5/2}, 0 when OSR < dA^2
  double upper = 0.0;             ///< min(min_i r_i ||B_i||_1 / ||A_i||_inf, 1/dA)
  double upper_canonical = 0.0;   ///< min_i over the returned OSD only, no rotations, no clamp
  double upper_unclamped = 0.0;   ///< min over the OSD and its rotations, no clamp
  double sqrt_form = 0.0;         ///< r_{dA^2} sqrt(dA dB)
  ComplexMatrix best_probe;       ///< A_i attaining upper_unclamped
  ComplexMatrix best_partner;     ///< matching B_i
  double best_coefficient = 0.0;  ///< matching r_i
};

/// Bounds from the OSD. Degenerate coefficient blocks are re-evaluated under
/// `rotations` random real rotations (seeded) and under the projections of the
/// Gell-Mann elements onto the block; the minimum is kept.
GeneralBounds cdp_bounds_general(const OperatorSchmidtDecomposition& osd, int rotations = 16,
                                 std::uint64_t seed = kDefaultSeed);

// -------------------------------------------------------- perturbation pairs

/// Lambda_i[X] = Tr(X) 1/d_out + eps Tr(A X) Y_i.
struct PerturbationChannelPair {
  double epsilon = 0.0;
  double epsilon_cap = 0.0;  ///< 1 / (d_out ||A||_inf max ||Y_i||_inf)
  ComplexMatrix probe_op;
  ComplexMatrix y0;
  ComplexMatrix y1;
  ChannelPair channels;
  double exact_numerator = 0.0;  ///< r eps ||Y0 - Y1||_1 ||B||_1
  double exact_diamond = 0.0;    ///< eps ||Y0 - Y1||_1 ||A||_inf
  double exact_ratio = 0.0;      ///< r ||B||_1 / ||A||_inf
};

/// Perturbation channels for an arbitrary Hermitian probe A. Y0, Y1 must be
/// traceless Hermitian and distinct. epsilon defaults to 0.9 of the cap; an
/// explicit epsilon above the cap throws NotCompletelyPositive.
PerturbationChannelPair perturbation_channels(const ComplexMatrix& probe, const ComplexMatrix& y0,
                                              const ComplexMatrix& y1, std::optional<double> epsilon = {});

/// Perturbation pair probing the l-th OSD factor (0-based, l < dA^2). With no Y's
/// given, Y0 = G and Y1 = -G for the first traceless Gell-Mann element G of dimension dA.
PerturbationChannelPair perturbation_pair(const OperatorSchmidtDecomposition& osd, std::size_t l,
                                          std::optional<ComplexMatrix> y0 = {}, std::optional<ComplexMatrix> y1 = {},
                                          std::optional<double> epsilon = {});

/// ||Tr_A[(A (x) 1) rho]||_1 / ||A||_inf: the ratio achieved by any perturbation
/// pair with probe A.
double probe_ratio(const BipartiteState& rho, const ComplexMatrix& probe);

// --------------------------------------------------------- adversarial search

struct EstimatorBudget {
  int random_pairs = 4;        ///< random CPTP pairs in the descent family
  int descent_steps = 8;       ///< accept-if-better steps per random pair
  int rotations = 16;          ///< intra-block OSD rotations
  int probe_starts = 4;        ///< starting probes for the probe descent
  int probe_steps = 200;       ///< steps per probe descent
};

struct AdversarialEstimate {
  double estimate = 0.0;  ///< numerically evaluated ratio of the best witness
  ChannelPair witness;
  std::string family;     ///< "eq9", "perturbation", "random-descent" or "warm-start"
  double witness_diamond = 0.0;
};

/// Upper estimate of CDP_A: the smallest evaluated ratio over (a) the dephasing
/// witness pair in the eigenbasis of rho_A, (b) perturbation pairs over the OSD
/// factors, their rotations and a descent over general probes, and (c) random
/// CPTP pairs with output dimension <= dA + 1 refined by accept-if-better descent.
/// `warm_start` pairs (acting on A) are evaluated as additional candidates.
AdversarialEstimate cdp_adversarial_estimate(const BipartiteState& rho, const EstimatorBudget& budget = {},
                                             std::uint64_t seed = kDefaultSeed,
                                             const std::vector<ChannelPair>& warm_start = {});

struct IsotropicBounds {
  double lower = 0.0;  ///< p / (d + 1 - p)
  double upper = 0.0;  ///< min(2p/d, 1/d)
};
IsotropicBounds cdp_isotropic_bounds(std::size_t d, double p);

/// If rho equals an isotropic state (within 1e-9 entrywise), its p.
std::optional<double> detect_isotropic(const BipartiteState& rho);

// ----------------------------------------------------- disturbance bounds

/// min over orthonormal bases U on A of ||rho - (Pi_U (x) id)(rho)||_1 by
/// multi-restart descent; restart 0 starts from the eigenbasis of rho_A.
double cdp_discord_bound(const BipartiteState& rho, int restarts = 64, std::uint64_t seed = kDefaultSeed);

/// min of ||rho - (Lambda (x) id)(rho)||_1 over complete and block dephasings
/// (optimized bases) whose output has OSR < dA^2, verified on the output; 0 when
/// rho already has OSR < dA^2.
double cdp_osr_reduction_bound(const BipartiteState& rho, int restarts = 16, std::uint64_t seed = kDefaultSeed,
                               double threshold = kDefaultOsrThreshold);

// --------------------------------------------------------------- checks

struct ContinuityCheck {
  double estimate_rho = 0.0;
  double estimate_sigma = 0.0;
  double bound_diff = 0.0;  ///< |estimate_rho - estimate_sigma|
  double trace_norm = 0.0;  ///< ||rho - sigma||_1
  bool holds() const { return bound_diff <= trace_norm + kEstimatorMargin; }
};
/// Estimates both states, each warm-started with the other's witness.
ContinuityCheck cdp_continuity_check(const BipartiteState& rho, const BipartiteState& sigma,
                                     const EstimatorBudget& budget = {}, std::uint64_t seed = kDefaultSeed);

struct PureLemmaCheck {
  double lhs = 0.0;  ///< p_d ||Delta||_diamond
  double rhs = 0.0;  ///< ||(Delta (x) id)(psi)||_1
  bool holds() const { return lhs <= rhs + 1e-7; }
};
/// Requires dA == dB and map.d_in() == dA.
PureLemmaCheck cdp_lower_bound_pure_lemma(const PureBipartiteState& psi, const HermitianPreservingMap& map);

struct MonotonicityCheck {
  GeneralBounds before;
  GeneralBounds after;
  double estimate_before = 0.0;
  double estimate_after = 0.0;
  std::optional<double> exact_before;
  std::optional<double> exact_after;
  bool holds() const;
};
/// Compares rho with (id (x) gamma_b)(rho); the processed state is warm-started
/// with the witness of the original.
MonotonicityCheck cdp_monotonicity_check(const BipartiteState& rho, const QuantumChannel& gamma_b,
                                         const EstimatorBudget& budget = {}, std::uint64_t seed = kDefaultSeed);

struct SeparableCapCheck {
  double realignment_sum = 0.0;
  bool premise = false;        ///< realignment_sum <= 1 + 1e-10
  double r_last = 0.0;         ///< r_{d^2}
  double upper_sqrt_form = 0.0;  ///< r_{d^2} d
  double cap = 0.0;            ///< r_cn(d) d
  double printed_cap = 0.0;    ///< r_cn_printed(d) d
  bool holds() const { return !premise || upper_sqrt_form <= cap + 1e-9; }
};
SeparableCapCheck separable_cap_check(const BipartiteState& rho);

// --------------------------------------------------------------- report

struct ProvenanceEntry {
  std::string tag;   ///< thm1, thm2-lower, thm2-upper, eq12-lower, eq12-upper, discord, osr-reduction, adversarial
  std::string role;  ///< lower, upper, exact or estimate
  double value = 0.0;
};

struct CdpOptions {
  EstimatorBudget budget;
  std::uint64_t seed = kDefaultSeed;
  double threshold = kDefaultOsrThreshold;
  int discord_restarts = 64;
  int osr_reduction_restarts = 16;
};

struct CdpReport {
  std::string state_id;
  std::size_t dA = 0;
  std::size_t dB = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double adversarial_estimate = 0.0;
  std::optional<double> exact;
  std::string witness_family;
  std::optional<ChannelPair> witness_channels;
  std::vector<ProvenanceEntry> bound_provenance;
};

CdpReport cdp_report(const BipartiteState& rho, const std::string& state_id, const CdpOptions& options = {});

/// If rho is pure (purity within 1e-10 of 1), its Schmidt decomposition.
std::optional<PureBipartiteState> as_pure(const BipartiteState& rho);

}  // namespace cdplab
