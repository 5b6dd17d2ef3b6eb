#include "cdplab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "cdplab/diamond.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/io.hpp"
#include "cdplab/linalg.hpp"
#include "cdplab/random.hpp"
#include "cdplab/tomography.hpp"

namespace cdplab {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Collects a pass flag plus a running detail string.
struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
  std::string text() const {
    std::string out;
    for (const auto& n : notes) out += (out.empty() ? "" : "; ") + n;
    return out;
  }
};

using Body = std::function<Outcome(const VerifyOptions&)>;

CheckResult timed(std::string id, std::string tag, std::string description, bool osr_dependent,
                  const VerifyOptions& options, const Body& body, double time_limit = 0.0) {
  CheckResult r{std::move(id), std::move(tag), std::move(description), CheckStatus::Pass, "", 0.0};
  if (osr_dependent && threshold_is_absurd(options.threshold)) {
    r.status = CheckStatus::Skipped;
    r.detail = "skipped: threshold override";
    return r;
  }
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = body(options);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0.0) o.require(r.seconds <= time_limit, "runtime " + num(r.seconds) + "s > " + num(time_limit) + "s");
    r.status = o.ok ? CheckStatus::Pass : CheckStatus::Fail;
    r.detail = o.text();
  } catch (const std::exception& e) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.status = CheckStatus::Fail;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

// Random channel with 1..3 Kraus operators, raised to ceil(d_in / d_out) when needed.
QuantumChannel random_cptp(Rng& rng, std::size_t d_in, std::size_t d_out) {
  const std::size_t n = std::max((d_in + d_out - 1) / d_out, 1 + rng.index(3));
  return random_channel(rng, d_in, d_out, n);
}

BipartiteState fixture_state(const VerifyOptions& o, const std::string& name) {
  if (o.fixture_dir.empty()) return canonical_fixture_state(name);
  return load_state(o.fixture_dir + "/states/" + name + ".json");
}

QuantumChannel fixture_channel(const VerifyOptions& o, const std::string& name) {
  if (o.fixture_dir.empty()) return canonical_fixture_channel(name);
  return load_channel(o.fixture_dir + "/channels/" + name + ".json");
}

std::vector<std::pair<std::string, BipartiteState>> all_fixture_states(const VerifyOptions& o) {
  std::vector<std::pair<std::string, BipartiteState>> out;
  for (const auto& n : fixture_state_names()) out.emplace_back(n, fixture_state(o, n));
  return out;
}

GeneralBounds bounds_for(const BipartiteState& rho, const VerifyOptions& o) {
  return cdp_bounds_general(operator_schmidt(rho, o.threshold), o.budget.rotations,
                            derive_seed(o.seed, "osd-rotations"));
}

// Exact comparison of 1/(d(d+1)) against (a - sqrt(s)) / den, a = d(d^2-1), s = d^2-1.
bool boundary_below_cap(long long d, long long den) {
  const long long s = d * d - 1;
  const long long a = d * s;
  const long long k = d * (d + 1);
  const long long rhs = k * a - den;  // need k sqrt(s) <= rhs
  if (rhs < 0) return false;
  return k * k * s <= rhs * rhs;
}

std::vector<double> p_grid() {
  std::vector<double> ps;
  for (int k = 0; k <= 10; ++k) ps.push_back(k / 10.0);
  return ps;
}

// ------------------------------------------------------------------ criteria

Outcome criterion1(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-1");
  double worst_ratio = 0.0;
  double worst_slack = -1e300;
  int lemma_cases = 0;
  for (int s = 0; s < 20; ++s) {
    const std::size_t d = s < 10 ? 2 : 3;
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const auto psi = schmidt_decompose(random_pure_vector(rng, d, d), d, d);
    const auto ev = evaluate_witness(psi.density(), pure_witness_channels(psi));
    worst_ratio = std::max(worst_ratio, std::abs(ev.ratio - cdp_pure_exact(psi)));
    for (int t = 0; t < 50; ++t) {
      const std::size_t d_out = 2 + rng.index(d);
      const auto delta = difference(random_cptp(rng, d, d_out),
                                    random_cptp(rng, d, d_out));
      const PureLemmaCheck c = cdp_lower_bound_pure_lemma(psi, delta);
      worst_slack = std::max(worst_slack, c.lhs - c.rhs);
      out.require(c.holds(), "lemma at state " + std::to_string(s) + " pair " + std::to_string(t));
      ++lemma_cases;
    }
  }
  out.require(worst_ratio <= 1e-7, "witness ratio vs p_d");
  out.note("max |ratio - p_d| = " + num(worst_ratio));
  out.note(std::to_string(lemma_cases) + " lemma cases, max lhs - rhs = " + num(worst_slack));
  return out;
}

Outcome criterion2(const VerifyOptions& o) {
  Outcome out;
  for (std::size_t d : {2u, 3u}) {
    const double est = cdp_adversarial_estimate(isotropic_state(d, 1.0), o.budget, o.seed).estimate;
    const double err = std::abs(est - 1.0 / static_cast<double>(d));
    out.require(err <= 1e-7, "d=" + std::to_string(d));
    out.note("d=" + std::to_string(d) + " |est - 1/d| = " + num(err));
  }
  return out;
}

Outcome criterion3(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-3");
  double min_low_gap = 1e300, max_up_gap = -1e300, max_sqrt_gap = -1e300;
  for (int s = 0; s < 100; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const BipartiteState rho = random_state(rng, 2, 2, 1 + rng.index(4));
    const GeneralBounds g = bounds_for(rho, o);
    const double est = cdp_adversarial_estimate(rho, o.budget, o.seed).estimate;
    min_low_gap = std::min(min_low_gap, est - g.lower);
    max_up_gap = std::max(max_up_gap, est - g.upper_unclamped);
    max_sqrt_gap = std::max(max_sqrt_gap, g.upper_canonical - g.sqrt_form);
    out.require(g.lower <= est, "lower bound at state " + std::to_string(s));
    out.require(est <= g.upper_unclamped + 1e-6, "upper bound at state " + std::to_string(s));
    out.require(g.upper_canonical <= g.sqrt_form + 1e-9, "sqrt form at state " + std::to_string(s));
  }
  out.note("min(est - lower) = " + num(min_low_gap));
  out.note("max(est - upper) = " + num(max_up_gap));
  out.note("max(upper - r4*2) = " + num(max_sqrt_gap));
  return out;
}

Outcome criterion4(const VerifyOptions& o) {
  Outcome out;
  double worst = 0.0;
  for (std::size_t d : {2u, 3u})
    for (double p : p_grid()) {
      const auto osd = operator_schmidt(isotropic_state(d, p), o.threshold);
      const double dd = static_cast<double>(d);
      for (std::size_t i = 0; i < d * d; ++i) {
        const double expect = i == 0 ? 1.0 / dd : p / dd;
        worst = std::max(worst, std::abs(osd.coefficients[i] - expect));
      }
    }
  out.require(worst <= 1e-10, "coefficients");
  out.note("max coefficient error = " + num(worst));
  return out;
}

Outcome criterion5(const VerifyOptions& o) {
  Outcome out;
  double worst_low = 1e300, worst_up = -1e300;
  for (std::size_t d : {2u, 3u}) {
    for (double p : p_grid()) {
      const IsotropicBounds b = cdp_isotropic_bounds(d, p);
      const double est = cdp_adversarial_estimate(isotropic_state(d, p), o.budget, o.seed).estimate;
      worst_low = std::min(worst_low, est - b.lower);
      worst_up = std::max(worst_up, est - b.upper);
      out.require(est >= b.lower - 1e-7 && est <= b.upper + 1e-7,
                  "d=" + std::to_string(d) + " p=" + num(p) + " est=" + num(est));
    }
    const IsotropicBounds top = cdp_isotropic_bounds(d, 1.0);
    out.require(std::abs(top.lower - top.upper) <= 1e-15 && std::abs(top.lower - 1.0 / static_cast<double>(d)) <= 1e-15,
                "endpoints at p=1, d=" + std::to_string(d));
  }
  out.note("min(est - lower) = " + num(worst_low));
  out.note("max(est - upper) = " + num(worst_up));
  return out;
}

Outcome criterion6(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-6");
  double worst_cross = 0.0;
  for (int s = 0; s < 50; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const auto delta = difference(random_cptp(rng, 2, 2), random_cptp(rng, 2, 2));
    const DiamondResult r = diamond_norm(delta, kDefaultRestarts, derive_seed(o.seed, static_cast<std::uint64_t>(s)));
    worst_cross = std::max(worst_cross, std::abs(r.sdp_value - r.ascent_value));
  }
  out.require(worst_cross <= 1e-5, "SDP vs ascent");
  out.note("max |sdp - ascent| = " + num(worst_cross));

  double worst_pair = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const ChannelPair pair = pure_witness_channels(d);
    worst_pair = std::max(worst_pair, std::abs(diamond_norm_sdp(difference(pair.first, pair.second)).value - 2.0));
  }
  out.require(worst_pair <= 1e-6, "witness pair = 2");
  out.note("max |pair - 2| = " + num(worst_pair));

  double worst_single = 0.0;
  std::vector<QuantumChannel> singles{identity_channel(2), dephasing_channel(2), identity_channel(3),
                                      fully_depolarizing_channel(3, 2)};
  for (int s = 0; s < 20; ++s) {
    Rng rng = root.split("single").split(static_cast<std::uint64_t>(s));
    const std::size_t d = 2 + rng.index(2);
    const std::size_t d_out = 2 + rng.index(2);
    singles.push_back(random_cptp(rng, d, d_out));
  }
  for (const auto& ch : singles) worst_single = std::max(worst_single, std::abs(diamond_norm_sdp(ch.as_map()).value - 1.0));
  out.require(worst_single <= 1e-6, "single channel = 1");
  out.note("max |channel - 1| = " + num(worst_single) + " over " + std::to_string(singles.size()));
  return out;
}

Outcome criterion7(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-7");
  double worst_tail = -1e300;
  for (int s = 0; s < 100; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const std::size_t dA = 2 + rng.index(2), dB = 2 + rng.index(2);
    const BipartiteState rho = random_state(rng, dA, dB, 1 + rng.index(dA * dB));
    const TailCorrelation t = tail_correlation_bound(rho, random_density(rng, dA, 1 + rng.index(dA)),
                                                     random_density(rng, dB, 1 + rng.index(dB)));
    worst_tail = std::max(worst_tail, t.lhs - t.rhs);
    out.require(t.holds(), "tail correlation at " + std::to_string(s));
  }
  out.note("max tail lhs - rhs = " + num(worst_tail));

  double worst_cap = -1e300;
  int premise = 0;
  for (int s = 0; s < 200; ++s) {
    Rng rng = root.split("separable").split(static_cast<std::uint64_t>(s));
    const BipartiteState rho = random_separable_state(rng, 2, 2, 1 + rng.index(4));
    const auto osd = operator_schmidt(rho);
    out.require(passes_realignment(osd), "realignment on separable state " + std::to_string(s));
    if (!passes_realignment(osd)) continue;
    ++premise;
    worst_cap = std::max(worst_cap, osd.coefficient_at(4) - r_cn(2));
    out.require(osd.coefficient_at(4) <= r_cn(2) + 1e-10, "r4 cap at " + std::to_string(s));
  }
  out.note(std::to_string(premise) + " separable states, max r4 - r_cn = " + num(worst_cap));

  // Boundary isotropic state p = 1/(d+1): sum r_i = 1 and r_{d^2} = 1/(d(d+1)).
  for (long long d : {2LL, 3LL}) {
    const std::size_t du = static_cast<std::size_t>(d);
    const auto osd = operator_schmidt(isotropic_state(du, 1.0 / static_cast<double>(d + 1)));
    const double r_last = osd.coefficient_at(du * du);
    out.require(std::abs(realignment_sum(osd) - 1.0) <= 1e-10, "boundary sum at d=" + std::to_string(d));
    out.require(std::abs(r_last - 1.0 / static_cast<double>(d * (d + 1))) <= 1e-12, "boundary r_last at d=" + std::to_string(d));
    const long long s = d * d - 1;
    const bool below_cap = boundary_below_cap(d, d * s * s + d * d * d - 2 * d);
    const bool below_printed = boundary_below_cap(d, d * s * s + d * d * d);
    out.require(below_cap, "boundary below cap at d=" + std::to_string(d));
    out.note("boundary d=" + std::to_string(d) + ": r_last=1/" + std::to_string(d * (d + 1)) + " <= r_cn=" +
             num(r_cn(du)) + " (exact: " + (below_cap ? "yes" : "no") + "), printed form " + num(r_cn_printed(du)) +
             " (exact: " + (below_printed ? "yes" : "no") + ")");
  }
  return out;
}

Outcome criterion8(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-8");
  double worst_classical = 0.0;
  for (int s = 0; s < 20; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const std::size_t dA = 2 + rng.index(2);
    const BipartiteState rho = random_classical_on_a(rng, dA, 2 + rng.index(2));
    worst_classical = std::max(worst_classical, cdp_discord_bound(rho, 64, derive_seed(o.seed, "discord")));
  }
  out.require(worst_classical <= 1e-9, "classical states");
  out.note("max discord bound on classical states = " + num(worst_classical));
  double worst_gap = 1e300;
  for (const auto& [name, rho] : all_fixture_states(o)) {
    const double disc = cdp_discord_bound(rho, 64, derive_seed(o.seed, "discord"));
    const double est = cdp_adversarial_estimate(rho, o.budget, o.seed).estimate;
    worst_gap = std::min(worst_gap, disc - est);
    out.require(disc >= est - 1e-6, "discord vs estimate on " + name);
  }
  out.note("min(discord - estimate) over fixtures = " + num(worst_gap));
  return out;
}

Outcome criterion9(const VerifyOptions& o) {
  Outcome out;
  Rng root = Rng(o.seed).split("criterion-9");
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const BipartiteState rho = random_state(rng, 2, 2, 4);
    const std::size_t d_out = 2 + rng.index(2);
    const QuantumChannel ch = random_cptp(rng, 2, d_out);
    const auto osd = operator_schmidt(rho, o.threshold);
    const auto r = reconstruct_channel(ch.apply_on_a(rho.matrix(), 2), osd, ch);
    worst = std::max(worst, *r.residual_to_truth);
  }
  out.require(worst <= 1e-8, "round trip");
  out.note("max round-trip residual = " + num(worst));

  int thrown = 0;
  for (int s = 0; s < 10; ++s) {
    Rng rng = root.split("classical").split(static_cast<std::uint64_t>(s));
    const BipartiteState rho = random_classical_on_a(rng, 2, 2);
    try {
      reconstruct_channel(identity_channel(2).apply_on_a(rho.matrix(), 2), operator_schmidt(rho, o.threshold));
    } catch (const NotTomographicallyComplete&) {
      ++thrown;
    }
  }
  out.require(thrown == 10, "classical-on-A rejection");
  out.note(std::to_string(thrown) + "/10 classical states rejected");

  const auto rows = isotropic_sensitivity_sweep(2, {1.0, 0.5, 0.1}, 1e-6, 20, o.seed);
  std::string means;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    means += (i ? ", " : "") + num(rows[i].stats.mean_residual);
    if (i) out.require(rows[i].stats.mean_residual > rows[i - 1].stats.mean_residual, "noise amplification order");
  }
  out.note("mean residuals at p=1,0.5,0.1: " + means);
  return out;
}

Outcome criterion10(const VerifyOptions& o) {
  Outcome out;
  const auto fixtures = all_fixture_states(o);
  std::vector<std::pair<std::string, const BipartiteState*>> d2;
  for (const auto& [name, rho] : fixtures)
    if (rho.dA() == 2 && rho.dB() == 2) d2.emplace_back(name, &rho);

  double worst_cont = -1e300;
  int pairs = 0;
  for (std::size_t i = 0; i < d2.size(); ++i)
    for (std::size_t j = i + 1; j < d2.size(); ++j) {
      const ContinuityCheck c = cdp_continuity_check(*d2[i].second, *d2[j].second, o.budget, o.seed);
      worst_cont = std::max(worst_cont, c.bound_diff - c.trace_norm);
      out.require(c.holds(), "continuity " + d2[i].first + " / " + d2[j].first);
      ++pairs;
    }
  out.note(std::to_string(pairs) + " continuity pairs, max diff - ||rho - sigma||_1 = " + num(worst_cont));

  double worst_mono = -1e300;
  int mono = 0;
  for (const auto& cname : fixture_channel_names()) {
    const QuantumChannel gamma = fixture_channel(o, cname);
    for (const auto& [name, rho] : d2) {
      if (gamma.d_in() != rho->dB()) continue;
      const MonotonicityCheck m = cdp_monotonicity_check(*rho, gamma, o.budget, o.seed);
      worst_mono = std::max(worst_mono, m.estimate_after - m.estimate_before);
      out.require(m.holds(), "monotonicity " + name + " under " + cname);
      ++mono;
    }
  }
  out.note(std::to_string(mono) + " monotonicity cases, max after - before = " + num(worst_mono));

  Rng root = Rng(o.seed).split("criterion-10");
  double worst_lu = 0.0;
  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const BipartiteState& rho = fixtures[f].second;
    const double base = cdp_adversarial_estimate(rho, o.budget, o.seed).estimate;
    const auto pure = as_pure(rho);
    for (int t = 0; t < 2; ++t) {
      Rng rng = root.split(static_cast<std::uint64_t>(f * 16 + t));
      const BipartiteState rotated =
          apply_local_unitaries(rho, random_unitary(rng, rho.dA()), ComplexMatrix::identity(rho.dB()));
      const double est = cdp_adversarial_estimate(rotated, o.budget, o.seed).estimate;
      worst_lu = std::max(worst_lu, std::abs(est - base));
      if (pure) worst_lu = std::max(worst_lu, std::abs(cdp_pure_exact(*as_pure(rotated)) - cdp_pure_exact(*pure)));
    }
  }
  out.require(worst_lu <= 1e-6, "local-unitary invariance");
  out.note("max local-unitary change = " + num(worst_lu));

  double worst_watt = -1e300;
  for (int s = 0; s < 100; ++s) {
    Rng rng = root.split("watt").split(static_cast<std::uint64_t>(s));
    const std::size_t d_in = 2 + rng.index(2), d_out = 2 + rng.index(2), dB = 2 + rng.index(2);
    const HermitianPreservingMap map(random_hermitian(rng, d_in * d_out), d_in, d_out);
    const WattCheck w = check_watt_inequality(map, random_hermitian(rng, d_in * dB));
    worst_watt = std::max(worst_watt, w.lhs - w.rhs);
    out.require(w.holds(), "Hermiticity-preserving inequality at " + std::to_string(s));
  }
  out.note("max lhs - rhs over 100 maps = " + num(worst_watt));
  return out;
}

struct CriterionSpec {
  const char* tag;
  const char* description;
  bool osr_dependent;
  double time_limit;
  Outcome (*body)(const VerifyOptions&);
};

const CriterionSpec kCriteria[10] = {
    {"pure-exactness", "witness ratio equals p_d; p_d ||Delta|| <= ||(Delta x id)psi||_1", false, 120.0, criterion1},
    {"maximal-entanglement", "estimate for |psi+> equals 1/d, d = 2, 3", false, 60.0, criterion2},
    {"osd-bracket", "r_4/2^(5/2) <= estimate <= min_i r_i||B_i||_1/||A_i||_inf <= r_4 * 2", true, 600.0, criterion3},
    {"isotropic-osd", "isotropic coefficients (1/d, p/d, ..., p/d)", false, 0.0, criterion4},
    {"isotropic-bounds", "p/(d+1-p) <= estimate <= min(2p/d, 1/d)", false, 0.0, criterion5},
    {"diamond", "SDP vs ascent, witness pair = 2, channels = 1", false, 300.0, criterion6},
    {"realignment", "tail correlation bound and r_{d^2} cap for separable states", false, 0.0, criterion7},
    {"discord", "discord bound vanishes on classical states and dominates the estimate", false, 0.0, criterion8},
    {"tomography", "round trip, incompleteness, noise amplification", true, 0.0, criterion9},
    {"structural", "continuity, monotonicity, local-unitary invariance, map inequality", false, 0.0, criterion10},
};

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skipped:
      return "SKIP";
  }
  return "?";
}

bool threshold_is_absurd(double threshold) { return !(threshold >= 1e-14 && threshold <= 1e-6); }

std::vector<std::string> fixture_state_names() {
  return {"bell_d2",    "product_d2",  "pure_82",    "iso_d2_p0",        "iso_d2_p33",
          "iso_d2_p50", "iso_d2_p100", "iso_d3_p50", "classical_on_A_d2"};
}

BipartiteState canonical_fixture_state(const std::string& name) {
  if (name == "bell_d2") return BipartiteState::from_pure(maximally_entangled_vector(2), 2, 2);
  if (name == "product_d2") {
    const ComplexMatrix a{{0.7, 0.0}, {0.0, 0.3}};
    const ComplexMatrix b{{0.6, Complex(0.2, -0.1)}, {Complex(0.2, 0.1), 0.4}};
    return BipartiteState::product(a, b);
  }
  if (name == "pure_82") {
    const std::vector<double> p{0.8, 0.2};
    return BipartiteState::from_pure(schmidt_form_vector(p, 2, 2), 2, 2);
  }
  if (name == "iso_d2_p0") return isotropic_state(2, 0.0);
  if (name == "iso_d2_p33") return isotropic_state(2, 1.0 / 3.0);
  if (name == "iso_d2_p50") return isotropic_state(2, 0.5);
  if (name == "iso_d2_p100") return isotropic_state(2, 1.0);
  if (name == "iso_d3_p50") return isotropic_state(3, 0.5);
  if (name == "classical_on_A_d2") {
    const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}};
    const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
    const ComplexMatrix r0{{0.9, 0.0}, {0.0, 0.1}};
    const ComplexMatrix r1{{0.5, 0.5}, {0.5, 0.5}};
    return BipartiteState(0.6 * kron(p0, r0) + 0.4 * kron(p1, r1), 2, 2);
  }
  throw InvalidInput("unknown fixture state '" + name + "'");
}

std::vector<std::string> fixture_channel_names() {
  return {"eq9_pair_d2_first", "eq9_pair_d2_second", "dephase_d2", "random_unitary_d2"};
}

QuantumChannel canonical_fixture_channel(const std::string& name) {
  if (name == "eq9_pair_d2_first") return pure_witness_channels(2).first;
  if (name == "eq9_pair_d2_second") return pure_witness_channels(2).second;
  if (name == "dephase_d2") return dephasing_channel(2);
  if (name == "random_unitary_d2") {
    // Fixed rotation exp(-i 0.7 (cos 0.3 X + sin 0.3 Y)) up to a global phase.
    const double c = std::cos(0.7), s = std::sin(0.7);
    const Complex n(std::cos(0.3), std::sin(0.3));
    const ComplexMatrix u{{c, Complex(0.0, -s) * std::conj(n)}, {Complex(0.0, -s) * n, c}};
    return unitary_channel(u);
  }
  throw InvalidInput("unknown fixture channel '" + name + "'");
}

CheckResult run_criterion(int k, const VerifyOptions& options) {
  if (k < 1 || k > 10) throw InvalidInput("run_criterion: k must be in 1..10");
  const CriterionSpec& c = kCriteria[k - 1];
  return timed("AC" + std::to_string(k), c.tag, c.description, c.osr_dependent, options, c.body, c.time_limit);
}

std::vector<CheckResult> run_acceptance(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  for (int k = 1; k <= 10; ++k) out.push_back(run_criterion(k, options));
  return out;
}

std::vector<CheckResult> run_fixture_checks(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  auto add = [&](std::string id, std::string tag, std::string desc, bool osr, Body body) {
    out.push_back(timed(std::move(id), std::move(tag), std::move(desc), osr, options, body));
  };
  add("osd/iso_d2_p50", "isotropic-osd", "coefficients (0.5, 0.25, 0.25, 0.25)", false, [](const VerifyOptions& o) {
    Outcome r;
    const auto osd = operator_schmidt(fixture_state(o, "iso_d2_p50"), o.threshold);
    const std::vector<double> expect{0.5, 0.25, 0.25, 0.25};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(osd.coefficients[i] - expect[i]));
    r.require(worst <= 1e-10, "coefficients");
    r.note("max error " + num(worst));
    return r;
  });
  add("osd/product_d2", "osd-rank", "operator Schmidt rank 1", true, [](const VerifyOptions& o) {
    Outcome r;
    const auto osd = operator_schmidt(fixture_state(o, "product_d2"), o.threshold);
    r.require(osd.rank == 1, "rank " + std::to_string(osd.rank));
    return r;
  });
  add("osd/classical_on_A_d2", "osd-rank", "operator Schmidt rank <= dA", true, [](const VerifyOptions& o) {
    Outcome r;
    const auto osd = operator_schmidt(fixture_state(o, "classical_on_A_d2"), o.threshold);
    r.require(osd.rank <= 2, "rank " + std::to_string(osd.rank));
    return r;
  });
  add("osd/bell_d2", "realignment", "realignment fails with sum 2", false, [](const VerifyOptions& o) {
    Outcome r;
    const auto osd = operator_schmidt(fixture_state(o, "bell_d2"), o.threshold);
    r.require(!passes_realignment(osd) && std::abs(realignment_sum(osd) - 2.0) <= 1e-10,
              "sum " + num(realignment_sum(osd)));
    return r;
  });
  add("osd/iso_d2_p33", "realignment", "separability boundary: sum 1, r_4 = 1/6 <= r_cn", false,
      [](const VerifyOptions& o) {
        Outcome r;
        const SeparableCapCheck c = separable_cap_check(fixture_state(o, "iso_d2_p33"));
        r.require(c.premise && c.holds(), "cap");
        r.note("r_4 * 2 = " + num(c.upper_sqrt_form) + ", cap " + num(c.cap) + ", printed cap " + num(c.printed_cap));
        return r;
      });
  add("diamond/eq9_pair_d2", "diamond", "witness pair at distance 2", false, [](const VerifyOptions& o) {
    Outcome r;
    const double v = diamond_norm(difference(fixture_channel(o, "eq9_pair_d2_first"),
                                             fixture_channel(o, "eq9_pair_d2_second")),
                                  kDefaultRestarts, o.seed)
                         .value;
    r.require(std::abs(v - 2.0) <= 1e-6, "value " + num(v));
    return r;
  });
  add("diamond/identity_vs_dephase", "diamond", "identity vs dephasing at distance 1", false,
      [](const VerifyOptions& o) {
        Outcome r;
        const double v =
            diamond_norm(difference(identity_channel(2), fixture_channel(o, "dephase_d2")), kDefaultRestarts, o.seed)
                .value;
        r.require(std::abs(v - 1.0) <= 1e-6, "value " + num(v));
        return r;
      });
  add("diamond/identical", "diamond", "identical channels at distance 0", false, [](const VerifyOptions& o) {
    Outcome r;
    const QuantumChannel u = fixture_channel(o, "random_unitary_d2");
    const double v = diamond_norm(difference(u, u), kDefaultRestarts, o.seed).value;
    r.require(std::abs(v) <= 1e-9, "value " + num(v));
    return r;
  });
  add("cdp/bell_d2", "pure-exactness", "exact value 0.5", false, [](const VerifyOptions& o) {
    Outcome r;
    const auto pure = as_pure(fixture_state(o, "bell_d2"));
    r.require(pure && std::abs(cdp_pure_exact(*pure) - 0.5) <= 1e-10, "exact");
    return r;
  });
  add("cdp/pure_82", "pure-exactness", "exact value 0.2, estimate attains it", false, [](const VerifyOptions& o) {
    Outcome r;
    const BipartiteState rho = fixture_state(o, "pure_82");
    const auto pure = as_pure(rho);
    r.require(pure && std::abs(cdp_pure_exact(*pure) - 0.2) <= 1e-10, "exact");
    const double est = cdp_adversarial_estimate(rho, o.budget, o.seed).estimate;
    r.require(std::abs(est - 0.2) <= 1e-7, "estimate " + num(est));
    return r;
  });
  add("cdp/iso_d2_p50", "isotropic-bounds", "estimate within [0.2, 0.5]", false, [](const VerifyOptions& o) {
    Outcome r;
    const double est = cdp_adversarial_estimate(fixture_state(o, "iso_d2_p50"), o.budget, o.seed).estimate;
    r.require(est >= 0.2 - 1e-7 && est <= 0.5 + 1e-7, "estimate " + num(est));
    r.note("estimate " + num(est));
    return r;
  });
  add("cdp/report-invariants", "bracket", "lower <= estimate <= upper <= 1/dA on every fixture", true,
      [](const VerifyOptions& o) {
        Outcome r;
        CdpOptions co;
        co.budget = o.budget;
        co.seed = o.seed;
        co.threshold = o.threshold;
        for (const auto& name : fixture_state_names()) {
          const CdpReport rep = cdp_report(fixture_state(o, name), name, co);
          r.require(rep.lower_bound >= 0.0 && rep.lower_bound <= rep.adversarial_estimate + 1e-8 &&
                        rep.adversarial_estimate <= rep.upper_bound + 1e-8 &&
                        rep.upper_bound <= 1.0 / static_cast<double>(rep.dA) + 1e-10,
                    name);
        }
        return r;
      });
  return out;
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& options) {
  auto out = run_acceptance(options);
  auto more = run_fixture_checks(options);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::string format_check_line(const CheckResult& r) {
  std::ostringstream s;
  s << '[' << to_string(r.status) << "] " << r.id << ' ' << r.tag << ": " << r.description;
  if (!r.detail.empty()) s << " (" << r.detail;
  else s << " (";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%.1fs)", r.detail.empty() ? "" : ", ", r.seconds);
  s << buf;
  return s.str();
}

}  // namespace cdplab
