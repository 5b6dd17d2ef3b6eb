// Command-line front end: osd, diamond, cdp, tomography, verify-suite.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdplab/cdp.hpp"
#include "cdplab/diamond.hpp"
#include "cdplab/errors.hpp"
#include "cdplab/io.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/tomography.hpp"
#include "cdplab/verify.hpp"

using namespace cdplab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerification = 4;

struct RunConfig {
  std::string input;
  std::string input_b;
  std::string output;
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
  int restarts = kDefaultRestarts;
  double threshold = kDefaultOsrThreshold;
  int budget = EstimatorBudget{}.random_pairs;
  double noise = 0.0;
  int trials = 20;
  std::string fixtures;
  std::vector<std::string> only;
};

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw InvalidInput("cannot write '" + cfg.output + "'");
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

EstimatorBudget budget_of(const RunConfig& cfg) {
  EstimatorBudget b;
  b.random_pairs = cfg.budget;
  return b;
}

int cmd_osd(const RunConfig& cfg) {
  const BipartiteState rho = load_state(cfg.input);
  const auto osd = operator_schmidt(rho, cfg.threshold);
  const Json j = osd_report_json(rho, osd);
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else if (cfg.format == "csv") {
    std::ostringstream s;
    s << "index,coefficient\n";
    s.precision(17);
    for (std::size_t i = 0; i < osd.coefficients.size(); ++i) s << i + 1 << ',' << osd.coefficients[i] << '\n';
    emit(cfg, s.str());
  } else {
    std::ostringstream s;
    s << "coefficients:";
    for (double c : osd.coefficients) s << ' ' << sig6(c);
    s << "\nrank: " << osd.rank << " (threshold " << sig6(osd.threshold) << ")\n";
    s << "realignment sum: " << sig6(realignment_sum(osd)) << " -> " << j["realignment_verdict"].get<std::string>()
      << '\n';
    if (j.contains("r_cn_comparison")) {
      const Json& c = j["r_cn_comparison"];
      s << "r_last: " << sig6(c["r_last"].get<double>()) << " vs r_cn " << sig6(c["r_cn"].get<double>()) << '\n';
    }
    emit(cfg, s.str());
  }
  return 0;
}

int cmd_diamond(const RunConfig& cfg) {
  const QuantumChannel a = load_channel(cfg.input);
  HermitianPreservingMap map = a.as_map();
  if (!cfg.input_b.empty()) {
    const QuantumChannel b = load_channel(cfg.input_b);
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) {
      throw ValidationError("channels have different dimensions (" + std::to_string(a.d_in()) + "->" +
                            std::to_string(a.d_out()) + " vs " + std::to_string(b.d_in()) + "->" +
                            std::to_string(b.d_out()) + ")");
    }
    map = difference(a, b);
  }
  const DiamondResult r = diamond_norm(map, cfg.restarts, cfg.seed);
  if (cfg.format == "json") {
    emit(cfg, dump(diamond_result_json(r)));
  } else if (cfg.format == "csv") {
    emit(cfg, "value,sdp_value,ascent_value,sdp_gap,iterations\n" + sig6(r.value) + ',' + sig6(r.sdp_value) + ',' +
                  sig6(r.ascent_value) + ',' + sig6(r.sdp_gap) + ',' + std::to_string(r.iterations) + '\n');
  } else {
    emit(cfg, "diamond norm: " + sig6(r.value) + "\n  sdp: " + sig6(r.sdp_value) + " (gap " + sig6(r.sdp_gap) +
                  ", " + std::to_string(r.iterations) + " iterations)\n  ascent: " + sig6(r.ascent_value) + '\n');
  }
  return 0;
}

int cmd_cdp(const RunConfig& cfg) {
  const BipartiteState rho = load_state(cfg.input);
  CdpOptions opt;
  opt.budget = budget_of(cfg);
  opt.seed = cfg.seed;
  opt.threshold = cfg.threshold;
  const std::string id = std::filesystem::path(cfg.input).stem().string();
  const CdpReport r = cdp_report(rho, id, opt);
  if (cfg.format == "json") {
    emit(cfg, dump(cdp_report_json(r)));
  } else if (cfg.format == "csv") {
    std::ostringstream s;
    s << "tag,role,value\n";
    for (const auto& p : r.bound_provenance) s << p.tag << ',' << p.role << ',' << sig6(p.value) << '\n';
    emit(cfg, s.str());
  } else {
    std::ostringstream s;
    s << r.state_id << " (dA=" << r.dA << ", dB=" << r.dB << ")\n";
    s << "  bracket: [" << sig6(r.lower_bound) << ", " << sig6(r.adversarial_estimate) << ", " << sig6(r.upper_bound)
      << "]\n";
    if (r.exact) s << "  exact: " << sig6(*r.exact) << '\n';
    s << "  witness family: " << r.witness_family << '\n';
    for (const auto& p : r.bound_provenance) s << "  " << p.tag << " (" << p.role << "): " << sig6(p.value) << '\n';
    emit(cfg, s.str());
  }
  return 0;
}

int cmd_tomography(const RunConfig& cfg) {
  const BipartiteState rho = load_state(cfg.input);
  if (cfg.input_b.empty()) throw InvalidInput("tomography needs --input-b with the channel to reconstruct");
  const QuantumChannel ch = load_channel(cfg.input_b);
  if (ch.d_in() != rho.dA()) throw ValidationError("channel input dimension does not match dA");
  const auto osd = operator_schmidt(rho, cfg.threshold);
  const auto r = reconstruct_channel(ch.apply_on_a(rho.matrix(), rho.dB()), osd, ch);
  const NoiseStats stats = noise_sensitivity(rho, ch, cfg.noise, cfg.trials, cfg.seed);
  const auto p = detect_isotropic(rho);
  if (cfg.format == "csv") {
    std::ostringstream s;
    write_sensitivity_csv(s, {{p.value_or(std::nan("")), stats}});
    emit(cfg, s.str());
  } else if (cfg.format == "json") {
    Json j;
    j["residual_to_truth"] = *r.residual_to_truth;
    j["conditioning"] = r.conditioning;
    j["reconstructed_choi"] = {{"real", Json::array()}, {"imag", Json::array()}};
    for (std::size_t i = 0; i < r.reconstructed_choi.rows(); ++i) {
      Json re = Json::array(), im = Json::array();
      for (std::size_t k = 0; k < r.reconstructed_choi.cols(); ++k) {
        re.push_back(r.reconstructed_choi(i, k).real());
        im.push_back(r.reconstructed_choi(i, k).imag());
      }
      j["reconstructed_choi"]["real"].push_back(std::move(re));
      j["reconstructed_choi"]["imag"].push_back(std::move(im));
    }
    j["noise"] = {{"r_min", stats.r_min},
                  {"noise_level", stats.noise_level},
                  {"mean_residual", stats.mean_residual},
                  {"max_residual", stats.max_residual},
                  {"trials", stats.trials}};
    emit(cfg, dump(j));
  } else {
    emit(cfg, "residual: " + sig6(*r.residual_to_truth) + "\nconditioning (1/r_min): " + sig6(r.conditioning) +
                  "\nnoise " + sig6(stats.noise_level) + ": mean " + sig6(stats.mean_residual) + ", max " +
                  sig6(stats.max_residual) + " over " + std::to_string(stats.trials) + " trials\n");
  }
  return 0;
}

int cmd_verify_suite(const RunConfig& cfg) {
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.threshold = cfg.threshold;
  opt.fixture_dir = cfg.fixtures;
  opt.budget = budget_of(cfg);
  bool failed = false;
  Json j = Json::array();
  std::ostringstream text;
  auto record = [&](const CheckResult& r) {
    failed = failed || r.status == CheckStatus::Fail;
    text << format_check_line(r) << '\n';
    j.push_back({{"id", r.id}, {"tag", r.tag}, {"status", to_string(r.status)}, {"detail", r.detail}});
    if (cfg.format == "text" && cfg.output.empty()) std::cout << format_check_line(r) << std::endl;
  };
  // --only takes exact ids ("AC3") or prefixes ending in '/' ("osd/").
  auto selected = [&](const std::string& id) {
    if (cfg.only.empty()) return true;
    for (const auto& s : cfg.only)
      if (id == s || (!s.empty() && s.back() == '/' && id.rfind(s, 0) == 0)) return true;
    return false;
  };
  for (int k = 1; k <= 10; ++k)
    if (selected("AC" + std::to_string(k))) record(run_criterion(k, opt));
  bool any_fixture = cfg.only.empty();
  for (const auto& s : cfg.only) any_fixture = any_fixture || s.find('/') != std::string::npos;
  if (any_fixture)
    for (const auto& r : run_fixture_checks(opt))
      if (selected(r.id)) record(r);
  if (cfg.format == "json") {
    emit(cfg, dump(j));
  } else if (!cfg.output.empty()) {
    emit(cfg, text.str());
  }
  std::cerr << (failed ? "verify-suite: FAILED\n" : "verify-suite: all checks passed\n");
  return failed ? kExitVerification : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdplab: channel discrimination power of bipartite states"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", cfg.input, "state or channel JSON file");
    if (needs_input) in->required()->check(CLI::ExistingFile);
    sub->add_option("--output", cfg.output, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "root seed")->capture_default_str();
    sub->add_option("--osr-threshold", cfg.threshold, "relative operator Schmidt rank cutoff")->capture_default_str();
  };

  auto* osd = app.add_subcommand("osd", "operator Schmidt decomposition report");
  common(osd, true);

  auto* diamond = app.add_subcommand("diamond", "diamond norm of a channel or of a channel difference");
  common(diamond, true);
  diamond->add_option("--input-b", cfg.input_b, "second channel")->check(CLI::ExistingFile);
  diamond->add_option("--restarts", cfg.restarts, "ascent restarts")->capture_default_str();

  auto* cdp = app.add_subcommand("cdp", "bounds, estimate and witness channels");
  common(cdp, true);
  cdp->add_option("--budget", cfg.budget, "random channel pairs searched by the estimator")->capture_default_str();
  cdp->add_option("--restarts", cfg.restarts, "unused; accepted for uniformity");

  auto* tomo = app.add_subcommand("tomography", "reconstruct a channel from its action on a state");
  common(tomo, true);
  tomo->add_option("--input-b", cfg.input_b, "channel applied on A")->required()->check(CLI::ExistingFile);
  tomo->add_option("--noise", cfg.noise, "2-norm of the Hermitian noise added to the output")->capture_default_str();
  tomo->add_option("--trials", cfg.trials, "noise trials")->capture_default_str();

  auto* verify = app.add_subcommand("verify-suite", "run every acceptance and fixture check");
  common(verify, false);
  verify->add_option("--fixtures", cfg.fixtures, "fixture directory (states/, channels/)");
  verify->add_option("--budget", cfg.budget, "random channel pairs searched by the estimator");
  verify->add_option("--only", cfg.only, "run only these checks (ids such as AC3, or prefixes such as osd/)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  // The scoreboard defaults to text; every other report to JSON.
  if (verify->parsed() && verify->count("--format") == 0) cfg.format = "text";

  try {
    if (osd->parsed()) return cmd_osd(cfg);
    if (diamond->parsed()) return cmd_diamond(cfg);
    if (cdp->parsed()) return cmd_cdp(cfg);
    if (tomo->parsed()) return cmd_tomography(cfg);
    if (verify->parsed()) return cmd_verify_suite(cfg);
  } catch (const SolverFailed& e) {
    std::cerr << "SolverFailed: " << e.what() << " (primal " << e.primal_residual() << ", dual " << e.dual_residual()
              << ", gap " << e.gap() << ")\n";
    return kExitSolver;
  } catch (const ReconstructionFailed& e) {
    std::cerr << "ReconstructionFailed: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << e.kind() << ": " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
