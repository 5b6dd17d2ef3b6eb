#include <doctest.h>

#include <filesystem>
#include <functional>
#include <fstream>
#include <string>

#include "cdplab/errors.hpp"
#include "cdplab/io.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cdplab;

namespace {

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cdplab_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string error_text(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_state") {
  const Json ok = Json::parse(R"({"dA": 1, "dB": 2, "matrix_real": [[0.5, 0], [0, 0.5]]})");
  const auto rho = parse_state(ok);
  CHECK(rho.dA() == 1);
  CHECK(rho.matrix()(1, 1) == Complex(0.5));

  const Json wrong_shape = Json::parse(R"({"dA": 1, "dB": 2, "matrix_real": [[1, 0]]})");
  CHECK_THROWS_AS(parse_state(wrong_shape), ParseError);
  CHECK(error_text([&] { parse_state(wrong_shape); }).find("matrix_real") != std::string::npos);

  const Json missing = Json::parse(R"({"dA": 1, "matrix_real": [[1]]})");
  CHECK(error_text([&] { parse_state(missing); }).find("dB") != std::string::npos);

  const Json bad_entry = Json::parse(R"({"dA": 1, "dB": 1, "matrix_real": [["x"]]})");
  CHECK_THROWS_AS(parse_state(bad_entry), ParseError);

  const Json bad_imag = Json::parse(R"({"dA": 1, "dB": 2, "matrix_real": [[0.5, 0], [0, 0.5]], "matrix_imag": [[0]]})");
  CHECK(error_text([&] { parse_state(bad_imag); }).find("matrix_imag") != std::string::npos);

  const Json trace = Json::parse(R"({"dA": 1, "dB": 2, "matrix_real": [[0.5, 0], [0, 0.7]]})");
  CHECK_THROWS_AS(parse_state(trace), ValidationError);
  CHECK(error_text([&] { parse_state(trace); }).find("trace") != std::string::npos);
}

TEST_CASE("parse_channel") {
  const Json ok = Json::parse(R"({"d_in": 2, "d_out": 2, "kraus": [{"real": [[1, 0], [0, 1]]}]})");
  CHECK(parse_channel(ok).kraus().size() == 1);
  const Json not_tp = Json::parse(R"({"d_in": 2, "d_out": 2, "kraus": [{"real": [[1, 0], [0, 0]]}]})");
  CHECK_THROWS_AS(parse_channel(not_tp), ValidationError);
  const Json empty = Json::parse(R"({"d_in": 2, "d_out": 2, "kraus": []})");
  CHECK_THROWS_AS(parse_channel(empty), ParseError);
  const Json shape = Json::parse(R"({"d_in": 2, "d_out": 2, "kraus": [{"real": [[1, 0, 0], [0, 1, 0]]}]})");
  CHECK(error_text([&] { parse_channel(shape); }).find("kraus[0].real") != std::string::npos);
}

TEST_CASE("file loading") {
  const auto bad_json = temp_file("bad.json", "{\n  \"dA\": 1,\n  \"dB\": \n}\n");
  CHECK_THROWS_AS(load_state(bad_json), ParseError);
  CHECK(error_text([&] { load_state(bad_json); }).find(":4:") != std::string::npos);
  CHECK_THROWS_AS(load_state("/nonexistent/state.json"), ParseError);

  const auto not_tp = temp_file("not_tp.json", R"({"d_in": 1, "d_out": 1, "kraus": [{"real": [[2]]}]})");
  CHECK_THROWS_AS(load_channel(not_tp), ValidationError);
}

TEST_CASE("round trip through JSON") {
  gen::Source s(70);
  for (int t = 0; t < 10; ++t) {
    const auto rho = gen::state(s, s.pick(1, 3), s.pick(1, 3));
    const auto back = parse_state(Json::parse(state_to_json(rho).dump()));
    CHECK(back.dA() == rho.dA());
    CHECK(oracle::max_diff(back.matrix(), rho.matrix()) <= 1e-15);
    const auto ch = gen::channel(s, 2, s.pick(1, 3), 2);
    const auto cb = parse_channel(Json::parse(channel_to_json(ch).dump()));
    CHECK(oracle::max_diff(cb.choi(), ch.choi()) <= 1e-14);
  }
}

TEST_CASE("reports") {
  const auto bell = isotropic_state(2, 1.0);
  const Json osd = osd_report_json(bell, operator_schmidt(bell));
  CHECK(osd["rank"] == 4);
  CHECK(osd["realignment_verdict"] == "fails (entangled)");
  CHECK(osd["realignment_sum"].get<double>() == doctest::Approx(2.0));
  CHECK(osd.contains("r_cn_comparison"));
  gen::Source s(71);
  const auto rect = gen::state(s, 2, 3);
  CHECK_FALSE(osd_report_json(rect, operator_schmidt(rect)).contains("r_cn_comparison"));

  CdpOptions opt;
  opt.budget.random_pairs = 1;
  opt.budget.probe_steps = 20;
  opt.discord_restarts = 4;
  opt.osr_reduction_restarts = 2;
  const std::string a = cdp_report_json(cdp_report(bell, "bell", opt)).dump();
  const std::string b = cdp_report_json(cdp_report(bell, "bell", opt)).dump();
  CHECK(a == b);
  const Json j = Json::parse(a);
  CHECK(j["exact"].get<double>() == doctest::Approx(0.5));
  CHECK(j["bound_provenance"][0]["tag"] == "thm2-lower");
}
