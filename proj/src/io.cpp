#include "cdplab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cdplab/errors.hpp"

namespace cdplab {

namespace {

std::size_t read_dim(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<std::vector<double>> read_rows(const Json& j, std::size_t rows, std::size_t cols, const std::string& field) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError("field '" + field + "' must be an array of " + std::to_string(rows) + " rows");
  }
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("field '" + field + "' row " + std::to_string(r) + " must have " + std::to_string(cols) +
                       " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) {
        throw ParseError("field '" + field + "' entry [" + std::to_string(r) + "][" + std::to_string(c) +
                         "] is not a number");
      }
      out[r][c] = row[c].get<double>();
    }
  }
  return out;
}

Json matrix_rows(const ComplexMatrix& m, bool imag) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(imag ? m(r, c).imag() : m(r, c).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

ComplexMatrix parse_matrix(const Json& real, const Json* imag, std::size_t rows, std::size_t cols,
                           const std::string& field) {
  const auto re = read_rows(real, rows, cols, field + "real");
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = re[r][c];
  if (imag) {
    const auto im = read_rows(*imag, rows, cols, field + "imag");
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) += Complex(0.0, im[r][c]);
  }
  return m;
}

BipartiteState parse_state(const Json& j) {
  if (!j.is_object()) throw ParseError("state file must hold a JSON object");
  const std::size_t dA = read_dim(j, "dA");
  const std::size_t dB = read_dim(j, "dB");
  if (!j.contains("matrix_real")) throw ParseError("missing field 'matrix_real'");
  const Json* imag = j.contains("matrix_imag") ? &j.at("matrix_imag") : nullptr;
  ComplexMatrix m = parse_matrix(j.at("matrix_real"), imag, dA * dB, dA * dB, "matrix_");
  return BipartiteState(std::move(m), dA, dB);
}

QuantumChannel parse_channel(const Json& j) {
  if (!j.is_object()) throw ParseError("channel file must hold a JSON object");
  const std::size_t d_in = read_dim(j, "d_in");
  const std::size_t d_out = read_dim(j, "d_out");
  if (!j.contains("kraus") || !j.at("kraus").is_array() || j.at("kraus").empty()) {
    throw ParseError("field 'kraus' must be a non-empty array");
  }
  std::vector<ComplexMatrix> kraus;
  std::size_t k = 0;
  for (const Json& op : j.at("kraus")) {
    const std::string field = "kraus[" + std::to_string(k++) + "].";
    if (!op.is_object() || !op.contains("real")) throw ParseError("missing field '" + field + "real'");
    const Json* imag = op.contains("imag") ? &op.at("imag") : nullptr;
    kraus.push_back(parse_matrix(op.at("real"), imag, d_out, d_in, field));
  }
  try {
    return QuantumChannel(std::move(kraus));
  } catch (const NotTracePreserving& e) {
    throw ValidationError(std::string("channel is not trace preserving: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError(path + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
  }
}

BipartiteState load_state(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return parse_state(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

QuantumChannel load_channel(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return parse_channel(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const InvalidInput& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Json state_to_json(const BipartiteState& rho) {
  Json j;
  j["dA"] = rho.dA();
  j["dB"] = rho.dB();
  j["matrix_real"] = matrix_rows(rho.matrix(), false);
  j["matrix_imag"] = matrix_rows(rho.matrix(), true);
  return j;
}

Json channel_to_json(const QuantumChannel& ch) {
  Json j;
  j["d_in"] = ch.d_in();
  j["d_out"] = ch.d_out();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) {
    Json op;
    op["real"] = matrix_rows(k, false);
    op["imag"] = matrix_rows(k, true);
    kraus.push_back(std::move(op));
  }
  j["kraus"] = std::move(kraus);
  return j;
}

Json osd_report_json(const BipartiteState& rho, const OperatorSchmidtDecomposition& osd) {
  Json j;
  j["dA"] = osd.dA;
  j["dB"] = osd.dB;
  j["coefficients"] = real_array(osd.coefficients);
  j["rank"] = osd.rank;
  j["threshold"] = osd.threshold;
  const double sum = realignment_sum(osd);
  j["realignment_sum"] = sum;
  j["passes_realignment"] = passes_realignment(osd);
  j["realignment_verdict"] = passes_realignment(osd) ? "passes" : "fails (entangled)";
  if (osd.dA == osd.dB && osd.dA >= 2) {
    const std::size_t d = osd.dA;
    Json cn;
    cn["r_last"] = osd.coefficient_at(d * d);
    cn["r_cn"] = r_cn(d);
    cn["r_cn_printed"] = r_cn_printed(d);
    cn["below_r_cn"] = osd.coefficient_at(d * d) <= r_cn(d) + 1e-10;
    const LowestOscCap cap = lowest_osc_cap(rho);
    cn["purity_cap"] = cap.cap;
    j["r_cn_comparison"] = std::move(cn);
  }
  return j;
}

Json diamond_result_json(const DiamondResult& r) {
  Json j;
  j["value"] = r.value;
  j["method"] = to_string(r.method);
  if (r.method != DiamondMethod::Ascent) {
    j["sdp_value"] = r.sdp_value;
    j["sdp_gap"] = r.sdp_gap;
  }
  if (r.method != DiamondMethod::Sdp) {
    j["ascent_value"] = r.ascent_value;
    Json w = Json::array();
    for (const auto& z : r.witness_input) w.push_back(Json::array({z.real(), z.imag()}));
    j["witness_input"] = std::move(w);
  }
  j["iterations"] = r.iterations;
  return j;
}

Json cdp_report_json(const CdpReport& r) {
  Json j;
  j["state_id"] = r.state_id;
  j["dA"] = r.dA;
  j["dB"] = r.dB;
  j["lower_bound"] = r.lower_bound;
  j["adversarial_estimate"] = r.adversarial_estimate;
  j["upper_bound"] = r.upper_bound;
  j["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
  j["witness_family"] = r.witness_family;
  if (r.witness_channels) {
    j["witness_channels"] = Json::array(
        {channel_to_json(r.witness_channels->first), channel_to_json(r.witness_channels->second)});
  } else {
    j["witness_channels"] = nullptr;
  }
  Json prov = Json::array();
  for (const auto& p : r.bound_provenance) prov.push_back({{"tag", p.tag}, {"role", p.role}, {"value", p.value}});
  j["bound_provenance"] = std::move(prov);
  return j;
}

}  // namespace cdplab
