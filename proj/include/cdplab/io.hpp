#pragma once

#include <string>

#include <json.hpp>

#include "cdplab/cdp.hpp"
#include "cdplab/channels.hpp"
#include "cdplab/diamond.hpp"
#include "cdplab/matrix.hpp"
#include "cdplab/osd.hpp"
#include "cdplab/states.hpp"

namespace cdplab {

using Json = nlohmann::ordered_json;

/// {"real": [[...]], "imag": [[...]]} style pair of row-major arrays. `imag` may be
/// absent (real matrix). Shapes must match rows x cols exactly; ParseError names the field.
ComplexMatrix parse_matrix(const Json& real, const Json* imag, std::size_t rows, std::size_t cols,
                           const std::string& field);

/// {"dA", "dB", "matrix_real", "matrix_imag"}. Shape problems throw ParseError,
/// physical ones (trace, positivity, Hermiticity) ValidationError.
BipartiteState parse_state(const Json& j);
/// {"d_in", "d_out", "kraus": [{"real", "imag"}]}. Channel-invariant violations throw ValidationError.
QuantumChannel parse_channel(const Json& j);

/// Reads and parses a file; JSON syntax errors become ParseError with the line number.
Json read_json_file(const std::string& path);
BipartiteState load_state(const std::string& path);
QuantumChannel load_channel(const std::string& path);

Json state_to_json(const BipartiteState& rho);
Json channel_to_json(const QuantumChannel& ch);

Json osd_report_json(const BipartiteState& rho, const OperatorSchmidtDecomposition& osd);
Json diamond_result_json(const DiamondResult& r);
Json cdp_report_json(const CdpReport& r);

}  // namespace cdplab
