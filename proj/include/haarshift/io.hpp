#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "haarshift/haar_operator.hpp"
#include "haarshift/reconstruct.hpp"
#include "haarshift/solver.hpp"

#include "json.hpp"

namespace haarshift::io {

/// Shortest decimal that parses back to the same double, '.' separator.
std::string format_double(double v);
double parse_double(const std::string& text);

/// Sidecar path for a table CSV: same stem, ".json" extension.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Writes `u,c` rows and the JSON sidecar. `provenance` is stored verbatim
/// under the "provenance" key.
void write_table(const CoefficientTable& table, const std::filesystem::path& csv,
                 const nlohmann::json& provenance = nlohmann::json::object());
CoefficientTable read_table(const std::filesystem::path& csv);

nlohmann::json to_json(const CompareReport& report);
nlohmann::json to_json(const McEstimate& est);

/// CSV with header x,averaged,stderr,direct,abs_err.
void write_operator_csv(std::ostream& os, std::span<const OperatorEstimate> estimates, std::span<const double> direct);

}  // namespace haarshift::io
