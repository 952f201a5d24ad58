#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "conekit/quadspec.hpp"

namespace conekit {

// Shortest text that round-trips; canonical "nan"/"inf"/"-inf".
std::string format_double(double x);

std::string csv_escape(const std::string& field);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

nlohmann::json complex_to_json(complexd z);

nlohmann::json quadspec_to_json(const QuadratureSpec& spec);
QuadratureSpec quadspec_from_json(const nlohmann::json& j);

}  // namespace conekit
