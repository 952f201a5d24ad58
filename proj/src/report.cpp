#include "conekit/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace conekit {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_escape(fields[i]);
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

nlohmann::json complex_to_json(complexd z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json quadspec_to_json(const QuadratureSpec& spec) {
  return nlohmann::json{{"abs_tol", spec.abs_tol},
                        {"rel_tol", spec.rel_tol},
                        {"max_subdivisions", spec.max_subdivisions},
                        {"excision_schedule", spec.excision_schedule},
                        {"truncation_radius", spec.truncation_radius},
                        {"tau_schedule", spec.tau_schedule},
                        {"extrapolation_order", spec.extrapolation_order}};
}

QuadratureSpec quadspec_from_json(const nlohmann::json& j) {
  if (!j.is_object())
    throw std::invalid_argument("quadrature spec: expected a JSON object");
  QuadratureSpec spec;
  std::string unknown;
  for (const auto& [key, value] : j.items()) {
    if (key == "abs_tol")
      spec.abs_tol = value.get<double>();
    else if (key == "rel_tol")
      spec.rel_tol = value.get<double>();
    else if (key == "max_subdivisions")
      spec.max_subdivisions = value.get<int>();
    else if (key == "excision_schedule")
      spec.excision_schedule = value.get<std::vector<double>>();
    else if (key == "truncation_radius")
      spec.truncation_radius = value.get<double>();
    else if (key == "tau_schedule")
      spec.tau_schedule = value.get<std::vector<double>>();
    else if (key == "extrapolation_order")
      spec.extrapolation_order = value.get<int>();
    else {
      if (!unknown.empty()) unknown += ", ";
      unknown += key;
    }
  }
  if (!unknown.empty())
    throw std::invalid_argument("quadrature spec: unknown field(s): " +
                                unknown);
  spec.validate();
  return spec;
}

}  // namespace conekit
