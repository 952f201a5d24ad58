#include "conekit/quadspec.hpp"

#include <sstream>

namespace conekit {

std::string to_string(PrescriptionMode mode) {
  switch (mode) {
    case PrescriptionMode::pv: return "pv";
    case PrescriptionMode::plus_i0: return "plus_i0";
    case PrescriptionMode::minus_i0: return "minus_i0";
    case PrescriptionMode::paper: return "paper";
  }
  return "pv";
}

std::string to_string(CoeffMode mode) {
  return mode == CoeffMode::derived ? "derived" : "paper_literal";
}

std::string to_string(Parity parity) {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

PrescriptionMode parse_prescription_mode(const std::string& name) {
  if (name == "pv") return PrescriptionMode::pv;
  if (name == "plus_i0") return PrescriptionMode::plus_i0;
  if (name == "minus_i0") return PrescriptionMode::minus_i0;
  if (name == "paper") return PrescriptionMode::paper;
  throw std::invalid_argument("unknown prescription mode '" + name +
                              "' (expected pv, plus_i0, minus_i0 or paper)");
}

CoeffMode parse_coeff_mode(const std::string& name) {
  if (name == "derived") return CoeffMode::derived;
  if (name == "paper_literal") return CoeffMode::paper_literal;
  throw std::invalid_argument("unknown coefficient mode '" + name +
                              "' (expected derived or paper_literal)");
}

namespace {

bool strictly_decreasing_positive(const std::vector<double>& xs) {
  if (xs.empty()) return false;
  double prev = xs.front();
  if (!(prev > 0.0)) return false;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(xs[i] < prev)) return false;
    prev = xs[i];
  }
  return true;
}

}  // namespace

void QuadratureSpec::validate() const {
  std::ostringstream bad;
  auto add = [&](const std::string& msg) {
    if (bad.tellp() > 0) bad << "; ";
    bad << msg;
  };
  if (!(abs_tol > 0.0)) add("abs_tol must be > 0");
  if (!(rel_tol > 0.0)) add("rel_tol must be > 0");
  if (max_subdivisions <= 0) add("max_subdivisions must be > 0");
  if (!(truncation_radius > 0.0)) add("truncation_radius must be > 0");
  if (extrapolation_order <= 0) add("extrapolation_order must be > 0");
  if (!strictly_decreasing_positive(excision_schedule))
    add("excision_schedule must be strictly decreasing and positive");
  if (!strictly_decreasing_positive(tau_schedule))
    add("tau_schedule must be strictly decreasing and positive");
  if (bad.tellp() > 0)
    throw std::invalid_argument("invalid QuadratureSpec: " + bad.str());
}

}  // namespace conekit
