#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conekit/pairing.hpp"
#include "conekit/quad.hpp"

namespace conekit {

struct ConvergenceRecord {
  double a = 0.0;
  PrescriptionMode mode = PrescriptionMode::paper;
  int order = 0;
  complexd exact{};
  complexd approx{};
  double abs_error = 0.0;
  double runtime_ms = 0.0;
  bool ok = true;
};

struct OrderFit {
  double fitted_power = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

struct SweepOutcome {
  std::vector<ConvergenceRecord> records;
  std::vector<std::string> errors;  // one message per failed row
};

enum class ReportFormat { csv, json };

// One record per (a, order, mode); exact from pairing_exact, approx from the
// derived-mode sharp expansion. Row failures are recorded, not fatal.
SweepOutcome sweep(const TestFunction& f, const std::vector<double>& a_values,
                   const std::vector<int>& orders,
                   const std::vector<PrescriptionMode>& modes,
                   const QuadratureSpec& spec);

// Least-squares slope of log(abs_error) vs log(1/a). Records must share
// (order, mode) and carry distinct a values; throws std::domain_error when
// fewer than 3 rows have abs_error above the noise floor.
OrderFit fit_order(const std::vector<ConvergenceRecord>& records);

struct FitRow {
  int order = 0;
  PrescriptionMode mode = PrescriptionMode::paper;
  bool ok = false;
  OrderFit fit;
  std::string error;
};

// Fits per (order, mode) group of a sweep, failures recorded per row.
std::vector<FitRow> fit_all_orders(const std::vector<ConvergenceRecord>& records);

void emit_report(const std::vector<ConvergenceRecord>& records,
                 const std::vector<FitRow>& fits, ReportFormat format,
                 std::ostream& out);

std::vector<double> default_sweep_a_values();
std::vector<int> default_sweep_orders();
std::vector<PrescriptionMode> default_sweep_modes();

}  // namespace conekit
