#include "conekit/converge.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "conekit/report.hpp"

namespace conekit {

namespace {

constexpr double kRelErrorFloor = 1e-12;

std::vector<ConvergenceRecord> sorted_records(
    std::vector<ConvergenceRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ConvergenceRecord& x, const ConvergenceRecord& y) {
                     if (x.a != y.a) return x.a < y.a;
                     if (x.order != y.order) return x.order < y.order;
                     return static_cast<int>(x.mode) < static_cast<int>(y.mode);
                   });
  return records;
}

}  // namespace

std::vector<double> default_sweep_a_values() {
  return {10.0, 30.0, 100.0, 300.0};
}

std::vector<int> default_sweep_orders() { return {0, 2, 4}; }

std::vector<PrescriptionMode> default_sweep_modes() {
  return {PrescriptionMode::paper};
}

SweepOutcome sweep(const TestFunction& f, const std::vector<double>& a_values,
                   const std::vector<int>& orders,
                   const std::vector<PrescriptionMode>& modes,
                   const QuadratureSpec& spec) {
  spec.validate();
  if (a_values.empty())
    throw std::invalid_argument("sweep: a_values must be nonempty");
  for (const double a : a_values)
    if (!(a > 0.0))
      throw std::invalid_argument("sweep: every a must be positive");
  if (orders.empty())
    throw std::invalid_argument("sweep: orders must be nonempty");
  for (const int order : orders)
    if (order < 0)
      throw std::invalid_argument("sweep: orders must be non-negative");
  if (modes.empty())
    throw std::invalid_argument("sweep: modes must be nonempty");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepOutcome out;
  // The exact pairing does not depend on the order; reuse it across rows.
  std::map<std::pair<double, int>, complexd> exact_cache;
  for (const double a : a_values) {
    for (const int order : orders) {
      for (const PrescriptionMode mode : modes) {
        ConvergenceRecord rec;
        rec.a = a;
        rec.order = order;
        rec.mode = mode;
        const auto start = std::chrono::steady_clock::now();
        try {
          const auto key = std::make_pair(a, static_cast<int>(mode));
          const auto hit = exact_cache.find(key);
          if (hit != exact_cache.end()) {
            rec.exact = hit->second;
          } else {
            rec.exact = pairing_exact(f, a, mode, spec).value;
            exact_cache.emplace(key, rec.exact);
          }
          rec.approx =
              sharp_expansion(f, a, order, CoeffMode::derived, spec).value;
          rec.abs_error = std::abs(rec.exact - rec.approx);
        } catch (const std::exception& e) {
          rec.ok = false;
          rec.exact = complexd(nan, nan);
          rec.approx = complexd(nan, nan);
          rec.abs_error = nan;
          out.errors.push_back("a=" + format_double(a) +
                               " order=" + std::to_string(order) + " mode=" +
                               to_string(mode) + ": " + e.what());
        }
        const auto stop = std::chrono::steady_clock::now();
        rec.runtime_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        out.records.push_back(rec);
      }
    }
  }
  return out;
}

OrderFit fit_order(const std::vector<ConvergenceRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("fit_order: no records given");
  const int order = records.front().order;
  const PrescriptionMode mode = records.front().mode;
  std::set<double> seen_a;
  std::vector<std::pair<double, double>> pts;  // (log(1/a), log(err))
  int below_floor = 0;
  for (const ConvergenceRecord& r : records) {
    if (r.order != order || r.mode != mode)
      throw std::invalid_argument(
          "fit_order: records must share one (order, mode) group");
    if (!r.ok) continue;
    if (!std::isfinite(r.abs_error)) continue;
    if (!(r.abs_error > 0.0)) {
      ++below_floor;
      continue;
    }
    if (!seen_a.insert(r.a).second)
      throw std::invalid_argument("fit_order: a values must be distinct");
    pts.emplace_back(std::log(1.0 / r.a), std::log(r.abs_error));
  }
  if (pts.size() < 3) {
    std::string msg = "fit_order: need at least 3 usable points, have " +
                      std::to_string(pts.size());
    if (below_floor > 0)
      msg += " (" + std::to_string(below_floor) +
             " exact agreements below the noise floor, not fitted)";
    throw std::domain_error(msg);
  }

  const double n = static_cast<double>(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  OrderFit fit;
  fit.points_used = static_cast<int>(pts.size());
  fit.fitted_power = sxy / sxx;
  double ss_res = 0.0;
  for (const auto& [x, y] : pts) {
    const double pred = my + fit.fitted_power * (x - mx);
    ss_res += (y - pred) * (y - pred);
  }
  fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return fit;
}

std::vector<FitRow> fit_all_orders(
    const std::vector<ConvergenceRecord>& records) {
  std::map<std::pair<int, int>, std::vector<ConvergenceRecord>> groups;
  for (const ConvergenceRecord& r : records)
    groups[{r.order, static_cast<int>(r.mode)}].push_back(r);
  std::vector<FitRow> rows;
  for (const auto& [key, group] : groups) {
    FitRow row;
    row.order = key.first;
    row.mode = static_cast<PrescriptionMode>(key.second);
    try {
      row.fit = fit_order(group);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_report(const std::vector<ConvergenceRecord>& records,
                 const std::vector<FitRow>& fits, ReportFormat format,
                 std::ostream& out) {
  const std::vector<ConvergenceRecord> sorted = sorted_records(records);
  if (format == ReportFormat::csv) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(sorted.size());
    for (const ConvergenceRecord& r : sorted) {
      const bool rel_ok = std::abs(r.exact) > kRelErrorFloor;
      rows.push_back({format_double(r.a), to_string(r.mode),
                      std::to_string(r.order), format_double(r.exact.real()),
                      format_double(r.exact.imag()),
                      format_double(r.approx.real()),
                      format_double(r.approx.imag()),
                      format_double(r.abs_error),
                      rel_ok ? format_double(r.abs_error / std::abs(r.exact))
                             : std::string(),
                      format_double(r.runtime_ms)});
    }
    write_csv(out,
              {"a", "mode", "order", "exact_re", "exact_im", "approx_re",
               "approx_im", "abs_error", "rel_error", "runtime_ms"},
              rows);
    out << '\n';
    std::vector<std::vector<std::string>> fit_rows;
    fit_rows.reserve(fits.size());
    for (const FitRow& fr : fits)
      fit_rows.push_back({std::to_string(fr.order), to_string(fr.mode),
                          fr.ok ? "true" : "false",
                          fr.ok ? format_double(fr.fit.fitted_power)
                                : std::string(),
                          fr.ok ? format_double(fr.fit.r_squared)
                                : std::string(),
                          fr.ok ? std::to_string(fr.fit.points_used)
                                : std::string(),
                          fr.error});
    write_csv(out,
              {"order", "mode", "ok", "fitted_power", "r_squared",
               "points_used", "error"},
              fit_rows);
    return;
  }

  nlohmann::json doc;
  doc["records"] = nlohmann::json::array();
  for (const ConvergenceRecord& r : sorted) {
    nlohmann::json row{{"a", r.a},
                       {"mode", to_string(r.mode)},
                       {"order", r.order},
                       {"exact", complex_to_json(r.exact)},
                       {"approx", complex_to_json(r.approx)},
                       {"abs_error", r.abs_error},
                       {"runtime_ms", r.runtime_ms},
                       {"ok", r.ok}};
    if (std::abs(r.exact) > kRelErrorFloor)
      row["rel_error"] = r.abs_error / std::abs(r.exact);
    else
      row["rel_error"] = nullptr;
    doc["records"].push_back(std::move(row));
  }
  doc["fits"] = nlohmann::json::array();
  for (const FitRow& fr : fits) {
    nlohmann::json row{{"order", fr.order},
                       {"mode", to_string(fr.mode)},
                       {"ok", fr.ok}};
    if (fr.ok) {
      row["fitted_power"] = fr.fit.fitted_power;
      row["r_squared"] = fr.fit.r_squared;
      row["points_used"] = fr.fit.points_used;
    } else {
      row["error"] = fr.error;
    }
    doc["fits"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace conekit
