#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conekit/converge.hpp"

using namespace conekit;

namespace {
const QuadratureSpec kSpec{};

ConvergenceRecord synthetic(double a, int order, double abs_error,
                            complexd exact = complexd(0.0, 0.3)) {
  ConvergenceRecord r;
  r.a = a;
  r.order = order;
  r.mode = PrescriptionMode::paper;
  r.exact = exact;
  r.approx = exact + complexd(abs_error, 0.0);
  r.abs_error = abs_error;
  r.runtime_ms = 1.0;
  r.ok = true;
  return r;
}
}  // namespace

TEST_CASE("sweep produces one record per grid point") {
  TestFunction f = make_gaussian_hermite({0.0, 0.0}, 1.0, {{1, 0, 1.0}});
  const SweepOutcome out =
      sweep(f, {10.0, 30.0}, {0, 2}, {PrescriptionMode::paper}, kSpec);
  CHECK(out.errors.empty());
  REQUIRE(out.records.size() == 4);

  // rows follow the grid: a outermost, then order
  CHECK(out.records[0].a == 10.0);
  CHECK(out.records[0].order == 0);
  CHECK(out.records[1].a == 10.0);
  CHECK(out.records[1].order == 2);
  CHECK(out.records[2].a == 30.0);

  for (const ConvergenceRecord& r : out.records) CHECK(r.ok);

  // the exact pairing is cached per a, so both orders see the same value
  CHECK(out.records[0].exact == out.records[1].exact);
  CHECK(out.records[2].exact == out.records[3].exact);

  // error shrinks with a at fixed order and with order at fixed a
  CHECK(out.records[2].abs_error < out.records[0].abs_error);
  CHECK(out.records[1].abs_error < out.records[0].abs_error);
}

TEST_CASE("sweep validates its grid") {
  TestFunction f = make_gaussian_hermite({0.0, 0.0}, 1.0, {{1, 0, 1.0}});
  CHECK_THROWS_AS(sweep(f, {}, {0}, {PrescriptionMode::paper}, kSpec),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep(f, {-10.0}, {0}, {PrescriptionMode::paper}, kSpec),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep(f, {10.0}, {-1}, {PrescriptionMode::paper}, kSpec),
                  std::invalid_argument);
  CHECK_THROWS_AS(sweep(f, {10.0}, {0}, {}, kSpec), std::invalid_argument);
}

TEST_CASE("order fit recovers synthetic power laws") {
  for (double p : {1.0, 1.5, 2.0}) {
    std::vector<ConvergenceRecord> rs;
    for (double a : {10.0, 30.0, 100.0, 300.0})
      rs.push_back(synthetic(a, 0, 7.0 * std::pow(a, -p)));
    const OrderFit fit = fit_order(rs);
    CHECK(fit.fitted_power == doctest::Approx(p).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.points_used == 4);
  }
}

TEST_CASE("order fit input rules") {
  std::vector<ConvergenceRecord> mixed = {synthetic(10.0, 0, 1.0),
                                          synthetic(30.0, 2, 0.1),
                                          synthetic(100.0, 0, 0.01)};
  CHECK_THROWS_AS(fit_order(mixed), std::invalid_argument);

  std::vector<ConvergenceRecord> dup = {synthetic(10.0, 0, 1.0),
                                        synthetic(10.0, 0, 0.5),
                                        synthetic(30.0, 0, 0.1)};
  CHECK_THROWS_AS(fit_order(dup), std::invalid_argument);

  std::vector<ConvergenceRecord> floor = {synthetic(10.0, 0, 1.0),
                                          synthetic(30.0, 0, 0.0),
                                          synthetic(100.0, 0, 0.0)};
  try {
    fit_order(floor);
    CHECK(false);
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("below the noise floor") !=
          std::string::npos);
  }

  // rows at exactly zero error are skipped, the rest still fit
  std::vector<ConvergenceRecord> partial;
  for (double a : {10.0, 30.0, 100.0, 300.0})
    partial.push_back(synthetic(a, 0, 5.0 / a));
  partial.push_back(synthetic(1000.0, 0, 0.0));
  const OrderFit fit = fit_order(partial);
  CHECK(fit.points_used == 4);
  CHECK(fit.fitted_power == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<ConvergenceRecord> failed = partial;
  failed[1].ok = false;
  CHECK(fit_order(failed).points_used == 3);
}

TEST_CASE("fit all orders groups records") {
  std::vector<ConvergenceRecord> rs;
  for (double a : {10.0, 30.0, 100.0}) {
    rs.push_back(synthetic(a, 0, 1.0 / a));
    rs.push_back(synthetic(a, 2, 1.0 / (a * a)));
  }
  const std::vector<FitRow> fits = fit_all_orders(rs);
  REQUIRE(fits.size() == 2);
  CHECK(fits[0].order == 0);
  CHECK(fits[0].ok);
  CHECK(fits[0].fit.fitted_power == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fits[1].order == 2);
  CHECK(fits[1].fit.fitted_power == doctest::Approx(2.0).epsilon(1e-10));

  // a group too small to fit is reported, not thrown
  std::vector<ConvergenceRecord> small = {synthetic(10.0, 0, 1.0),
                                          synthetic(30.0, 0, 0.1)};
  const std::vector<FitRow> bad = fit_all_orders(small);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].ok);
  CHECK_FALSE(bad[0].error.empty());
}

TEST_CASE("csv report shape") {
  std::vector<ConvergenceRecord> rs = {
      synthetic(10.0, 0, 0.25),
      synthetic(30.0, 0, 0.1, complexd(0.0, 0.0)),
  };
  rs[1].abs_error = 0.1;
  const std::vector<FitRow> fits = fit_all_orders(rs);
  std::ostringstream s;
  emit_report(rs, fits, ReportFormat::csv, s);
  std::istringstream lines(s.str());
  std::string line;

  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "a,mode,order,exact_re,exact_im,approx_re,approx_im,abs_error,"
        "rel_error,runtime_ms");
  REQUIRE(std::getline(lines, line));
  CHECK(line.substr(0, 11) == "10,paper,0,");
  REQUIRE(std::getline(lines, line));
  // zero exact leaves the relative error blank: ",," before the runtime field
  CHECK(line.find(",,") != std::string::npos);
  REQUIRE(std::getline(lines, line));
  CHECK(line.empty());
  REQUIRE(std::getline(lines, line));
  CHECK(line == "order,mode,ok,fitted_power,r_squared,points_used,error");
}

TEST_CASE("json report shape") {
  std::vector<ConvergenceRecord> rs = {synthetic(10.0, 0, 0.25),
                                       synthetic(30.0, 0, 0.1),
                                       synthetic(100.0, 0, 0.04)};
  const std::vector<FitRow> fits = fit_all_orders(rs);
  std::ostringstream s;
  emit_report(rs, fits, ReportFormat::json, s);
  const nlohmann::json j = nlohmann::json::parse(s.str());
  REQUIRE(j.contains("records"));
  REQUIRE(j.contains("fits"));
  CHECK(j["records"].size() == 3);
  CHECK(j["records"][0]["a"] == 10.0);
  CHECK(j["records"][0]["ok"] == true);
  CHECK(j["fits"].size() == 1);
  CHECK(j["fits"][0]["ok"] == true);
}

TEST_CASE("sweep defaults") {
  CHECK(default_sweep_a_values() == std::vector<double>{10.0, 30.0, 100.0, 300.0});
  CHECK(default_sweep_orders() == std::vector<int>{0, 2, 4});
  CHECK(default_sweep_modes() ==
        std::vector<PrescriptionMode>{PrescriptionMode::paper});
}
