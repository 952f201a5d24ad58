#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "conekit/report.hpp"

using namespace conekit;

TEST_CASE("format_double round-trips and stays short") {
  for (double x : {0.1, 1.0 / 3.0, -2.75e-13, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(-0.5) == "-0.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("3.25") == "3.25");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(csv_escape("") == "");
}

TEST_CASE("write_csv golden output") {
  std::ostringstream s;
  write_csv(s, {"a", "b"}, {{"1", "x,y"}});
  CHECK(s.str() == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("complex_to_json fields") {
  const nlohmann::json j = complex_to_json(complexd(1.5, -2.0));
  CHECK(j["re"] == 1.5);
  CHECK(j["im"] == -2.0);
}

TEST_CASE("quadrature spec json round trip") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-8;
  spec.rel_tol = 1e-7;
  spec.max_subdivisions = 500;
  spec.excision_schedule = {0.2, 0.1, 0.05};
  spec.truncation_radius = 7.0;
  spec.tau_schedule = {1e-2, 5e-3, 2.5e-3};
  spec.extrapolation_order = 3;

  const QuadratureSpec back = quadspec_from_json(quadspec_to_json(spec));
  CHECK(back.abs_tol == spec.abs_tol);
  CHECK(back.rel_tol == spec.rel_tol);
  CHECK(back.max_subdivisions == spec.max_subdivisions);
  CHECK(back.excision_schedule == spec.excision_schedule);
  CHECK(back.truncation_radius == spec.truncation_radius);
  CHECK(back.tau_schedule == spec.tau_schedule);
  CHECK(back.extrapolation_order == spec.extrapolation_order);
}

TEST_CASE("quadrature spec json rejects bad input") {
  try {
    quadspec_from_json(nlohmann::json{{"abs_tol", 1e-9}, {"bogus", 1}});
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_THROWS_AS(quadspec_from_json(nlohmann::json{{"abs_tol", -1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(quadspec_from_json(nlohmann::json::array()),
                  std::invalid_argument);
  // partial overrides keep the remaining defaults
  const QuadratureSpec spec =
      quadspec_from_json(nlohmann::json{{"truncation_radius", 12.0}});
  CHECK(spec.truncation_radius == 12.0);
  CHECK(spec.abs_tol == QuadratureSpec{}.abs_tol);
}
