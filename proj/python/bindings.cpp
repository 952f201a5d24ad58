#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "conekit/converge.hpp"
#include "conekit/kernel.hpp"
#include "conekit/pairing.hpp"
#include "conekit/quad.hpp"
#include "conekit/report.hpp"
#include "conekit/testfn.hpp"
#include "conekit/wavesolve.hpp"

namespace py = pybind11;
using namespace conekit;

namespace {

py::dict quad_dict(const QuadResult<double>& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["converged"] = r.converged;
  d["evaluations"] = r.evaluations;
  return d;
}

py::dict quad_dict(const QuadResult<complexd>& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  d["converged"] = r.converged;
  d["evaluations"] = r.evaluations;
  return d;
}

py::dict pairing_dict(const PairingResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["error_estimate"] = r.error_estimate;
  py::list terms;
  for (const auto& [name, val] : r.terms)
    terms.append(py::make_tuple(name, val));
  d["terms"] = terms;
  return d;
}

py::dict record_dict(const ConvergenceRecord& r) {
  py::dict d;
  d["a"] = r.a;
  d["mode"] = to_string(r.mode);
  d["order"] = r.order;
  d["exact"] = r.exact;
  d["approx"] = r.approx;
  d["abs_error"] = r.abs_error;
  d["runtime_ms"] = r.runtime_ms;
  d["ok"] = r.ok;
  return d;
}

py::dict solve_dict(const SolvePoint& p) {
  py::dict d;
  d["xi"] = py::make_tuple(p.xi[0], p.xi[1]);
  d["value"] = p.value;
  d["pv_term"] = p.pv_term;
  d["correction_sum"] = p.correction_sum;
  d["error_estimate"] = p.error_estimate;
  d["ok"] = p.ok;
  d["error"] = p.error;
  return d;
}

std::vector<PrescriptionMode> parse_modes(const std::vector<std::string>& ms) {
  std::vector<PrescriptionMode> out;
  out.reserve(ms.size());
  for (const std::string& m : ms) out.push_back(parse_prescription_mode(m));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "singular kernel pairing and expansion toolkit";

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init<>())
      .def_readwrite("abs_tol", &QuadratureSpec::abs_tol)
      .def_readwrite("rel_tol", &QuadratureSpec::rel_tol)
      .def_readwrite("max_subdivisions", &QuadratureSpec::max_subdivisions)
      .def_readwrite("excision_schedule", &QuadratureSpec::excision_schedule)
      .def_readwrite("truncation_radius", &QuadratureSpec::truncation_radius)
      .def_readwrite("tau_schedule", &QuadratureSpec::tau_schedule)
      .def_readwrite("extrapolation_order",
                     &QuadratureSpec::extrapolation_order)
      .def("validate", &QuadratureSpec::validate);

  py::class_<TestFunction>(m, "TestFunction")
      .def("eval", &TestFunction::eval)
      .def("axis_derivative", &TestFunction::axis_derivative)
      .def("derivative_xi2", &TestFunction::derivative_xi2)
      .def("parity_xi1",
           [](const TestFunction& f) { return to_string(f.parity_xi1()); })
      .def("max_exact_derivative_order",
           &TestFunction::max_exact_derivative_order)
      .def("xi1_interval", &TestFunction::xi1_interval)
      .def("xi2_halfwidth", &TestFunction::xi2_halfwidth)
      .def("exact_axis_moment", &TestFunction::exact_axis_moment);

  m.def(
      "make_gaussian_hermite",
      [](std::array<double, 2> center, double scale,
         const std::vector<std::tuple<int, int, double>>& poly) {
        std::vector<PolyTerm2> terms;
        terms.reserve(poly.size());
        for (const auto& [p1, p2, c] : poly) terms.push_back({p1, p2, c});
        return make_gaussian_hermite(center, scale, terms);
      },
      py::arg("center"), py::arg("scale"), py::arg("poly"));
  m.def("make_bump", &make_bump, py::arg("support_radius"));
  m.def("make_linear_combination", &make_linear_combination, py::arg("alpha"),
        py::arg("f"), py::arg("beta"), py::arg("g"));

  m.def(
      "integrate_adaptive",
      [](const std::function<double(double)>& g, double lo, double hi,
         const QuadratureSpec& spec) {
        return quad_dict(integrate_adaptive(g, lo, hi, spec));
      },
      py::arg("g"), py::arg("lo"), py::arg("hi"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "integrate_pv",
      [](const std::function<double(double)>& g,
         const std::vector<double>& poles, double lo, double hi,
         const QuadratureSpec& spec) {
        return quad_dict(integrate_pv(g, poles, lo, hi, spec));
      },
      py::arg("g"), py::arg("poles"), py::arg("lo"), py::arg("hi"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "axis_moment",
      [](const TestFunction& f, int mm, int n, const QuadratureSpec& spec) {
        return quad_dict(axis_moment(f, mm, n, spec));
      },
      py::arg("f"), py::arg("m"), py::arg("n"),
      py::arg("spec") = QuadratureSpec{});

  m.def(
      "tkn_eval",
      [](int k, double N, double xi1, const std::string& mode) {
        return tkn_eval({k, N, parse_coeff_mode(mode)}, xi1);
      },
      py::arg("k"), py::arg("N"), py::arg("xi1"),
      py::arg("mode") = "derived");
  m.def(
      "p_poly",
      [](int n, const std::string& mode) {
        const PPoly p = p_poly(n, parse_coeff_mode(mode));
        py::list out;
        for (const PTerm& t : p.terms)
          out.append(
              py::make_tuple(t.n_pow, t.xi_pow, t.coeff.num, t.coeff.den));
        return out;
      },
      py::arg("n"), py::arg("mode") = "derived");
  m.def(
      "tkn_pv_oracle",
      [](int k, double N, double xi1, const QuadratureSpec& spec) {
        return quad_dict(tkn_pv_oracle(k, N, xi1, spec));
      },
      py::arg("k"), py::arg("N"), py::arg("xi1"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "tkn_recurrence_check",
      [](int n, double N, double xi1, const QuadratureSpec& spec) {
        const RecurrenceResidual r = tkn_recurrence_check(n, N, xi1, spec);
        py::dict d;
        d["derived"] = r.derived;
        d["quadrature"] = r.quadrature;
        d["quadrature_scale"] = r.quadrature_scale;
        return d;
      },
      py::arg("n"), py::arg("N"), py::arg("xi1"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "coeff_table",
      [](double a, int order, const std::string& mode) {
        const CoeffTable t = coeff_table(a, order, parse_coeff_mode(mode));
        py::list out;
        for (const CoeffEntry& e : t.entries) {
          py::dict d;
          d["m"] = e.m;
          d["n"] = e.n;
          d["value"] = e.value;
          d["block"] = e.block == CoeffBlock::moment ? "moment" : "lemma1";
          d["k_index"] = e.k_index;
          out.append(d);
        }
        return out;
      },
      py::arg("a"), py::arg("order"), py::arg("mode") = "derived");
  m.def(
      "discrepancy_report",
      [](int n_max, const std::vector<std::pair<double, double>>& grid,
         const QuadratureSpec& spec) {
        const DiscrepancyReport rep = discrepancy_report(n_max, grid, spec);
        py::list rows;
        for (const DiscrepancyRow& r : rep.rows) {
          py::dict d;
          d["k"] = r.k;
          d["N"] = r.N;
          d["xi1"] = r.xi1;
          d["paper_literal"] = r.paper_literal_re;
          d["derived"] = r.derived_re;
          d["oracle"] = r.oracle_re;
          d["err_paper"] = r.err_paper;
          d["err_derived"] = r.err_derived;
          d["verdict"] = r.verdict;
          d["ok"] = r.ok;
          d["error"] = r.error;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n_max"), py::arg("grid") = default_discrepancy_grid(),
      py::arg("spec") = QuadratureSpec{});
  m.def("default_discrepancy_grid", &default_discrepancy_grid);

  m.def(
      "leading_pairing",
      [](const TestFunction& f, const QuadratureSpec& spec) {
        return pairing_dict(leading_pairing(f, spec));
      },
      py::arg("f"), py::arg("spec") = QuadratureSpec{});
  m.def(
      "moment_delta_pairing",
      [](const TestFunction& f, int mm, int n, const QuadratureSpec& spec) {
        return pairing_dict(moment_delta_pairing(f, mm, n, spec));
      },
      py::arg("f"), py::arg("m"), py::arg("n"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "rough_expansion",
      [](const TestFunction& f, double a, int order,
         const QuadratureSpec& spec) {
        return pairing_dict(rough_expansion(f, a, order, spec));
      },
      py::arg("f"), py::arg("a"), py::arg("order"),
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "sharp_expansion",
      [](const TestFunction& f, double a, int order, const std::string& mode,
         const QuadratureSpec& spec, double nb_multiplier) {
        return pairing_dict(sharp_expansion(
            f, a, order, parse_coeff_mode(mode), spec, nb_multiplier));
      },
      py::arg("f"), py::arg("a"), py::arg("order"),
      py::arg("mode") = "derived", py::arg("spec") = QuadratureSpec{},
      py::arg("nb_multiplier") = 1.0);
  m.def(
      "pairing_exact",
      [](const TestFunction& f, double a, const std::string& mode,
         const QuadratureSpec& spec) {
        return quad_dict(pairing_exact(f, a, parse_prescription_mode(mode),
                                       spec));
      },
      py::arg("f"), py::arg("a"), py::arg("mode") = "paper",
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "lemma1_dft_check",
      [](int k, double center, double scale, int grid_size,
         double halfwidth) {
        return lemma1_dft_check(k, gaussian_1d(center, scale), grid_size,
                                halfwidth);
      },
      py::arg("k"), py::arg("center") = 0.0, py::arg("scale") = 1.0,
      py::arg("grid_size") = 4096, py::arg("halfwidth") = 20.0);

  m.def(
      "sweep",
      [](const TestFunction& f, const std::vector<double>& a_values,
         const std::vector<int>& orders, const std::vector<std::string>& modes,
         const QuadratureSpec& spec) {
        const SweepOutcome o =
            sweep(f, a_values, orders, parse_modes(modes), spec);
        py::dict d;
        py::list records;
        for (const ConvergenceRecord& r : o.records)
          records.append(record_dict(r));
        d["records"] = records;
        d["errors"] = o.errors;
        return d;
      },
      py::arg("f"), py::arg("a_values") = default_sweep_a_values(),
      py::arg("orders") = default_sweep_orders(),
      py::arg("modes") = std::vector<std::string>{"paper"},
      py::arg("spec") = QuadratureSpec{});
  m.def(
      "sweep_report",
      [](const TestFunction& f, const std::vector<double>& a_values,
         const std::vector<int>& orders, const std::vector<std::string>& modes,
         const QuadratureSpec& spec, const std::string& format) {
        const SweepOutcome o =
            sweep(f, a_values, orders, parse_modes(modes), spec);
        const std::vector<FitRow> fits = fit_all_orders(o.records);
        std::ostringstream s;
        emit_report(o.records, fits,
                    format == "json" ? ReportFormat::json : ReportFormat::csv,
                    s);
        return s.str();
      },
      py::arg("f"), py::arg("a_values") = default_sweep_a_values(),
      py::arg("orders") = default_sweep_orders(),
      py::arg("modes") = std::vector<std::string>{"paper"},
      py::arg("spec") = QuadratureSpec{}, py::arg("format") = "csv");
  m.def("default_sweep_a_values", &default_sweep_a_values);
  m.def("default_sweep_orders", &default_sweep_orders);

  m.def("sobolev_condition_check", &sobolev_condition_check, py::arg("kappa"),
        py::arg("s"));
  m.def("factorization_names", &factorization_names);
  m.def(
      "ellipticity_check",
      [](const std::function<complexd(double, double)>& symbol, double alpha,
         const std::vector<std::array<double, 2>>& grid) {
        const EllipticityResult r = ellipticity_check(symbol, alpha, grid);
        py::dict d;
        d["c1_est"] = r.c1_est;
        d["c2_est"] = r.c2_est;
        d["pass"] = r.pass;
        d["failure_point"] = r.failure_point
                                 ? py::object(py::make_tuple(
                                       (*r.failure_point)[0],
                                       (*r.failure_point)[1]))
                                 : py::object(py::none());
        return d;
      },
      py::arg("symbol"), py::arg("alpha"), py::arg("grid"));
  m.def(
      "factorization_estimate_check",
      [](const std::string& name, double a,
         const std::vector<std::array<double, 2>>& tau_samples,
         const std::vector<std::array<double, 2>>& xi_grid) {
        const FactorEstimates e = factorization_estimate_check(
            make_factorization(name, ConeSpec{a}), tau_samples, xi_grid);
        py::dict d;
        d["c_plus"] = e.c_plus;
        d["c_minus"] = e.c_minus;
        d["pass"] = e.pass;
        return d;
      },
      py::arg("name"), py::arg("a"), py::arg("tau_samples"),
      py::arg("xi_grid"));
  m.def(
      "solve_theorem2",
      [](const TestFunction& rhs, const std::string& fact_name, double a,
         int order, const std::vector<std::array<double, 2>>& points,
         const std::string& mode, const QuadratureSpec& spec, double s) {
        const std::vector<SolvePoint> pts =
            solve_theorem2(make_factorization(fact_name, ConeSpec{a}), rhs,
                           order, points, parse_coeff_mode(mode), spec, s);
        py::list out;
        for (const SolvePoint& p : pts) out.append(solve_dict(p));
        return out;
      },
      py::arg("rhs"), py::arg("fact") = "identity", py::arg("a") = 1.0,
      py::arg("order") = 0,
      py::arg("points") =
          std::vector<std::array<double, 2>>{{0.0, 0.0}},
      py::arg("mode") = "derived", py::arg("spec") = QuadratureSpec{},
      py::arg("s") = 0.0);
}
