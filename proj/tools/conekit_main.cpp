#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conekit/converge.hpp"
#include "conekit/kernel.hpp"
#include "conekit/pairing.hpp"
#include "conekit/quad.hpp"
#include "conekit/report.hpp"
#include "conekit/testfn.hpp"
#include "conekit/wavesolve.hpp"

using nlohmann::json;
using namespace conekit;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitCompute = 4;

int fail(const std::string& message, const std::vector<std::string>& fields,
         int code) {
  json err;
  err["error"]["message"] = message;
  err["error"]["fields"] = fields;
  std::cerr << err.dump() << "\n";
  return code;
}

// Collects every offending field before giving up.
struct Validator {
  std::vector<std::string> fields;
  std::string message;

  void reject(const std::string& field, const std::string& why) {
    fields.push_back(field);
    if (!message.empty()) message += "; ";
    message += field + ": " + why;
  }
  bool ok() const { return fields.empty(); }
  int exit() const { return fail(message, fields, kExitValidation); }
};

TestFunction parse_fn(const std::string& text) {
  if (text == "gaussian")
    return make_gaussian_hermite({0.0, 0.0}, 1.0, {{0, 0, 1.0}});
  if (text == "xi1_gaussian")
    return make_gaussian_hermite({0.0, 0.0}, 1.0, {{1, 0, 1.0}});
  if (text == "xi2_gaussian")
    return make_gaussian_hermite({0.0, 0.0}, 1.0, {{0, 1, 1.0}});
  if (text == "shifted_gaussian")
    return make_gaussian_hermite({1.0, 0.0}, 1.0, {{0, 0, 1.0}});
  if (text == "bump") return make_bump(2.0);
  if (!text.empty() && text.front() == '{') {
    const json j = json::parse(text);
    const std::string family = j.at("family").get<std::string>();
    if (family == "gaussian_hermite") {
      std::array<double, 2> center{0.0, 0.0};
      if (j.contains("center")) {
        center = {j["center"].at(0).get<double>(),
                  j["center"].at(1).get<double>()};
      }
      const double scale = j.value("scale", 1.0);
      std::vector<PolyTerm2> poly;
      if (j.contains("poly")) {
        for (const auto& t : j["poly"]) {
          if (t.is_array())
            poly.push_back({t.at(0).get<int>(), t.at(1).get<int>(),
                            t.at(2).get<double>()});
          else
            poly.push_back({t.at("p1").get<int>(), t.at("p2").get<int>(),
                            t.at("coeff").get<double>()});
        }
      } else {
        poly.push_back({0, 0, 1.0});
      }
      return make_gaussian_hermite(center, scale, poly);
    }
    if (family == "bump") return make_bump(j.value("support_radius", 2.0));
    throw std::invalid_argument("unknown family \"" + family +
                                "\" (gaussian_hermite or bump)");
  }
  throw std::invalid_argument(
      "unknown test function \"" + text +
      "\" (presets: gaussian, xi1_gaussian, xi2_gaussian, shifted_gaussian, "
      "bump; or inline JSON {\"family\": ...})");
}

TestFunction1D parse_fn1d(const std::string& text) {
  if (text == "gaussian_1d") return gaussian_1d(0.0, 1.0);
  if (text == "shifted_gaussian_1d") return gaussian_1d(1.0, 1.0);
  if (!text.empty() && text.front() == '{') {
    const json j = json::parse(text);
    return gaussian_1d(j.value("center", 0.0), j.value("scale", 1.0));
  }
  throw std::invalid_argument(
      "unknown 1d test function \"" + text +
      "\" (presets: gaussian_1d, shifted_gaussian_1d; or inline JSON "
      "{\"center\", \"scale\"})");
}

// Relative --out paths land in CONEKIT_OUT_DIR when it is set.
int write_output(const std::string& out, const std::string& payload) {
  if (out == "-") {
    std::cout << payload;
    return 0;
  }
  std::string path = out;
  if (!path.empty() && path.front() != '/') {
    if (const char* dir = std::getenv("CONEKIT_OUT_DIR"); dir && *dir)
      path = std::string(dir) + "/" + path;
  }
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) return fail("cannot open output file " + path, {"out"}, kExitIo);
  f << payload;
  if (!f) return fail("failed writing output file " + path, {"out"}, kExitIo);
  return 0;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream s;
  write_csv(s, header, rows);
  return s.str();
}

// Per-subcommand plumbing: JSON config whose keys mirror the long flags,
// command-line flags winning, unknown keys rejected.
struct Command {
  CLI::App* sub = nullptr;
  std::string out = "-";
  std::string format = "csv";
  std::string config_path;
  json cfg;
  Validator v;
  std::vector<std::string> known{"out", "format", "config"};

  explicit Command(CLI::App* s) : sub(s) {
    sub->add_option("--out", out, "output path, - for stdout");
    sub->add_option("--format", format, "csv or json");
    sub->add_option("--config", config_path, "JSON config file; flags win");
  }

  // 0 on success, else the exit code to return.
  int load_config() {
    if (config_path.empty()) return 0;
    std::ifstream in(config_path);
    if (!in)
      return fail("cannot open config file " + config_path, {"config"},
                  kExitIo);
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      return fail(std::string("config parse error: ") + e.what(), {"config"},
                  kExitValidation);
    }
    if (!cfg.is_object())
      return fail("config must be a JSON object", {"config"}, kExitValidation);
    return 0;
  }

  template <class T>
  void pull(const char* flag, T& value) {
    known.push_back(flag);
    if (!cfg.is_object() || !cfg.contains(flag)) return;
    if (sub->count(std::string("--") + flag) > 0) return;
    try {
      value = cfg.at(flag).get<T>();
    } catch (const std::exception& e) {
      v.reject(flag, std::string("bad config value: ") + e.what());
    }
  }

  void finish_config() {
    pull("out", out);
    pull("format", format);
    if (cfg.is_object()) {
      for (const auto& item : cfg.items()) {
        const std::string& key = item.key();
        if (key == "quadrature") continue;
        if (std::find(known.begin(), known.end(), key) == known.end())
          v.reject(key, "unknown config key");
      }
    }
    if (format != "csv" && format != "json")
      v.reject("format", "expected csv or json");
  }

  QuadratureSpec quad() {
    QuadratureSpec spec;
    if (cfg.is_object() && cfg.contains("quadrature")) {
      try {
        spec = quadspec_from_json(cfg.at("quadrature"));
      } catch (const std::exception& e) {
        v.reject("quadrature", e.what());
      }
    }
    return spec;
  }

  int emit(const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows, const json& j) {
    const std::string payload =
        format == "csv" ? render_csv(header, rows) : j.dump(2) + "\n";
    return write_output(out, payload);
  }
};

json finite_or_text(double x) {
  return std::isfinite(x) ? json(x) : json(format_double(x));
}

int run_tkn(Command& c, int k, double N, double xi1,
            const std::string& mode_text) {
  std::vector<CoeffMode> modes;
  if (mode_text.empty()) {
    modes = {CoeffMode::derived, CoeffMode::paper_literal};
  } else {
    try {
      modes = {parse_coeff_mode(mode_text)};
    } catch (const std::exception& e) {
      c.v.reject("mode", e.what());
    }
  }
  if (k < 0) c.v.reject("k", "must be >= 0");
  if (!(N > 0.0)) c.v.reject("N", "must be > 0");
  if (!std::isfinite(xi1) || xi1 == 0.0) c.v.reject("xi1", "must be finite and nonzero");
  if (!c.v.ok()) return c.v.exit();

  std::vector<std::vector<std::string>> rows;
  json j;
  j["k"] = k;
  j["N"] = finite_or_text(N);
  j["xi1"] = xi1;
  j["results"] = json::array();
  try {
    for (CoeffMode m : modes) {
      const complexd val = tkn_eval({k, N, m}, xi1);
      rows.push_back({std::to_string(k), format_double(N), format_double(xi1),
                      to_string(m), format_double(val.real()),
                      format_double(val.imag())});
      j["results"].push_back({{"mode", to_string(m)},
                              {"value", complex_to_json(val)}});
    }
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
  return c.emit({"k", "N", "xi1", "mode", "re", "im"}, rows, j);
}

int run_pair(Command& c, const std::string& fn_text, double a,
             const std::string& mode_text) {
  std::optional<TestFunction> fn;
  try {
    fn = parse_fn(fn_text);
  } catch (const std::exception& e) {
    c.v.reject("fn", e.what());
  }
  PrescriptionMode mode = PrescriptionMode::paper;
  try {
    mode = parse_prescription_mode(mode_text);
  } catch (const std::exception& e) {
    c.v.reject("mode", e.what());
  }
  if (!(a > 0.0)) c.v.reject("a", "must be > 0");
  const QuadratureSpec spec = c.quad();
  if (!c.v.ok()) return c.v.exit();

  try {
    const QuadResult<complexd> r = pairing_exact(*fn, a, mode, spec);
    const std::vector<std::vector<std::string>> rows = {
        {fn_text, format_double(a), to_string(mode),
         format_double(r.value.real()), format_double(r.value.imag()),
         format_double(r.error_estimate), r.converged ? "true" : "false"}};
    json j;
    j["fn"] = fn_text;
    j["a"] = a;
    j["mode"] = to_string(mode);
    j["value"] = complex_to_json(r.value);
    j["error_estimate"] = r.error_estimate;
    j["converged"] = r.converged;
    return c.emit({"fn", "a", "mode", "re", "im", "error_estimate",
                   "converged"},
                  rows, j);
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

int run_expand(Command& c, const std::string& fn_text, double a, int order,
               const std::string& variant, const std::string& mode_text) {
  std::optional<TestFunction> fn;
  try {
    fn = parse_fn(fn_text);
  } catch (const std::exception& e) {
    c.v.reject("fn", e.what());
  }
  CoeffMode mode = CoeffMode::derived;
  try {
    mode = parse_coeff_mode(mode_text);
  } catch (const std::exception& e) {
    c.v.reject("mode", e.what());
  }
  if (variant != "rough" && variant != "sharp")
    c.v.reject("variant", "expected rough or sharp");
  if (!(a > 0.0)) c.v.reject("a", "must be > 0");
  if (order < 0) c.v.reject("order", "must be >= 0");
  const QuadratureSpec spec = c.quad();
  if (!c.v.ok()) return c.v.exit();

  try {
    const PairingResult r = variant == "rough"
                                ? rough_expansion(*fn, a, order, spec)
                                : sharp_expansion(*fn, a, order, mode, spec);
    const std::string mode_col = variant == "sharp" ? to_string(mode) : "";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({variant, format_double(a), std::to_string(order), mode_col,
                    "total", format_double(r.value.real()),
                    format_double(r.value.imag()),
                    format_double(r.error_estimate)});
    json jterms = json::array();
    for (const auto& [name, val] : r.terms) {
      rows.push_back({variant, format_double(a), std::to_string(order),
                      mode_col, name, format_double(val.real()),
                      format_double(val.imag()), ""});
      jterms.push_back({{"term", name}, {"value", complex_to_json(val)}});
    }
    json j;
    j["fn"] = fn_text;
    j["variant"] = variant;
    j["a"] = a;
    j["order"] = order;
    if (variant == "sharp") j["mode"] = to_string(mode);
    j["value"] = complex_to_json(r.value);
    j["error_estimate"] = r.error_estimate;
    j["terms"] = jterms;
    return c.emit({"variant", "a", "order", "mode", "term", "re", "im",
                   "error_estimate"},
                  rows, j);
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

int run_sweep(Command& c, const std::string& fn_text,
              const std::vector<double>& a_values,
              const std::vector<int>& orders,
              const std::vector<std::string>& mode_texts) {
  std::optional<TestFunction> fn;
  try {
    fn = parse_fn(fn_text);
  } catch (const std::exception& e) {
    c.v.reject("fn", e.what());
  }
  if (a_values.empty() ||
      std::any_of(a_values.begin(), a_values.end(),
                  [](double a) { return !(a > 0.0); }))
    c.v.reject("a-list", "must be nonempty positive values");
  if (orders.empty() || std::any_of(orders.begin(), orders.end(),
                                    [](int o) { return o < 0; }))
    c.v.reject("orders", "must be nonempty nonnegative values");
  std::vector<PrescriptionMode> modes;
  try {
    for (const std::string& m : mode_texts)
      modes.push_back(parse_prescription_mode(m));
    if (modes.empty()) throw std::invalid_argument("must be nonempty");
  } catch (const std::exception& e) {
    c.v.reject("modes", e.what());
  }
  const QuadratureSpec spec = c.quad();
  if (!c.v.ok()) return c.v.exit();

  try {
    const SweepOutcome outcome = sweep(*fn, a_values, orders, modes, spec);
    const std::vector<FitRow> fits = fit_all_orders(outcome.records);
    std::ostringstream s;
    emit_report(outcome.records, fits,
                c.format == "csv" ? ReportFormat::csv : ReportFormat::json, s);
    for (const std::string& msg : outcome.errors)
      std::cerr << "sweep row failed: " << msg << "\n";
    return write_output(c.out, s.str());
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

int run_lemma1(Command& c, int k, const std::string& fn1d_text, int grid,
               double halfwidth) {
  std::optional<TestFunction1D> f1d;
  try {
    f1d = parse_fn1d(fn1d_text);
  } catch (const std::exception& e) {
    c.v.reject("fn1d", e.what());
  }
  if (k < 0) c.v.reject("k", "must be >= 0");
  if (grid < 2) c.v.reject("grid", "must be >= 2");
  if (!(halfwidth > 0.0)) c.v.reject("halfwidth", "must be > 0");
  if (!c.v.ok()) return c.v.exit();

  try {
    const double d = lemma1_dft_check(k, *f1d, grid, halfwidth);
    const std::vector<std::vector<std::string>> rows = {
        {std::to_string(k), format_double(f1d->center),
         format_double(f1d->scale), std::to_string(grid),
         format_double(halfwidth), format_double(d)}};
    json j;
    j["k"] = k;
    j["center"] = f1d->center;
    j["scale"] = f1d->scale;
    j["grid"] = grid;
    j["halfwidth"] = halfwidth;
    j["discrepancy"] = d;
    return c.emit({"k", "center", "scale", "grid", "halfwidth", "discrepancy"},
                  rows, j);
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

int run_discrepancy(Command& c, int nmax, const std::string& grid_file) {
  std::vector<std::pair<double, double>> grid = default_discrepancy_grid();
  if (!grid_file.empty()) {
    std::ifstream in(grid_file);
    if (!in) {
      c.v.reject("grid-file", "cannot open " + grid_file);
    } else {
      try {
        const json j = json::parse(in);
        grid.clear();
        for (const auto& p : j)
          grid.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      } catch (const std::exception& e) {
        c.v.reject("grid-file", e.what());
      }
    }
  }
  if (nmax < 1) c.v.reject("nmax", "must be >= 1");
  const QuadratureSpec spec = c.quad();
  if (!c.v.ok()) return c.v.exit();

  try {
    const DiscrepancyReport rep = discrepancy_report(nmax, grid, spec);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const DiscrepancyRow& r : rep.rows) {
      rows.push_back({std::to_string(r.k), format_double(r.N),
                      format_double(r.xi1), format_double(r.paper_literal_re),
                      format_double(r.derived_re), format_double(r.oracle_re),
                      format_double(r.err_paper), format_double(r.err_derived),
                      r.verdict});
      json jr;
      jr["k"] = r.k;
      jr["N"] = r.N;
      jr["xi1"] = r.xi1;
      jr["paper_literal"] = finite_or_text(r.paper_literal_re);
      jr["derived"] = finite_or_text(r.derived_re);
      jr["oracle"] = finite_or_text(r.oracle_re);
      jr["err_paper"] = finite_or_text(r.err_paper);
      jr["err_derived"] = finite_or_text(r.err_derived);
      jr["verdict"] = r.verdict;
      jr["ok"] = r.ok;
      if (!r.ok) jr["error"] = r.error;
      jrows.push_back(jr);
    }
    json j;
    j["n_max"] = rep.n_max;
    j["rows"] = jrows;
    return c.emit({"k", "N", "xi1", "paper_literal", "derived", "oracle",
                   "err_paper", "err_derived", "verdict"},
                  rows, j);
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

int run_solve(Command& c, const std::string& fact_name,
              const std::string& rhs_text, int order,
              const std::string& points_file, double a,
              const std::string& mode_text, double s) {
  std::optional<TestFunction> rhs;
  try {
    rhs = parse_fn(rhs_text);
  } catch (const std::exception& e) {
    c.v.reject("rhs", e.what());
  }
  CoeffMode mode = CoeffMode::derived;
  try {
    mode = parse_coeff_mode(mode_text);
  } catch (const std::exception& e) {
    c.v.reject("mode", e.what());
  }
  std::optional<SymbolFactorization> fact;
  try {
    fact = make_factorization(fact_name, ConeSpec{a});
  } catch (const std::exception& e) {
    if (!(a > 0.0))
      c.v.reject("a", "must be > 0");
    else
      c.v.reject("fact", e.what());
  }
  std::vector<std::array<double, 2>> points = {
      {0.0, 0.0}, {0.5, 0.3}, {1.0, -0.2}};
  if (!points_file.empty()) {
    std::ifstream in(points_file);
    if (!in) {
      c.v.reject("points-file", "cannot open " + points_file);
    } else {
      try {
        const json j = json::parse(in);
        points.clear();
        for (const auto& p : j)
          points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        if (points.empty()) throw std::invalid_argument("no points");
      } catch (const std::exception& e) {
        c.v.reject("points-file", e.what());
      }
    }
  }
  if (order < 0) c.v.reject("order", "must be >= 0");
  if (!std::isfinite(s)) c.v.reject("s", "must be finite");
  const QuadratureSpec spec = c.quad();
  if (!c.v.ok()) return c.v.exit();

  try {
    const std::vector<SolvePoint> pts =
        solve_theorem2(*fact, *rhs, order, points, mode, spec, s);
    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (const SolvePoint& p : pts) {
      rows.push_back({format_double(p.xi[0]), format_double(p.xi[1]),
                      format_double(p.value.real()),
                      format_double(p.value.imag()),
                      format_double(p.pv_term.real()),
                      format_double(p.pv_term.imag()),
                      format_double(p.correction_sum.real()),
                      format_double(p.correction_sum.imag()),
                      format_double(p.error_estimate),
                      p.ok ? "true" : "false", p.error});
      json jp;
      jp["xi"] = {p.xi[0], p.xi[1]};
      jp["value"] = complex_to_json(p.value);
      jp["pv_term"] = complex_to_json(p.pv_term);
      jp["correction_sum"] = complex_to_json(p.correction_sum);
      jp["error_estimate"] = finite_or_text(p.error_estimate);
      jp["ok"] = p.ok;
      if (!p.ok) jp["error"] = p.error;
      jrows.push_back(jp);
    }
    json j;
    j["fact"] = fact_name;
    j["rhs"] = rhs_text;
    j["order"] = order;
    j["a"] = a;
    j["mode"] = to_string(mode);
    j["s"] = s;
    j["points"] = jrows;
    return c.emit({"xi1", "xi2", "re", "im", "pv_re", "pv_im", "corr_re",
                   "corr_im", "error_estimate", "ok", "error"},
                  rows, j);
  } catch (const std::exception& e) {
    return fail(e.what(), {}, kExitCompute);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular kernel pairing and expansion toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  auto* tkn_sub = app.add_subcommand("tkn", "truncated kernel integral T_{k,N}");
  auto tkn_cmd = std::make_shared<Command>(tkn_sub);
  auto tkn_k = std::make_shared<int>(0);
  auto tkn_N = std::make_shared<double>(10.0);
  auto tkn_xi1 = std::make_shared<double>(1.0);
  auto tkn_mode = std::make_shared<std::string>();
  tkn_sub->add_option("--k", *tkn_k, "integrand power");
  tkn_sub->add_option("--N", *tkn_N, "truncation bound, inf allowed");
  tkn_sub->add_option("--xi1", *tkn_xi1, "evaluation point");
  tkn_sub->add_option("--mode", *tkn_mode,
                      "derived or paper_literal; default prints both");
  tkn_sub->callback([&rc, tkn_cmd, tkn_k, tkn_N, tkn_xi1, tkn_mode]() {
    Command& c = *tkn_cmd;
    if ((rc = c.load_config()) != 0) return;
    c.pull("k", *tkn_k);
    c.pull("N", *tkn_N);
    c.pull("xi1", *tkn_xi1);
    c.pull("mode", *tkn_mode);
    c.finish_config();
    rc = run_tkn(c, *tkn_k, *tkn_N, *tkn_xi1, *tkn_mode);
  });

  auto* pair_sub = app.add_subcommand("pair", "exact distributional pairing");
  auto pair_cmd = std::make_shared<Command>(pair_sub);
  auto pair_fn = std::make_shared<std::string>("gaussian");
  auto pair_a = std::make_shared<double>(10.0);
  auto pair_mode = std::make_shared<std::string>("paper");
  pair_sub->add_option("--fn", *pair_fn, "test function preset or inline JSON");
  pair_sub->add_option("--a", *pair_a, "cone parameter");
  pair_sub->add_option("--mode", *pair_mode, "pv, plus_i0, minus_i0 or paper");
  pair_sub->callback([&rc, pair_cmd, pair_fn, pair_a, pair_mode]() {
    Command& c = *pair_cmd;
    if ((rc = c.load_config()) != 0) return;
    c.pull("fn", *pair_fn);
    c.pull("a", *pair_a);
    c.pull("mode", *pair_mode);
    c.finish_config();
    rc = run_pair(c, *pair_fn, *pair_a, *pair_mode);
  });

  auto* expand_sub = app.add_subcommand("expand", "asymptotic expansion");
  auto expand_cmd = std::make_shared<Command>(expand_sub);
  auto expand_fn = std::make_shared<std::string>("gaussian");
  auto expand_a = std::make_shared<double>(10.0);
  auto expand_order = std::make_shared<int>(2);
  auto expand_variant = std::make_shared<std::string>("sharp");
  auto expand_mode = std::make_shared<std::string>("derived");
  expand_sub->add_option("--fn", *expand_fn,
                         "test function preset or inline JSON");
  expand_sub->add_option("--a", *expand_a, "cone parameter");
  expand_sub->add_option("--order", *expand_order, "truncation order");
  expand_sub->add_option("--variant", *expand_variant, "rough or sharp");
  expand_sub->add_option("--mode", *expand_mode,
                         "coefficient mode for the sharp variant");
  expand_sub->callback(
      [&rc, expand_cmd, expand_fn, expand_a, expand_order, expand_variant,
       expand_mode]() {
        Command& c = *expand_cmd;
        if ((rc = c.load_config()) != 0) return;
        c.pull("fn", *expand_fn);
        c.pull("a", *expand_a);
        c.pull("order", *expand_order);
        c.pull("variant", *expand_variant);
        c.pull("mode", *expand_mode);
        c.finish_config();
        rc = run_expand(c, *expand_fn, *expand_a, *expand_order,
                        *expand_variant, *expand_mode);
      });

  auto* sweep_sub = app.add_subcommand("sweep", "convergence-order sweep");
  auto sweep_cmd = std::make_shared<Command>(sweep_sub);
  auto sweep_fn = std::make_shared<std::string>("xi1_gaussian");
  auto sweep_a = std::make_shared<std::vector<double>>(default_sweep_a_values());
  auto sweep_orders = std::make_shared<std::vector<int>>(default_sweep_orders());
  auto sweep_modes = std::make_shared<std::vector<std::string>>();
  for (PrescriptionMode m : default_sweep_modes())
    sweep_modes->push_back(to_string(m));
  sweep_sub->add_option("--fn", *sweep_fn,
                        "test function preset or inline JSON");
  sweep_sub->add_option("--a-list", *sweep_a, "cone parameters")
      ->delimiter(',');
  sweep_sub->add_option("--orders", *sweep_orders, "expansion orders")
      ->delimiter(',');
  sweep_sub->add_option("--modes", *sweep_modes, "prescription modes")
      ->delimiter(',');
  sweep_sub->callback(
      [&rc, sweep_cmd, sweep_fn, sweep_a, sweep_orders, sweep_modes]() {
        Command& c = *sweep_cmd;
        if ((rc = c.load_config()) != 0) return;
        c.pull("fn", *sweep_fn);
        c.pull("a-list", *sweep_a);
        c.pull("orders", *sweep_orders);
        c.pull("modes", *sweep_modes);
        c.finish_config();
        rc = run_sweep(c, *sweep_fn, *sweep_a, *sweep_orders, *sweep_modes);
      });

  auto* lemma1_sub =
      app.add_subcommand("lemma1", "moment vs Fourier-route check");
  auto lemma1_cmd = std::make_shared<Command>(lemma1_sub);
  auto lemma1_k = std::make_shared<int>(0);
  auto lemma1_fn1d = std::make_shared<std::string>("gaussian_1d");
  auto lemma1_grid = std::make_shared<int>(4096);
  auto lemma1_halfwidth = std::make_shared<double>(20.0);
  lemma1_sub->add_option("--k", *lemma1_k, "moment power");
  lemma1_sub->add_option("--fn1d", *lemma1_fn1d,
                         "1d test function preset or inline JSON");
  lemma1_sub->add_option("--grid", *lemma1_grid, "grid size");
  lemma1_sub->add_option("--halfwidth", *lemma1_halfwidth, "domain halfwidth");
  lemma1_sub->callback(
      [&rc, lemma1_cmd, lemma1_k, lemma1_fn1d, lemma1_grid,
       lemma1_halfwidth]() {
        Command& c = *lemma1_cmd;
        if ((rc = c.load_config()) != 0) return;
        c.pull("k", *lemma1_k);
        c.pull("fn1d", *lemma1_fn1d);
        c.pull("grid", *lemma1_grid);
        c.pull("halfwidth", *lemma1_halfwidth);
        c.finish_config();
        rc = run_lemma1(c, *lemma1_k, *lemma1_fn1d, *lemma1_grid,
                        *lemma1_halfwidth);
      });

  auto* disc_sub =
      app.add_subcommand("discrepancy", "closed-form vs oracle arbitration");
  auto disc_cmd = std::make_shared<Command>(disc_sub);
  auto disc_nmax = std::make_shared<int>(3);
  auto disc_grid_file = std::make_shared<std::string>();
  disc_sub->add_option("--nmax", *disc_nmax, "half the deepest even power");
  disc_sub->add_option("--grid-file", *disc_grid_file,
                       "JSON file of [N, xi1] pairs; default grid otherwise");
  disc_sub->callback([&rc, disc_cmd, disc_nmax, disc_grid_file]() {
    Command& c = *disc_cmd;
    if ((rc = c.load_config()) != 0) return;
    c.pull("nmax", *disc_nmax);
    c.pull("grid-file", *disc_grid_file);
    c.finish_config();
    rc = run_discrepancy(c, *disc_nmax, *disc_grid_file);
  });

  auto* solve_sub = app.add_subcommand("solve", "sampled solution values");
  auto solve_cmd = std::make_shared<Command>(solve_sub);
  auto solve_fact = std::make_shared<std::string>("identity");
  auto solve_rhs = std::make_shared<std::string>("xi1_gaussian");
  auto solve_order = std::make_shared<int>(0);
  auto solve_points = std::make_shared<std::string>();
  auto solve_a = std::make_shared<double>(1.0);
  auto solve_mode = std::make_shared<std::string>("derived");
  auto solve_s = std::make_shared<double>(0.0);
  solve_sub->add_option("--fact", *solve_fact, "factorization name");
  solve_sub->add_option("--rhs", *solve_rhs,
                        "right-hand side preset or inline JSON");
  solve_sub->add_option("--order", *solve_order, "correction order");
  solve_sub->add_option("--points-file", *solve_points,
                        "JSON file of [xi1, xi2] pairs");
  solve_sub->add_option("--a", *solve_a, "cone parameter");
  solve_sub->add_option("--mode", *solve_mode, "coefficient mode");
  solve_sub->add_option("--s", *solve_s, "Sobolev index");
  solve_sub->callback(
      [&rc, solve_cmd, solve_fact, solve_rhs, solve_order, solve_points,
       solve_a, solve_mode, solve_s]() {
        Command& c = *solve_cmd;
        if ((rc = c.load_config()) != 0) return;
        c.pull("fact", *solve_fact);
        c.pull("rhs", *solve_rhs);
        c.pull("order", *solve_order);
        c.pull("points-file", *solve_points);
        c.pull("a", *solve_a);
        c.pull("mode", *solve_mode);
        c.pull("s", *solve_s);
        c.finish_config();
        rc = run_solve(c, *solve_fact, *solve_rhs, *solve_order, *solve_points,
                       *solve_a, *solve_mode, *solve_s);
      });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(std::string("argument error: ") + e.what(), {},
                kExitValidation);
  }
  return rc;
}
