// Acceptance gate: one line per criterion, exit code = number of failures.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "conekit/converge.hpp"
#include "conekit/kernel.hpp"
#include "conekit/pairing.hpp"
#include "conekit/quad.hpp"
#include "conekit/testfn.hpp"
#include "conekit/wavesolve.hpp"

using namespace conekit;

namespace {

const QuadratureSpec kSpec{};
int failures = 0;

void report(int idx, const char* desc, bool pass) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << idx << ". " << desc
            << std::endl;
  if (!pass) ++failures;
}

bool guarded(const std::function<bool()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cout << "       exception: " << e.what() << std::endl;
    return false;
  }
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

TestFunction odd_gaussian() {
  return make_gaussian_hermite({0.0, 0.0}, 1.0, {{1, 0, 1.0}});
}

std::vector<std::string> strip_runtime_column(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (std::count(line.begin(), line.end(), ',') == 9)
      line = line.substr(0, line.rfind(','));
    out.push_back(line);
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<double> n_grid = {10.0, 100.0};
  const std::vector<double> xi_grid = {0.3, 1.0, 2.0};

  report(1,
         "derived closed forms match the principal-value oracle to 1e-8 "
         "relative on k {2,4,6} x N {10,100} x xi1 {0.3,1,2} within 10 s",
         guarded([&] {
           const auto t0 = std::chrono::steady_clock::now();
           bool ok = true;
           for (int k : {2, 4, 6}) {
             for (double N : n_grid) {
               for (double xi1 : xi_grid) {
                 const QuadResult<double> oracle =
                     tkn_pv_oracle(k, N, xi1, kSpec);
                 const complexd closed =
                     tkn_eval(TknForm{k, N, CoeffMode::derived}, xi1);
                 ok = ok && std::abs(closed.real() - oracle.value) <=
                                1e-8 * std::abs(oracle.value);
               }
             }
           }
           return ok && elapsed_s(t0) <= 10.0;
         }));

  report(2,
         "odd-k truncated integrals vanish below 1e-10 absolute on the same "
         "grid",
         guarded([&] {
           bool ok = true;
           for (int k : {1, 3, 5})
             for (double N : n_grid)
               for (double xi1 : xi_grid)
                 ok = ok &&
                      std::abs(tkn_pv_oracle(k, N, xi1, kSpec).value) <= 1e-10;
           return ok;
         }));

  report(3,
         "recurrence residual stays below 1e-8 relative for n <= 3",
         guarded([&] {
           bool ok = true;
           const std::vector<std::pair<double, double>> pts = {
               {10.0, 1.0}, {10.0, 2.0}, {100.0, 0.3}, {100.0, 2.0}};
           for (int n : {1, 2, 3}) {
             for (const auto& [N, xi1] : pts) {
               const RecurrenceResidual r =
                   tkn_recurrence_check(n, N, xi1, kSpec);
               ok = ok && r.quadrature <= 1e-8 * r.quadrature_scale;
             }
           }
           return ok;
         }));

  report(4,
         "lemma1_dft_check stays below 1e-6 for k = 0..6 on centered and "
         "shifted Gaussians (grid 4096, halfwidth 20)",
         guarded([&] {
           bool ok = true;
           for (int k = 0; k <= 6; ++k) {
             ok = ok && lemma1_dft_check(k, gaussian_1d(0.0, 1.0), 4096,
                                         20.0) <= 1e-6;
             ok = ok && lemma1_dft_check(k, gaussian_1d(1.0, 1.0), 4096,
                                         20.0) <= 1e-6;
           }
           return ok;
         }));

  const std::vector<double> a_grid = {10.0, 30.0, 100.0, 300.0};
  std::map<double, complexd> exact_by_a;
  const TestFunction f = odd_gaussian();

  report(5,
         "exact-pairing error vs the leading term decreases strictly in a "
         "with fitted order >= 1 and r^2 >= 0.98, within 120 s",
         guarded([&] {
           const auto t0 = std::chrono::steady_clock::now();
           const complexd lead = leading_pairing(f, kSpec).value;
           std::vector<ConvergenceRecord> recs;
           std::vector<double> errs;
           for (double a : a_grid) {
             const complexd exact =
                 pairing_exact(f, a, PrescriptionMode::paper, kSpec).value;
             exact_by_a[a] = exact;
             ConvergenceRecord rec;
             rec.a = a;
             rec.order = 0;
             rec.mode = PrescriptionMode::paper;
             rec.exact = exact;
             rec.approx = lead;
             rec.abs_error = std::abs(exact - lead);
             errs.push_back(rec.abs_error);
             recs.push_back(rec);
           }
           bool ok = true;
           for (std::size_t i = 1; i < errs.size(); ++i)
             ok = ok && errs[i] < errs[i - 1];
           for (double e : errs) ok = ok && std::isfinite(e) && e > 0.0;
           const OrderFit fit = fit_order(recs);
           ok = ok && fit.fitted_power >= 1.0 && fit.r_squared >= 0.98 &&
                fit.points_used == 4;
           return ok && elapsed_s(t0) <= 120.0;
         }));

  report(6,
         "order-2 sharp expansion error <= order-0 error in derived mode at "
         "a in {100, 300}",
         guarded([&] {
           bool ok = true;
           for (double a : {100.0, 300.0}) {
             const auto hit = exact_by_a.find(a);
             if (hit == exact_by_a.end()) return false;
             const double e0 = std::abs(
                 sharp_expansion(f, a, 0, CoeffMode::derived, kSpec).value -
                 hit->second);
             const double e2 = std::abs(
                 sharp_expansion(f, a, 2, CoeffMode::derived, kSpec).value -
                 hit->second);
             ok = ok && e2 <= e0;
           }
           return ok;
         }));

  report(7,
         "discrepancy report isolates a k = 2 row where derived sits within "
         "1e-8 of the oracle, paper_literal misses by > 1e3 x that bound, "
         "and the verdict is \"derived\"",
         guarded([&] {
           const DiscrepancyReport rep =
               discrepancy_report(3, default_discrepancy_grid(), kSpec);
           for (const DiscrepancyRow& row : rep.rows) {
             if (row.k != 2 || !row.ok) continue;
             const double bound = 1e-8 * std::abs(row.oracle_re);
             if (row.err_derived <= bound && row.err_paper > 1e3 * bound &&
                 row.verdict == "derived")
               return true;
           }
           return false;
         }));

  report(8,
         "identity-factorization solve at the origin matches the "
         "principal-value oracle to 1e-6 relative; sobolev_condition_check"
         "(0,0) holds; the correction block shrinks from a = 10 to a = 100",
         guarded([&] {
           const QuadResult<double> pv = integrate_pv(
               [&](double e) { return f.eval(e, 0.0) / (0.0 - e); }, {0.0},
               -11.0, 11.0, kSpec);
           const complexd target =
               complexd(0.0, 1.0 / (2.0 * std::numbers::pi)) * pv.value;

           const SymbolFactorization fact =
               make_factorization("identity", ConeSpec{1.0});
           const std::vector<SolvePoint> pts = solve_theorem2(
               fact, f, 0, {{0.0, 0.0}}, CoeffMode::derived, kSpec);
           bool ok = pts.size() == 1 && pts[0].ok &&
                     std::abs(pts[0].value - target) <=
                         1e-6 * std::abs(target);
           ok = ok && sobolev_condition_check(0.0, 0.0);

           auto corr_mag = [&](double a) {
             const SymbolFactorization fa =
                 make_factorization("identity", ConeSpec{a});
             const std::vector<SolvePoint> p = solve_theorem2(
                 fa, f, 2, {{0.0, 0.0}}, CoeffMode::derived, kSpec);
             return p[0].ok ? std::abs(p[0].correction_sum)
                            : std::numeric_limits<double>::quiet_NaN();
           };
           const double c10 = corr_mag(10.0);
           const double c100 = corr_mag(100.0);
           return ok && std::isfinite(c10) && std::isfinite(c100) &&
                  c100 > 0.0 && c100 < c10;
         }));

  report(9,
         "parity trivialities: even-in-xi1 leading pairing, odd principal "
         "values, and mismatched-parity moments all below 1e-10 absolute",
         guarded([&] {
           const TestFunction even =
               make_gaussian_hermite({0.0, 0.0}, 1.0, {{0, 0, 1.0}});
           bool ok =
               std::abs(leading_pairing(even, kSpec).value) <= 1e-10;
           ok = ok && std::abs(integrate_pv([](double x) { return 1.0 / x; },
                                            {0.0}, -3.0, 3.0, kSpec)
                                   .value) <= 1e-10;
           ok = ok &&
                std::abs(integrate_pv(
                             [](double x) { return x / (x * x - 1.0); },
                             {-1.0, 1.0}, -3.0, 3.0, kSpec)
                             .value) <= 1e-10;
           ok = ok && std::abs(axis_moment(f, 0, 0, kSpec).value) <= 1e-10;
           ok = ok && std::abs(axis_moment(even, 1, 0, kSpec).value) <= 1e-10;
           ok = ok &&
                std::abs(moment_delta_pairing(even, 1, 0, kSpec).value) <=
                    1e-10;
           return ok;
         }));

  report(10,
         "two default sweep runs are byte-identical outside the runtime "
         "column",
         guarded([&] {
           const char* cli = std::getenv("CONEKIT_CLI");
           if (cli != nullptr) {
             const std::string out1 = "acceptance_sweep_1.csv";
             const std::string out2 = "acceptance_sweep_2.csv";
             for (const std::string& out : {out1, out2}) {
               const std::string cmd =
                   std::string("\"") + cli + "\" sweep --out " + out;
               if (std::system(cmd.c_str()) != 0) return false;
             }
             std::ifstream f1(out1), f2(out2);
             if (!f1 || !f2) return false;
             const auto l1 = strip_runtime_column(f1);
             const auto l2 = strip_runtime_column(f2);
             std::remove(out1.c_str());
             std::remove(out2.c_str());
             return !l1.empty() && l1 == l2;
           }
           // no CLI in the environment: exercise the library path instead
           auto run = [&] {
             const SweepOutcome out =
                 sweep(f, default_sweep_a_values(), default_sweep_orders(),
                       default_sweep_modes(), kSpec);
             std::ostringstream s;
             emit_report(out.records, fit_all_orders(out.records),
                         ReportFormat::csv, s);
             std::istringstream in(s.str());
             return strip_runtime_column(in);
           };
           const auto l1 = run();
           const auto l2 = run();
           return !l1.empty() && l1 == l2;
         }));

  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
