#include "conekit/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "conekit/quad.hpp"

namespace conekit {

namespace {

// PV of g against 1/xi1 over the function's truncated support, widened so the
// pole always sits well inside the interval.
QuadResult<double> pv_against_inverse_xi1(
    const std::function<double(double)>& g, const TestFunction& f,
    const QuadratureSpec& spec) {
  auto [lo, hi] = f.xi1_interval(spec.truncation_radius);
  const double margin = 2.0 * spec.excision_schedule.front();
  lo = std::min(lo, -1.0 - margin);
  hi = std::max(hi, 1.0 + margin);
  auto h = [&](double x) { return g(x) / x; };
  return integrate_pv(h, {0.0}, lo, hi, spec);
}

std::string index_label(const CoeffEntry& e) {
  std::string label = e.block == CoeffBlock::lemma1 ? "lemma1[m=" : "moment[m=";
  label += std::to_string(e.m);
  label += ",n=";
  label += std::to_string(e.n);
  if (e.block == CoeffBlock::moment) {
    label += ",k=";
    label += std::to_string(e.k_index);
  }
  label += "]";
  return label;
}

}  // namespace

PairingResult leading_pairing(const TestFunction& f,
                              const QuadratureSpec& spec) {
  spec.validate();
  auto g = [&](double x) { return f.eval(x, 0.0); };
  const QuadResult<double> r = pv_against_inverse_xi1(g, f, spec);
  PairingResult out;
  out.value = complexd(0.0, r.value / (2.0 * std::numbers::pi));
  out.error_estimate = r.error_estimate / (2.0 * std::numbers::pi);
  out.terms.emplace_back("leading", out.value);
  return out;
}

PairingResult moment_delta_pairing(const TestFunction& f, int m, int n,
                                   const QuadratureSpec& spec) {
  const QuadResult<double> r = axis_moment(f, m, n, spec);
  PairingResult out;
  out.value = complexd(r.value, 0.0);
  out.error_estimate = r.error_estimate;
  out.terms.emplace_back("moment_delta", out.value);
  return out;
}

PairingResult rough_expansion(const TestFunction& f, double a, int order,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (!(a > 0.0)) throw std::invalid_argument("rough_expansion: a must be > 0");
  if (order < 0)
    throw std::invalid_argument("rough_expansion: order must be >= 0");
  if (order > f.max_exact_derivative_order())
    throw std::domain_error(
        "rough_expansion: order exceeds the function's derivative capability");

  PairingResult out;
  double factorial = 1.0;
  double a_pow = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      factorial *= n;
      a_pow *= a;
    }
    auto g = [&](double x) { return f.axis_derivative(n, x); };
    const QuadResult<double> r = pv_against_inverse_xi1(g, f, spec);
    const double scale = (n % 2 == 0 ? 1.0 : -1.0) / (factorial * a_pow);
    const complexd term =
        complexd(0.0, scale * r.value / (2.0 * std::numbers::pi));
    out.value += term;
    out.error_estimate +=
        std::abs(scale) * r.error_estimate / (2.0 * std::numbers::pi);
    out.terms.emplace_back("n=" + std::to_string(n), term);
  }
  return out;
}

PairingResult sharp_expansion(const TestFunction& f, double a, int order,
                              CoeffMode mode, const QuadratureSpec& spec,
                              double nb_multiplier) {
  spec.validate();
  if (!(a > 0.0)) throw std::invalid_argument("sharp_expansion: a must be > 0");
  if (order < 0)
    throw std::invalid_argument("sharp_expansion: order must be >= 0");
  if (!(nb_multiplier > 0.0))
    throw std::invalid_argument("sharp_expansion: nb_multiplier must be > 0");
  const int deepest = 2 * (order / 2);
  if (deepest > f.max_exact_derivative_order())
    throw std::domain_error(
        "sharp_expansion: order exceeds the function's derivative capability");

  PairingResult out = leading_pairing(f, spec);
  if (order < 2) return out;

  // Moment integrals truncated at N = multiplier * a, the regime that
  // assigns the b powers in the coefficient table.
  const double n_cut = nb_multiplier * a;
  const auto [flo, fhi] = f.xi1_interval(spec.truncation_radius);
  const double lo = std::max(flo, -n_cut);
  const double hi = std::min(fhi, n_cut);

  const CoeffTable table = coeff_table(a, order, mode);
  for (const CoeffEntry& e : table.entries) {
    auto g = [&](double x) {
      return std::pow(x, e.m) * f.axis_derivative(e.n, x);
    };
    const QuadResult<double> r = integrate_adaptive(g, lo, hi, spec);
    const complexd term = e.value * r.value;
    out.value += term;
    out.error_estimate += std::abs(e.value) * r.error_estimate;
    out.terms.emplace_back(index_label(e), term);
  }
  return out;
}

double lemma1_dft_check(int k, const TestFunction1D& f1d, int grid_size,
                        double domain_halfwidth) {
  if (k < 0) throw std::invalid_argument("lemma1_dft_check: k must be >= 0");
  if (grid_size < 2)
    throw std::invalid_argument("lemma1_dft_check: grid_size must be >= 2");
  if (!(domain_halfwidth > 0.0))
    throw std::invalid_argument(
        "lemma1_dft_check: domain_halfwidth must be > 0");
  if (!(f1d.scale > 0.0))
    throw std::invalid_argument("lemma1_dft_check: test function scale "
                                "must be > 0");
  if (domain_halfwidth < std::abs(f1d.center) + 10.0 * f1d.scale)
    throw std::domain_error(
        "lemma1_dft_check: domain_halfwidth must cover the function "
        "(center plus ten decay scales)");
  const double step = 2.0 * domain_halfwidth / grid_size;
  if (!(step <= f1d.scale / 4.0))
    throw std::domain_error(
        "lemma1_dft_check: grid too coarse for the decay scale (need at "
        "least four samples per scale)");

  // Route 1: direct quadrature of xi^k f1d(xi).
  QuadratureSpec spec;
  auto direct = [&](double x) { return std::pow(x, k) * f1d.eval(x); };
  const double rlo = f1d.center - spec.truncation_radius * f1d.scale;
  const double rhi = f1d.center + spec.truncation_radius * f1d.scale;
  const double route1 = integrate_adaptive(direct, rlo, rhi, spec).value;

  // Route 2: i^k times the k-th derivative at 0 of the grid transform
  // hat(f)(z) = step * sum f(xi_j) exp(-i z xi_j), the derivative taken by a
  // Cauchy-circle average, which stays stable where nested finite
  // differences of the transform lose digits.
  std::vector<double> xs(grid_size), fs(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    xs[j] = -domain_halfwidth + step * j;
    fs[j] = f1d.eval(xs[j]);
  }
  auto transform = [&](complexd z) {
    complexd acc(0.0, 0.0);
    for (int j = 0; j < grid_size; ++j)
      acc += fs[j] * std::exp(complexd(0.0, -1.0) * z * xs[j]);
    return step * acc;
  };
  constexpr int kCircle = 64;
  constexpr double kRadius = 0.5;
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  complexd deriv(0.0, 0.0);
  for (int m = 0; m < kCircle; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / kCircle;
    const complexd zm = kRadius * std::exp(complexd(0.0, theta));
    deriv += transform(zm) * std::exp(complexd(0.0, -k * theta));
  }
  deriv *= kfact / (kCircle * std::pow(kRadius, k));
  const complexd route2 = std::pow(complexd(0.0, 1.0), k) * deriv;

  return std::abs(complexd(route1, 0.0) - route2);
}

}  // namespace conekit
