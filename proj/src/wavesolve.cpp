#include "conekit/wavesolve.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "conekit/quad.hpp"

namespace conekit {

namespace {

double norm2(const std::array<double, 2>& v) {
  return std::hypot(v[0], v[1]);
}

std::string point_text(const std::array<double, 2>& p) {
  return "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")";
}

// d^n/dxi2^n of (A_eq^{-1} V) along xi2. The identity factorization passes
// straight through to the exact family derivatives; opaque factors fall back
// to order-8 central differences with the step tied to the decay scale.
class EqualSideDerivative {
 public:
  EqualSideDerivative(const SymbolFactorization& fact, const RightHandSide& v)
      : fact_(fact), v_(v), identity_(fact.name == "identity") {
    step_ = v.decay().radius * 1e-2;
  }

  complexd operator()(int n, double eta1, double xi2) const {
    if (identity_) return complexd(v_.derivative_xi2(n, eta1, xi2), 0.0);
    if (n == 0) return value(eta1, xi2);
    const int halfwidth = 4 + (n + 1) / 2;
    std::vector<double> nodes;
    nodes.reserve(2 * halfwidth + 1);
    for (int k = -halfwidth; k <= halfwidth; ++k)
      nodes.push_back(xi2 + k * step_);
    const std::vector<double> w = fornberg_weights(n, nodes, xi2);
    complexd acc(0.0, 0.0);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += w[i] * value(eta1, nodes[i]);
    return acc;
  }

  complexd value(double eta1, double xi2) const {
    const complexd d = fact_.factor_minus({eta1, xi2}, {0.0, 0.0});
    if (d == complexd(0.0, 0.0))
      throw std::domain_error("solve_theorem2: A_eq vanishes at eta1 = " +
                              std::to_string(eta1));
    return v_.eval(eta1, xi2) / d;
  }

 private:
  const SymbolFactorization& fact_;
  const RightHandSide& v_;
  bool identity_;
  double step_ = 1e-2;
};

}  // namespace

bool ConeSpec::conjugate_contains(double tau1, double tau2) const {
  return a * tau2 > std::abs(tau1);
}

void ConeSpec::validate() const {
  if (!(a > 0.0))
    throw std::invalid_argument("ConeSpec: the cone parameter a must be > 0");
}

EllipticityResult ellipticity_check(
    const std::function<complexd(double, double)>& symbol, double alpha,
    const std::vector<std::array<double, 2>>& grid) {
  if (!symbol) throw std::invalid_argument("ellipticity_check: null symbol");
  if (grid.empty())
    throw std::invalid_argument("ellipticity_check: grid must be nonempty");

  EllipticityResult res;
  res.c1_est = std::numeric_limits<double>::infinity();
  res.c2_est = 0.0;
  bool finite = true;
  for (const auto& p : grid) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
      throw std::invalid_argument(
          "ellipticity_check: non-finite grid point " + point_text(p));
    const complexd v = symbol(p[0], p[1]);
    const double q = std::abs(v) * std::pow(1.0 + norm2(p), -alpha);
    if (!std::isfinite(q)) {
      finite = false;
      if (!res.failure_point) res.failure_point = p;
      continue;
    }
    if (q < res.c1_est) {
      res.c1_est = q;
      if (q == 0.0 && !res.failure_point) res.failure_point = p;
    }
    res.c2_est = std::max(res.c2_est, q);
  }
  res.pass = finite && res.c1_est > 0.0;
  if (res.pass) res.failure_point.reset();
  return res;
}

FactorEstimates factorization_estimate_check(
    const SymbolFactorization& fact,
    const std::vector<std::array<double, 2>>& tau_samples,
    const std::vector<std::array<double, 2>>& xi_grid) {
  fact.cone.validate();
  if (!fact.factor_plus || !fact.factor_minus)
    throw std::invalid_argument(
        "factorization_estimate_check: both factors must be set");
  if (tau_samples.empty() || xi_grid.empty())
    throw std::invalid_argument(
        "factorization_estimate_check: tau samples and xi grid must be "
        "nonempty");
  for (const auto& tau : tau_samples)
    if (!fact.cone.conjugate_contains(tau[0], tau[1]))
      throw std::domain_error(
          "factorization_estimate_check: tau sample " + point_text(tau) +
          " is not strictly inside the conjugate cone");

  FactorEstimates est;
  est.c_plus = 0.0;
  est.c_minus = 0.0;
  bool finite = true;
  const double exp_minus = fact.alpha - fact.kappa;
  for (const auto& tau : tau_samples) {
    for (const auto& xi : xi_grid) {
      const double w = 1.0 + norm2(xi) + norm2(tau);
      const double vp = std::abs(fact.factor_plus(xi, tau));
      const double vm = std::abs(fact.factor_minus(xi, tau));
      if (!std::isfinite(vp) || !std::isfinite(vm) || vp == 0.0 || vm == 0.0) {
        finite = false;
        continue;
      }
      est.c_plus = std::max({est.c_plus, vp * std::pow(w, -fact.kappa),
                             std::pow(w, fact.kappa) / vp});
      est.c_minus = std::max({est.c_minus, vm * std::pow(w, -exp_minus),
                              std::pow(w, exp_minus) / vm});
    }
  }
  est.pass = finite && std::isfinite(est.c_plus) && std::isfinite(est.c_minus);
  if (!finite) {
    est.c_plus = std::numeric_limits<double>::infinity();
    est.c_minus = std::numeric_limits<double>::infinity();
  }
  return est;
}

bool sobolev_condition_check(double kappa, double s) {
  return std::abs(kappa - s) < 0.5;
}

std::vector<SolvePoint> solve_theorem2(
    const SymbolFactorization& fact, const RightHandSide& V, int order,
    const std::vector<std::array<double, 2>>& eval_points, CoeffMode mode,
    const QuadratureSpec& spec, double s) {
  spec.validate();
  fact.cone.validate();
  if (!fact.factor_plus || !fact.factor_minus)
    throw std::invalid_argument("solve_theorem2: both factors must be set");
  if (order < 0)
    throw std::invalid_argument("solve_theorem2: order must be >= 0");
  if (!sobolev_condition_check(fact.kappa, s))
    throw std::domain_error(
        "solve_theorem2: solvability requires |kappa - s| < 1/2 (kappa = " +
        std::to_string(fact.kappa) + ", s = " + std::to_string(s) + ")");
  const int deepest = 2 * (order / 2);
  if (fact.name == "identity" && deepest > V.max_exact_derivative_order())
    throw std::domain_error(
        "solve_theorem2: order exceeds the right-hand side's derivative "
        "capability");

  const EqualSideDerivative w_deriv(fact, V);
  const CoeffTable table =
      order >= 2 ? coeff_table(fact.cone.a, order, mode) : CoeffTable{};

  const auto [vlo, vhi] = V.xi1_interval(spec.truncation_radius);
  const double margin = 2.0 * spec.excision_schedule.front();

  std::vector<SolvePoint> out;
  out.reserve(eval_points.size());
  for (const auto& xi : eval_points) {
    SolvePoint pt;
    pt.xi = xi;
    try {
      const complexd plus = fact.factor_plus(xi, {0.0, 0.0});
      if (plus == complexd(0.0, 0.0))
        throw std::domain_error("A_neq vanishes at the evaluation point");
      const complexd plus_inv = 1.0 / plus;

      bool converged = true;
      const double lo = std::min(vlo, xi[0] - 1.0 - margin);
      const double hi = std::max(vhi, xi[0] + 1.0 + margin);
      auto pv_integrand = [&](double eta1) {
        return w_deriv.value(eta1, xi[1]) / (xi[0] - eta1);
      };
      const QuadResult<complexd> pv =
          integrate_pv_complex(pv_integrand, {xi[0]}, lo, hi, spec);
      converged = converged && pv.converged;
      pt.pv_term = complexd(0.0, 1.0 / (2.0 * std::numbers::pi)) * plus_inv *
                   pv.value;
      double err = std::abs(plus_inv) * pv.error_estimate /
                   (2.0 * std::numbers::pi);

      complexd corr(0.0, 0.0);
      for (const CoeffEntry& e : table.entries) {
        auto g = [&](double eta1) {
          double kernel = 1.0;
          for (int j = 0; j < e.m; ++j) kernel *= xi[0] - eta1;
          return kernel * w_deriv(e.n, eta1, xi[1]);
        };
        const QuadResult<complexd> r =
            integrate_adaptive_complex(g, vlo, vhi, spec);
        converged = converged && r.converged;
        corr += e.value * r.value;
        err += std::abs(plus_inv) * std::abs(e.value) * r.error_estimate;
      }
      pt.correction_sum = plus_inv * corr;
      pt.value = pt.pv_term + pt.correction_sum;
      pt.error_estimate = err;
      if (!converged) {
        pt.ok = false;
        pt.error =
            "integral did not meet tolerance (insufficient decay or budget)";
      }
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
      const double nan = std::numeric_limits<double>::quiet_NaN();
      pt.value = complexd(nan, nan);
      pt.pv_term = pt.value;
      pt.correction_sum = pt.value;
      pt.error_estimate = nan;
    }
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<std::string> factorization_names() { return {"identity"}; }

SymbolFactorization make_factorization(const std::string& name,
                                       ConeSpec cone) {
  cone.validate();
  if (name == "identity") {
    SymbolFactorization fact;
    fact.name = "identity";
    fact.alpha = 0.0;
    fact.kappa = 0.0;
    fact.cone = cone;
    fact.factor_plus = [](std::array<double, 2>, std::array<double, 2>) {
      return complexd(1.0, 0.0);
    };
    fact.factor_minus = [](std::array<double, 2>, std::array<double, 2>) {
      return complexd(1.0, 0.0);
    };
    return fact;
  }
  std::string known;
  for (const std::string& n : factorization_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw std::invalid_argument("make_factorization: unknown name \"" + name +
                              "\"; registry holds: " + known);
}

}  // namespace conekit
