#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conekit/kernel.hpp"
#include "conekit/quadspec.hpp"
#include "conekit/testfn.hpp"

namespace conekit {

struct ConeSpec {
  double a = 1.0;  // cone x2 > a|x1|
  // Strict membership of tau in the conjugate cone a*tau2 > |tau1|.
  bool conjugate_contains(double tau1, double tau2) const;
  void validate() const;
};

// Capability evaluating a factor on the tube domain: xi the real part, tau
// the imaginary direction (A_neq at xi + i*tau, A_eq at xi - i*tau).
using SymbolFn =
    std::function<complexd(std::array<double, 2>, std::array<double, 2>)>;

struct SymbolFactorization {
  std::string name;
  double alpha = 0.0;
  double kappa = 0.0;
  ConeSpec cone;
  SymbolFn factor_plus;   // A_neq
  SymbolFn factor_minus;  // A_eq
};

struct EllipticityResult {
  double c1_est = 0.0;
  double c2_est = 0.0;
  bool pass = false;
  std::optional<std::array<double, 2>> failure_point;
};

struct FactorEstimates {
  double c_plus = 0.0;   // smallest constant for |A_neq^{+-1}| bounds
  double c_minus = 0.0;  // same for A_eq with exponent +-(alpha - kappa)
  bool pass = false;
};

struct SolvePoint {
  std::array<double, 2> xi{};
  complexd value{};
  complexd pv_term{};
  complexd correction_sum{};
  double error_estimate = 0.0;
  bool ok = true;
  std::string error;
};

using RightHandSide = TestFunction;

EllipticityResult ellipticity_check(
    const std::function<complexd(double, double)>& symbol, double alpha,
    const std::vector<std::array<double, 2>>& grid);

FactorEstimates factorization_estimate_check(
    const SymbolFactorization& fact,
    const std::vector<std::array<double, 2>>& tau_samples,
    const std::vector<std::array<double, 2>>& xi_grid);

bool sobolev_condition_check(double kappa, double s);

// Solution representation sampled at the given Fourier-side points.
std::vector<SolvePoint> solve_theorem2(
    const SymbolFactorization& fact, const RightHandSide& V, int order,
    const std::vector<std::array<double, 2>>& eval_points, CoeffMode mode,
    const QuadratureSpec& spec, double s = 0.0);

std::vector<std::string> factorization_names();
SymbolFactorization make_factorization(const std::string& name, ConeSpec cone);

}  // namespace conekit
