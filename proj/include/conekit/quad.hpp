#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "conekit/quadspec.hpp"
#include "conekit/testfn.hpp"

namespace conekit {

QuadResult<double> integrate_adaptive(const std::function<double(double)>& g,
                                      double lo, double hi,
                                      const QuadratureSpec& spec);
QuadResult<complexd> integrate_adaptive_complex(
    const std::function<complexd(double)>& g, double lo, double hi,
    const QuadratureSpec& spec);

// Symmetric-excision principal value across simple interior poles,
// extrapolated to excision radius 0.
QuadResult<double> integrate_pv(const std::function<double(double)>& g,
                                const std::vector<double>& poles, double lo,
                                double hi, const QuadratureSpec& spec);
QuadResult<complexd> integrate_pv_complex(
    const std::function<complexd(double)>& g, const std::vector<double>& poles,
    double lo, double hi, const QuadratureSpec& spec);

// Polynomial extrapolation of (parameter, value) samples to parameter 0.
// Parameters must be strictly decreasing toward 0; order picks how many of
// the trailing points participate (order+1).
std::pair<double, double> limit_extrapolate(
    const std::vector<std::pair<double, double>>& values, int order);
std::pair<double, double> limit_extrapolate(
    const std::vector<std::pair<double, double>>& values,
    const QuadratureSpec& spec);

// Weights for the m-th derivative at x0 from arbitrary nodes (Fornberg).
std::vector<double> fornberg_weights(int m, const std::vector<double>& nodes,
                                     double x0);

// integral_{-N}^{N} phi(xi1, b t) / (xi1^2 - t^2) dt under the given
// prescription. N may be infinite; it is then resolved from decay metadata.
QuadResult<complexd> inner_t_integral(const TestFunction& f, double xi1,
                                      double b, double N, PrescriptionMode mode,
                                      const QuadratureSpec& spec);

// Brute-force check of the PV part of inner_t_integral: integrate against
// Re[1/(xi1^2 - (t + i tau)^2)] over the tau schedule and extrapolate.
QuadResult<double> inner_t_tau_oracle(const TestFunction& f, double xi1,
                                      double b, double N,
                                      const QuadratureSpec& spec);

// (K_a, phi) = (1/2pi^2) * integral of inner_t_integral over xi1.
QuadResult<complexd> pairing_exact(const TestFunction& f, double a,
                                   PrescriptionMode mode,
                                   const QuadratureSpec& spec);

}  // namespace conekit
