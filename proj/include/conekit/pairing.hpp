#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conekit/kernel.hpp"
#include "conekit/quadspec.hpp"
#include "conekit/testfn.hpp"

namespace conekit {

struct PairingResult {
  complexd value{};
  double error_estimate = 0.0;
  std::vector<std::pair<std::string, complexd>> terms;
};

// (i/2pi) * PV integral phi(xi1, 0)/xi1 dxi1
PairingResult leading_pairing(const TestFunction& f, const QuadratureSpec& spec);

// integral xi1^m * d^n/dxi2^n phi(xi1, 0) dxi1; the delta^(n) factor pairs
// with no extra sign (operational convention used throughout).
PairingResult moment_delta_pairing(const TestFunction& f, int m, int n,
                                   const QuadratureSpec& spec);

// (i/2pi) * sum_{n<=order} (-1)^n/(n! a^n) PV integral of the n-th axis
// derivative against 1/xi1.
PairingResult rough_expansion(const TestFunction& f, double a, int order,
                              const QuadratureSpec& spec);

// Leading term plus the truncated coefficient-table corrections. order counts
// the xi2-derivative order; order < 2 leaves the leading term alone.
// nb_multiplier scales the N = mu * a truncation policy of the moment block.
PairingResult sharp_expansion(const TestFunction& f, double a, int order,
                              CoeffMode mode, const QuadratureSpec& spec,
                              double nb_multiplier = 1.0);

// |direct quadrature of xi^k f1d - Fourier route| where the Fourier route
// differentiates the grid transform at the origin.
double lemma1_dft_check(int k, const TestFunction1D& f1d, int grid_size,
                        double domain_halfwidth);

}  // namespace conekit
