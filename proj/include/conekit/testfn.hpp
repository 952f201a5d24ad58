#pragma once

#include <array>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "conekit/quadspec.hpp"

namespace conekit {

enum class DecayKind { compact, schwartz };

struct Decay {
  DecayKind kind = DecayKind::schwartz;
  // support_radius for compact, decay_scale for schwartz
  double radius = 1.0;
};

// One monomial coeff * xi1^p1 * xi2^p2 of the polynomial prefactor.
struct PolyTerm2 {
  int p1 = 0;
  int p2 = 0;
  double coeff = 0.0;
};

namespace detail {
class TestFunctionImpl;
}

class TestFunction {
 public:
  explicit TestFunction(std::shared_ptr<const detail::TestFunctionImpl> impl);

  double eval(double xi1, double xi2) const;
  // d^n/dxi2^n phi(xi1, 0)
  double axis_derivative(int n, double xi1) const;
  // d^n/dxi2^n phi(xi1, xi2) at a general point
  double derivative_xi2(int n, double xi1, double xi2) const;

  Parity parity_xi1() const;
  Decay decay() const;
  int max_exact_derivative_order() const;

  // Interval outside which phi(.,0) is negligible (or exactly zero), given the
  // truncation radius in decay-scale units.
  std::pair<double, double> xi1_interval(double truncation_radius) const;
  // Halfwidth h such that phi(xi1, xi2) is negligible for |xi2| > h.
  double xi2_halfwidth(double truncation_radius) const;

  // Closed-form value of integral xi1^m * axis_derivative(n, xi1) dxi1 where
  // the family provides one (Gaussian-Hermite); nullopt otherwise.
  std::optional<double> exact_axis_moment(int m, int n) const;

 private:
  std::shared_ptr<const detail::TestFunctionImpl> impl_;
};

TestFunction make_gaussian_hermite(std::array<double, 2> center, double scale,
                                   std::vector<PolyTerm2> poly);
TestFunction make_bump(double support_radius);
TestFunction make_linear_combination(double alpha, const TestFunction& f,
                                     double beta, const TestFunction& g);

// integral xi1^m * d^n/dxi2^n phi(xi1,0) dxi1, truncated per decay metadata.
QuadResult<double> axis_moment(const TestFunction& f, int m, int n,
                               const QuadratureSpec& spec);

// One-dimensional Gaussian test function for the Fourier-route check.
struct TestFunction1D {
  double center = 0.0;
  double scale = 1.0;
  double eval(double xi) const;
};

TestFunction1D gaussian_1d(double center, double scale);

}  // namespace conekit
