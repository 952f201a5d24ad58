#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

using complexd = std::complex<double>;

// How the singular kernel 1/(xi1^2 - t^2) is interpreted on its singular lines.
enum class PrescriptionMode { pv, plus_i0, minus_i0, paper };

// Which closed-form family feeds the expansion coefficients.
enum class CoeffMode { derived, paper_literal };

enum class Parity { even, odd, none };

std::string to_string(PrescriptionMode mode);
std::string to_string(CoeffMode mode);
std::string to_string(Parity parity);
PrescriptionMode parse_prescription_mode(const std::string& name);
CoeffMode parse_coeff_mode(const std::string& name);

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  // Excision radii for principal values, largest first.
  std::vector<double> excision_schedule = {1e-1, 5e-2, 2.5e-2, 1.25e-2, 6.25e-3, 3.125e-3};
  // Truncation of Schwartz-class tails, in units of the decay scale.
  double truncation_radius = 10.0;
  // Regularization parameters for the tau -> 0+ oracle.
  std::vector<double> tau_schedule = {2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
  int extrapolation_order = 5;

  // Throws std::invalid_argument listing every violated field.
  void validate() const;
};

// Excision values show no Cauchy-sequence behavior: not PV-integrable.
struct pv_divergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extrapolation input oscillates instead of settling.
struct extrapolation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  bool converged = true;
  long evaluations = 0;
};

}  // namespace conekit
