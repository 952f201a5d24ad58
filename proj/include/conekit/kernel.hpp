#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "conekit/quadspec.hpp"

namespace conekit {

// Exact fraction; kept integral so coefficient arithmetic never rounds.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);
  double to_double() const;
  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const;
  bool operator==(const Rational& o) const;
};

struct TknForm {
  int k = 0;
  double N = 0.0;  // may be infinity
  CoeffMode mode = CoeffMode::derived;
};

struct PTerm {
  int n_pow = 0;    // power of N (odd, positive)
  int xi_pow = 0;   // power of xi1
  Rational coeff;
};

struct PPoly {
  int n = 0;
  CoeffMode mode = CoeffMode::derived;
  std::vector<PTerm> terms;
  double eval(double N, double xi1) const;
};

enum class CoeffBlock { moment, lemma1 };

struct CoeffEntry {
  int m = 0;        // xi1 moment power
  int n = 0;        // xi2 derivative order (always even)
  complexd value{};
  CoeffMode mode = CoeffMode::derived;
  CoeffBlock block = CoeffBlock::moment;
  int k_index = 0;  // inner summation index; 0 for the lemma1 block
};

struct CoeffTable {
  double a = 0.0;
  int truncation_order = 0;
  CoeffMode mode = CoeffMode::derived;
  std::vector<CoeffEntry> entries;
};

struct RecurrenceResidual {
  double derived = 0.0;          // |lhs - rhs| with closed forms
  double quadrature = 0.0;       // same with both sides from integrate_pv
  double quadrature_scale = 0.0; // |lhs| of the quadrature side, for rel error
};

struct DiscrepancyRow {
  int k = 0;
  double N = 0.0;
  double xi1 = 0.0;
  double paper_literal_re = 0.0;
  double derived_re = 0.0;
  double oracle_re = 0.0;
  double err_paper = 0.0;
  double err_derived = 0.0;
  std::string verdict;
  bool ok = true;
  std::string error;
};

struct DiscrepancyReport {
  int n_max = 0;
  std::vector<DiscrepancyRow> rows;
};

// T_{k,N}(xi1) per mode. Odd k gives exactly 0. Requires 0 < |xi1| < N for
// finite N; for infinite N only k = 0 has a finite real part.
complexd tkn_eval(const TknForm& form, double xi1);

PPoly p_poly(int n, CoeffMode mode);

// PV quadrature of t^k/(xi1^2 - t^2) over (-N, N); the arbitration oracle.
QuadResult<double> tkn_pv_oracle(int k, double N, double xi1,
                                 const QuadratureSpec& spec);

RecurrenceResidual tkn_recurrence_check(int n, double N, double xi1,
                                        const QuadratureSpec& spec);

CoeffTable coeff_table(double a, int truncation_order, CoeffMode mode);

DiscrepancyReport discrepancy_report(
    int n_max, const std::vector<std::pair<double, double>>& grid,
    const QuadratureSpec& spec);

std::vector<std::pair<double, double>> default_discrepancy_grid();

}  // namespace conekit
