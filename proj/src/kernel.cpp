#include "conekit/kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "conekit/quad.hpp"

namespace conekit {

namespace {

std::int64_t narrow(__int128 v, const char* what) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error(std::string("Rational: overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

double int_pow(double x, int e) {
  if (e < 0) return 1.0 / int_pow(x, -e);
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double log_ratio(double N, double xi1) {
  return std::log((N - xi1) / (N + xi1));
}

void check_point(double xi1, double N, const char* who) {
  if (!(std::abs(xi1) > 0.0))
    throw std::domain_error(std::string(who) + ": xi1 must be nonzero");
  if (!(std::abs(xi1) < N))
    throw std::domain_error(std::string(who) + ": need |xi1| < N");
}

// -2 (1 + 1/3 + ... + 1/(2k-1)), exact
Rational harmonic_coefficient(int k) {
  Rational sum(0, 1);
  for (int j = 1; j <= k; ++j) sum = sum + Rational(1, 2 * j - 1);
  return sum * Rational(-2, 1);
}

// Shrink the excision schedule to fit between the poles at +-|xi1| and the
// endpoints, keeping the configured ratios.
QuadratureSpec fit_excision(const QuadratureSpec& spec, double p, double N) {
  QuadratureSpec scaled = spec;
  const double limit = std::min(p, N - p) / 4.0;
  const double eps0 = spec.excision_schedule.front();
  if (limit < eps0) {
    const double factor = limit / eps0;
    for (double& e : scaled.excision_schedule) e *= factor;
  }
  return scaled;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

double Rational::to_double() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

Rational Rational::operator+(const Rational& o) const {
  const __int128 n =
      static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(narrow(n, "addition"), narrow(d, "addition"));
}

Rational Rational::operator*(const Rational& o) const {
  const __int128 n = static_cast<__int128>(num) * o.num;
  const __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(narrow(n, "multiplication"), narrow(d, "multiplication"));
}

Rational Rational::operator-() const {
  Rational r;
  r.num = -num;
  r.den = den;
  return r;
}

bool Rational::operator==(const Rational& o) const {
  return num == o.num && den == o.den;
}

double PPoly::eval(double N, double xi1) const {
  double sum = 0.0;
  for (const PTerm& t : terms)
    sum += t.coeff.to_double() * int_pow(N, t.n_pow) * int_pow(xi1, t.xi_pow);
  return sum;
}

PPoly p_poly(int n, CoeffMode mode) {
  if (n < 1) throw std::invalid_argument("p_poly: n must be >= 1");
  PPoly p;
  p.n = n;
  p.mode = mode;
  if (mode == CoeffMode::derived) {
    // generated by T_{2n,N} = -2 N^{2n-1}/(2n-1) + xi1^2 T_{2n-2,N}
    for (int j = n; j >= 1; --j)
      p.terms.push_back({2 * j - 1, 2 * (n - j), Rational(-2, 2 * j - 1)});
  } else {
    // harmonic-sum coefficients; the trailing term keeps its printed
    // xi1^{2n-1} power even though that breaks the total degree
    for (int k = n; k >= 1; --k) {
      const int xi_pow = (k == 1 && n >= 2) ? 2 * n - 1 : 2 * (n - k);
      p.terms.push_back({2 * k - 1, xi_pow, harmonic_coefficient(k)});
    }
  }
  return p;
}

complexd tkn_eval(const TknForm& form, double xi1) {
  if (form.k < 0) throw std::invalid_argument("tkn_eval: k must be >= 0");
  if (!(form.N > 0.0)) throw std::domain_error("tkn_eval: N must be positive");
  if (!(std::abs(xi1) > 0.0))
    throw std::domain_error("tkn_eval: xi1 must be nonzero");
  if (form.k % 2 == 1) return complexd(0.0, 0.0);

  const double half_pi = std::numbers::pi / 2.0;
  if (std::isinf(form.N)) {
    if (form.k == 0) return complexd(0.0, half_pi / xi1);
    throw std::domain_error(
        "tkn_eval: the real part diverges for even k >= 2 as N grows; "
        "infinite N is defined only for k = 0");
  }
  check_point(xi1, form.N, "tkn_eval");

  const int n = form.k / 2;
  const double lr = log_ratio(form.N, xi1);
  const double xi_odd = int_pow(xi1, 2 * n - 1);

  if (form.mode == CoeffMode::derived || form.k == 0) {
    double real = -xi_odd * lr;
    if (n >= 1) real += p_poly(n, CoeffMode::derived).eval(form.N, xi1);
    return complexd(real, half_pi * xi_odd);
  }

  // The printed k = 2, 4, 6 expressions, kept verbatim: k = 2 carries
  // xi1^{-1} on the log and imaginary terms, k = 6 carries xi1^5 N where the
  // recurrence gives xi1^4 N. Beyond the printed cases the general form
  // applies, with the 2^{-1} log coefficient.
  const double N = form.N;
  switch (form.k) {
    case 2:
      return complexd(-2.0 * N - 0.5 / xi1 * lr, half_pi / xi1);
    case 4:
      return complexd(-2.0 / 3.0 * int_pow(N, 3) - 2.0 * xi1 * xi1 * N -
                          0.5 * int_pow(xi1, 3) * lr,
                      half_pi * int_pow(xi1, 3));
    case 6:
      return complexd(-2.0 / 5.0 * int_pow(N, 5) -
                          2.0 / 3.0 * xi1 * xi1 * int_pow(N, 3) -
                          2.0 * int_pow(xi1, 5) * N - 0.5 * int_pow(xi1, 5) * lr,
                      half_pi * int_pow(xi1, 5));
    default:
      return complexd(
          p_poly(n, CoeffMode::paper_literal).eval(N, xi1) - 0.5 * xi_odd * lr,
          half_pi * xi_odd);
  }
}

QuadResult<double> tkn_pv_oracle(int k, double N, double xi1,
                                 const QuadratureSpec& spec) {
  spec.validate();
  if (k < 0) throw std::invalid_argument("tkn_pv_oracle: k must be >= 0");
  if (!std::isfinite(N) || !(N > 0.0))
    throw std::domain_error("tkn_pv_oracle: N must be finite and positive");
  check_point(xi1, N, "tkn_pv_oracle");
  const double p = std::abs(xi1);
  auto g = [k, xi1](double t) {
    return int_pow(t, k) / ((xi1 - t) * (xi1 + t));
  };
  return integrate_pv(g, {-p, p}, -N, N, fit_excision(spec, p, N));
}

RecurrenceResidual tkn_recurrence_check(int n, double N, double xi1,
                                        const QuadratureSpec& spec) {
  if (n < 1)
    throw std::invalid_argument("tkn_recurrence_check: n must be >= 1");
  check_point(xi1, N, "tkn_recurrence_check");

  const double step = -2.0 * int_pow(N, 2 * n - 1) / (2 * n - 1);
  const complexd lhs = tkn_eval({2 * n, N, CoeffMode::derived}, xi1);
  const complexd prev = tkn_eval({2 * n - 2, N, CoeffMode::derived}, xi1);
  RecurrenceResidual r;
  r.derived = std::abs(lhs - (step + xi1 * xi1 * prev));

  const QuadResult<double> q_lhs = tkn_pv_oracle(2 * n, N, xi1, spec);
  const QuadResult<double> q_prev = tkn_pv_oracle(2 * n - 2, N, xi1, spec);
  r.quadrature = std::abs(q_lhs.value - (step + xi1 * xi1 * q_prev.value));
  r.quadrature_scale = std::abs(q_lhs.value);
  return r;
}

CoeffTable coeff_table(double a, int truncation_order, CoeffMode mode) {
  if (!(a > 0.0)) throw std::invalid_argument("coeff_table: a must be > 0");
  if (truncation_order < 1)
    throw std::invalid_argument("coeff_table: truncation_order must be >= 1");
  CoeffTable table;
  table.a = a;
  table.truncation_order = truncation_order;
  table.mode = mode;
  const double b = 1.0 / a;
  const double pi = std::numbers::pi;
  for (int half = 1; 2 * half <= truncation_order; ++half) {
    const double fact = factorial(2 * half);
    for (int k = 1; k <= half; ++k) {
      CoeffEntry e;
      e.n = 2 * half;
      e.mode = mode;
      e.block = CoeffBlock::moment;
      e.k_index = k;
      const Rational c = mode == CoeffMode::derived
                             ? Rational(-2, 2 * k - 1)
                             : harmonic_coefficient(k);
      e.m = mode == CoeffMode::derived ? 2 * (half - k) : 2 * k - 1;
      e.value = complexd(
          c.to_double() * int_pow(b, 2 * half - 2 * k + 1) /
              (2.0 * pi * pi * fact),
          0.0);
      table.entries.push_back(e);
    }
    CoeffEntry l;
    l.n = 2 * half;
    l.m = 2 * half - 1;
    l.mode = mode;
    l.block = CoeffBlock::lemma1;
    l.k_index = 0;
    l.value = complexd(0.0, int_pow(b, 2 * half) / (4.0 * pi * fact));
    table.entries.push_back(l);
  }
  return table;
}

std::vector<std::pair<double, double>> default_discrepancy_grid() {
  return {{10.0, 1.0}, {10.0, 2.0}, {100.0, 0.3}, {100.0, 2.0}};
}

DiscrepancyReport discrepancy_report(
    int n_max, const std::vector<std::pair<double, double>>& grid,
    const QuadratureSpec& spec) {
  if (n_max < 1)
    throw std::invalid_argument("discrepancy_report: n_max must be >= 1");
  if (grid.empty())
    throw std::invalid_argument("discrepancy_report: grid must be nonempty");
  spec.validate();

  const double nan = std::numeric_limits<double>::quiet_NaN();
  DiscrepancyReport report;
  report.n_max = n_max;
  for (int k = 0; k <= 2 * n_max; ++k) {
    for (const auto& [N, xi1] : grid) {
      DiscrepancyRow row;
      row.k = k;
      row.N = N;
      row.xi1 = xi1;
      try {
        row.paper_literal_re =
            tkn_eval({k, N, CoeffMode::paper_literal}, xi1).real();
        row.derived_re = tkn_eval({k, N, CoeffMode::derived}, xi1).real();
        const QuadResult<double> oracle = tkn_pv_oracle(k, N, xi1, spec);
        row.oracle_re = oracle.value;
        row.err_paper = std::abs(row.paper_literal_re - row.oracle_re);
        row.err_derived = std::abs(row.derived_re - row.oracle_re);
        const double tie = 1e-12 * std::max(1.0, std::abs(row.oracle_re));
        if (std::abs(row.err_paper - row.err_derived) <= tie)
          row.verdict = "agree";
        else
          row.verdict =
              row.err_derived < row.err_paper ? "derived" : "paper_literal";
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.verdict = "error";
        row.paper_literal_re = nan;
        row.derived_re = nan;
        row.oracle_re = nan;
        row.err_paper = nan;
        row.err_derived = nan;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace conekit
