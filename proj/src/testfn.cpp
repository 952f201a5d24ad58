#include "conekit/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conekit/quad.hpp"

namespace conekit {

namespace detail {

class TestFunctionImpl {
 public:
  virtual ~TestFunctionImpl() = default;
  virtual double eval(double xi1, double xi2) const = 0;
  virtual double derivative_xi2(int n, double xi1, double xi2) const = 0;
  virtual Parity parity() const = 0;
  virtual Decay decay() const = 0;
  virtual int max_order() const = 0;
  virtual std::pair<double, double> xi1_interval(double trunc) const = 0;
  virtual double xi2_halfwidth(double trunc) const = 0;
  virtual std::optional<double> exact_axis_moment(int, int) const {
    return std::nullopt;
  }
};

namespace {

// H_0..H_m(u), physicists' convention.
std::vector<double> hermite_values(int m, double u) {
  std::vector<double> h(static_cast<std::size_t>(m) + 1);
  h[0] = 1.0;
  if (m >= 1) h[1] = 2.0 * u;
  for (int j = 2; j <= m; ++j)
    h[j] = 2.0 * u * h[j - 1] - 2.0 * (j - 1) * h[j - 2];
  return h;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double falling_factorial(int p, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= p - i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// (2r-1)!! with (-1)!! = 1
double double_factorial_odd(int p) {
  double r = 1.0;
  for (int i = p; i >= 1; i -= 2) r *= i;
  return r;
}

double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// integral u^i exp(-(u/s)^2) du over the line
double central_gaussian_moment(int i, double s) {
  if (i % 2 == 1) return 0.0;
  return int_pow(s, i + 1) * std::sqrt(std::numbers::pi) *
         double_factorial_odd(i - 1) / int_pow(2.0, i / 2);
}

class GaussianHermite final : public TestFunctionImpl {
 public:
  GaussianHermite(std::array<double, 2> center, double scale,
                  std::vector<PolyTerm2> poly)
      : c1_(center[0]), c2_(center[1]), s_(scale), poly_(std::move(poly)) {
    if (!(s_ > 0.0))
      throw std::invalid_argument("make_gaussian_hermite: scale must be > 0");
    for (const PolyTerm2& t : poly_) {
      if (t.p1 < 0 || t.p2 < 0)
        throw std::invalid_argument(
            "make_gaussian_hermite: negative monomial power");
      if (!std::isfinite(t.coeff))
        throw std::invalid_argument(
            "make_gaussian_hermite: non-finite coefficient");
    }
    parity_ = detect_parity();
  }

  double eval(double xi1, double xi2) const override {
    const double u1 = (xi1 - c1_) / s_;
    const double u2 = (xi2 - c2_) / s_;
    double p = 0.0;
    for (const PolyTerm2& t : poly_)
      p += t.coeff * int_pow(xi1, t.p1) * int_pow(xi2, t.p2);
    return p * std::exp(-u1 * u1 - u2 * u2);
  }

  double derivative_xi2(int n, double xi1, double xi2) const override {
    if (n < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (n == 0) return eval(xi1, xi2);
    const double u1 = (xi1 - c1_) / s_;
    const double u2 = (xi2 - c2_) / s_;
    const double g1 = std::exp(-u1 * u1);
    const double g2 = std::exp(-u2 * u2);
    const std::vector<double> h = hermite_values(n, u2);
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      double pj = 0.0;
      for (const PolyTerm2& t : poly_) {
        if (t.p2 < j) continue;
        pj += t.coeff * falling_factorial(t.p2, j) * int_pow(xi1, t.p1) *
              int_pow(xi2, t.p2 - j);
      }
      if (pj == 0.0) continue;
      const int d = n - j;
      const double gauss_d = int_pow(-1.0 / s_, d) * h[d] * g2;
      sum += binomial(n, j) * pj * gauss_d;
    }
    return g1 * sum;
  }

  Parity parity() const override { return parity_; }
  Decay decay() const override { return {DecayKind::schwartz, s_}; }
  int max_order() const override { return std::numeric_limits<int>::max(); }

  std::pair<double, double> xi1_interval(double trunc) const override {
    return {c1_ - trunc * s_, c1_ + trunc * s_};
  }
  double xi2_halfwidth(double trunc) const override {
    return std::abs(c2_) + trunc * s_;
  }

  std::optional<double> exact_axis_moment(int m, int n) const override {
    // d^n/dxi2^n phi(xi1, 0) = g1(xi1) * Q(xi1) with Q polynomial
    const double u0 = -c2_ / s_;
    const double g2 = std::exp(-u0 * u0);
    const std::vector<double> h = hermite_values(n, u0);
    int max_p1 = 0;
    for (const PolyTerm2& t : poly_) max_p1 = std::max(max_p1, t.p1);
    std::vector<double> q(static_cast<std::size_t>(max_p1) + 1, 0.0);
    for (int j = 0; j <= n; ++j) {
      const double base = binomial(n, j) * factorial(j) *
                          int_pow(-1.0 / s_, n - j) * h[n - j] * g2;
      for (const PolyTerm2& t : poly_)
        if (t.p2 == j) q[t.p1] += t.coeff * base;
    }
    double total = 0.0;
    for (int p = 0; p <= max_p1; ++p) {
      if (q[p] == 0.0) continue;
      // integral xi^(m+p) exp(-((xi-c1)/s)^2) dxi via the binomial shift
      const int deg = m + p;
      double mom = 0.0;
      for (int i = 0; i <= deg; i += 2)
        mom += binomial(deg, i) * int_pow(c1_, deg - i) *
               central_gaussian_moment(i, s_);
      total += q[p] * mom;
    }
    return total;
  }

 private:
  Parity detect_parity() const {
    if (c1_ != 0.0) return Parity::none;
    bool any = false, all_even = true, all_odd = true;
    for (const PolyTerm2& t : poly_) {
      if (t.coeff == 0.0) continue;
      any = true;
      if (t.p1 % 2 == 0) all_odd = false;
      else all_even = false;
    }
    if (!any || all_even) return Parity::even;
    if (all_odd) return Parity::odd;
    return Parity::none;
  }

  double c1_, c2_, s_;
  std::vector<PolyTerm2> poly_;
  Parity parity_ = Parity::none;
};

class Bump final : public TestFunctionImpl {
 public:
  explicit Bump(double radius) : r_(radius) {
    if (!(r_ > 0.0))
      throw std::invalid_argument("make_bump: support_radius must be > 0");
  }

  double eval(double xi1, double xi2) const override {
    const double q = (xi1 * xi1 + xi2 * xi2) / (r_ * r_);
    if (q >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - q));
  }

  double derivative_xi2(int n, double xi1, double xi2) const override {
    if (n < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (n == 0) return eval(xi1, xi2);
    if (n > kMaxOrder)
      throw std::domain_error(
          "bump family: derivative order above max_exact_derivative_order (" +
          std::to_string(kMaxOrder) + ")");
    // order-8 central differences, step tied to the support radius
    const double h = r_ * 1e-2;
    const int half = 4 + (n + 1) / 2;
    std::vector<double> nodes;
    nodes.reserve(2 * half + 1);
    for (int k = -half; k <= half; ++k) nodes.push_back(xi2 + k * h);
    const std::vector<double> w = fornberg_weights(n, nodes, xi2);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sum += w[i] * eval(xi1, nodes[i]);
    return sum;
  }

  Parity parity() const override { return Parity::even; }
  Decay decay() const override { return {DecayKind::compact, r_}; }
  int max_order() const override { return kMaxOrder; }

  std::pair<double, double> xi1_interval(double) const override {
    return {-r_, r_};
  }
  double xi2_halfwidth(double) const override { return r_; }

  static constexpr int kMaxOrder = 6;

 private:
  double r_;
};

class LinearCombination final : public TestFunctionImpl {
 public:
  LinearCombination(double alpha, TestFunction f, double beta, TestFunction g)
      : alpha_(alpha), beta_(beta), f_(std::move(f)), g_(std::move(g)) {
    if (!std::isfinite(alpha_) || !std::isfinite(beta_))
      throw std::invalid_argument(
          "make_linear_combination: non-finite coefficient");
  }

  double eval(double xi1, double xi2) const override {
    return alpha_ * f_.eval(xi1, xi2) + beta_ * g_.eval(xi1, xi2);
  }
  double derivative_xi2(int n, double xi1, double xi2) const override {
    return alpha_ * f_.derivative_xi2(n, xi1, xi2) +
           beta_ * g_.derivative_xi2(n, xi1, xi2);
  }
  Parity parity() const override {
    const Parity pf = f_.parity_xi1();
    const Parity pg = g_.parity_xi1();
    if (pf == pg) return pf;
    if (alpha_ == 0.0) return pg;
    if (beta_ == 0.0) return pf;
    return Parity::none;
  }
  Decay decay() const override {
    const Decay df = f_.decay();
    const Decay dg = g_.decay();
    if (df.kind == DecayKind::compact && dg.kind == DecayKind::compact)
      return {DecayKind::compact, std::max(df.radius, dg.radius)};
    return {DecayKind::schwartz, std::max(df.radius, dg.radius)};
  }
  int max_order() const override {
    return std::min(f_.max_exact_derivative_order(),
                    g_.max_exact_derivative_order());
  }
  std::pair<double, double> xi1_interval(double trunc) const override {
    const auto [fl, fh] = f_.xi1_interval(trunc);
    const auto [gl, gh] = g_.xi1_interval(trunc);
    return {std::min(fl, gl), std::max(fh, gh)};
  }
  double xi2_halfwidth(double trunc) const override {
    return std::max(f_.xi2_halfwidth(trunc), g_.xi2_halfwidth(trunc));
  }
  std::optional<double> exact_axis_moment(int m, int n) const override {
    const auto a = f_.exact_axis_moment(m, n);
    const auto b = g_.exact_axis_moment(m, n);
    if (a && b) return alpha_ * *a + beta_ * *b;
    return std::nullopt;
  }

 private:
  double alpha_, beta_;
  TestFunction f_, g_;
};

}  // namespace

}  // namespace detail

TestFunction::TestFunction(std::shared_ptr<const detail::TestFunctionImpl> impl)
    : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("TestFunction: null implementation");
}

double TestFunction::eval(double xi1, double xi2) const {
  return impl_->eval(xi1, xi2);
}
double TestFunction::axis_derivative(int n, double xi1) const {
  return impl_->derivative_xi2(n, xi1, 0.0);
}
double TestFunction::derivative_xi2(int n, double xi1, double xi2) const {
  return impl_->derivative_xi2(n, xi1, xi2);
}
Parity TestFunction::parity_xi1() const { return impl_->parity(); }
Decay TestFunction::decay() const { return impl_->decay(); }
int TestFunction::max_exact_derivative_order() const {
  return impl_->max_order();
}
std::pair<double, double> TestFunction::xi1_interval(
    double truncation_radius) const {
  return impl_->xi1_interval(truncation_radius);
}
double TestFunction::xi2_halfwidth(double truncation_radius) const {
  return impl_->xi2_halfwidth(truncation_radius);
}
std::optional<double> TestFunction::exact_axis_moment(int m, int n) const {
  if (m < 0 || n < 0) return std::nullopt;
  return impl_->exact_axis_moment(m, n);
}

TestFunction make_gaussian_hermite(std::array<double, 2> center, double scale,
                                   std::vector<PolyTerm2> poly) {
  return TestFunction(std::make_shared<const detail::GaussianHermite>(
      center, scale, std::move(poly)));
}

TestFunction make_bump(double support_radius) {
  return TestFunction(std::make_shared<const detail::Bump>(support_radius));
}

TestFunction make_linear_combination(double alpha, const TestFunction& f,
                                     double beta, const TestFunction& g) {
  return TestFunction(
      std::make_shared<const detail::LinearCombination>(alpha, f, beta, g));
}

QuadResult<double> axis_moment(const TestFunction& f, int m, int n,
                               const QuadratureSpec& spec) {
  spec.validate();
  if (m < 0 || n < 0)
    throw std::invalid_argument("axis_moment: m and n must be >= 0");
  if (n > f.max_exact_derivative_order())
    throw std::domain_error(
        "axis_moment: derivative order exceeds the family's capability");
  const auto [lo, hi] = f.xi1_interval(spec.truncation_radius);
  auto g = [&](double x) { return std::pow(x, m) * f.axis_derivative(n, x); };
  return integrate_adaptive(g, lo, hi, spec);
}

double TestFunction1D::eval(double xi) const {
  const double u = (xi - center) / scale;
  return std::exp(-u * u);
}

TestFunction1D gaussian_1d(double center, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("gaussian_1d: scale must be > 0");
  return TestFunction1D{center, scale};
}

}  // namespace conekit
