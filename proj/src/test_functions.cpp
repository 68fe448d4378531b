#include "distpair/test_functions.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace distpair {

namespace {

constexpr int kInternalOrderCap = 16;
// exp(-u^2) with polynomial growth up to H_24 is below 1e-18 past |u| = 9.
constexpr double kGaussianReach = 9.0;

double hermite(int n, double u) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * u * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// d^n/du^n exp(-1/(1-u^2)) for |u| < 1 via f^(n) = sum_k C(n-1,k) g^(k+1) f^(n-1-k),
// g = -1/(1-u^2) = -(1/2)[1/(1-u) + 1/(1+u)].
double bump_derivative_u(double u, int n) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double f0 = std::exp(-1.0 / (1.0 - u * u));
  if (f0 == 0.0) return 0.0;
  std::array<double, kInternalOrderCap + 2> g{};
  const double a = 1.0 / (1.0 - u);
  const double b = 1.0 / (1.0 + u);
  double fact = 1.0;
  double pa = a;
  double pb = b;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    // g^(k) = -(k!/2) [a^(k+1) + (-1)^k b^(k+1)]
    g[k] = -0.5 * fact * (pa + ((k % 2 == 0) ? pb : -pb));
    pa *= a;
    pb *= b;
  }
  std::array<double, kInternalOrderCap + 1> f{};
  f[0] = f0;
  for (int m = 1; m <= n; ++m) {
    double acc = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= m - 1; ++k) {
      acc += binom * g[k + 1] * f[m - 1 - k];
      binom = binom * (m - 1 - k) / (k + 1);
    }
    f[m] = acc;
  }
  return f[n];
}

}  // namespace

TestFunction gaussian(double center, double width) {
  TestFunction phi{Family::gaussian, center, width, 0};
  validate(phi);
  return phi;
}

TestFunction hermite_gaussian(int order, double center, double width) {
  TestFunction phi{Family::hermite_gaussian, center, width, order};
  validate(phi);
  return phi;
}

TestFunction bump(double center, double width) {
  TestFunction phi{Family::bump, center, width, 0};
  validate(phi);
  return phi;
}

void validate(const TestFunction& phi) {
  if (!(phi.width > 0.0) || !std::isfinite(phi.width)) {
    throw std::invalid_argument("test function width must be positive");
  }
  if (!std::isfinite(phi.center)) throw std::invalid_argument("test function center must be finite");
  if (phi.hermite_order < 0) throw std::invalid_argument("hermite order must be non-negative");
  if (phi.family == Family::hermite_gaussian && phi.hermite_order > kInternalOrderCap) {
    throw std::invalid_argument("hermite order too large");
  }
}

double eval(const TestFunction& phi, double y, int deriv_order) {
  if (deriv_order < 0 || deriv_order > kMaxDerivativeOrder) {
    throw std::invalid_argument("unsupported derivative order");
  }
  return eval_unchecked(phi, y, deriv_order);
}

double eval_unchecked(const TestFunction& phi, double y, int deriv_order) {
  if (deriv_order < 0 || deriv_order > kInternalOrderCap) {
    throw std::invalid_argument("unsupported derivative order");
  }
  const double u = (y - phi.center) / phi.width;
  const double chain = std::pow(phi.width, -deriv_order);
  switch (phi.family) {
    case Family::gaussian:
    case Family::hermite_gaussian: {
      // d^k/du^k [H_m(u) e^{-u^2}] = (-1)^k H_{m+k}(u) e^{-u^2}
      const double e = std::exp(-u * u);
      if (e == 0.0) return 0.0;
      const int m = phi.family == Family::gaussian ? 0 : phi.hermite_order;
      const double sign = (deriv_order % 2 == 0) ? 1.0 : -1.0;
      return sign * chain * hermite(m + deriv_order, u) * e;
    }
    case Family::bump:
      return chain * bump_derivative_u(u, deriv_order);
  }
  return 0.0;
}

std::pair<double, double> support(const TestFunction& phi) {
  const double reach = phi.family == Family::bump ? 1.0 : kGaussianReach;
  return {phi.center - reach * phi.width, phi.center + reach * phi.width};
}

std::string label(const TestFunction& phi) {
  char buf[96];
  switch (phi.family) {
    case Family::gaussian:
      std::snprintf(buf, sizeof buf, "gaussian(c=%g,w=%g)", phi.center, phi.width);
      break;
    case Family::hermite_gaussian:
      std::snprintf(buf, sizeof buf, "hermite%d(c=%g,w=%g)", phi.hermite_order, phi.center,
                    phi.width);
      break;
    case Family::bump:
      std::snprintf(buf, sizeof buf, "bump(c=%g,w=%g)", phi.center, phi.width);
      break;
  }
  return buf;
}

std::vector<TestFunction> shifted_family(const BatteryParams& params) {
  std::vector<TestFunction> battery;
  for (double c : params.centers) {
    for (double w : params.widths) battery.push_back(gaussian(c, w));
  }
  for (const TestFunction& phi : params.extra) {
    validate(phi);
    battery.push_back(phi);
  }
  return battery;
}

}  // namespace distpair
