#include "distpair/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distpair/quadrature.hpp"
#include "distpair/special_functions.hpp"

namespace distpair {

namespace {

PairingResult from_quadrature(const QuadratureResult& q, double tol) {
  return {q.value, q.error, q.evaluations, q.converged && q.error <= tol};
}

PairingResult combine(const PairingResult& a, const PairingResult& b, double tol) {
  const double err = a.error_estimate + b.error_estimate;
  return {a.value + b.value, err, a.nodes_used + b.nodes_used,
          a.converged && b.converged && err <= tol};
}

PairingResult scale_result(PairingResult r, double factor) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

double reach(const Probe& phi) { return std::max(std::abs(phi.lo()), std::abs(phi.hi())); }

void require_orders(const Probe& phi, int order, const char* what) {
  if (phi.max_order() < order) {
    throw std::invalid_argument(std::string(what) + " needs probe derivatives up to order " +
                                std::to_string(order) + " at 0");
  }
}

// <P(1/y), phi> = int_0^R [phi(y) - phi(-y)]/y dy; the odd difference quotient
// is replaced by its Taylor expansion 2phi' + phi'''y^2/3 + phi^(5)y^4/60 near 0.
PairingResult pv_inv_y(const Probe& phi, double tol) {
  require_orders(phi, 5, "principal value");
  const double d1 = phi.derivative(0.0, 1);
  const double d3 = phi.derivative(0.0, 3);
  const double d5 = phi.derivative(0.0, 5);
  const double switch_radius = 1e-3 * phi.length_scale();
  auto integrand = [&](double y) {
    if (y < switch_radius) {
      const double y2 = y * y;
      return 2.0 * d1 + y2 * (d3 / 3.0 + y2 * d5 / 60.0);
    }
    return (phi(y) - phi(-y)) / y;
  };
  return from_quadrature(integrate(integrand, 0.0, reach(phi), tol), tol);
}

// <FP(1/y^2), phi> = int_0^R [phi(y) + phi(-y) - 2phi(0)]/y^2 dy - 2phi(0)/R, with the
// even difference quotient replaced by phi'' + phi''''y^2/12 + phi^(6)y^4/360 near 0.
PairingResult fp_inv_y2(const Probe& phi, double tol) {
  require_orders(phi, 6, "finite part");
  const double d0 = phi.derivative(0.0, 0);
  const double d2 = phi.derivative(0.0, 2);
  const double d4 = phi.derivative(0.0, 4);
  const double d6 = phi.derivative(0.0, 6);
  const double switch_radius = 2e-3 * phi.length_scale();
  auto integrand = [&](double y) {
    if (y < switch_radius) {
      const double y2 = y * y;
      return d2 + y2 * (d4 / 12.0 + y2 * d6 / 360.0);
    }
    return (phi(y) + phi(-y) - 2.0 * d0) / (y * y);
  };
  const double r = reach(phi);
  PairingResult out = from_quadrature(integrate(integrand, 0.0, r, tol), tol);
  out.value -= 2.0 * d0 / r;
  return out;
}

PairingResult pair_at_eps(KernelKind kind, double eps, double lambda, const Probe& phi,
                          double tol) {
  const double s = eps / lambda;
  const double breaks[] = {-4.0 * s, -s, s, 4.0 * s, -1.0 / lambda, 1.0 / lambda};
  if (kind == KernelKind::coth_eps_real) {
    return pair_smooth([=](double y) { return coth_eps_real(lambda * y, eps); }, phi, tol, breaks);
  }
  return pair_smooth([=](double y) { return coth_eps_imag(lambda * y, eps); }, phi, tol, breaks);
}

PairingResult pair_eps_limit(const KernelSpec& kernel, const Probe& phi, double tol,
                             bool derivative) {
  const Probe target = derivative ? phi.derivative_probe() : phi;
  // Extrapolation amplifies rung errors by the sum of |Lagrange weights| (order 10-100).
  const double rung_tol = std::min(1e-3 * tol, 1e-9);
  std::vector<PairingResult> rungs;
  rungs.reserve(kernel.ladder.values.size());
  for (double eps : kernel.ladder.values) {
    PairingResult r = pair_at_eps(kernel.kind, eps, kernel.dilation, target, rung_tol);
    if (derivative) r.value = -r.value;
    rungs.push_back(r);
  }
  PairingResult out = extrapolate_limit(rungs, kernel.ladder);
  out.converged = out.converged && out.error_estimate <= tol;
  return out;
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::coth:
      return "coth";
    case KernelKind::csch2:
      return "csch2";
    case KernelKind::inv_y:
      return "inv_y";
    case KernelKind::inv_y2:
      return "inv_y2";
    case KernelKind::langevin:
      return "langevin";
    case KernelKind::coth_eps_real:
      return "coth_eps_real";
    case KernelKind::coth_eps_imag:
      return "coth_eps_imag";
    case KernelKind::delta:
      return "delta";
  }
  return "unknown";
}

std::string to_string(Regularization reg) {
  switch (reg) {
    case Regularization::none:
      return "none";
    case Regularization::principal_value:
      return "principal_value";
    case Regularization::finite_part:
      return "finite_part";
    case Regularization::eps_limit:
      return "eps_limit";
  }
  return "unknown";
}

LadderSpec default_eps_ladder() {
  LadderSpec ladder;
  for (int j = 0; j < 8; ++j) ladder.values.push_back(0.2 * std::ldexp(1.0, -j));
  ladder.extrapolation_order = 7;
  ladder.exponent = 1;
  return ladder;
}

void validate(const LadderSpec& ladder) {
  if (ladder.extrapolation_order < 1) {
    throw std::invalid_argument("ladder: extrapolation order must be >= 1");
  }
  if (ladder.exponent < 1) throw std::invalid_argument("ladder: exponent must be >= 1");
  if (static_cast<int>(ladder.values.size()) < ladder.extrapolation_order + 1) {
    throw std::invalid_argument("ladder too short for the requested extrapolation order");
  }
  for (std::size_t i = 0; i < ladder.values.size(); ++i) {
    if (!(ladder.values[i] > 0.0)) throw std::invalid_argument("ladder values must be positive");
    if (i > 0 && !(ladder.values[i] < ladder.values[i - 1])) {
      throw std::invalid_argument("ladder values must be strictly decreasing");
    }
  }
}

KernelSpec KernelSpec::coth_pv(double dilation) {
  return {KernelKind::coth, Regularization::principal_value, 0.0, dilation, {}};
}
KernelSpec KernelSpec::csch2_fp(double dilation) {
  return {KernelKind::csch2, Regularization::finite_part, 0.0, dilation, {}};
}
KernelSpec KernelSpec::inv_y_pv(double dilation) {
  return {KernelKind::inv_y, Regularization::principal_value, 0.0, dilation, {}};
}
KernelSpec KernelSpec::inv_y2_fp(double dilation) {
  return {KernelKind::inv_y2, Regularization::finite_part, 0.0, dilation, {}};
}
KernelSpec KernelSpec::langevin_fn(double dilation) {
  return {KernelKind::langevin, Regularization::none, 0.0, dilation, {}};
}
KernelSpec KernelSpec::coth_eps_real_at(double eps, double dilation) {
  return {KernelKind::coth_eps_real, Regularization::none, eps, dilation, {}};
}
KernelSpec KernelSpec::coth_eps_imag_at(double eps, double dilation) {
  return {KernelKind::coth_eps_imag, Regularization::none, eps, dilation, {}};
}
KernelSpec KernelSpec::coth_eps_real_limit(LadderSpec ladder) {
  return {KernelKind::coth_eps_real, Regularization::eps_limit, 0.0, 1.0, std::move(ladder)};
}
KernelSpec KernelSpec::coth_eps_imag_limit(LadderSpec ladder) {
  return {KernelKind::coth_eps_imag, Regularization::eps_limit, 0.0, 1.0, std::move(ladder)};
}
KernelSpec KernelSpec::delta_fn(double dilation) {
  return {KernelKind::delta, Regularization::none, 0.0, dilation, {}};
}

void validate(const KernelSpec& kernel) {
  if (!(kernel.dilation > 0.0) || !std::isfinite(kernel.dilation)) {
    throw std::invalid_argument("kernel dilation must be positive");
  }
  auto fail = [&] {
    throw std::invalid_argument("invalid regularization " + to_string(kernel.regularization) +
                                " for kernel " + to_string(kernel.kind));
  };
  switch (kernel.kind) {
    case KernelKind::coth:
    case KernelKind::inv_y:
      if (kernel.regularization != Regularization::principal_value) fail();
      break;
    case KernelKind::csch2:
    case KernelKind::inv_y2:
      if (kernel.regularization != Regularization::finite_part) fail();
      break;
    case KernelKind::langevin:
    case KernelKind::delta:
      if (kernel.regularization != Regularization::none) fail();
      break;
    case KernelKind::coth_eps_real:
    case KernelKind::coth_eps_imag:
      if (kernel.regularization == Regularization::none) {
        if (!(kernel.eps > 0.0)) throw std::invalid_argument("eps-shifted kernel needs eps > 0");
      } else if (kernel.regularization == Regularization::eps_limit) {
        validate(kernel.ladder);
      } else {
        fail();
      }
      break;
  }
}

PairingResult pair_smooth(const std::function<double(double)>& kernel, const Probe& phi,
                          double tol, std::span<const double> breakpoints) {
  std::vector<double> points{phi.lo(), phi.hi()};
  if (phi.lo() < 0.0 && phi.hi() > 0.0) points.push_back(0.0);
  for (double b : breakpoints) {
    if (b > phi.lo() && b < phi.hi()) points.push_back(b);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto integrand = [&](double y) { return kernel(y) * phi(y); };
  return from_quadrature(integrate(integrand, points, tol), tol);
}

PairingResult pair(const KernelSpec& kernel, const Probe& phi, double tol) {
  validate(kernel);
  if (!(tol > 0.0)) throw std::invalid_argument("pair: tolerance must be positive");
  const double lambda = kernel.dilation;
  const double scale_breaks[] = {-4.0 / lambda, -1.0 / lambda, 1.0 / lambda, 4.0 / lambda};
  switch (kernel.kind) {
    case KernelKind::delta:
      return {phi(0.0) / lambda, 0.0, 1, true};
    case KernelKind::inv_y:
      return scale_result(pv_inv_y(phi, tol * lambda), 1.0 / lambda);
    case KernelKind::inv_y2:
      return scale_result(fp_inv_y2(phi, tol * lambda * lambda), 1.0 / (lambda * lambda));
    case KernelKind::langevin:
      return pair_smooth([lambda](double y) { return langevin(lambda * y); }, phi, tol,
                         scale_breaks);
    case KernelKind::coth: {
      const PairingResult singular = scale_result(pv_inv_y(phi, 0.5 * tol * lambda), 1.0 / lambda);
      const PairingResult regular = pair_smooth(
          [lambda](double y) { return langevin(lambda * y); }, phi, 0.5 * tol, scale_breaks);
      return combine(singular, regular, tol);
    }
    case KernelKind::csch2: {
      const PairingResult singular = scale_result(
          fp_inv_y2(phi, 0.5 * tol * lambda * lambda), 1.0 / (lambda * lambda));
      const PairingResult regular =
          pair_smooth([lambda](double y) { return csch2_regular_part(lambda * y); }, phi,
                      0.5 * tol, scale_breaks);
      return combine(singular, regular, tol);
    }
    case KernelKind::coth_eps_real:
    case KernelKind::coth_eps_imag:
      if (kernel.regularization == Regularization::eps_limit) {
        return pair_eps_limit(kernel, phi, tol, false);
      }
      return pair_at_eps(kernel.kind, kernel.eps, lambda, phi, tol);
  }
  throw std::logic_error("pair: unhandled kernel");
}

PairingResult pair(const KernelSpec& kernel, const TestFunction& phi, double tol) {
  return pair(kernel, Probe::from(phi), tol);
}

PairingResult weak_derivative_pair(const KernelSpec& kernel, const Probe& phi, double tol) {
  validate(kernel);
  if (kernel.regularization == Regularization::eps_limit) {
    return pair_eps_limit(kernel, phi, tol, true);
  }
  return scale_result(pair(kernel, phi.derivative_probe(), tol), -1.0);
}

PairingResult weak_derivative_pair(const KernelSpec& kernel, const TestFunction& phi,
                                   double tol) {
  return weak_derivative_pair(kernel, Probe::from(phi), tol);
}

PairingResult extrapolate_limit(std::span<const PairingResult> rungs, const LadderSpec& ladder) {
  validate(ladder);
  if (rungs.size() != ladder.values.size()) {
    throw std::invalid_argument("extrapolate_limit: ladder and rung counts differ");
  }
  const std::size_t n = static_cast<std::size_t>(ladder.extrapolation_order) + 1;
  const std::size_t first = rungs.size() - n;
  std::vector<double> x(n);
  std::vector<double> p(n);
  bool converged = true;
  int nodes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = std::pow(ladder.values[first + i], ladder.exponent);
    p[i] = rungs[first + i].value;
  }
  for (const PairingResult& r : rungs) {
    converged = converged && r.converged;
    nodes += r.nodes_used;
  }

  // Propagated input error: sum_i |l_i(0)| err_i with Lagrange basis l_i.
  double propagated = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double weight = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) weight *= x[j] / (x[j] - x[i]);
    }
    propagated += std::abs(weight) * rungs[first + i].error_estimate;
  }

  // Neville tableau evaluated at 0. After column k, p[i] is the degree-k
  // extrapolant through rungs i..i+k; p[0] is the full one and, one column
  // earlier, p[1] was the extrapolant through the n-1 smallest rungs.
  double lower_order = p[n - 1];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      p[i] = (x[i] * p[i + 1] - x[i + k] * p[i]) / (x[i] - x[i + k]);
    }
    if (k == n - 2) lower_order = p[1];
  }
  if (n == 2) lower_order = rungs[first + 1].value;
  const double value = p[0];
  return {value, std::abs(value - lower_order) + propagated, nodes, converged};
}

}  // namespace distpair
