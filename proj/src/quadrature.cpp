#include "distpair/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "distpair/simd_kernels.hpp"

namespace distpair {

namespace {

constexpr double kTMax = 4.0;
constexpr int kMaxTableLevel = 10;

// Abscissas and weights of the tanh-sinh rule on [-1, 1], stored per level as the
// distance to the nearer endpoint (delta = 1 - tanh(pi/2 sinh t)) to keep nodes
// close to an endpoint free of cancellation.
struct LevelNodes {
  std::vector<double> delta;
  std::vector<double> weight;
};

struct NodeTable {
  std::vector<LevelNodes> levels;
  double center_weight = std::numbers::pi / 2.0;

  NodeTable() {
    levels.resize(kMaxTableLevel + 1);
    for (int level = 0; level <= kMaxTableLevel; ++level) {
      const double h = std::ldexp(1.0, -level);
      const int count = static_cast<int>(std::ceil(kTMax / h));
      // level 0 takes t = 1, 2, ...; later levels only the odd multiples of h
      const int stride = level == 0 ? 1 : 2;
      for (int j = 1; j <= count; j += stride) {
        const double t = j * h;
        const double s = std::numbers::pi / 2.0 * std::sinh(t);
        const double e = std::exp(-2.0 * s);
        levels[level].delta.push_back(2.0 * e / (1.0 + e));
        levels[level].weight.push_back(std::numbers::pi / 2.0 * std::cosh(t) * 4.0 * e /
                                       ((1.0 + e) * (1.0 + e)));
      }
    }
  }
};

const NodeTable& node_table() {
  static const NodeTable table;
  return table;
}

struct PanelResult {
  double value;
  double error;
  int evaluations;
  bool converged;
  bool at_roundoff = false;  // further refinement cannot lower the error
};

PanelResult tanh_sinh_panel(const Integrand& f, double a, double b, double tol, int max_level) {
  const NodeTable& table = node_table();
  const double half = 0.5 * (b - a);
  std::vector<double> values;
  std::vector<double> weights;
  int evaluations = 0;
  double sum = 0.0;
  double abs_sum = 0.0;
  double previous = 0.0;
  double error = INFINITY;

  for (int level = 0; level <= max_level; ++level) {
    const LevelNodes& nodes = table.levels[level];
    values.clear();
    weights.clear();
    if (level == 0) {
      values.push_back(f(a + half));
      weights.push_back(table.center_weight);
    }
    for (std::size_t i = 0; i < nodes.delta.size(); ++i) {
      const double d = half * nodes.delta[i];
      values.push_back(f(a + d));
      values.push_back(f(b - d));
      weights.push_back(nodes.weight[i]);
      weights.push_back(nodes.weight[i]);
    }
    evaluations += static_cast<int>(values.size());
    sum += simd::weighted_sum(weights, values);
    abs_sum += simd::weighted_abs_sum(weights, values);

    const double h = std::ldexp(1.0, -level);
    const double estimate = h * half * sum;
    if (!std::isfinite(estimate)) return {estimate, INFINITY, evaluations, false};
    if (level >= 3) {
      const double floor = 8.0 * std::numeric_limits<double>::epsilon() * h * half * abs_sum;
      const double change = std::abs(estimate - previous);
      error = std::max(change, floor);
      if (error <= tol) return {estimate, error, evaluations, true};
      if (change <= floor) return {estimate, error, evaluations, false, true};
    }
    previous = estimate;
  }
  return {previous, error, evaluations, false};
}

PanelResult adaptive(const Integrand& f, double a, double b, double tol,
                     const QuadratureOptions& opts, int depth, long& budget) {
  PanelResult whole = tanh_sinh_panel(f, a, b, tol, opts.max_level);
  budget -= whole.evaluations;
  if (whole.converged || whole.at_roundoff || depth >= opts.max_depth || budget <= 0 ||
      !std::isfinite(whole.value)) {
    return whole;
  }
  const double mid = 0.5 * (a + b);
  PanelResult left = adaptive(f, a, mid, 0.5 * tol, opts, depth + 1, budget);
  PanelResult right = adaptive(f, mid, b, 0.5 * tol, opts, depth + 1, budget);
  return {left.value + right.value, left.error + right.error,
          whole.evaluations + left.evaluations + right.evaluations,
          left.converged && right.converged};
}

QuadratureResult integrate_budgeted(const Integrand& f, double a, double b, double tol,
                                    const QuadratureOptions& opts, long& budget) {
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    QuadratureResult r = integrate_budgeted(f, b, a, tol, opts, budget);
    r.value = -r.value;
    return r;
  }
  const PanelResult r = adaptive(f, a, b, tol, opts, 0, budget);
  return {r.value, r.error, r.evaluations, r.converged && r.error <= tol};
}

void check_options(double tol, const QuadratureOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  if (opts.max_level < 3 || opts.max_level > kMaxTableLevel) {
    throw std::invalid_argument("integrate: max_level out of range");
  }
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, double tol,
                           const QuadratureOptions& opts) {
  check_options(tol, opts);
  long budget = opts.max_evaluations;
  return integrate_budgeted(f, a, b, tol, opts, budget);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> points, double tol,
                           const QuadratureOptions& opts) {
  check_options(tol, opts);
  if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
  long budget = opts.max_evaluations;
  QuadratureResult out{0.0, 0.0, 0, true};
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] >= points[i])) throw std::invalid_argument("integrate: points not sorted");
    const double panel_tol = tol / static_cast<double>(points.size() - 1);
    const QuadratureResult r = integrate_budgeted(f, points[i], points[i + 1], panel_tol, opts, budget);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  out.converged = out.converged && out.error <= tol;
  return out;
}

}  // namespace distpair
