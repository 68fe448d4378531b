#pragma once

#include <functional>
#include <span>

namespace distpair {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct QuadratureOptions {
  int max_level = 7;   // step h = 2^-level in the tanh-sinh variable
  int max_depth = 16;  // bisection depth once a panel exhausts its levels
  long max_evaluations = 2000000;  // per call, over all panels; bisection stops once spent
};

using Integrand = std::function<double(double)>;

// Adaptive tanh-sinh quadrature of f over [a, b] to absolute tolerance tol.
// Nodes cluster double-exponentially at both ends, so integrands with sharp
// structure at an endpoint (for instance a subtracted singularity at 0) should
// put that point at a panel boundary. f is never evaluated exactly at a or b
// unless the node spacing underflows there.
QuadratureResult integrate(const Integrand& f, double a, double b, double tol,
                           const QuadratureOptions& opts = {});

// Same, over consecutive panels [points[i], points[i+1]]; points must be increasing.
QuadratureResult integrate(const Integrand& f, std::span<const double> points, double tol,
                           const QuadratureOptions& opts = {});

}  // namespace distpair
