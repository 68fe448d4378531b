#pragma once

#include <functional>
#include <memory>
#include <string>

#include "distpair/test_functions.hpp"

namespace distpair {

// Type-erased probe the pairing engine integrates against: a TestFunction, or
// one derived from it (derivative, dilation, reflection, linear combination),
// or a moment window y^n W(y/R). Cheap to copy.
class Probe {
 public:
  // eval(y, k) returns the k-th derivative at y, for 0 <= k <= max_order.
  using Eval = std::function<double(double, int)>;

  Probe(Eval eval, double lo, double hi, double length_scale, int max_order, std::string label);

  static Probe from(const TestFunction& phi);

  // y^n W(y/R) with a flat-top window: W = 1 on |u| <= 1, smooth decay to 0 on 1 < |u| < 2.
  // No derivatives are provided.
  static Probe moment_window(int n, double radius);

  double operator()(double y) const { return (*eval_)(y, 0); }
  double derivative(double y, int order) const;

  // Effective support [lo, hi]; the probe is treated as zero outside.
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  // Length over which the probe varies; sets Taylor switch radii near y = 0.
  double length_scale() const { return scale_; }
  int max_order() const { return max_order_; }
  const std::string& label() const { return label_; }

  Probe derivative_probe() const;        // phi'
  Probe dilated(double lambda) const;    // phi(y / lambda)
  Probe reflected() const;               // phi(-y)
  Probe scaled(double factor) const;     // factor * phi
  Probe plus(const Probe& other) const;  // phi + other

 private:
  std::shared_ptr<const Eval> eval_;
  double lo_;
  double hi_;
  double scale_;
  int max_order_;
  std::string label_;
};

}  // namespace distpair
