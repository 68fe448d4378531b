#include "distpair/probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distpair {

namespace {

constexpr int kProbeOrderCap = 16;

// exp(-1/t) for t > 0, else 0
double edge(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double flat_top_window(double u) {
  const double a = std::abs(u);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double rise = edge(2.0 - a);
  return rise / (rise + edge(a - 1.0));
}

}  // namespace

Probe::Probe(Eval eval, double lo, double hi, double length_scale, int max_order,
             std::string label)
    : eval_(std::make_shared<const Eval>(std::move(eval))),
      lo_(lo),
      hi_(hi),
      scale_(length_scale),
      max_order_(max_order),
      label_(std::move(label)) {
  if (!(lo < hi)) throw std::invalid_argument("probe support must be a non-empty interval");
  if (!(length_scale > 0.0)) throw std::invalid_argument("probe length scale must be positive");
}

Probe Probe::from(const TestFunction& phi) {
  validate(phi);
  const auto [lo, hi] = support(phi);
  return Probe([phi](double y, int k) { return eval_unchecked(phi, y, k); }, lo, hi, phi.width,
               kProbeOrderCap, distpair::label(phi));
}

Probe Probe::moment_window(int n, double radius) {
  if (n < 0) throw std::invalid_argument("moment order must be non-negative");
  if (!(radius > 0.0)) throw std::invalid_argument("window radius must be positive");
  return Probe(
      [n, radius](double y, int k) {
        if (k != 0) throw std::invalid_argument("moment window has no derivatives");
        return std::pow(y, n) * flat_top_window(y / radius);
      },
      -2.0 * radius, 2.0 * radius, radius, 0, "y^" + std::to_string(n) + "*W(y/R)");
}

double Probe::derivative(double y, int order) const {
  if (order < 0 || order > max_order_) {
    throw std::invalid_argument("probe '" + label_ + "' has no derivative of order " +
                                std::to_string(order));
  }
  return (*eval_)(y, order);
}

Probe Probe::derivative_probe() const {
  if (max_order_ < 1) throw std::invalid_argument("probe has no derivative");
  auto inner = eval_;
  return Probe([inner](double y, int k) { return (*inner)(y, k + 1); }, lo_, hi_, scale_,
               max_order_ - 1, label_ + "'");
}

Probe Probe::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilation must be positive");
  auto inner = eval_;
  return Probe(
      [inner, lambda](double y, int k) { return std::pow(lambda, -k) * (*inner)(y / lambda, k); },
      lo_ * lambda, hi_ * lambda, scale_ * lambda, max_order_,
      label_ + "(y/" + std::to_string(lambda) + ")");
}

Probe Probe::reflected() const {
  auto inner = eval_;
  return Probe([inner](double y, int k) { return ((k % 2 == 0) ? 1.0 : -1.0) * (*inner)(-y, k); },
               -hi_, -lo_, scale_, max_order_, label_ + "(-y)");
}

Probe Probe::scaled(double factor) const {
  auto inner = eval_;
  return Probe([inner, factor](double y, int k) { return factor * (*inner)(y, k); }, lo_, hi_,
               scale_, max_order_, std::to_string(factor) + "*" + label_);
}

Probe Probe::plus(const Probe& other) const {
  auto a = eval_;
  auto b = other.eval_;
  const double alo = lo_, ahi = hi_, blo = other.lo_, bhi = other.hi_;
  return Probe(
      [=](double y, int k) {
        double v = 0.0;
        if (y >= alo && y <= ahi) v += (*a)(y, k);
        if (y >= blo && y <= bhi) v += (*b)(y, k);
        return v;
      },
      std::min(lo_, other.lo_), std::max(hi_, other.hi_), std::min(scale_, other.scale_),
      std::min(max_order_, other.max_order_), label_ + "+" + other.label_);
}

}  // namespace distpair
