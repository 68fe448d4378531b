#include <cmath>
#include <numbers>

#include "distpair/simd_kernels.hpp"

namespace distpair::simd::scalar {

namespace {

// Neumaier's variant of Kahan summation.
struct Compensated {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double coth_partial_sum(double y, std::int64_t terms) {
  const double y2 = y * y;
  Compensated acc;
  for (std::int64_t k = terms; k >= 1; --k) {
    const double kp = static_cast<double>(k) * std::numbers::pi;
    acc.add(2.0 * y / (y2 + kp * kp));
  }
  return acc.value();
}

double csch2_partial_sum(double y, std::int64_t terms) {
  const double y2 = y * y;
  Compensated acc;
  for (std::int64_t k = terms; k >= 1; --k) {
    const double kp = static_cast<double>(k) * std::numbers::pi;
    const double k2 = kp * kp;
    const double d = y2 + k2;
    acc.add(2.0 * (y2 - k2) / (d * d));
  }
  return acc.value();
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  Compensated acc;
  for (std::size_t i = 0; i < weights.size(); ++i) acc.add(weights[i] * values[i]);
  return acc.value();
}

double weighted_abs_sum(std::span<const double> weights, std::span<const double> values) {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) acc += std::abs(weights[i] * values[i]);
  return acc;
}

}  // namespace distpair::simd::scalar
