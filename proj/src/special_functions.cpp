#include "distpair/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "distpair/bernoulli.hpp"
#include "distpair/simd_kernels.hpp"

namespace distpair {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero(double y, const char* what) {
  if (y == 0.0) throw std::domain_error(std::string(what) + ": singular at y = 0");
}

// Taylor coefficients of csch^2 y - 1/y^2 = sum_{n>=1} c_n y^(2n-2),
// c_n = -(2n-1) 2^(2n) B_(2n) / (2n)!. Radius of convergence pi.
struct RegularPartSeries {
  static constexpr int kTerms = 24;
  double coeff[kTerms];
  RegularPartSeries() {
    double pow4 = 1.0;
    double fact = 1.0;
    for (int n = 1; n <= kTerms; ++n) {
      pow4 *= 4.0;
      fact *= (2.0 * n - 1.0) * (2.0 * n);
      coeff[n - 1] = -(2.0 * n - 1.0) * pow4 * bernoulli_number_double(2 * n) / fact;
    }
  }
};

const RegularPartSeries& regular_part_series() {
  static const RegularPartSeries series;
  return series;
}

}  // namespace

double coth_direct(double y) {
  require_nonzero(y, "coth_direct");
  return 1.0 / std::tanh(y);
}

double csch2_direct(double y) {
  require_nonzero(y, "csch2_direct");
  const double s = std::sinh(y);
  return 1.0 / (s * s);
}

double coth_series(double y, const SeriesTruncation& trunc) {
  require_nonzero(y, "coth_series");
  if (trunc.terms < 1) throw std::invalid_argument("coth_series: need at least one term");
  double sum = simd::coth_partial_sum(y, trunc.terms);
  if (trunc.tail_correction) sum += 2.0 * y / (kPi * kPi * static_cast<double>(trunc.terms));
  return sum + 1.0 / y;
}

double csch2_series(double y, const SeriesTruncation& trunc) {
  require_nonzero(y, "csch2_series");
  if (trunc.terms < 1) throw std::invalid_argument("csch2_series: need at least one term");
  double sum = simd::csch2_partial_sum(y, trunc.terms);
  if (trunc.tail_correction) sum -= 2.0 / (kPi * kPi * static_cast<double>(trunc.terms));
  return sum + 1.0 / (y * y);
}

double langevin(double y) {
  const double ay = std::abs(y);
  if (ay < 1e-2) {
    const double y2 = y * y;
    // y/3 - y^3/45 + 2y^5/945 - y^7/4725
    return y * (1.0 / 3.0 + y2 * (-1.0 / 45.0 + y2 * (2.0 / 945.0 - y2 / 4725.0)));
  }
  if (ay < 2.0) {
    // L(y) = y/(3 + y^2/(5 + y^2/(7 + ...))); 24 levels are far past convergence for |y| < 2.
    const double y2 = y * y;
    double t = 2.0 * 25 + 1.0;
    for (int j = 24; j >= 1; --j) t = (2.0 * j + 1.0) + y2 / t;
    return y / t;
  }
  return coth_direct(y) - 1.0 / y;
}

double csch2_regular_part(double y) {
  const double ay = std::abs(y);
  if (ay < 0.5) {
    const auto& s = regular_part_series();
    const double y2 = y * y;
    double acc = 0.0;
    for (int n = RegularPartSeries::kTerms - 1; n >= 0; --n) acc = acc * y2 + s.coeff[n];
    return acc;
  }
  const double s = std::sinh(y);
  return 1.0 / (s * s) - 1.0 / (y * y);
}

double y_coth_y(double y) {
  if (std::abs(y) < 1e-8) return 1.0 + y * y / 3.0;
  return y / std::tanh(y);
}

double coth_eps_real(double y, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("coth_eps_real: eps must be positive");
  if (y == 0.0) return 0.0;
  // sinh y cosh y / (sinh^2 y + sin^2 eps) = coth y / (1 + (sin eps / sinh y)^2)
  const double r = std::sin(eps) / std::sinh(y);
  return coth_direct(y) / (1.0 + r * r);
}

double coth_eps_imag(double y, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("coth_eps_imag: eps must be positive");
  const double sh = std::sinh(y);
  const double se = std::sin(eps);
  return -se * std::cos(eps) / (sh * sh + se * se);
}

double decompose_sign(double y) {
  require_nonzero(y, "decompose_sign");
  const double g = 2.0 / std::expm1(2.0 * std::abs(y));
  return std::copysign(1.0 + g, y);
}

}  // namespace distpair
