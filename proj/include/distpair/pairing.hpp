#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distpair/probe.hpp"
#include "distpair/test_functions.hpp"

namespace distpair {

enum class KernelKind { coth, csch2, inv_y, inv_y2, langevin, coth_eps_real, coth_eps_imag, delta };
enum class Regularization { none, principal_value, finite_part, eps_limit };

std::string to_string(KernelKind kind);
std::string to_string(Regularization reg);

// Strictly decreasing positive ladder (eps values or cutoffs) and the degree of
// the polynomial in x = value^exponent used to extrapolate to x = 0.
struct LadderSpec {
  std::vector<double> values;
  int extrapolation_order = 1;
  int exponent = 1;
};

// eps = 0.2 * 2^-j, j = 0..7, extrapolated with a degree-7 polynomial in eps.
LadderSpec default_eps_ladder();

// Throws std::invalid_argument unless the ladder is strictly decreasing, positive,
// and holds at least extrapolation_order + 1 values.
void validate(const LadderSpec& ladder);

// A singular kernel g and its regularization. The represented distribution is
// g(dilation * y); dilation = 1 gives the kernel itself.
struct KernelSpec {
  KernelKind kind = KernelKind::delta;
  Regularization regularization = Regularization::none;
  double eps = 0.0;       // coth_eps_* with Regularization::none
  double dilation = 1.0;  // lambda in g(lambda y)
  LadderSpec ladder{};    // coth_eps_* with Regularization::eps_limit

  static KernelSpec coth_pv(double dilation = 1.0);
  static KernelSpec csch2_fp(double dilation = 1.0);
  static KernelSpec inv_y_pv(double dilation = 1.0);
  static KernelSpec inv_y2_fp(double dilation = 1.0);
  static KernelSpec langevin_fn(double dilation = 1.0);
  static KernelSpec coth_eps_real_at(double eps, double dilation = 1.0);
  static KernelSpec coth_eps_imag_at(double eps, double dilation = 1.0);
  static KernelSpec coth_eps_real_limit(LadderSpec ladder = default_eps_ladder());
  static KernelSpec coth_eps_imag_limit(LadderSpec ladder = default_eps_ladder());
  static KernelSpec delta_fn(double dilation = 1.0);
};

// Throws std::invalid_argument for kernel/regularization combinations that do not
// define a distribution: coth and inv_y need principal_value, csch2 and inv_y2
// need finite_part, langevin and delta need none, coth_eps_* need none (with
// eps > 0) or eps_limit (with a valid ladder).
void validate(const KernelSpec& kernel);

struct PairingResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int nodes_used = 0;
  bool converged = false;
};

inline constexpr double kDefaultPairingTol = 1e-8;
inline constexpr double kDefaultLimitTol = 1e-6;

// <T, phi>. Principal values use coth = 1/y + L(y) with
//   <P(1/y), phi> = int_0^inf [phi(y) - phi(-y)]/y dy;
// finite parts use csch^2 = (csch^2 - 1/y^2) + FP(1/y^2) with
//   <FP(1/y^2), phi> = int_0^inf [phi(y) + phi(-y) - 2 phi(0)]/y^2 dy.
// A pairing that misses tol reports converged = false with its best estimate.
PairingResult pair(const KernelSpec& kernel, const Probe& phi, double tol = kDefaultPairingTol);
PairingResult pair(const KernelSpec& kernel, const TestFunction& phi,
                   double tol = kDefaultPairingTol);

// Weak derivative <T', phi> = -<T, phi'>.
PairingResult weak_derivative_pair(const KernelSpec& kernel, const Probe& phi,
                                   double tol = kDefaultPairingTol);
PairingResult weak_derivative_pair(const KernelSpec& kernel, const TestFunction& phi,
                                   double tol = kDefaultPairingTol);

// Neville extrapolation of ladder pairings to x = 0 in x = value^exponent, using
// the last extrapolation_order + 1 rungs. The error estimate is the gap between
// the two highest-order extrapolants plus the propagated input errors.
PairingResult extrapolate_limit(std::span<const PairingResult> rungs, const LadderSpec& ladder);

// int g(y) phi(y) dy for a kernel g that is bounded on the probe support.
// Breakpoints (where g has fine structure) become panel boundaries.
PairingResult pair_smooth(const std::function<double(double)>& kernel, const Probe& phi, double tol,
                          std::span<const double> breakpoints = {});

}  // namespace distpair
