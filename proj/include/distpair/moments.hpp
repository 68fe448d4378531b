#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "distpair/check_outcome.hpp"
#include "distpair/pairing.hpp"
#include "distpair/test_functions.hpp"

namespace distpair {

inline constexpr double kMomentTol = 1e-10;

// Window radii for moments of kernels that decay exponentially (last rung reported,
// gap to the previous rung as the window error), and for the 1/R-extrapolated
// mass of the subtracted csch^2 integrand.
inline constexpr double kMomentRadii[] = {10.0, 20.0, 40.0};

// mu_n = int g(y) y^n dy for
//   coth_eps_imag (fixed eps or eps_limit): every n,
//   csch2 (finite part): n = 0 from the subtracted integrand, n >= 2 directly, odd n = 0,
//   delta: mu_0 = 1, else 0.
// Dilation must be 1. Throws std::domain_error for kernels whose moment diverges.
PairingResult moment(const KernelSpec& kernel, int n, double tol = kMomentTol);

// mu_{2m} of Im coth(y + i eps) at a = eps/pi:
//   (-1)^m 2 pi^{2m+1} B_{2m+1}(a) / (2m+1).
// Throws std::invalid_argument unless 0 < a < 1/2.
double moment_formula(int m, double a);

// int_0^inf x^{2m} / (cosh x - cos 2 a pi) dx by quadrature.
// Throws std::invalid_argument unless 0 < a < 1 and a != 1/2.
PairingResult cosh_power_integral(int m, double a, double tol = 1e-12);

// Right-hand side 2 (2m)!/sin(2 a pi) * sum_k sin(2 k a pi)/k^{2m+1}, series summed numerically.
PairingResult cosh_power_series_side(int m, double a);

// sum_{k>=1} sin(2 k a pi) / k^{2n+1}: direct partial sum plus an Euler-transformed tail.
// Throws std::invalid_argument unless 0 <= a < 1 (and a != 0 for n = 0).
PairingResult bernoulli_sine_series(int n, double a);

// Closed form (-1)^{n+1} (2 pi)^{2n+1} B_{2n+1}(a) / (2 (2n+1)!).
double bernoulli_sine_closed_form(int n, double a);

// sum_{n=0}^{N} mu_n phi^(n)(0) / (n! lambda^{n+1}), the truncated large-lambda
// expansion of <g(lambda .), phi>. N <= kMaxDerivativeOrder.
double moment_asymptotic_eval(const KernelSpec& kernel, const TestFunction& phi, double lambda,
                              int max_n, double tol = kMomentTol);

struct ComplexPairing {
  double real = 0.0;
  double imag = 0.0;
};

// <coth(. + i eps), phi> with the imaginary part as the delta series
// sum_{m<=M} c_m phi^(2m)(0), c_m = (-1)^m 2 pi^{2m+1} B_{2m+1}(eps/pi) / ((2m)! (2m+1)).
// The series is asymptotic in the probe width. Throws std::invalid_argument for M > 3
// or eps outside (0, pi/2).
ComplexPairing delta_series_pairing(const TestFunction& phi, double eps, int max_m);

struct MomentEntry {
  int n = 0;
  double numeric = 0.0;
  std::optional<double> closed_form;
  double abs_err = 0.0;
  bool converged = false;
};

struct MomentTable {
  KernelSpec kernel;
  double eps = 0.0;
  std::vector<MomentEntry> entries;
};

// Moments n = 0..max_n of Im coth(y + i eps) against the closed form (odd n: 0).
MomentTable coth_eps_moment_table(double eps, int max_n, double tol = kMomentTol);

// Header n,eps,numeric,closed_form,abs_err; an absent closed form prints as an empty field.
void write_csv(std::ostream& os, std::span<const MomentTable> tables);

// Even moments against the closed form: |numeric - formula| <= tol (1 + |mu|).
CheckOutcome moment_closed_form_check(std::span<const MomentTable> tables, double tol = 1e-7);

// Odd moments vanish: |numeric| <= tol.
CheckOutcome odd_moment_check(std::span<const MomentTable> tables, double tol = 1e-9);

// eps -> 0 limits of the even moments: -pi for m = 0 and 0 for m >= 1.
CheckOutcome moment_limit_check(int max_m, const LadderSpec& ladder = default_eps_ladder(),
                                double tol = kDefaultLimitTol);

// mu_0 of (csch^2)_st against -2.
CheckOutcome csch2_mass_check(double tol = 1e-8);

// Both sides of the cosh-power identity for every (m, a), and the (m=0, a=1/4) case
// against pi/2 at analytic_tol.
CheckOutcome cosh_power_identity_check(int max_m, std::span<const double> a_values,
                                       double tol = 1e-8, double analytic_tol = 1e-10);

// Residual of the N = 0 expansion of <(csch^2)_st(lambda .), phi> against the direct
// pairing; passes when the log-log slope over the lambda ladder is expected_slope +- slope_tol.
CheckOutcome moment_expansion_order_check(const TestFunction& phi,
                                          std::span<const double> lambdas,
                                          double expected_slope = -3.0, double slope_tol = 0.3);

// Least-squares slope of log|r| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> r);

}  // namespace distpair
