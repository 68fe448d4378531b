#pragma once

#include <span>
#include <vector>

#include "distpair/check_outcome.hpp"
#include "distpair/pairing.hpp"
#include "distpair/test_functions.hpp"

namespace distpair {

// Thermal energy, reduced Planck constant and friction; natural units by default.
struct PhysicalParams {
  double kT = 1.0;
  double hbar = 1.0;
  double zeta = 1.0;

  // pi kT / hbar, the inverse thermal time
  double lambda() const;

  // kT and zeta as given, hbar = pi kT / lambda.
  static PhysicalParams from_lambda(double lambda, double kT = 1.0, double zeta = 1.0);
};

// Throws std::invalid_argument unless every parameter is finite and positive.
void validate(const PhysicalParams& p);

// Gaussian frequency cutoffs Omega_i = omega_scale * ladder[i], ladder strictly increasing.
struct CutoffSpec {
  double omega_scale = 1.0;
  std::vector<double> ladder{50.0, 100.0, 200.0};
};

// omega_scale = lambda with the default ladder.
CutoffSpec default_cutoff(const PhysicalParams& p);

// Throws std::invalid_argument unless omega_scale > 0 and the ladder has >= 3 increasing entries.
void validate(const CutoffSpec& cut);

// int phi(t) cos(omega t) dt: closed form for the gaussian families, trapezoid rule
// on the support for bumps (exponentially accurate for compactly supported smooth probes).
double fourier_cos(const TestFunction& phi, double omega);

// Same, always by the trapezoid rule (independent route for the closed forms).
double fourier_cos_numeric(const TestFunction& phi, double omega);

// <K, phi> for K(t) = (zeta/pi) int_0^inf hbar w coth(hbar w / 2kT) cos(w t) dw, as
//   (zeta/pi) int_0^inf hbar w coth(hbar w / 2kT) Phi(w) exp(-w^2/Omega^2) dw
// with Phi the cosine transform of phi, extrapolated to Omega -> inf in 1/Omega^2.
// tol is relative to max(|<K, phi>|, kT zeta). numeric_transform forces the
// trapezoid transform (a double quadrature).
PairingResult autocorr_pair(const PhysicalParams& p, const TestFunction& phi,
                            const CutoffSpec& cut, double tol = 1e-9,
                            bool numeric_transform = false);

// kT zeta <d/dt coth(lambda t), phi>, the weak derivative of the principal value.
PairingResult coth_derivative_part(const PhysicalParams& p, const TestFunction& phi,
                                   double tol = 1e-10);

// -kT zeta lambda <(csch^2)_st(lambda t), phi>.
PairingResult csch2_part(const PhysicalParams& p, const TestFunction& phi, double tol = 1e-10);

// Per probe, extracts the delta coefficient <K, phi> - kT zeta <d/dt coth(lambda t), phi>
// and compares it with 2 kT zeta phi(0). Residual relative to max(|<K, phi>|, kT zeta).
CheckOutcome split_check(const PhysicalParams& p, const std::vector<TestFunction>& battery,
                         double tol = 1e-5);

// <K, phi> by the closed-form transform against the double quadrature (trapezoid
// transform) for every probe; residual relative to max(|<K, phi>|, kT zeta).
CheckOutcome autocorr_route_check(const PhysicalParams& p, const std::vector<TestFunction>& battery,
                                  double tol = 1e-6);

// p0 with hbar halved at each of count rungs (lambda doubling).
std::vector<PhysicalParams> hbar_ladder(const PhysicalParams& p0, int count = 4);

// Along a decreasing-hbar ladder: the csch^2 part tends to 2 kT zeta phi(0) with a
// log-log residual slope of -2 +- slope_tol over the last three rungs, and the
// residual of <K, phi> against the same value decreases monotonically.
CheckOutcome semiclassical_limit(std::span<const PhysicalParams> ladder, const TestFunction& phi,
                                 double slope_tol = 0.3);

}  // namespace distpair
