#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "distpair/check_outcome.hpp"
#include "distpair/pairing.hpp"
#include "distpair/special_functions.hpp"
#include "distpair/test_functions.hpp"

namespace distpair {

inline constexpr double kDerivativeCheckTol = 1e-6;

// Weak derivative identity d/dy coth y = -(csch^2 y)_st. For each probe,
//   Delta(phi) = <(coth)', phi>_weak + <(csch^2)_st, phi>,
// PASS when |Delta| <= tol * scale(phi) for every probe, scale = max(1, sup|phi|, sup|phi'|).
// The contrasting hypothesis d/dy coth y = -csch^2 y + 2 delta(y) is reported per
// probe as fo_residual = Delta - 2 phi(0).
// Throws std::invalid_argument unless the battery holds a probe with phi(0) = 1
// and one with phi(0) = 0.
CheckOutcome check_derivative_identity(const std::vector<TestFunction>& battery,
                                       double tol = kDerivativeCheckTol);

// <coth(. + i eps), phi> in the eps -> 0 limit against its decomposition
//   Re: sum_{0<|k|<=K} int phi(y)/(y + i k pi) dy + lim <y/(y^2 + eps^2), phi>
//   Im: -pi phi(0)
// Both sides are ladder-extrapolated; residual is the larger component gap.
CheckOutcome coth_eps_decomposition_check(const TestFunction& phi,
                                          const SeriesTruncation& trunc = {},
                                          const LadderSpec& ladder = default_eps_ladder(),
                                          double tol = kDefaultLimitTol);

// eps -> 0 limits of both components of <coth(. + i eps), phi>: the imaginary part
// against -pi phi(0), the real part against the principal value of coth.
CheckOutcome nascent_delta_check(const std::vector<TestFunction>& probes,
                                 const LadderSpec& ladder = default_eps_ladder(),
                                 double tol = kDefaultLimitTol);

// pair(T, a phi_i + b phi_j) against a pair(T, phi_i) + b pair(T, phi_j) for `draws`
// random (i, j, a, b), a and b uniform in [-2, 2], from a seeded 64-bit Mersenne twister.
CheckOutcome linearity_check(const KernelSpec& kernel, const std::vector<TestFunction>& battery,
                             std::uint64_t seed, int draws = 8, double tol = 1e-7);

// Partial-fraction series against direct evaluation on a grid of y in [0.1, 5]
// (absolute series_tol), and decompose_sign against coth_direct (relative sign_tol).
CheckOutcome series_accuracy_check(const SeriesTruncation& trunc = {}, double series_tol = 1e-10,
                                   double sign_tol = 1e-13);

}  // namespace distpair
