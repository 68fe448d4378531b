#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and an AVX2
// variant; the public entry points dispatch at runtime on the detected ISA.
// Set DISTPAIR_SIMD=scalar in the environment to force the reference path.

#include <cstdint>
#include <span>
#include <string_view>

namespace distpair::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best ISA supported by this CPU and build.
Isa detected_isa();

// ISA used by the dispatching entry points (detected, unless overridden).
Isa active_isa();

// Overrides the dispatch target; the request is clamped to detected_isa().
void set_active_isa(Isa isa);

// sum_{k=1}^{K} 2y / (y^2 + k^2 pi^2), compensated, smallest terms first.
double coth_partial_sum(double y, std::int64_t terms);

// sum_{k=1}^{K} 2(y^2 - k^2 pi^2) / (y^2 + k^2 pi^2)^2, compensated, smallest terms first.
double csch2_partial_sum(double y, std::int64_t terms);

// Compensated dot product sum_i w_i f_i. Spans must have equal length.
double weighted_sum(std::span<const double> weights, std::span<const double> values);

// sum_i |w_i f_i|, used as a rounding-error floor by the quadrature.
double weighted_abs_sum(std::span<const double> weights, std::span<const double> values);

namespace scalar {
double coth_partial_sum(double y, std::int64_t terms);
double csch2_partial_sum(double y, std::int64_t terms);
double weighted_sum(std::span<const double> weights, std::span<const double> values);
double weighted_abs_sum(std::span<const double> weights, std::span<const double> values);
}  // namespace scalar

namespace avx2 {
bool compiled();
double coth_partial_sum(double y, std::int64_t terms);
double csch2_partial_sum(double y, std::int64_t terms);
double weighted_sum(std::span<const double> weights, std::span<const double> values);
double weighted_abs_sum(std::span<const double> weights, std::span<const double> values);
}  // namespace avx2

}  // namespace distpair::simd
