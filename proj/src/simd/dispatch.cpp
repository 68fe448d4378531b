#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "distpair/simd_kernels.hpp"

namespace distpair::simd {

namespace {

Isa probe_cpu() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::compiled() && __builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa initial_isa() {
  const Isa detected = detected_isa();
  if (const char* env = std::getenv("DISTPAIR_SIMD")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return detected;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe_cpu();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2) isa = Isa::scalar;
  active().store(isa, std::memory_order_relaxed);
}

double coth_partial_sum(double y, std::int64_t terms) {
  return active_isa() == Isa::avx2 ? avx2::coth_partial_sum(y, terms)
                                   : scalar::coth_partial_sum(y, terms);
}

double csch2_partial_sum(double y, std::int64_t terms) {
  return active_isa() == Isa::avx2 ? avx2::csch2_partial_sum(y, terms)
                                   : scalar::csch2_partial_sum(y, terms);
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  if (weights.size() != values.size()) throw std::invalid_argument("weighted_sum: length mismatch");
  return active_isa() == Isa::avx2 ? avx2::weighted_sum(weights, values)
                                   : scalar::weighted_sum(weights, values);
}

double weighted_abs_sum(std::span<const double> weights, std::span<const double> values) {
  if (weights.size() != values.size()) {
    throw std::invalid_argument("weighted_abs_sum: length mismatch");
  }
  return active_isa() == Isa::avx2 ? avx2::weighted_abs_sum(weights, values)
                                   : scalar::weighted_abs_sum(weights, values);
}

}  // namespace distpair::simd
