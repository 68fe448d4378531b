#include <cmath>
#include <numbers>

#include "distpair/simd_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define DISTPAIR_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define DISTPAIR_HAVE_AVX2_KERNELS 0
#endif

namespace distpair::simd::avx2 {

#if DISTPAIR_HAVE_AVX2_KERNELS

#define DISTPAIR_AVX2 __attribute__((target("avx2")))

namespace {

// Four independent Neumaier accumulators, one per lane.
struct Lanes {
  __m256d sum;
  __m256d comp;
};

DISTPAIR_AVX2 inline Lanes lanes_zero() { return {_mm256_setzero_pd(), _mm256_setzero_pd()}; }

DISTPAIR_AVX2 inline void lanes_add(Lanes& acc, __m256d x) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d t = _mm256_add_pd(acc.sum, x);
  const __m256d sum_bigger =
      _mm256_cmp_pd(_mm256_and_pd(acc.sum, abs_mask), _mm256_and_pd(x, abs_mask), _CMP_GE_OQ);
  const __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(acc.sum, t), x);
  const __m256d c_x = _mm256_add_pd(_mm256_sub_pd(x, t), acc.sum);
  acc.comp = _mm256_add_pd(acc.comp, _mm256_blendv_pd(c_x, c_sum, sum_bigger));
  acc.sum = t;
}

// Scalar Neumaier step, shared by the lane reduction and the remainder loop.
inline void scalar_add(double& sum, double& comp, double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

DISTPAIR_AVX2 inline void lanes_reduce(const Lanes& acc, double& sum, double& comp) {
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, acc.sum);
  _mm256_store_pd(c, acc.comp);
  for (int i = 0; i < 4; ++i) scalar_add(sum, comp, s[i]);
  for (int i = 0; i < 4; ++i) comp += c[i];
}

}  // namespace

bool compiled() { return true; }

DISTPAIR_AVX2 double coth_partial_sum(double y, std::int64_t terms) {
  const double y2 = y * y;
  const __m256d vy2 = _mm256_set1_pd(y2);
  const __m256d vtwo_y = _mm256_set1_pd(2.0 * y);
  const __m256d vpi = _mm256_set1_pd(std::numbers::pi);
  const __m256d vstep = _mm256_set1_pd(4.0);
  Lanes acc = lanes_zero();
  std::int64_t k = terms;
  __m256d vk = _mm256_set_pd(static_cast<double>(k - 3), static_cast<double>(k - 2),
                             static_cast<double>(k - 1), static_cast<double>(k));
  for (; k >= 4; k -= 4) {
    const __m256d kp = _mm256_mul_pd(vk, vpi);
    const __m256d den = _mm256_add_pd(vy2, _mm256_mul_pd(kp, kp));
    lanes_add(acc, _mm256_div_pd(vtwo_y, den));
    vk = _mm256_sub_pd(vk, vstep);
  }
  double sum = 0.0;
  double comp = 0.0;
  lanes_reduce(acc, sum, comp);
  for (; k >= 1; --k) {
    const double kp = static_cast<double>(k) * std::numbers::pi;
    scalar_add(sum, comp, 2.0 * y / (y2 + kp * kp));
  }
  return sum + comp;
}

DISTPAIR_AVX2 double csch2_partial_sum(double y, std::int64_t terms) {
  const double y2 = y * y;
  const __m256d vy2 = _mm256_set1_pd(y2);
  const __m256d vtwo = _mm256_set1_pd(2.0);
  const __m256d vpi = _mm256_set1_pd(std::numbers::pi);
  const __m256d vstep = _mm256_set1_pd(4.0);
  Lanes acc = lanes_zero();
  std::int64_t k = terms;
  __m256d vk = _mm256_set_pd(static_cast<double>(k - 3), static_cast<double>(k - 2),
                             static_cast<double>(k - 1), static_cast<double>(k));
  for (; k >= 4; k -= 4) {
    const __m256d kp = _mm256_mul_pd(vk, vpi);
    const __m256d k2 = _mm256_mul_pd(kp, kp);
    const __m256d den = _mm256_add_pd(vy2, k2);
    const __m256d num = _mm256_mul_pd(vtwo, _mm256_sub_pd(vy2, k2));
    lanes_add(acc, _mm256_div_pd(num, _mm256_mul_pd(den, den)));
    vk = _mm256_sub_pd(vk, vstep);
  }
  double sum = 0.0;
  double comp = 0.0;
  lanes_reduce(acc, sum, comp);
  for (; k >= 1; --k) {
    const double kp = static_cast<double>(k) * std::numbers::pi;
    const double k2 = kp * kp;
    const double d = y2 + k2;
    scalar_add(sum, comp, 2.0 * (y2 - k2) / (d * d));
  }
  return sum + comp;
}

DISTPAIR_AVX2 double weighted_sum(std::span<const double> weights, std::span<const double> values) {
  const std::size_t n = weights.size();
  Lanes acc = lanes_zero();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    const __m256d f = _mm256_loadu_pd(values.data() + i);
    lanes_add(acc, _mm256_mul_pd(w, f));
  }
  double sum = 0.0;
  double comp = 0.0;
  lanes_reduce(acc, sum, comp);
  for (; i < n; ++i) scalar_add(sum, comp, weights[i] * values[i]);
  return sum + comp;
}

DISTPAIR_AVX2 double weighted_abs_sum(std::span<const double> weights,
                                      std::span<const double> values) {
  const std::size_t n = weights.size();
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(weights.data() + i);
    const __m256d f = _mm256_loadu_pd(values.data() + i);
    acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_mul_pd(w, f), abs_mask));
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double sum = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) sum += std::abs(weights[i] * values[i]);
  return sum;
}

#else  // no x86-64: the dispatcher never selects these

bool compiled() { return false; }
double coth_partial_sum(double y, std::int64_t terms) { return scalar::coth_partial_sum(y, terms); }
double csch2_partial_sum(double y, std::int64_t terms) { return scalar::csch2_partial_sum(y, terms); }
double weighted_sum(std::span<const double> w, std::span<const double> f) {
  return scalar::weighted_sum(w, f);
}
double weighted_abs_sum(std::span<const double> w, std::span<const double> f) {
  return scalar::weighted_abs_sum(w, f);
}

#endif

}  // namespace distpair::simd::avx2
