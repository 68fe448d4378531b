#include "distpair/bernoulli.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace distpair {

namespace {

class BernoulliCache {
 public:
  Rational get(int n) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<int>(values_.size())) return values_[n];
    }
    std::unique_lock lock(mutex_);
    extend_to(n);
    return values_[n];
  }

 private:
  // Akiyama-Tanigawa, run incrementally: work_[j] holds a_{m-j,j} after step m,
  // so work_[0] is B_m (with B_1 = +1/2; the sign is flipped on store).
  void extend_to(int n) {
    while (static_cast<int>(values_.size()) <= n) {
      const int m = static_cast<int>(values_.size());
      work_.emplace_back(1, m + 1);
      for (int j = m; j >= 1; --j) work_[j - 1] = j * (work_[j - 1] - work_[j]);
      values_.push_back(m == 1 ? Rational(-work_[0]) : work_[0]);
    }
  }

  std::shared_mutex mutex_;
  std::vector<Rational> values_;
  std::vector<Rational> work_;
};

BernoulliCache& cache() {
  static BernoulliCache instance;
  return instance;
}

}  // namespace

Rational bernoulli_number(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_number: negative index");
  return cache().get(n);
}

double bernoulli_number_double(int n) {
  return bernoulli_number(n).convert_to<double>();
}

double bernoulli_polynomial(int n, double a) {
  if (n < 0) throw std::invalid_argument("bernoulli_polynomial: negative index");
  // Horner in a over descending powers: coefficient of a^(n-k) is C(n,k) B_k.
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    acc = acc * a + binom * bernoulli_number_double(k);
    binom = binom * (n - k) / (k + 1);
  }
  return acc;
}

}  // namespace distpair
