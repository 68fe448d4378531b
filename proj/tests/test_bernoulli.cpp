#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "distpair/bernoulli.hpp"

using namespace distpair;

TEST_CASE("Bernoulli numbers are exact") {
  CHECK(bernoulli_number(0) == Rational(1));
  CHECK(bernoulli_number(1) == Rational(-1, 2));
  CHECK(bernoulli_number(2) == Rational(1, 6));
  CHECK(bernoulli_number(4) == Rational(-1, 30));
  CHECK(bernoulli_number(6) == Rational(1, 42));
  CHECK(bernoulli_number(8) == Rational(-1, 30));
  CHECK(bernoulli_number(10) == Rational(5, 66));
  CHECK(bernoulli_number(12) == Rational(-691, 2730));
  CHECK(bernoulli_number(20) == Rational(-174611, 330));
  for (int n = 3; n < 40; n += 2) CHECK(bernoulli_number(n) == 0);
  CHECK(bernoulli_number_double(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
  CHECK_THROWS_AS(bernoulli_number(-1), std::invalid_argument);
}

TEST_CASE("Bernoulli polynomials") {
  for (int n = 0; n < 12; ++n) {
    CHECK(bernoulli_polynomial(n, 0.0) == doctest::Approx(bernoulli_number_double(n)));
  }
  CHECK(bernoulli_polynomial(1, 0.3) == doctest::Approx(0.3 - 0.5));
  CHECK(bernoulli_polynomial(3, 0.25) == doctest::Approx(3.0 / 64.0).epsilon(1e-15));
  // B_n(1 - a) = (-1)^n B_n(a) and B_n(a + 1) - B_n(a) = n a^(n-1)
  for (int n = 1; n < 10; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(bernoulli_polynomial(n, 0.7) == doctest::Approx(sign * bernoulli_polynomial(n, 0.3)));
    CHECK(bernoulli_polynomial(n, 1.4) - bernoulli_polynomial(n, 0.4) ==
          doctest::Approx(n * std::pow(0.4, n - 1)));
  }
}

TEST_CASE("concurrent first use yields identical values") {
  std::vector<Rational> results(8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < results.size(); ++t) {
      pool.emplace_back([&results, t] { results[t] = bernoulli_number(60 - 2 * static_cast<int>(t % 2)); });
    }
  }
  for (std::size_t t = 0; t < results.size(); ++t) {
    CHECK(results[t] == bernoulli_number(60 - 2 * static_cast<int>(t % 2)));
  }
}
