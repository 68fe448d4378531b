#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "distpair/quadrature.hpp"

using namespace distpair;

TEST_CASE("polynomial and exponential integrals") {
  const QuadratureResult q = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const QuadratureResult e = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-13);
  CHECK(e.value == doctest::Approx(1.0 - std::exp(-50.0)).epsilon(1e-14));
  CHECK(e.error <= 1e-13);
}

TEST_CASE("endpoint singularities are handled by the variable transform") {
  const QuadratureResult q = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(2.0).epsilon(1e-10));
  const QuadratureResult l = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12);
  CHECK(l.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("panels") {
  const double points[] = {-1.0, 0.0, 0.5, 2.0};
  const QuadratureResult q = integrate([](double x) { return std::abs(x); }, points, 1e-13);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("bisection rescues a kink inside a panel") {
  const QuadratureResult q = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 1e-10);
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(0.045 + 0.245).epsilon(1e-10));
}

TEST_CASE("non-convergence is reported") {
  QuadratureOptions opts;
  opts.max_level = 3;
  opts.max_depth = 0;
  const QuadratureResult q =
      integrate([](double x) { return std::sin(400.0 * x * x); }, 0.0, 3.0, 1e-12, opts);
  CHECK_FALSE(q.converged);
}

TEST_CASE("empty interval") {
  const QuadratureResult q = integrate([](double) { return 1.0; }, 1.0, 1.0, 1e-12);
  CHECK(q.value == 0.0);
  CHECK(q.converged);
}
