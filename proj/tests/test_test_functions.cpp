#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "distpair/probe.hpp"
#include "distpair/test_functions.hpp"

using namespace distpair;

namespace {

// Richardson-extrapolated central difference of eval(phi, ., k - 1)
double fd_derivative(const TestFunction& phi, double y, int k) {
  const double h = 1e-3 * phi.width;
  auto central = [&](double step) {
    return (eval(phi, y + step, k - 1) - eval(phi, y - step, k - 1)) / (2.0 * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace

TEST_CASE("closed-form values") {
  CHECK(eval(gaussian(0.0, 1.0), 0.0) == 1.0);
  CHECK(eval(gaussian(2.0, 0.5), 0.0) == doctest::Approx(std::exp(-16.0)).epsilon(1e-14));
  CHECK(eval(gaussian(0.0, 1.0), 0.0, 2) == -2.0);
  CHECK(eval(hermite_gaussian(1, 0.0, 1.0), 0.0) == 0.0);
  CHECK(eval(hermite_gaussian(2, 0.0, 1.0), 0.0) == -2.0);
  CHECK(eval(bump(0.0, 1.0), 0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("derivatives agree with finite differences across the battery") {
  for (const TestFunction& phi : shifted_family()) {
    for (int k = 1; k <= 4; ++k) {
      double worst = 0.0;
      double scale = 0.0;
      for (double y = -5.0; y <= 5.0; y += 0.0625) {
        const double exact = eval(phi, y, k);
        scale = std::max(scale, std::abs(exact));
        worst = std::max(worst, std::abs(fd_derivative(phi, y, k) - exact));
      }
      INFO(label(phi), " k=", k);
      CHECK(worst <= 1e-6 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("bumps vanish exactly outside their support") {
  const TestFunction b = bump(0.5, 2.0);
  for (int k = 0; k <= kMaxDerivativeOrder; ++k) {
    CHECK(eval(b, -1.5, k) == 0.0);
    CHECK(eval(b, 2.5, k) == 0.0);
    CHECK(eval(b, 100.0, k) == 0.0);
    CHECK(eval(b, -1.5000001, k) == 0.0);
  }
  CHECK(eval(b, 2.4, 0) > 0.0);
  CHECK(support(b).first == -1.5);
  CHECK(support(b).second == 2.5);
}

TEST_CASE("battery is deterministic and contains both probe kinds") {
  const auto a = shifted_family();
  const auto b = shifted_family();
  CHECK(a == b);
  CHECK(a.size() == 21);
  const bool has_one = std::any_of(a.begin(), a.end(), [](const auto& p) { return eval(p, 0.0) == 1.0; });
  const bool has_zero = std::any_of(a.begin(), a.end(), [](const auto& p) { return eval(p, 0.0) == 0.0; });
  CHECK(has_one);
  CHECK(has_zero);
  BatteryParams custom;
  custom.centers = {1.0};
  custom.widths = {3.0};
  custom.extra.clear();
  CHECK(shifted_family(custom) == std::vector<TestFunction>{gaussian(1.0, 3.0)});
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(gaussian(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bump(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(hermite_gaussian(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(eval(gaussian(0.0, 1.0), 0.0, kMaxDerivativeOrder + 1), std::invalid_argument);
  CHECK_THROWS_AS(eval(gaussian(0.0, 1.0), 0.0, -1), std::invalid_argument);
  CHECK(label(gaussian(0.0, 1.0)) == "gaussian(c=0,w=1)");
}

TEST_CASE("derived probes") {
  const Probe p = Probe::from(gaussian(0.5, 1.0));
  CHECK(p.derivative_probe()(0.2) == doctest::Approx(eval(gaussian(0.5, 1.0), 0.2, 1)));
  CHECK(p.dilated(3.0)(0.9) == doctest::Approx(p(0.3)));
  CHECK(p.dilated(3.0).derivative(0.9, 1) == doctest::Approx(p.derivative(0.3, 1) / 3.0));
  CHECK(p.reflected()(0.2) == doctest::Approx(p(-0.2)));
  CHECK(p.reflected().derivative(0.2, 1) == doctest::Approx(-p.derivative(-0.2, 1)));
  CHECK(p.scaled(-2.0).plus(p)(0.1) == doctest::Approx(-p(0.1)));
  const Probe w = Probe::moment_window(2, 10.0);
  CHECK(w(3.0) == 9.0);
  CHECK(w(25.0) == 0.0);
  CHECK(w(-15.0) > 0.0);
  CHECK(w(-15.0) < 225.0);
  CHECK_THROWS_AS(w.derivative(1.0, 1), std::invalid_argument);
}
