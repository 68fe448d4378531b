#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "distpair/moments.hpp"

using namespace distpair;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("csch2 moments") {
  const KernelSpec k = KernelSpec::csch2_fp();
  const PairingResult m0 = moment(k, 0);
  CHECK(m0.converged);
  CHECK(std::abs(m0.value + 2.0) < 1e-9);
  CHECK(moment(k, 2).value == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-12));
  CHECK(moment(k, 4).value == doctest::Approx(6.4939394022668291).epsilon(1e-12));
  CHECK(moment(k, 3).value == 0.0);
  CHECK(moment(KernelSpec::delta_fn(), 0).value == 1.0);
  CHECK(moment(KernelSpec::delta_fn(), 2).value == 0.0);
}

TEST_CASE("divergent moments are rejected") {
  CHECK_THROWS_AS(moment(KernelSpec::coth_pv(), 0), std::domain_error);
  CHECK_THROWS_AS(moment(KernelSpec::inv_y2_fp(), 0), std::domain_error);
  CHECK_THROWS_AS(moment(KernelSpec::langevin_fn(), 1), std::domain_error);
  CHECK_THROWS_AS(moment(KernelSpec::csch2_fp(2.0), 0), std::invalid_argument);
}

TEST_CASE("shifted coth moments against the closed form") {
  for (double eps : {0.3, 0.1}) {
    const double a = eps / kPi;
    for (int m = 0; m <= 3; ++m) {
      const PairingResult num = moment(KernelSpec::coth_eps_imag_at(eps), 2 * m);
      CHECK(num.converged);
      CHECK(std::abs(num.value - moment_formula(m, a)) <= 1e-9 * (1.0 + std::abs(num.value)));
      CHECK(std::abs(moment(KernelSpec::coth_eps_imag_at(eps), 2 * m + 1).value) < 1e-12);
    }
  }
  CHECK(moment_formula(0, 0.25) == doctest::Approx(-kPi / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(moment_formula(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(moment_formula(0, 0.0), std::invalid_argument);
}

TEST_CASE("eps -> 0 limits of the moments") {
  const PairingResult m0 = moment(KernelSpec::coth_eps_imag_limit(), 0, 1e-8);
  CHECK(std::abs(m0.value + kPi) < 1e-8);
  const PairingResult m2 = moment(KernelSpec::coth_eps_imag_limit(), 2, 1e-8);
  CHECK(std::abs(m2.value) < 1e-8);
  CHECK(moment_limit_check(3).verdict == Verdict::pass);
}

TEST_CASE("cosh-power identity") {
  const PairingResult quarter = cosh_power_integral(0, 0.25);
  CHECK(quarter.converged);
  CHECK(std::abs(quarter.value - kPi / 2.0) < 1e-12);
  for (int m = 0; m <= 2; ++m) {
    for (double a : {0.1, 0.25, 0.4}) {
      const double lhs = cosh_power_integral(m, a).value;
      const double rhs = cosh_power_series_side(m, a).value;
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
  CHECK_THROWS_AS(cosh_power_integral(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cosh_power_integral(0, 1.0), std::invalid_argument);
  const std::vector<double> a_values{0.1, 0.25, 0.4};
  CHECK(cosh_power_identity_check(2, a_values).verdict == Verdict::pass);
}

TEST_CASE("Bernoulli sine series") {
  CHECK(std::abs(bernoulli_sine_series(0, 0.25).value - kPi / 4.0) < 1e-12);
  CHECK(std::abs(bernoulli_sine_series(1, 0.25).value - kPi * kPi * kPi / 32.0) < 1e-13);
  CHECK(bernoulli_sine_closed_form(1, 0.25) == doctest::Approx(kPi * kPi * kPi / 32.0).epsilon(1e-15));
  CHECK(bernoulli_sine_series(2, 0.0).value == 0.0);
  CHECK_THROWS_AS(bernoulli_sine_series(0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bernoulli_sine_series(1, 1.0), std::invalid_argument);
  for (int n = 0; n <= 3; ++n) {
    for (double a : {0.01, 0.1, 0.3, 0.49, 0.9}) {
      INFO("n=", n, " a=", a);
      CHECK(std::abs(bernoulli_sine_series(n, a).value - bernoulli_sine_closed_form(n, a)) < 1e-12);
    }
  }
}

TEST_CASE("large-lambda expansion") {
  const TestFunction g = gaussian(0.0, 1.0);
  CHECK(moment_asymptotic_eval(KernelSpec::csch2_fp(), g, 100.0, 0) ==
        doctest::Approx(-0.02).epsilon(1e-9));
  const std::vector<double> lambdas{10.0, 20.0, 40.0};
  const CheckOutcome o = moment_expansion_order_check(g, lambdas);
  CHECK(o.verdict == Verdict::pass);
  CHECK(o.residual < 0.3);
  CHECK(std::get<double>(o.details.back().cells[0].second) == doctest::Approx(-3.0).epsilon(0.1));
  const std::vector<double> x{1.0, 2.0, 4.0};
  const std::vector<double> r{1.0, 0.125, 0.015625};
  CHECK(loglog_slope(x, r) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("delta series is asymptotic") {
  const TestFunction phi = gaussian(0.0, 2.0);
  const double eps = 0.1;
  const double exact = pair(KernelSpec::coth_eps_imag_at(eps), phi, 1e-12).value;
  for (int m = 0; m < 3; ++m) {
    const double err = delta_series_pairing(phi, eps, m).imag - exact;
    const double next = delta_series_pairing(phi, eps, m + 1).imag - delta_series_pairing(phi, eps, m).imag;
    INFO("M=", m);
    CHECK(std::abs(err) <= std::abs(next));
  }
  CHECK(delta_series_pairing(hermite_gaussian(1, 0.0, 1.0), eps, 3).imag == 0.0);
  const ComplexPairing c = delta_series_pairing(gaussian(0.5, 1.0), eps, 0);
  CHECK(c.imag == doctest::Approx(moment_formula(0, eps / kPi) * std::exp(-0.25)));
  CHECK_THROWS_AS(delta_series_pairing(phi, eps, 4), std::invalid_argument);
  CHECK_THROWS_AS(delta_series_pairing(phi, 2.0, 1), std::invalid_argument);
}

TEST_CASE("moment table, CSV and checks") {
  std::vector<MomentTable> tables{coth_eps_moment_table(0.3, 6), coth_eps_moment_table(0.1, 6)};
  CHECK(tables[0].entries.size() == 7);
  CHECK(tables[0].entries[1].closed_form == 0.0);
  std::ostringstream os;
  write_csv(os, tables);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "n,eps,numeric,closed_form,abs_err");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 14);
  CHECK(moment_closed_form_check(tables).verdict == Verdict::pass);
  CHECK(odd_moment_check(tables).verdict == Verdict::pass);
  CHECK(csch2_mass_check().verdict == Verdict::pass);
  CHECK(moment_closed_form_check(tables, 1e-30).verdict != Verdict::pass);
}
