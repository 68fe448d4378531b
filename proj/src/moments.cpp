#include "distpair/moments.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "distpair/bernoulli.hpp"
#include "distpair/parallel.hpp"
#include "distpair/quadrature.hpp"
#include "distpair/special_functions.hpp"

namespace distpair {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool within(double err, double tol, double value) { return err <= tol * (1.0 + std::abs(value)); }

// Moment of an exponentially decaying kernel over the window ladder. The window
// error shrinks geometrically with R, so the error beyond the last rung is
// estimated from the last two gaps.
PairingResult windowed(const std::function<double(double)>& kernel, int n, double tol,
                       const std::vector<double>& breaks) {
  std::vector<PairingResult> rungs;
  int nodes = 0;
  bool converged = true;
  for (double r : kMomentRadii) {
    std::vector<double> b = breaks;
    b.push_back(-r);
    b.push_back(r);
    rungs.push_back(pair_smooth(kernel, Probe::moment_window(n, r), 0.1 * tol, b));
    nodes += rungs.back().nodes_used;
    converged = converged && rungs.back().converged;
  }
  const PairingResult& last = rungs.back();
  const double g1 = std::abs(rungs[1].value - rungs[0].value);
  const double g2 = std::abs(rungs[2].value - rungs[1].value);
  const double window = g1 > 0.0 ? std::min(g2, g2 * g2 / g1) : g2;
  const double err = last.error_estimate + window;
  return {last.value, err, nodes, converged && within(err, tol, last.value)};
}

// int_{-R}^{R} (csch^2 y - 1/y^2) dy - 2/R: the subtracted integrand is -1/y^2 up to
// O(e^{-2y}) beyond R, so only exponentially small window error remains.
PairingResult csch2_mass(double tol) {
  std::vector<PairingResult> rungs;
  for (double r : kMomentRadii) {
    const double points[] = {0.0, 1.0, 4.0, r};
    const QuadratureResult q = integrate(csch2_regular_part, points, 0.05 * tol);
    rungs.push_back({2.0 * q.value - 2.0 / r, 2.0 * q.error, q.evaluations, q.converged});
  }
  const double g1 = std::abs(rungs[1].value - rungs[0].value);
  const double g2 = std::abs(rungs[2].value - rungs[1].value);
  const double window = g1 > 0.0 ? std::min(g2, g2 * g2 / g1) : g2;
  PairingResult out = rungs.back();
  out.error_estimate += window;
  for (const PairingResult& r : rungs) out.converged = out.converged && r.converged;
  out.converged = out.converged && out.error_estimate <= tol;
  return out;
}

}  // namespace

PairingResult moment(const KernelSpec& kernel, int n, double tol) {
  validate(kernel);
  if (n < 0) throw std::invalid_argument("moment order must be non-negative");
  if (!(tol > 0.0)) throw std::invalid_argument("moment tolerance must be positive");
  if (kernel.dilation != 1.0) throw std::invalid_argument("moments are taken of undilated kernels");
  switch (kernel.kind) {
    case KernelKind::delta:
      return {n == 0 ? 1.0 : 0.0, 0.0, 1, true};
    case KernelKind::csch2:
      if (n == 0) return csch2_mass(tol);
      if (n % 2 == 1) return {0.0, 0.0, 0, true};
      return windowed(
          [](double y) {
            if (y == 0.0) return 1.0;
            const double q = y / std::sinh(y);
            return q * q;
          },
          n - 2, tol, {});
    case KernelKind::coth_eps_imag:
      if (kernel.regularization == Regularization::eps_limit) {
        std::vector<PairingResult> rungs;
        for (double e : kernel.ladder.values) {
          rungs.push_back(moment(KernelSpec::coth_eps_imag_at(e), n, std::min(1e-3 * tol, 1e-11)));
        }
        PairingResult out = extrapolate_limit(rungs, kernel.ladder);
        out.converged = out.converged && within(out.error_estimate, tol, out.value);
        return out;
      } else {
        const double e = kernel.eps;
        return windowed([e](double y) { return coth_eps_imag(y, e); }, n, tol,
                        {-4.0 * e, -e, e, 4.0 * e, -1.0, 1.0});
      }
    default:
      throw std::domain_error("moment of order " + std::to_string(n) + " diverges for kernel " +
                              to_string(kernel.kind));
  }
}

double moment_formula(int m, double a) {
  if (m < 0) throw std::invalid_argument("moment_formula: m must be non-negative");
  if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("moment_formula: need 0 < a < 1/2");
  const int k = 2 * m + 1;
  const double sign = m % 2 == 0 ? 1.0 : -1.0;
  return sign * 2.0 * std::pow(kPi, k) * bernoulli_polynomial(k, a) / k;
}

PairingResult cosh_power_integral(int m, double a, double tol) {
  if (m < 0) throw std::invalid_argument("cosh_power_integral: m must be non-negative");
  if (!(a > 0.0 && a < 1.0) || a == 0.5) {
    throw std::invalid_argument("cosh_power_integral: need 0 < a < 1, a != 1/2");
  }
  const double s = std::sin(kPi * a);
  const double s2 = 2.0 * s * s;
  const int p = 2 * m;
  // cosh x - cos 2 a pi = 2 sinh^2(x/2) + 2 sin^2(a pi), free of cancellation near 0
  auto f = [=](double x) {
    const double h = std::sinh(0.5 * x);
    return std::pow(x, p) / (2.0 * h * h + s2);
  };
  const double upper = 80.0 + 10.0 * m;
  const double points[] = {0.0, 0.5, 2.0, 8.0, 32.0, upper};
  const QuadratureResult q = integrate(f, points, tol);
  return {q.value, q.error, q.evaluations, q.converged};
}

PairingResult bernoulli_sine_series(int n, double a) {
  if (n < 0) throw std::invalid_argument("bernoulli_sine_series: n must be non-negative");
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("bernoulli_sine_series: need 0 <= a < 1");
  if (a == 0.0) {
    if (n == 0) throw std::invalid_argument("bernoulli_sine_series: n = 0 needs a != 0");
    return {0.0, 0.0, 0, true};
  }
  using ld = long double;
  const int s = 2 * n + 1;
  const ld two_pi = 2.0L * std::numbers::pi_v<ld>;
  // frac(k a) with the product split exactly into hi + lo, so large k lose no phase.
  auto phase = [&](std::int64_t k) {
    const double kd = static_cast<double>(k);
    const double hi = kd * a;
    const double lo = std::fma(kd, a, -hi);
    const ld f = static_cast<ld>(hi - std::floor(hi)) + static_cast<ld>(lo);
    return two_pi * f;
  };
  const double gap = 2.0 * std::sin(kPi * a);  // |1 - e^{i 2 pi a}|
  constexpr double kMaxTerms = 1e8;
  const double want = std::max(2000.0, std::ceil(2000.0 / gap));
  const std::int64_t terms = static_cast<std::int64_t>(std::min(want, kMaxTerms));

  ld direct = 0.0L;
  for (std::int64_t k = terms; k >= 1; --k) {
    direct += std::sin(phase(k)) / std::pow(static_cast<ld>(k), s);
  }

  // Euler transform of the tail: sum_{j>=0} z^j g_j = sum_r z^r Delta^r g_0 / (1 - z)^{r+1},
  // g_j = (terms + 1 + j)^{-s}, z = e^{i 2 pi a}.
  constexpr int kOrders = 12;
  std::vector<ld> diff(kOrders + 1);
  for (int j = 0; j <= kOrders; ++j) diff[j] = std::pow(static_cast<ld>(terms + 1 + j), -s);
  const ld g0 = diff[0];
  const std::complex<ld> z = std::polar(1.0L, phase(1));
  const std::complex<ld> ratio = z / (1.0L - z);
  std::complex<ld> factor = std::polar(1.0L, phase(terms + 1)) / (1.0L - z);
  std::complex<ld> tail = 0.0L;
  ld last = 0.0L;
  int used = 0;
  for (int r = 0; r <= kOrders; ++r) {
    const std::complex<ld> term = factor * diff[0];
    const ld mag = std::abs(term);
    if (r > 0 && mag > last) break;
    tail += term;
    last = mag;
    used = r;
    if (mag < 1e-24L) break;
    for (int j = 0; j + r < kOrders; ++j) diff[j] = diff[j + 1] - diff[j];
    factor *= ratio;
  }
  const ld rounding = std::ldexp(1.0L, used) * LDBL_EPSILON * g0 /
                      std::pow(static_cast<ld>(gap), used + 1);
  const double err = static_cast<double>(last + rounding) + 1e-18 * std::abs(static_cast<double>(direct));
  const double value = static_cast<double>(direct + tail.imag());
  return {value, err, static_cast<int>(terms), want <= kMaxTerms && err < 1e-12};
}

double bernoulli_sine_closed_form(int n, double a) {
  const int k = 2 * n + 1;
  const double sign = n % 2 == 1 ? 1.0 : -1.0;
  return sign * std::pow(2.0 * kPi, k) * bernoulli_polynomial(k, a) / (2.0 * factorial(k));
}

PairingResult cosh_power_series_side(int m, double a) {
  if (!(a > 0.0 && a < 1.0) || a == 0.5) {
    throw std::invalid_argument("cosh_power_series_side: need 0 < a < 1, a != 1/2");
  }
  PairingResult r = bernoulli_sine_series(m, a);
  const double factor = 2.0 * factorial(2 * m) / std::sin(2.0 * kPi * a);
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

double moment_asymptotic_eval(const KernelSpec& kernel, const TestFunction& phi, double lambda,
                              int max_n, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("moment_asymptotic_eval: lambda must be positive");
  if (max_n < 0 || max_n > kMaxDerivativeOrder) {
    throw std::invalid_argument("moment_asymptotic_eval: order out of range");
  }
  double sum = 0.0;
  for (int n = 0; n <= max_n; ++n) {
    const double d = eval(phi, 0.0, n);
    if (d == 0.0) continue;
    sum += moment(kernel, n, tol).value * d / (factorial(n) * std::pow(lambda, n + 1));
  }
  return sum;
}

ComplexPairing delta_series_pairing(const TestFunction& phi, double eps, int max_m) {
  if (max_m < 0 || max_m > 3) throw std::invalid_argument("delta_series_pairing: need 0 <= M <= 3");
  if (!(eps > 0.0 && eps < 0.5 * kPi)) {
    throw std::invalid_argument("delta_series_pairing: need 0 < eps < pi/2");
  }
  ComplexPairing out;
  out.real = pair(KernelSpec::coth_eps_real_at(eps), phi).value;
  for (int m = 0; m <= max_m; ++m) {
    out.imag += moment_formula(m, eps / kPi) / factorial(2 * m) * eval(phi, 0.0, 2 * m);
  }
  return out;
}

MomentTable coth_eps_moment_table(double eps, int max_n, double tol) {
  if (max_n < 0) throw std::invalid_argument("moment table: max order must be non-negative");
  MomentTable table;
  table.kernel = KernelSpec::coth_eps_imag_at(eps);
  table.eps = eps;
  validate(table.kernel);
  table.entries = parallel_map<MomentEntry>(static_cast<std::size_t>(max_n) + 1, [&](std::size_t i) {
    const int n = static_cast<int>(i);
    const PairingResult r = moment(table.kernel, n, tol);
    MomentEntry e;
    e.n = n;
    e.numeric = r.value;
    e.converged = r.converged;
    if (n % 2 == 1) {
      e.closed_form = 0.0;
    } else if (eps < 0.5 * kPi) {
      e.closed_form = moment_formula(n / 2, eps / kPi);
    }
    e.abs_err = e.closed_form ? std::abs(r.value - *e.closed_form) : r.error_estimate;
    return e;
  });
  return table;
}

void write_csv(std::ostream& os, std::span<const MomentTable> tables) {
  char buf[128];
  os << "n,eps,numeric,closed_form,abs_err\n";
  for (const MomentTable& t : tables) {
    for (const MomentEntry& e : t.entries) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,", e.n, t.eps, e.numeric);
      os << buf;
      if (e.closed_form) {
        std::snprintf(buf, sizeof buf, "%.17g", *e.closed_form);
        os << buf;
      }
      std::snprintf(buf, sizeof buf, ",%.17g\n", e.abs_err);
      os << buf;
    }
  }
}

CheckOutcome moment_closed_form_check(std::span<const MomentTable> tables, double tol) {
  CheckOutcome out;
  out.name = "moment_closed_form";
  out.tolerance = tol;
  DigestBuilder d;
  bool converged = true;
  for (const MomentTable& t : tables) {
    d.add("eps", t.eps).add("max_n", static_cast<double>(t.entries.size()));
    for (const MomentEntry& e : t.entries) {
      if (e.n % 2 == 1 || !e.closed_form) continue;
      converged = converged && e.converged;
      const double scaled = e.abs_err / (1.0 + std::abs(*e.closed_form));
      out.residual = std::max(out.residual, scaled);
      out.details.push_back(DetailRow{}
                                .add("eps", t.eps)
                                .add("n", e.n)
                                .add("numeric", e.numeric)
                                .add("closed_form", *e.closed_form)
                                .add("abs_err", e.abs_err)
                                .add("scaled_err", scaled));
    }
  }
  out.inputs_digest = d.add("tol", tol).str();
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome odd_moment_check(std::span<const MomentTable> tables, double tol) {
  CheckOutcome out;
  out.name = "odd_moments_vanish";
  out.tolerance = tol;
  DigestBuilder d;
  bool converged = true;
  for (const MomentTable& t : tables) {
    d.add("eps", t.eps).add("max_n", static_cast<double>(t.entries.size()));
    for (const MomentEntry& e : t.entries) {
      if (e.n % 2 == 0) continue;
      converged = converged && e.converged;
      out.residual = std::max(out.residual, std::abs(e.numeric));
      out.details.push_back(DetailRow{}.add("eps", t.eps).add("n", e.n).add("numeric", e.numeric));
    }
  }
  out.inputs_digest = d.add("tol", tol).str();
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome moment_limit_check(int max_m, const LadderSpec& ladder, double tol) {
  validate(ladder);
  const KernelSpec kernel = KernelSpec::coth_eps_imag_limit(ladder);
  const auto results = parallel_map<PairingResult>(static_cast<std::size_t>(max_m) + 1,
                                                   [&](std::size_t m) {
                                                     return moment(kernel, 2 * static_cast<int>(m),
                                                                   1e-2 * tol);
                                                   });
  CheckOutcome out;
  out.name = "moment_eps_limit";
  out.tolerance = tol;
  DigestBuilder d;
  for (double e : ladder.values) d.add("eps", e);
  d.add("order", ladder.extrapolation_order).add("exponent", ladder.exponent);
  out.inputs_digest = d.add("max_m", max_m).add("tol", tol).str();
  bool converged = true;
  for (int m = 0; m <= max_m; ++m) {
    const PairingResult& r = results[static_cast<std::size_t>(m)];
    const double expected = m == 0 ? -kPi : 0.0;
    const double gap = std::abs(r.value - expected);
    converged = converged && r.converged;
    out.residual = std::max(out.residual, gap);
    out.details.push_back(DetailRow{}
                              .add("n", 2 * m)
                              .add("limit", r.value)
                              .add("expected", expected)
                              .add("gap", gap)
                              .add("error_estimate", r.error_estimate));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome csch2_mass_check(double tol) {
  const PairingResult r = moment(KernelSpec::csch2_fp(), 0, 1e-2 * tol);
  CheckOutcome out;
  out.name = "csch2_standard_mass";
  out.tolerance = tol;
  out.inputs_digest = DigestBuilder{}.add("tol", tol).str();
  out.residual = std::abs(r.value + 2.0);
  out.details.push_back(DetailRow{}
                            .add("mu0", r.value)
                            .add("expected", -2.0)
                            .add("error_estimate", r.error_estimate));
  out.verdict = decide(out.residual, tol, r.converged);
  return out;
}

CheckOutcome cosh_power_identity_check(int max_m, std::span<const double> a_values, double tol,
                                       double analytic_tol) {
  struct Row {
    int m;
    double a;
    PairingResult integral;
    PairingResult series;
    double closed;
  };
  std::vector<std::pair<int, double>> grid;
  for (int m = 0; m <= max_m; ++m) {
    for (double a : a_values) grid.emplace_back(m, a);
  }
  const auto rows = parallel_map<Row>(grid.size(), [&](std::size_t i) {
    const auto [m, a] = grid[i];
    const double closed = 2.0 * factorial(2 * m) / std::sin(2.0 * kPi * a) *
                          bernoulli_sine_closed_form(m, a);
    return Row{m, a, cosh_power_integral(m, a, 1e-2 * analytic_tol), cosh_power_series_side(m, a),
               closed};
  });

  CheckOutcome out;
  out.name = "cosh_power_identity";
  out.tolerance = tol;
  DigestBuilder d;
  for (double a : a_values) d.add("a", a);
  out.inputs_digest = d.add("max_m", max_m).add("tol", tol).add("analytic_tol", analytic_tol).str();
  bool converged = true;
  for (const Row& r : rows) {
    const double gap = std::abs(r.integral.value - r.series.value);
    const double closed_gap = std::abs(r.series.value - r.closed);
    converged = converged && r.integral.converged && r.series.converged;
    out.residual = std::max({out.residual, gap, closed_gap});
    DetailRow row;
    row.add("m", r.m)
        .add("a", r.a)
        .add("integral", r.integral.value)
        .add("series", r.series.value)
        .add("closed_form", r.closed)
        .add("gap", gap)
        .add("series_vs_closed", closed_gap);
    out.details.push_back(std::move(row));
  }

  // Analytic case m = 0, a = 1/4: int_0^inf dx/cosh x = pi/2.
  const PairingResult q = cosh_power_integral(0, 0.25, 1e-2 * analytic_tol);
  const PairingResult s = cosh_power_series_side(0, 0.25);
  const double analytic_gap = std::max(std::abs(q.value - kPi / 2), std::abs(s.value - kPi / 2));
  converged = converged && q.converged && s.converged;
  out.details.push_back(DetailRow{}
                            .add("m", 0)
                            .add("a", 0.25)
                            .add("integral", q.value)
                            .add("series", s.value)
                            .add("closed_form", kPi / 2)
                            .add("gap", analytic_gap)
                            .add("series_vs_closed", std::abs(s.value - kPi / 2)));
  // Scaled onto the identity tolerance so one residual covers both requirements.
  out.residual = std::max(out.residual, analytic_gap * tol / analytic_tol);
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> r) {
  if (x.size() != r.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(r[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckOutcome moment_expansion_order_check(const TestFunction& phi, std::span<const double> lambdas,
                                          double expected_slope, double slope_tol) {
  if (lambdas.size() < 2) throw std::invalid_argument("order check needs at least two lambdas");
  const KernelSpec base = KernelSpec::csch2_fp();
  const double mu0 = moment(base, 0).value;
  std::vector<double> residuals(lambdas.size());
  CheckOutcome out;
  out.name = "moment_expansion_order";
  out.tolerance = slope_tol;
  bool converged = true;
  const auto direct = parallel_map<PairingResult>(lambdas.size(), [&](std::size_t i) {
    return pair(KernelSpec::csch2_fp(lambdas[i]), phi, 1e-12);
  });
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double expansion = mu0 * eval(phi, 0.0) / lambdas[i];
    residuals[i] = direct[i].value - expansion;
    converged = converged && direct[i].converged;
    out.details.push_back(DetailRow{}
                              .add("lambda", lambdas[i])
                              .add("direct", direct[i].value)
                              .add("expansion_n0", expansion)
                              .add("residual", residuals[i]));
  }
  const double slope = loglog_slope(lambdas, residuals);
  out.details.push_back(DetailRow{}.add("slope", slope).add("expected_slope", expected_slope));
  out.residual = std::abs(slope - expected_slope);
  DigestBuilder d;
  d.add("probe", label(phi));
  for (double l : lambdas) d.add("lambda", l);
  out.inputs_digest = d.add("expected_slope", expected_slope).add("slope_tol", slope_tol).str();
  out.verdict = decide(out.residual, slope_tol, converged);
  return out;
}

}  // namespace distpair
