#include "distpair/noise_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "distpair/moments.hpp"
#include "distpair/parallel.hpp"
#include "distpair/quadrature.hpp"
#include "distpair/special_functions.hpp"

namespace distpair {

namespace {

constexpr double kPi = std::numbers::pi;

// Frequency beyond which the transform of phi is negligible (below ~1e-20 relative).
double transform_reach(const TestFunction& phi) {
  if (phi.family == Family::bump) return 1200.0 / phi.width;
  return (14.0 + 2.0 * phi.hermite_order) / phi.width;
}

// Trapezoid rule on the probe support, sampled once. The grid is fine enough that
// aliases of frequencies up to transform_reach are negligible.
class TrapezoidTransform {
 public:
  explicit TrapezoidTransform(const TestFunction& phi) {
    const auto [lo, hi] = support(phi);
    const double h = kPi / transform_reach(phi);
    const int n = static_cast<int>(std::ceil((hi - lo) / h));
    lo_ = lo;
    step_ = (hi - lo) / n;
    samples_.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) samples_[static_cast<std::size_t>(j)] = eval(phi, lo + j * step_);
    samples_.front() *= 0.5;
    samples_.back() *= 0.5;
  }

  // cos(omega t_j) by repeated rotation, re-anchored every 64 steps
  double operator()(double omega) const {
    const std::complex<double> rot = std::polar(1.0, omega * step_);
    double sum = 0.0;
    std::complex<double> z;
    for (std::size_t j = 0; j < samples_.size(); ++j) {
      if (j % 64 == 0) {
        z = std::polar(1.0, omega * (lo_ + static_cast<double>(j) * step_));
      } else {
        z *= rot;
      }
      sum += samples_[j] * z.real();
    }
    return sum * step_;
  }

 private:
  double lo_ = 0.0;
  double step_ = 0.0;
  std::vector<double> samples_;
};

double closed_form_transform(const TestFunction& phi, double omega) {
  // int H_m(u) e^{-u^2} e^{i k u} du = sqrt(pi) (i k)^m e^{-k^2/4}, t = c + w u
  const double k = omega * phi.width;
  const int m = phi.family == Family::gaussian ? 0 : phi.hermite_order;
  const std::complex<double> im_k_m = std::pow(std::complex<double>(0.0, k), m);
  const std::complex<double> shift = std::polar(1.0, omega * phi.center);
  return phi.width * std::sqrt(kPi) * std::exp(-0.25 * k * k) * (im_k_m * shift).real();
}

}  // namespace

double PhysicalParams::lambda() const { return kPi * kT / hbar; }

PhysicalParams PhysicalParams::from_lambda(double lambda, double kT, double zeta) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return {kT, kPi * kT / lambda, zeta};
}

void validate(const PhysicalParams& p) {
  for (double v : {p.kT, p.hbar, p.zeta}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("physical parameters must be finite and positive");
    }
  }
}

CutoffSpec default_cutoff(const PhysicalParams& p) { return {p.lambda(), {50.0, 100.0, 200.0}}; }

void validate(const CutoffSpec& cut) {
  if (!(cut.omega_scale > 0.0)) throw std::invalid_argument("cutoff scale must be positive");
  if (cut.ladder.size() < 3) throw std::invalid_argument("cutoff ladder needs at least 3 rungs");
  for (std::size_t i = 0; i < cut.ladder.size(); ++i) {
    if (!(cut.ladder[i] > 0.0) || (i > 0 && !(cut.ladder[i] > cut.ladder[i - 1]))) {
      throw std::invalid_argument("cutoff ladder must be positive and strictly increasing");
    }
  }
}

double fourier_cos(const TestFunction& phi, double omega) {
  validate(phi);
  if (phi.family == Family::bump) return TrapezoidTransform(phi)(omega);
  return closed_form_transform(phi, omega);
}

double fourier_cos_numeric(const TestFunction& phi, double omega) {
  validate(phi);
  return TrapezoidTransform(phi)(omega);
}

PairingResult autocorr_pair(const PhysicalParams& p, const TestFunction& phi,
                            const CutoffSpec& cut, double tol, bool numeric_transform) {
  validate(p);
  validate(cut);
  validate(phi);
  if (!(tol > 0.0)) throw std::invalid_argument("autocorr tolerance must be positive");
  const double scale = p.kT * p.zeta;
  const double x_per_omega = p.hbar / (2.0 * p.kT);
  std::optional<TrapezoidTransform> trapezoid;
  if (numeric_transform || phi.family == Family::bump) trapezoid.emplace(phi);
  auto transform = [&](double w) {
    return trapezoid ? (*trapezoid)(w) : closed_form_transform(phi, w);
  };

  // hbar w coth(hbar w / 2kT) = 2 kT x coth x with x = hbar w / 2kT
  std::vector<PairingResult> rungs;
  LadderSpec ladder;
  ladder.extrapolation_order = static_cast<int>(cut.ladder.size()) - 1;
  ladder.exponent = 2;
  for (double mult : cut.ladder) {
    const double omega_cut = cut.omega_scale * mult;
    const double upper = std::min(transform_reach(phi), 8.0 * omega_cut);
    const double panel = std::min(8.0, 4.0 * phi.width);
    const int panels = std::max(1, static_cast<int>(std::ceil(upper / panel)));
    std::vector<double> points(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) points[static_cast<std::size_t>(i)] = upper * i / panels;
    auto f = [&](double w) {
      const double damp = std::exp(-(w * w) / (omega_cut * omega_cut));
      return 2.0 * p.kT * y_coth_y(x_per_omega * w) * transform(w) * damp;
    };
    const QuadratureResult q =
        integrate(f, points, std::max(1e-2 * tol, 1e-12) * scale * kPi / p.zeta);
    const double factor = p.zeta / kPi;
    rungs.push_back({factor * q.value, factor * q.error, q.evaluations, q.converged});
  }
  // 1/Omega decreases along the ladder; extrapolate in 1/Omega^2.
  for (double mult : cut.ladder) ladder.values.push_back(1.0 / (cut.omega_scale * mult));
  PairingResult out = extrapolate_limit(rungs, ladder);
  out.converged = out.converged && out.error_estimate <= tol * std::max(std::abs(out.value), scale);
  return out;
}

PairingResult coth_derivative_part(const PhysicalParams& p, const TestFunction& phi, double tol) {
  validate(p);
  const double scale = p.kT * p.zeta;
  PairingResult r = weak_derivative_pair(KernelSpec::coth_pv(p.lambda()), phi, tol / scale);
  r.value *= scale;
  r.error_estimate *= scale;
  return r;
}

PairingResult csch2_part(const PhysicalParams& p, const TestFunction& phi, double tol) {
  validate(p);
  const double lambda = p.lambda();
  const double factor = -p.kT * p.zeta * lambda;
  PairingResult r = pair(KernelSpec::csch2_fp(lambda), phi, tol / std::abs(factor));
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return r;
}

CheckOutcome split_check(const PhysicalParams& p, const std::vector<TestFunction>& battery,
                         double tol) {
  validate(p);
  if (battery.empty()) throw std::invalid_argument("split check needs a non-empty battery");
  if (!(tol > 0.0)) throw std::invalid_argument("check tolerance must be positive");
  struct Row {
    PairingResult autocorr;
    PairingResult weak;
  };
  const CutoffSpec cut = default_cutoff(p);
  const double scale = p.kT * p.zeta;
  const auto rows = parallel_map<Row>(battery.size(), [&](std::size_t i) {
    return Row{autocorr_pair(p, battery[i], cut, 1e-3 * tol),
               coth_derivative_part(p, battery[i], 1e-3 * tol * scale)};
  });

  CheckOutcome out;
  out.name = "autocorrelation_split";
  out.tolerance = tol;
  DigestBuilder d;
  d.add("kT", p.kT).add("hbar", p.hbar).add("zeta", p.zeta).add("tol", tol);
  for (const TestFunction& phi : battery) d.add("probe", label(phi));
  out.inputs_digest = d.str();
  bool converged = true;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const Row& r = rows[i];
    const double phi0 = eval(battery[i], 0.0);
    const double extracted = r.autocorr.value - r.weak.value;
    const double expected = 2.0 * scale * phi0;
    const double rel = std::abs(extracted - expected) / std::max(std::abs(r.autocorr.value), scale);
    converged = converged && r.autocorr.converged && r.weak.converged;
    out.residual = std::max(out.residual, rel);
    out.details.push_back(DetailRow{}
                              .add("probe", label(battery[i]))
                              .add("phi0", phi0)
                              .add("autocorr", r.autocorr.value)
                              .add("coth_derivative_part", r.weak.value)
                              .add("split_rhs", r.weak.value + expected)
                              .add("extracted_delta", extracted)
                              .add("expected_delta", expected)
                              .add("relative_residual", rel)
                              .add("autocorr_error", r.autocorr.error_estimate));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome autocorr_route_check(const PhysicalParams& p, const std::vector<TestFunction>& battery,
                                  double tol) {
  validate(p);
  if (battery.empty()) throw std::invalid_argument("route check needs a non-empty battery");
  const CutoffSpec cut = default_cutoff(p);
  const double scale = p.kT * p.zeta;
  const auto rows = parallel_map<std::pair<PairingResult, PairingResult>>(
      battery.size(), [&](std::size_t i) {
        return std::pair{autocorr_pair(p, battery[i], cut, 1e-2 * tol),
                         autocorr_pair(p, battery[i], cut, 1e-2 * tol, true)};
      });
  CheckOutcome out;
  out.name = "autocorrelation_routes";
  out.tolerance = tol;
  DigestBuilder d;
  d.add("kT", p.kT).add("hbar", p.hbar).add("zeta", p.zeta).add("tol", tol);
  for (const TestFunction& phi : battery) d.add("probe", label(phi));
  out.inputs_digest = d.str();
  bool converged = true;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const auto& [closed, numeric] = rows[i];
    const double rel =
        std::abs(closed.value - numeric.value) / std::max(std::abs(closed.value), scale);
    converged = converged && closed.converged && numeric.converged;
    out.residual = std::max(out.residual, rel);
    out.details.push_back(DetailRow{}
                              .add("probe", label(battery[i]))
                              .add("single_quadrature", closed.value)
                              .add("double_quadrature", numeric.value)
                              .add("relative_gap", rel));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

std::vector<PhysicalParams> hbar_ladder(const PhysicalParams& p0, int count) {
  validate(p0);
  if (count < 1) throw std::invalid_argument("hbar ladder needs at least one rung");
  std::vector<PhysicalParams> out;
  for (int i = 0; i < count; ++i) out.push_back({p0.kT, std::ldexp(p0.hbar, -i), p0.zeta});
  return out;
}

CheckOutcome semiclassical_limit(std::span<const PhysicalParams> ladder, const TestFunction& phi,
                                 double slope_tol) {
  if (ladder.size() < 3) throw std::invalid_argument("semiclassical ladder needs >= 3 rungs");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    validate(ladder[i]);
    if (i > 0 && !(ladder[i].hbar < ladder[i - 1].hbar)) {
      throw std::invalid_argument("semiclassical ladder must have decreasing hbar");
    }
  }
  struct Row {
    PairingResult part;
    PairingResult autocorr;
  };
  const auto rows = parallel_map<Row>(ladder.size(), [&](std::size_t i) {
    return Row{csch2_part(ladder[i], phi, 1e-12),
               autocorr_pair(ladder[i], phi, default_cutoff(ladder[i]), 1e-10)};
  });
  const double mu0 = moment(KernelSpec::csch2_fp(), 0).value;

  CheckOutcome out;
  out.name = "semiclassical_limit";
  out.tolerance = slope_tol;
  DigestBuilder d;
  d.add("probe", label(phi)).add("slope_tol", slope_tol);
  for (const PhysicalParams& p : ladder) d.add("kT", p.kT).add("hbar", p.hbar).add("zeta", p.zeta);
  out.inputs_digest = d.str();

  std::vector<double> lambdas;
  std::vector<double> part_res;
  std::vector<double> full_res;
  bool converged = true;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const PhysicalParams& p = ladder[i];
    const double classical = -p.kT * p.zeta * mu0 * eval(phi, 0.0);
    lambdas.push_back(p.lambda());
    part_res.push_back(rows[i].part.value - classical);
    full_res.push_back(rows[i].autocorr.value - classical);
    converged = converged && rows[i].part.converged && rows[i].autocorr.converged;
    out.details.push_back(DetailRow{}
                              .add("lambda", p.lambda())
                              .add("hbar", p.hbar)
                              .add("classical", classical)
                              .add("csch2_part", rows[i].part.value)
                              .add("autocorr", rows[i].autocorr.value)
                              .add("csch2_part_residual", part_res.back())
                              .add("autocorr_residual", full_res.back()));
  }
  const std::size_t tail = ladder.size() - 3;
  const double slope = loglog_slope(std::span(lambdas).subspan(tail),
                                    std::span(part_res).subspan(tail));
  bool monotone = true;
  for (std::size_t i = 1; i < full_res.size(); ++i) {
    monotone = monotone && std::abs(full_res[i]) < std::abs(full_res[i - 1]);
  }
  out.details.push_back(DetailRow{}
                            .add("slope", slope)
                            .add("expected_slope", -2.0)
                            .add("autocorr_monotone", std::string(monotone ? "yes" : "no")));
  // A monotonicity violation counts as a unit residual.
  out.residual = std::max(std::abs(slope + 2.0), monotone ? 0.0 : 1.0);
  out.verdict = decide(out.residual, slope_tol, converged);
  return out;
}

}  // namespace distpair
