#include "distpair/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "distpair/parallel.hpp"
#include "distpair/simd_kernels.hpp"

namespace distpair {

namespace {

double sup_scale(const Probe& phi) {
  constexpr int kSamples = 4000;
  double s = 1.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double y = phi.lo() + (phi.hi() - phi.lo()) * i / kSamples;
    s = std::max({s, std::abs(phi(y)), std::abs(phi.derivative(y, 1))});
  }
  return s;
}

DigestBuilder battery_digest(const std::vector<TestFunction>& battery) {
  DigestBuilder d;
  for (const TestFunction& phi : battery) d.add("probe", label(phi));
  return d;
}

struct DerivativeRow {
  double phi0 = 0.0;
  double scale = 1.0;
  PairingResult weak;
  PairingResult csch2;
};

}  // namespace

CheckOutcome check_derivative_identity(const std::vector<TestFunction>& battery, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check tolerance must be positive");
  bool has_one = false;
  bool has_zero = false;
  for (const TestFunction& phi : battery) {
    validate(phi);
    const double v = eval(phi, 0.0);
    has_one = has_one || v == 1.0;
    has_zero = has_zero || v == 0.0;
  }
  if (!has_one || !has_zero) {
    throw std::invalid_argument("battery needs probes with phi(0) = 1 and phi(0) = 0");
  }

  const double pairing_tol = std::min(kDefaultPairingTol, 1e-2 * tol);
  const auto rows = parallel_map<DerivativeRow>(battery.size(), [&](std::size_t i) {
    const Probe phi = Probe::from(battery[i]);
    DerivativeRow r;
    r.phi0 = phi(0.0);
    r.scale = sup_scale(phi);
    r.weak = weak_derivative_pair(KernelSpec::coth_pv(), phi, pairing_tol);
    r.csch2 = pair(KernelSpec::csch2_fp(), phi, pairing_tol);
    return r;
  });

  CheckOutcome out;
  out.name = "derivative_identity";
  out.tolerance = tol;
  out.inputs_digest = battery_digest(battery).add("tol", tol).str();
  bool converged = true;
  for (std::size_t i = 0; i < battery.size(); ++i) {
    const DerivativeRow& r = rows[i];
    const double delta = r.weak.value + r.csch2.value;
    converged = converged && r.weak.converged && r.csch2.converged;
    out.residual = std::max(out.residual, std::abs(delta) / r.scale);
    out.details.push_back(DetailRow{}
                              .add("probe", label(battery[i]))
                              .add("phi0", r.phi0)
                              .add("weak_coth_derivative", r.weak.value)
                              .add("csch2_standard", r.csch2.value)
                              .add("delta", delta)
                              .add("fo_residual", delta - 2.0 * r.phi0)
                              .add("scale", r.scale)
                              .add("error_estimate",
                                   r.weak.error_estimate + r.csch2.error_estimate));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome coth_eps_decomposition_check(const TestFunction& phi_in, const SeriesTruncation& trunc,
                                          const LadderSpec& ladder, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check tolerance must be positive");
  if (trunc.terms < 1) throw std::invalid_argument("series truncation needs at least one term");
  validate(ladder);
  const Probe phi = Probe::from(phi_in);
  const double pi = std::numbers::pi;
  const double rung_tol = std::min(1e-3 * tol, 1e-9);

  // Lorentzian pieces of 1/(y + i eps) = y/(y^2+eps^2) - i eps/(y^2+eps^2), one rung per eps.
  const std::size_t n = ladder.values.size();
  const auto lorentz = parallel_map<std::pair<PairingResult, PairingResult>>(
      n, [&](std::size_t i) {
        const double e = ladder.values[i];
        const double breaks[] = {-4.0 * e, -e, e, 4.0 * e};
        return std::pair{
            pair_smooth([e](double y) { return y / (y * y + e * e); }, phi, rung_tol, breaks),
            pair_smooth([e](double y) { return -e / (y * y + e * e); }, phi, rung_tol, breaks)};
      });
  std::vector<PairingResult> re_rungs;
  std::vector<PairingResult> im_rungs;
  for (const auto& [re, im] : lorentz) {
    re_rungs.push_back(re);
    im_rungs.push_back(im);
  }
  const PairingResult pv_limit = extrapolate_limit(re_rungs, ladder);
  const PairingResult lorentz_im = extrapolate_limit(im_rungs, ladder);

  // Conjugate pairs combine to 2y/(y^2 + k^2 pi^2); the truncated sum is eps-independent.
  const std::int64_t terms = trunc.terms;
  const bool tail = trunc.tail_correction;
  const PairingResult k_sum = pair_smooth(
      [=](double y) {
        double s = simd::coth_partial_sum(y, terms);
        if (tail) s += 2.0 * y / (pi * pi * static_cast<double>(terms));
        return s;
      },
      phi, 1e-2 * tol);

  const PairingResult lhs_re = pair(KernelSpec::coth_eps_real_limit(ladder), phi, tol);
  const PairingResult lhs_im = pair(KernelSpec::coth_eps_imag_limit(ladder), phi, tol);
  const PairingResult langevin_pair = pair(KernelSpec::langevin_fn(), phi, 1e-2 * tol);

  const double rhs_re = k_sum.value + pv_limit.value;
  const double rhs_im = -pi * phi(0.0);
  const double gap_re = std::abs(lhs_re.value - rhs_re);
  const double gap_im = std::abs(lhs_im.value - rhs_im);

  CheckOutcome out;
  out.name = "coth_eps_decomposition:" + label(phi_in);
  out.tolerance = tol;
  DigestBuilder d;
  d.add("probe", label(phi_in)).add("terms", static_cast<double>(terms));
  d.add("tail", tail ? "1" : "0").add("tol", tol);
  for (double e : ladder.values) d.add("eps", e);
  d.add("order", ladder.extrapolation_order).add("exponent", ladder.exponent);
  out.inputs_digest = d.str();
  out.residual = std::max(gap_re, gap_im);
  out.details.push_back(DetailRow{}
                            .add("component", std::string("real"))
                            .add("lhs", lhs_re.value)
                            .add("rhs", rhs_re)
                            .add("gap", gap_re)
                            .add("k_sum", k_sum.value)
                            .add("pv_limit", pv_limit.value)
                            .add("langevin", langevin_pair.value)
                            .add("lhs_error", lhs_re.error_estimate));
  out.details.push_back(DetailRow{}
                            .add("component", std::string("imag"))
                            .add("lhs", lhs_im.value)
                            .add("rhs", rhs_im)
                            .add("gap", gap_im)
                            .add("lorentzian_limit", lorentz_im.value)
                            .add("phi0", phi(0.0))
                            .add("lhs_error", lhs_im.error_estimate));
  const bool converged = lhs_re.converged && lhs_im.converged && k_sum.converged &&
                         pv_limit.converged;
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome nascent_delta_check(const std::vector<TestFunction>& probes, const LadderSpec& ladder,
                                 double tol) {
  if (probes.empty()) throw std::invalid_argument("nascent delta check needs probes");
  if (!(tol > 0.0)) throw std::invalid_argument("check tolerance must be positive");
  validate(ladder);
  struct Row {
    PairingResult im;
    PairingResult re;
    PairingResult pv;
  };
  const auto rows = parallel_map<Row>(probes.size(), [&](std::size_t i) {
    const Probe phi = Probe::from(probes[i]);
    return Row{pair(KernelSpec::coth_eps_imag_limit(ladder), phi, tol),
               pair(KernelSpec::coth_eps_real_limit(ladder), phi, tol),
               pair(KernelSpec::coth_pv(), phi, 1e-2 * tol)};
  });

  CheckOutcome out;
  out.name = "nascent_delta";
  out.tolerance = tol;
  DigestBuilder d;
  for (const TestFunction& phi : probes) d.add("probe", label(phi));
  for (double e : ladder.values) d.add("eps", e);
  d.add("order", ladder.extrapolation_order).add("exponent", ladder.exponent);
  out.inputs_digest = d.add("tol", tol).str();
  bool converged = true;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Row& r = rows[i];
    const double phi0 = eval(probes[i], 0.0);
    const double gap_im = std::abs(r.im.value + std::numbers::pi * phi0);
    const double gap_re = std::abs(r.re.value - r.pv.value);
    converged = converged && r.im.converged && r.re.converged && r.pv.converged;
    out.residual = std::max({out.residual, gap_im, gap_re});
    out.details.push_back(DetailRow{}
                              .add("probe", label(probes[i]))
                              .add("phi0", phi0)
                              .add("imag_limit", r.im.value)
                              .add("minus_pi_phi0", -std::numbers::pi * phi0)
                              .add("imag_gap", gap_im)
                              .add("real_limit", r.re.value)
                              .add("coth_pv", r.pv.value)
                              .add("real_gap", gap_re)
                              .add("imag_error", r.im.error_estimate)
                              .add("real_error", r.re.error_estimate));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome linearity_check(const KernelSpec& kernel, const std::vector<TestFunction>& battery,
                             std::uint64_t seed, int draws, double tol) {
  validate(kernel);
  if (battery.empty()) throw std::invalid_argument("linearity check needs a non-empty battery");
  if (draws < 1) throw std::invalid_argument("linearity check needs at least one draw");
  std::mt19937_64 gen(seed);
  auto coefficient = [&] { return -2.0 + 4.0 * std::ldexp(static_cast<double>(gen() >> 11), -53); };
  struct Draw {
    std::size_t i, j;
    double a, b;
  };
  std::vector<Draw> plan;
  for (int k = 0; k < draws; ++k) {
    Draw dr{};
    dr.i = static_cast<std::size_t>(gen() % battery.size());
    dr.j = static_cast<std::size_t>(gen() % battery.size());
    dr.a = coefficient();
    dr.b = coefficient();
    plan.push_back(dr);
  }
  const double pairing_tol = 1e-2 * tol;
  struct Row {
    PairingResult combined, first, second;
  };
  const auto rows = parallel_map<Row>(plan.size(), [&](std::size_t k) {
    const Draw& dr = plan[k];
    const Probe pi = Probe::from(battery[dr.i]);
    const Probe pj = Probe::from(battery[dr.j]);
    return Row{pair(kernel, pi.scaled(dr.a).plus(pj.scaled(dr.b)), pairing_tol),
               pair(kernel, pi, pairing_tol), pair(kernel, pj, pairing_tol)};
  });

  CheckOutcome out;
  out.name = "linearity_" + to_string(kernel.kind);
  out.tolerance = tol;
  DigestBuilder d;
  d.add("kernel", to_string(kernel.kind)).add("regularization", to_string(kernel.regularization));
  d.add("seed", std::to_string(seed)).add("draws", draws).add("tol", tol);
  for (const TestFunction& phi : battery) d.add("probe", label(phi));
  out.inputs_digest = d.str();
  bool converged = true;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const Draw& dr = plan[k];
    const Row& r = rows[k];
    const double rhs = dr.a * r.first.value + dr.b * r.second.value;
    const double gap = std::abs(r.combined.value - rhs);
    converged = converged && r.combined.converged && r.first.converged && r.second.converged;
    out.residual = std::max(out.residual, gap);
    out.details.push_back(DetailRow{}
                              .add("probe_a", label(battery[dr.i]))
                              .add("probe_b", label(battery[dr.j]))
                              .add("a", dr.a)
                              .add("b", dr.b)
                              .add("combined", r.combined.value)
                              .add("linear", rhs)
                              .add("gap", gap));
  }
  out.verdict = decide(out.residual, tol, converged);
  return out;
}

CheckOutcome series_accuracy_check(const SeriesTruncation& trunc, double series_tol,
                                   double sign_tol) {
  if (trunc.terms < 1) throw std::invalid_argument("series truncation needs at least one term");
  constexpr int kPoints = 50;
  struct Row {
    double y, coth, coth_err, csch2, csch2_err;
  };
  const auto rows = parallel_map<Row>(kPoints, [&](std::size_t i) {
    const double y = 0.1 + (5.0 - 0.1) * static_cast<double>(i) / (kPoints - 1);
    const double c = coth_series(y, trunc);
    const double s = csch2_series(y, trunc);
    return Row{y, c, std::abs(c - coth_direct(y)), s, std::abs(s - csch2_direct(y))};
  });

  double sign_worst = 0.0;
  double sign_at = 0.0;
  for (int i = -400; i <= 400; ++i) {
    if (i == 0) continue;
    const double y = 0.05 * i + 1e-3;
    const double rel = std::abs(decompose_sign(y) - coth_direct(y)) / std::abs(coth_direct(y));
    if (rel > sign_worst) {
      sign_worst = rel;
      sign_at = y;
    }
  }

  CheckOutcome out;
  out.name = "series_accuracy";
  out.tolerance = series_tol;
  out.inputs_digest = DigestBuilder{}
                          .add("terms", static_cast<double>(trunc.terms))
                          .add("tail", trunc.tail_correction ? "1" : "0")
                          .add("series_tol", series_tol)
                          .add("sign_tol", sign_tol)
                          .str();
  for (const Row& r : rows) {
    out.residual = std::max({out.residual, r.coth_err, r.csch2_err});
    out.details.push_back(DetailRow{}
                              .add("y", r.y)
                              .add("coth_series", r.coth)
                              .add("coth_abs_err", r.coth_err)
                              .add("csch2_series", r.csch2)
                              .add("csch2_abs_err", r.csch2_err));
  }
  out.details.push_back(DetailRow{}
                            .add("decompose_sign_max_rel_err", sign_worst)
                            .add("at_y", sign_at)
                            .add("sign_tol", sign_tol));
  // Scaled onto the series tolerance so one residual covers both requirements.
  out.residual = std::max(out.residual, sign_worst * series_tol / sign_tol);
  out.verdict = decide(out.residual, series_tol, true);
  return out;
}

}  // namespace distpair
