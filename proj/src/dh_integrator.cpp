#include "mixpow/dh_integrator.hpp"

#include <algorithm>
#include <cmath>

#include "mixpow/errors.hpp"
#include "mixpow/parallel.hpp"
#include "mixpow/solution_engine.hpp"

namespace mixpow {

namespace {

constexpr std::size_t kGaussPoints = 6;
constexpr std::size_t kPanelsPerChunk = 2048;

struct PanelPlan {
  double lo;
  double h;
  std::size_t panels;
};

}  // namespace

std::string to_string(ArcSelector arcs) {
  switch (arcs) {
    case ArcSelector::Major1: return "major1";
    case ArcSelector::Major2: return "major2";
    case ArcSelector::Major: return "major";
    case ArcSelector::Minor: return "minor";
    case ArcSelector::Trivial: return "trivial";
    case ArcSelector::All: return "all";
  }
  return "all";
}

ArcSelector parse_arc_selector(const std::string& text) {
  for (ArcSelector a : {ArcSelector::Major1, ArcSelector::Major2, ArcSelector::Major, ArcSelector::Minor,
                        ArcSelector::Trivial, ArcSelector::All})
    if (text == to_string(a)) return a;
  fail(ErrorKind::InvalidArgument, "arcs: expected one of major, major1, major2, minor, trivial, all (got '" +
                                       text + "')");
}

Region explicit_window(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && 0.0 <= lo && lo <= hi, ErrorKind::InvalidArgument,
          "window: need 0 <= lo <= hi < infinity");
  Region r;
  r.bands.push_back({lo, hi});
  r.label = "window";
  return r;
}

DhIntegrator::DhIntegrator(const ProblemInstance& inst)
    : inst_((validate(inst), inst)),
      kernel_(inst.tau),
      arcs_(make_arc_params(inst.X, inst.tau, inst.delta, inst.eps)),
      sums_{PowerSum(2, inst.X, inst.eta, *inst.table), PowerSum(3, inst.X, inst.eta, *inst.table),
            PowerSum(4, inst.X, inst.eta, *inst.table), PowerSum(5, inst.X, inst.eta, *inst.table)} {
  bound_ = 1.0;
  terms_ = 0;
  fastest_ = std::fabs(inst.v);
  for (std::size_t j = 0; j < 4; ++j) {
    bound_ *= sums_[j].abs_weight();
    terms_ += sums_[j].size();
    fastest_ += std::fabs(inst.lambda[j]) * sums_[j].max_power();
  }
}

Complex DhIntegrator::integrand(double alpha) const {
  Complex product = unit_phase(reduced_phase(two_prod(-inst_.v, 1.0), alpha)) * fejer_K(alpha, kernel_);
  for (std::size_t j = 0; j < 4; ++j) product *= sums_[j](inst_.lambda[j], alpha);
  return product;
}

double DhIntegrator::tail_bound() const { return 2.0 * bound_ / (kPi * kPi * arcs_.R); }

Region DhIntegrator::region(ArcSelector arcs) const {
  Region r;
  r.label = to_string(arcs);
  const double cut = arcs_.m1_cut;
  const double major = arcs_.major_cut();
  switch (arcs) {
    case ArcSelector::Major1: r.bands.push_back({0.0, cut}); break;
    case ArcSelector::Major2: r.bands.push_back({cut, major}); break;
    case ArcSelector::Major: r.bands.push_back({0.0, major}); break;
    case ArcSelector::Minor: r.bands.push_back({major, arcs_.R}); break;
    case ArcSelector::Trivial: r.include_tail = true; break;
    case ArcSelector::All:
      r.bands.push_back({0.0, arcs_.R});
      r.include_tail = true;
      break;
  }
  return r;
}

std::size_t DhIntegrator::panel_count(const Region& region) const {
  // Quarter period of the fastest phase per panel; both signs of alpha.
  const double per_unit = 4.0 * (fastest_ + inst_.tau);
  double total = 0.0;
  for (const auto& band : region.bands)
    if (band.hi > band.lo) total += 2.0 * std::max(1.0, std::ceil((band.hi - band.lo) * per_unit));
  return total > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(total);
}

QuadratureReport DhIntegrator::integrate(ArcSelector arcs, std::size_t budget, unsigned threads) const {
  return integrate(region(arcs), budget, threads);
}

QuadratureReport DhIntegrator::integrate(const Region& region, std::size_t budget, unsigned threads) const {
  QuadratureReport out;
  out.arc = region.label;
  if (region.include_tail) out.tail_bound = tail_bound();
  out.bound_only = region.bands.empty() && region.include_tail;

  const std::size_t needed = panel_count(region);
  require(needed <= budget, ErrorKind::ResolutionError,
          "integrate: " + std::to_string(needed) + " panels needed to resolve frequency " +
              std::to_string(fastest_) + " over region '" + region.label + "', budget is " + std::to_string(budget));

  // Panels on alpha >= 0 for every band, then mirrored.
  std::vector<PanelPlan> plans;
  const double per_unit = 4.0 * (fastest_ + inst_.tau);
  for (const auto& band : region.bands) {
    if (!(band.hi > band.lo)) continue;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((band.hi - band.lo) * per_unit)));
    plans.push_back({band.lo, (band.hi - band.lo) / static_cast<double>(n), n});
  }
  std::vector<std::size_t> offsets{0};
  for (const auto& p : plans) offsets.push_back(offsets.back() + p.panels);
  const std::size_t half_panels = offsets.back();
  const std::size_t total_panels = 2 * half_panels;
  out.panels = total_panels;
  if (total_panels == 0) return out;

  const GaussRule& rule = gauss_legendre(kGaussPoints);
  const std::size_t chunks = (total_panels + kPanelsPerChunk - 1) / kPanelsPerChunk;

  struct ChunkResult {
    Complex sum{0.0, 0.0};
    double magnitude = 0.0;
    double weight_kernel = 0.0;
    double phase_scale = 0.0;
    double gauss = 0.0;
  };
  std::vector<ChunkResult> results(chunks);

  const double two_n = 2.0 * static_cast<double>(kGaussPoints);
  // log of max |f^(2n)| / h-independent part: (2 pi (F + tau))^(2n) tau^2 B.
  const double log_derivative =
      two_n * std::log(kTwoPi * (fastest_ + inst_.tau)) + 2.0 * std::log(inst_.tau) + std::log(bound_);

  parallel_for(chunks, threads, [&](std::size_t c) {
    ChunkResult r;
    CompensatedComplexSum acc;
    const std::size_t end = std::min(total_panels, (c + 1) * kPanelsPerChunk);
    for (std::size_t idx = c * kPanelsPerChunk; idx < end; ++idx) {
      const bool negative = idx >= half_panels;
      const std::size_t local = negative ? idx - half_panels : idx;
      const std::size_t b = static_cast<std::size_t>(
          std::upper_bound(offsets.begin(), offsets.end(), local) - offsets.begin() - 1);
      const PanelPlan& plan = plans[b];
      const double a = plan.lo + plan.h * static_cast<double>(local - offsets[b]);
      Complex panel{0.0, 0.0};
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        double alpha = a + 0.5 * plan.h * (1.0 + rule.nodes[j]);
        if (negative) alpha = -alpha;
        const double w = 0.5 * plan.h * rule.weights[j];
        panel += w * integrand(alpha);
        const double wk = w * fejer_K(alpha, kernel_);
        r.weight_kernel += wk;
        r.phase_scale += wk * std::fabs(alpha) * fastest_;
      }
      acc.add(panel);
      r.magnitude += std::abs(panel);
      if (plan.h > 0.0)
        r.gauss += std::exp(std::log(rule.error_constant) + (two_n + 1.0) * std::log(plan.h) + log_derivative);
    }
    r.sum = acc.value();
    results[c] = r;
  });

  CompensatedComplexSum total;
  double magnitude = 0.0, weight_kernel = 0.0, phase_scale = 0.0, gauss = 0.0;
  for (const auto& r : results) {
    total.add(r.sum);
    magnitude += r.magnitude;
    weight_kernel += r.weight_kernel;
    phase_scale += r.phase_scale;
    gauss += r.gauss;
  }
  // Each node is a product of sums with sum_k (N_k + 30) + 64 rounded
  // operations, and each phase is reduced with an absolute error of a few
  // ulps of |alpha| F.
  const double ops = static_cast<double>(terms_) + 4.0 * 30.0 + 64.0;
  const double rounding = kUnitRoundoff * bound_ * (ops * weight_kernel + 8.0 * kTwoPi * phase_scale);
  const Complex value = total.value();
  out.value = value.real();
  out.imag_residual = std::fabs(value.imag());
  out.error = gauss + rounding + 4.0 * kUnitRoundoff * magnitude;
  return out;
}

Complex major_approximant_H(double alpha, const ProblemInstance& inst, double kappa_hat, std::size_t budget) {
  require(kappa_hat > 0.0, ErrorKind::InvalidArgument, "H: kappa_hat must be positive");
  validate(inst);
  const KernelParams kp(inst.tau);
  Complex product = unit_phase(reduced_phase(two_prod(-inst.v, 1.0), alpha)) * fejer_K(alpha, kp);
  for (int j = 0; j < 4; ++j) product *= T(j + 2, inst.lambda[j], alpha, inst.X, inst.eta, budget).value;
  return product * (kappa_hat / std::log(inst.X));
}

namespace {

// Gauss rule for the integral of H over [-cut, cut] with n panels per side.
Complex integrate_H(const ProblemInstance& inst, double kappa, double cut, std::size_t n) {
  const GaussRule& rule = gauss_legendre(kGaussPoints);
  const double h = cut / static_cast<double>(n);
  CompensatedComplexSum acc;
  for (int sign : {1, -1})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double alpha = sign * (h * static_cast<double>(i) + 0.5 * h * (1.0 + rule.nodes[j]));
        acc.add(0.5 * h * rule.weights[j] * major_approximant_H(alpha, inst, kappa));
      }
  return acc.value();
}

}  // namespace

ArcReport arc_report(const ProblemInstance& inst, const RhoMeanValue& kappa, std::size_t budget, unsigned threads,
                     std::size_t minor_samples) {
  require(minor_samples >= 1, ErrorKind::InvalidArgument, "arc_report: need at least one minor-arc sample");
  const DhIntegrator dh(inst);
  const ArcParams& ap = dh.arcs();

  ArcReport out;
  out.kappa = kappa;
  out.normalizer = inst.tau * inst.tau * std::pow(inst.X, 17.0 / 60.0) / std::log(inst.X);

  auto row_from = [&](const QuadratureReport& q, const std::string& name) {
    ArcRow row;
    row.arc = name;
    row.value = q.value;
    row.error = q.error;
    row.panels = q.panels;
    row.method = "quadrature";
    row.ratio = q.value / out.normalizer;
    return row;
  };

  const QuadratureReport m1 = dh.integrate(ArcSelector::Major1, budget, threads);
  const QuadratureReport m2 = dh.integrate(ArcSelector::Major2, budget, threads);
  out.rows.push_back(row_from(m1, "major1"));
  out.rows.push_back(row_from(m2, "major2"));

  out.smoothed_sum = smoothed_sum(inst, threads);
  const Region minor = dh.region(ArcSelector::Minor);
  if (dh.panel_count(minor) <= budget) {
    out.rows.push_back(row_from(dh.integrate(minor, budget, threads), "minor"));
  } else {
    ArcRow row;
    row.arc = "minor";
    row.value = out.smoothed_sum - m1.value - m2.value;
    row.error = m1.error + m2.error + dh.tail_bound();
    row.ratio = row.value / out.normalizer;
    row.method = "complement";
    out.rows.push_back(row);
  }

  ArcRow trivial;
  trivial.arc = "trivial";
  trivial.error = dh.tail_bound();
  trivial.method = "bound";
  out.rows.push_back(trivial);

  // Minor-arc split: midpoints of equal cells on P/X < alpha <= R. The sums
  // are conjugate-symmetric, so alpha > 0 represents both signs.
  out.minor_samples = minor_samples;
  const double lo = ap.major_cut();
  const double step = (ap.R - lo) / static_cast<double>(minor_samples);
  std::vector<ArcLabel> labels(minor_samples);
  parallel_for(minor_samples, threads, [&](std::size_t i) {
    const double alpha = lo + step * (static_cast<double>(i) + 0.5);
    labels[i] = classify(alpha, ap, std::abs(dh.sum(2)(inst.lambda[0], alpha)),
                         std::abs(dh.sum(3)(inst.lambda[1], alpha)));
  });
  for (ArcLabel l : labels) {
    const int idx = static_cast<int>(l) - static_cast<int>(ArcLabel::Minor1);
    if (idx >= 0 && idx < 4) out.minor_split[static_cast<std::size_t>(idx)] += 1.0;
  }
  for (double& s : out.minor_split) s /= static_cast<double>(minor_samples);

  if (kappa.kappa_hat > 0.0) {
    // Panels resolve a quarter period of the fastest phase; the error is the
    // change under doubling.
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(ap.m1_cut * 4.0 * (dh.fastest_frequency() + inst.tau))));
    const Complex coarse = integrate_H(inst, kappa.kappa_hat, ap.m1_cut, n);
    const Complex fine = integrate_H(inst, kappa.kappa_hat, ap.m1_cut, 2 * n);
    out.H_major1 = fine.real();
    out.H_major1_error = std::abs(fine - coarse);
    out.H_major1_ratio = out.H_major1 / out.normalizer;
  }
  return out;
}

}  // namespace mixpow
