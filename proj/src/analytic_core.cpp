#include "mixpow/analytic_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixpow/errors.hpp"
#include "mixpow/harman_sieve.hpp"

namespace mixpow {

namespace {

constexpr std::size_t kWindowGaussPoints = 12;

// Integral over [H, inf) of cos(2 pi omega a) / a^2 da: the leading term of
// two integrations by parts, with the remainder bound 4 / (c^2 H^3) where
// c = 2 pi |omega|. Falls back to the trivial bound 1/H when that is smaller.
struct TailPiece {
  double estimate;
  double bound;
};

TailPiece cosine_tail(double omega, double H) {
  if (omega == 0.0) return {1.0 / H, 0.0};
  const double c = kTwoPi * std::fabs(omega);
  const double remainder = 4.0 / (c * c * H * H * H);
  if (remainder >= 1.0 / H) return {0.0, 1.0 / H};
  const double phase = reduced_phase(two_prod(std::fabs(omega), 1.0), H);
  return {-std::sin(kTwoPi * phase) / (c * H * H), remainder};
}

void check_k(int k) {
  require(k >= 2 && k <= 5, ErrorKind::InvalidArgument, "k must be one of 2, 3, 4, 5 (got " + std::to_string(k) + ")");
}

}  // namespace

KernelParams::KernelParams(double tau_value) : tau(tau_value) {
  require(std::isfinite(tau_value) && tau_value > 0.0 && tau_value < 1.0, ErrorKind::InvalidArgument,
          "tau must lie in (0, 1)");
}

double kernel_decay_bound(double alpha) { return 1.0 / (kPi * kPi * alpha * alpha); }

double fejer_K(double alpha, const KernelParams& kp) {
  const double tau2 = kp.tau * kp.tau;
  if (alpha == 0.0) return tau2;
  const double x = kPi * kp.tau * alpha;
  double value;
  if (std::fabs(x) < 1e-6) {
    value = tau2 * (1.0 - x * x / 3.0);
  } else {
    const double r = std::sin(x) / (kPi * alpha);
    value = r * r;
  }
  return std::min({value, tau2, kernel_decay_bound(alpha)});
}

double window_A(double x, const KernelParams& kp) { return std::max(0.0, kp.tau - std::fabs(x)); }

WindowQuadrature window_A_by_quadrature(double x, const KernelParams& kp, double halfwidth,
                                        std::size_t budget) {
  require(std::isfinite(x), ErrorKind::InvalidArgument, "window quadrature: x must be finite");
  require(halfwidth > 0.0 && std::isfinite(halfwidth), ErrorKind::InvalidArgument,
          "window quadrature: halfwidth must be positive");
  require(budget >= 1000, ErrorKind::InvalidArgument, "window quadrature: budget must be at least 1000 panels");

  const double tau = kp.tau;
  const double fastest = std::fabs(x) + tau;
  const double needed = std::ceil(2.0 * halfwidth * fastest);
  require(needed <= static_cast<double>(budget), ErrorKind::ResolutionError,
          "window quadrature: " + std::to_string(static_cast<std::uint64_t>(needed)) +
              " panels needed to resolve frequency " + std::to_string(fastest) + ", budget is " +
              std::to_string(budget));

  const GaussRule& rule = gauss_legendre(kWindowGaussPoints);
  // K is even, so alpha and -alpha are paired: the integrand becomes
  // 2 cos(2 pi alpha x) K(alpha) on [0, halfwidth] and the sine parts cancel
  // exactly. Nodes h i + ... are sums of nonnegative terms, so their rounding
  // is relative to alpha.
  const auto half_panels = static_cast<std::size_t>(std::max(1.0, std::ceil(0.5 * needed)));
  const std::size_t panels = 2 * half_panels;
  const double h = halfwidth / static_cast<double>(half_panels);

  CompensatedSum total;
  double magnitude = 0.0;
  double rounding = 0.0;
  for (std::size_t i = 0; i < half_panels; ++i) {
    const double a = h * static_cast<double>(i);
    double panel_sum = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double alpha = a + 0.5 * h * (1.0 + rule.nodes[j]);
      const double w = 0.5 * h * rule.weights[j];
      const double k = fejer_K(alpha, kp);
      const double f = 2.0 * unit_phase(reduced_phase(two_prod(x, 1.0), alpha)).real() * k;
      panel_sum += w * f;
      const double scale = 2.0 * w * k;
      rounding += scale * (kTwoPi * (std::fabs(alpha * x) + tau * std::fabs(alpha)) * 4.0 + 32.0) * kUnitRoundoff;
    }
    total.add(panel_sum);
    magnitude += std::fabs(panel_sum);
  }

  WindowQuadrature out;
  const double integral = total.value();
  out.panels = panels;
  out.imag = 0.0;

  // Derivatives of e(alpha x) K(alpha) are bounded by (2 pi (|x|+tau))^m tau^2
  // because K is the Fourier transform of a tent of mass tau^2 on [-tau, tau].
  const double n2 = 2.0 * static_cast<double>(kWindowGaussPoints);
  const double log_panel_error = std::log(rule.error_constant) + (n2 + 1.0) * std::log(h) +
                                 n2 * std::log(kTwoPi * fastest) + 2.0 * std::log(tau);
  const double gauss_bound = 2.0 * static_cast<double>(panels) * std::exp(log_panel_error);
  out.quad_error = gauss_bound + rounding + 4.0 * kUnitRoundoff * magnitude;

  const TailPiece centre = cosine_tail(x, halfwidth);
  const TailPiece upper = cosine_tail(x + tau, halfwidth);
  const TailPiece lower = cosine_tail(x - tau, halfwidth);
  const double inv_pi2 = 1.0 / (kPi * kPi);
  out.tail_estimate = inv_pi2 * (centre.estimate - 0.5 * upper.estimate - 0.5 * lower.estimate);
  out.tail_bound = inv_pi2 * (centre.bound + 0.5 * upper.bound + 0.5 * lower.bound);
  out.crude_tail_bound = 2.0 * inv_pi2 / halfwidth;
  out.value = integral + out.tail_estimate;
  return out;
}

PowerSum::PowerSum(int k, double X, double eta, const PrimeTable& table) : k_(k) {
  check_k(k);
  require(X < 0x1p53, ErrorKind::InvalidArgument, "power sums need X < 2^53");
  interval_ = interval_ij(X, eta, k);
  require(interval_.hi <= static_cast<double>(table.limit()), ErrorKind::TableTooSmall,
          "S_" + std::to_string(k) + ": X^(1/" + std::to_string(k) + ") exceeds table limit " +
              std::to_string(table.limit()));

  auto push = [&](std::uint64_t n, double w) {
    if (w == 0.0) return;
    double power = 1.0;
    for (int i = 0; i < k; ++i) power *= static_cast<double>(n);
    weights_.push_back(w);
    powers_.push_back(power);
    weight_sum_ += w;
    abs_weight_ += std::fabs(w);
  };

  if (k == 2) {
    HarmanWeights rho_of(X, table);
    const double lo = std::max(1.0, std::ceil(interval_.lo));
    const double hi = std::floor(interval_.hi);
    for (double m = lo; m <= hi; m += 1.0) {
      const auto mi = static_cast<std::uint64_t>(m);
      push(mi, static_cast<double>(rho_of(mi)));
    }
  } else {
    for (std::uint32_t p : table.primes_in(interval_)) push(p, std::log(static_cast<double>(p)));
  }
}

Complex PowerSum::at(DoubleDouble beta) const {
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < powers_.size(); ++i)
    sum += weights_[i] * unit_phase(reduced_phase(beta, powers_[i]));
  return sum;
}

Complex PowerSum::operator()(double lambda, double alpha) const { return at(two_prod(lambda, alpha)); }

Complex S(int k, double lambda, double alpha, double X, const PrimeTable& table, double eta) {
  require(lambda != 0.0, ErrorKind::InvalidArgument, "S: lambda must be nonzero");
  return PowerSum(k, X, eta, table)(lambda, alpha);
}

namespace {

// Walks the T_k panel boundaries, calling visit(a, b) for each panel.
template <class Visit>
std::size_t walk_T_panels(double beta_abs, double a, double b, unsigned refine, std::size_t budget, Visit&& visit) {
  const double quarter = beta_abs > 0.0 ? 0.25 / beta_abs : b - a;
  std::size_t count = 0;
  double u = a;
  while (u < b) {
    const double h = std::min(quarter, 0.25 * u) / static_cast<double>(refine);
    double next = u + h;
    if (next >= b || b - next < 1e-3 * h) next = b;
    ++count;
    require(count <= budget, ErrorKind::ResolutionError,
            "T: panel budget " + std::to_string(budget) + " exhausted");
    visit(u, next);
    u = next;
  }
  return count;
}

double T_estimated_panels(double beta_abs, double a, double b) {
  return 4.0 * beta_abs * (b - a) + std::log(b / a) / std::log(1.25) + 2.0;
}

}  // namespace

std::size_t T_panel_count(int k, double lambda, double alpha, double X, double eta) {
  check_k(k);
  const double a = eta * X;
  require(a >= 1.0, ErrorKind::EmptyInterval, "T: eta*X is below 1");
  if (lambda * alpha == 0.0) return 0;
  return walk_T_panels(std::fabs(lambda * alpha), a, X, 1, static_cast<std::size_t>(-1), [](double, double) {});
}

OscillatoryIntegral T(int k, double lambda, double alpha, double X, double eta, std::size_t budget,
                      unsigned refine) {
  check_k(k);
  require(lambda != 0.0, ErrorKind::InvalidArgument, "T: lambda must be nonzero");
  require(std::isfinite(alpha), ErrorKind::InvalidArgument, "T: alpha must be finite");
  require(refine >= 1, ErrorKind::InvalidArgument, "T: refine must be at least 1");
  const Interval iv = interval_ij(X, eta, k);

  OscillatoryIntegral out;
  const DoubleDouble beta = two_prod(lambda, alpha);
  if (beta.hi == 0.0) {
    out.value = {iv.hi - iv.lo, 0.0};
    return out;
  }

  const double a = eta * X;
  const double b = X;
  const double beta_abs = std::fabs(beta.hi);
  const double estimate = T_estimated_panels(beta_abs, a, b) * static_cast<double>(refine);
  require(estimate <= 1.05 * static_cast<double>(budget) + 8.0, ErrorKind::ResolutionError,
          "T: about " + std::to_string(static_cast<std::uint64_t>(estimate)) +
              " panels needed for oscillation count |lambda alpha| X, budget is " + std::to_string(budget));

  const KronrodRule& gk = gauss_kronrod_15();
  const double exponent = 1.0 / static_cast<double>(k) - 1.0;
  const double inv_k = 1.0 / static_cast<double>(k);
  CompensatedComplexSum total;
  double error = 0.0;
  out.panels = walk_T_panels(beta_abs, a, b, refine, budget, [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Complex kron{0.0, 0.0};
    Complex gauss{0.0, 0.0};
    for (std::size_t j = 0; j < gk.nodes.size(); ++j) {
      const double u = mid + half * gk.nodes[j];
      const Complex g = unit_phase(reduced_phase(beta, u)) * (std::pow(u, exponent) * inv_k);
      kron += gk.kronrod_weights[j] * g;
      gauss += gk.gauss_weights[j] * g;
    }
    total.add(half * kron);
    error += half * std::abs(kron - gauss);
  });
  out.value = total.value();
  out.error = error + 8.0 * kUnitRoundoff * (iv.hi - iv.lo);
  return out;
}

}  // namespace mixpow
