#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mixpow/numeric.hpp"
#include "mixpow/prime_tables.hpp"

namespace mixpow {

// Kernel width tau, 0 < tau < 1.
struct KernelParams {
  double tau;

  explicit KernelParams(double tau_value);
};

// K(alpha) = (sin(pi tau alpha) / (pi alpha))^2, K(0) = tau^2. For
// |pi tau alpha| < 1e-6 the two-term Taylor expansion is used instead of the
// quotient. The result never exceeds tau^2 or kernel_decay_bound(alpha).
double fejer_K(double alpha, const KernelParams& kp);

// 1 / (pi^2 alpha^2), the decay envelope of K.
double kernel_decay_bound(double alpha);

// A(x) = max(0, tau - |x|), the Fourier transform of K.
double window_A(double x, const KernelParams& kp);

struct WindowQuadrature {
  double value = 0.0;             // truncated integral + tail_estimate
  double imag = 0.0;              // imaginary part; vanishes analytically
  double quad_error = 0.0;        // Gauss remainder bound + rounding bound
  double tail_estimate = 0.0;     // leading asymptotic term of the |alpha| > halfwidth part
  double tail_bound = 0.0;        // bound on |true tail - tail_estimate|
  double crude_tail_bound = 0.0;  // 2 / (pi^2 halfwidth), from K <= (pi alpha)^-2 alone
  std::size_t panels = 0;

  double error_bound() const { return quad_error + tail_bound; }
};

// Evaluates A(x) as the integral of e(alpha x) K(alpha) over the real line:
// Gauss-Legendre panels on [-halfwidth, halfwidth], each at most one period of
// the fastest oscillation |x| + tau, plus an asymptotic treatment of the two
// tails. `budget` caps the number of panels; ResolutionError when exceeded.
WindowQuadrature window_A_by_quadrature(double x, const KernelParams& kp, double halfwidth,
                                        std::size_t budget);

// Weighted power sum  sum_n w_n e(beta n^k)  over the k-th interval I_k:
//   k = 2: n runs over the integers of I_2 with weight rho(n);
//   k >= 3: n runs over the primes of I_k with weight log n.
// Terms with zero weight are dropped. Phases are reduced with an exact split
// product, so beta * n^k may be large without losing the fractional part.
class PowerSum {
 public:
  PowerSum(int k, double X, double eta, const PrimeTable& table);

  // S_k(lambda alpha).
  Complex operator()(double lambda, double alpha) const;
  // S_k at a frequency given as a double-double.
  Complex at(DoubleDouble beta) const;

  int k() const { return k_; }
  const Interval& interval() const { return interval_; }
  std::size_t size() const { return powers_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& powers() const { return powers_; }
  double weight_sum() const { return weight_sum_; }  // S_k(0)
  double abs_weight() const { return abs_weight_; }  // sum |w_n|
  double max_power() const { return powers_.empty() ? 0.0 : powers_.back(); }

 private:
  int k_;
  Interval interval_;
  std::vector<double> weights_;
  std::vector<double> powers_;
  double weight_sum_ = 0.0;
  double abs_weight_ = 0.0;
};

// One-shot S_k(lambda alpha) for k in {2, 3, 4, 5}.
Complex S(int k, double lambda, double alpha, double X, const PrimeTable& table, double eta = 0.01);

struct OscillatoryIntegral {
  Complex value;
  double error = 0.0;  // sum over panels of |Kronrod - Gauss|
  std::size_t panels = 0;
};

// T_k(lambda alpha) = integral over I_k of e(lambda alpha t^k) dt, computed
// after the substitution u = t^k as the integral over [eta X, X] of
// e(lambda alpha u) u^(1/k - 1) / k. Panels span at most a quarter period of
// the phase and at most a quarter of their left endpoint (the algebraic factor
// varies fastest near eta X); each panel uses the 7/15 Gauss-Kronrod pair.
// `refine` subdivides every panel further and exists for reference runs.
// ResolutionError when the panel count would exceed `budget`.
OscillatoryIntegral T(int k, double lambda, double alpha, double X, double eta, std::size_t budget,
                      unsigned refine = 1);

// Panels T would use for these arguments (with refine = 1).
std::size_t T_panel_count(int k, double lambda, double alpha, double X, double eta);

}  // namespace mixpow
