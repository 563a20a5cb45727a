#pragma once

// Small floating-point toolkit: error-free transformations, phase reduction
// for e(t) = exp(2*pi*i*t), compensated summation and Gauss rules.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace mixpow {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kUnitRoundoff = 0x1p-53;

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const double lo = s.lo + a.lo + b.lo;
  return two_sum(s.hi, lo);
}

inline DoubleDouble dd_add(DoubleDouble a, double b) { return dd_add(a, DoubleDouble{b, 0.0}); }

inline DoubleDouble dd_mul(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  return two_sum(p.hi, p.lo + a.lo * b);
}

// Sign of hi + lo, exact for normalized pairs.
inline int dd_sign(DoubleDouble a) {
  if (a.hi > 0.0) return 1;
  if (a.hi < 0.0) return -1;
  return (a.lo > 0.0) - (a.lo < 0.0);
}

// Fractional part of (t.hi + t.lo) * n, reduced to [-1/2, 1/2]. The product
// t.hi * n is split exactly with an FMA so the integer part is removed before
// any precision is lost; the result is accurate to a few ulps of 1 as long as
// |t * n| < 2^52.
inline double reduced_phase(DoubleDouble t, double n) {
  const double hi = t.hi * n;
  const double err = std::fma(t.hi, n, -hi);
  double frac = hi - std::nearbyint(hi);
  frac += err + t.lo * n;
  return frac - std::nearbyint(frac);
}

// e(frac) for an already reduced argument.
inline Complex unit_phase(double frac) {
  const double angle = kTwoPi * frac;
  return {std::cos(angle), std::sin(angle)};
}

// Neumaier's variant of Kahan summation. Order dependent, so callers that
// need bit-stable output must add terms in a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // (n!)^4 / ((2n+1) ((2n)!)^3): the rule's error on [a, b] is this constant
  // times (b-a)^(2n+1) times f^(2n) at some interior point.
  double error_constant = 0.0;
};

// Cached rule with n points, 1 <= n <= 64.
const GaussRule& gauss_legendre(std::size_t n);

// The classical 7-point Gauss / 15-point Kronrod pair on [-1, 1].
struct KronrodRule {
  std::span<const double> nodes;           // 15 abscissae, symmetric
  std::span<const double> kronrod_weights; // 15 weights
  std::span<const double> gauss_weights;   // 15 entries, zero off the Gauss nodes
};

const KronrodRule& gauss_kronrod_15();

// x^(1/k) for x >= 0, snapped to the exact integer root when one exists, so
// that interval endpoints such as 343^(1/3) compare correctly against primes.
double kth_root(double x, int k);

// x^e snapped to the nearest integer when it is within a few ulps of one.
double snapped_pow(double x, double e);

}  // namespace mixpow
