#pragma once

#include <cstdint>
#include <vector>

#include "mixpow/prime_tables.hpp"

namespace mixpow {

// The powers of X that enter z(p) and rho(m).
struct SieveThresholds {
  double X = 0.0;
  double t_542 = 0.0;  // X^(5/42)
  double t_17 = 0.0;   // X^(1/7)
  double t_314 = 0.0;  // X^(3/14)
  double t_14 = 0.0;   // X^(1/4)
  double t_528 = 0.0;  // X^(5/28)
  double t_514 = 0.0;  // X^(5/14)
};

SieveThresholds sieve_thresholds(double X);

// psi(m, z) = 1 when every prime factor of m is >= z; psi(1, z) = 1.
int psi(std::uint64_t m, double z, const PrimeTable& table);

// z(p) = X^(5/28) p^(-1/2)      if p < X^(1/7)
//      = p                      if X^(1/7) <= p <= X^(3/14)
//      = X^(5/14) p^(-1)        if p > X^(3/14)
double z_of(std::uint64_t p, double X);
double z_of(std::uint64_t p, const SieveThresholds& th);

// rho(m) = psi(m, X^(5/42)) - sum psi(m/p, z(p)) over primes p | m with
// X^(5/42) <= p < X^(1/4). Only divisors of m contribute to the sum; m/p is
// not an integer otherwise.
int rho(std::uint64_t m, double X, const PrimeTable& table);

// Evaluates rho repeatedly for one X without recomputing the thresholds.
class HarmanWeights {
 public:
  HarmanWeights(double X, const PrimeTable& table);

  int operator()(std::uint64_t m) const;
  const SieveThresholds& thresholds() const { return th_; }

  // rho(m) for every integer m in [lo, hi] (closed, real endpoints).
  std::vector<int> over(const Interval& iv) const;

 private:
  SieveThresholds th_;
  const PrimeTable* table_;
};

struct RhoMeanValue {
  std::int64_t sum = 0;      // sum of rho(m) over integers m in the subinterval
  double kappa_hat = 0.0;    // sum * log X / |subinterval|
  double sub_lo = 0.0;
  double sub_hi = 0.0;
  double X = 0.0;
};

// Empirical estimate of kappa in sum_{m in I'} rho(m) ~ kappa |I'| / log X.
// `sub` must lie inside I_2(X, eta) and be at least X^(1/2)/100 long.
RhoMeanValue rho_mean_value(double X, const Interval& sub, const PrimeTable& table, double eta = 0.01);

}  // namespace mixpow
