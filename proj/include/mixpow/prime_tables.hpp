#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mixpow {

// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// I_j = [(eta X)^(1/j), X^(1/j)]. Throws EmptyInterval when eta X < 1.
Interval interval_ij(double X, double eta, int j);

// Sieve products up to `limit`: smallest prime factors, the ascending prime
// list and cumulative sums of log p. Immutable after construction and safe to
// share between threads.
//
// Memory is 4 bytes per integer for the factor map plus ~12 bytes per prime,
// so a limit of 10^8 needs roughly 0.5 GB. Limits above 2^32 - 1 are
// rejected; in practice the ceiling is set by available memory.
class PrimeTable {
 public:
  static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

  // Throws InvalidArgument for limit < 2 or limit > kMaxLimit.
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  // Smallest prime factor of n, 2 <= n <= limit.
  std::uint32_t spf(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  std::span<const std::uint32_t> primes() const { return primes_; }
  // theta_prefix()[i] = sum of log p over the first i+1 primes.
  std::span<const double> theta_prefix() const { return theta_prefix_; }

  // Primes p with iv.lo <= p <= iv.hi, as a view into primes().
  // Throws TableTooSmall when iv.hi > limit.
  std::span<const std::uint32_t> primes_in(const Interval& iv) const;

  // Chebyshev theta(x) = sum_{p <= x} log p. Throws TableTooSmall when x > limit.
  double theta(double x) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
  std::vector<double> theta_prefix_;
};

PrimeTable build_table(std::uint64_t limit);

// Smallest table limit that covers every I_j, j >= 2, for this X:
// ceil(X^(1/2)), and at least 2.
std::uint64_t required_table_limit(double X);

}  // namespace mixpow
