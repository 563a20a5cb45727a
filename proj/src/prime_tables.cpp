#include "mixpow/prime_tables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixpow/errors.hpp"
#include "mixpow/numeric.hpp"

namespace mixpow {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

// Primes up to `bound` by a plain byte sieve; bound is at most 2^16 here.
std::vector<std::uint32_t> base_primes(std::uint64_t bound) {
  std::vector<char> composite(bound + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
  }
  return out;
}

}  // namespace

Interval interval_ij(double X, double eta, int j) {
  require(X > 1.0, ErrorKind::InvalidArgument, "interval_ij: X must exceed 1");
  require(eta > 0.0 && eta < 1.0, ErrorKind::InvalidArgument, "interval_ij: eta must lie in (0, 1)");
  require(j >= 2, ErrorKind::InvalidArgument, "interval_ij: j must be at least 2");
  // A relative slack of 1e-12 lets callers pass eta = 1/X without tripping
  // over the rounding of eta * X.
  const double lower = eta * X;
  require(lower >= 1.0 - 1e-12, ErrorKind::EmptyInterval,
          "interval_ij: eta*X = " + std::to_string(lower) + " is below 1");
  return {kth_root(std::max(1.0, lower), j), kth_root(X, j)};
}

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  require(limit >= 2, ErrorKind::InvalidArgument, "build_table: limit must be at least 2");
  require(limit <= kMaxLimit, ErrorKind::InvalidArgument, "build_table: limit exceeds 2^32 - 1");

  spf_.assign(limit + 1, 0);
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  const auto small = base_primes(root);

  // Segmented pass: base primes are visited in ascending order, so the first
  // one to touch an entry is its smallest prime factor. Entries left at zero
  // are primes.
  for (std::uint64_t lo = 2; lo <= limit; lo += kSegment) {
    const std::uint64_t hi = std::min(limit, lo + kSegment - 1);
    for (std::uint32_t p : small) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp > hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p)
        if (spf_[m] == 0) spf_[m] = p;
    }
    for (std::uint64_t n = lo; n <= hi; ++n)
      if (spf_[n] == 0) spf_[n] = static_cast<std::uint32_t>(n);
  }

  for (std::uint64_t n = 2; n <= limit; ++n)
    if (spf_[n] == n) primes_.push_back(static_cast<std::uint32_t>(n));

  theta_prefix_.reserve(primes_.size());
  CompensatedSum acc;
  for (std::uint32_t p : primes_) {
    acc.add(std::log(static_cast<double>(p)));
    theta_prefix_.push_back(acc.value());
  }
}

std::uint32_t PrimeTable::spf(std::uint64_t n) const {
  require(n >= 2, ErrorKind::InvalidArgument, "spf: n must be at least 2");
  require(n <= limit_, ErrorKind::TableTooSmall,
          "spf: " + std::to_string(n) + " exceeds table limit " + std::to_string(limit_));
  return spf_[n];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  return spf(n) == n;
}

std::span<const std::uint32_t> PrimeTable::primes_in(const Interval& iv) const {
  require(iv.lo <= iv.hi, ErrorKind::InvalidArgument, "primes_in: interval has lo > hi");
  require(iv.hi <= static_cast<double>(limit_), ErrorKind::TableTooSmall,
          "primes_in: interval end " + std::to_string(iv.hi) + " exceeds table limit " +
              std::to_string(limit_));
  const double lo = std::ceil(iv.lo);
  const double hi = std::floor(iv.hi);
  if (hi < lo || hi < 2.0) return {};
  auto first = std::lower_bound(primes_.begin(), primes_.end(), lo,
                                [](std::uint32_t p, double x) { return static_cast<double>(p) < x; });
  auto last = std::upper_bound(primes_.begin(), primes_.end(), hi,
                               [](double x, std::uint32_t p) { return x < static_cast<double>(p); });
  if (last <= first) return {};
  return {&*first, static_cast<std::size_t>(last - first)};
}

double PrimeTable::theta(double x) const {
  require(x <= static_cast<double>(limit_), ErrorKind::TableTooSmall,
          "theta: x = " + std::to_string(x) + " exceeds table limit " + std::to_string(limit_));
  if (x < 2.0) return 0.0;
  const double bound = std::floor(x);
  auto last = std::upper_bound(primes_.begin(), primes_.end(), bound,
                               [](double v, std::uint32_t p) { return v < static_cast<double>(p); });
  const auto count = static_cast<std::size_t>(last - primes_.begin());
  return count == 0 ? 0.0 : theta_prefix_[count - 1];
}

PrimeTable build_table(std::uint64_t limit) { return PrimeTable(limit); }

std::uint64_t required_table_limit(double X) {
  require(X > 1.0, ErrorKind::InvalidArgument, "required_table_limit: X must exceed 1");
  const double root = std::ceil(kth_root(X, 2));
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(root));
}

}  // namespace mixpow
