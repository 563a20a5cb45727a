#include "mixpow/harman_sieve.hpp"

#include <cmath>
#include <string>

#include "mixpow/errors.hpp"
#include "mixpow/numeric.hpp"

namespace mixpow {

SieveThresholds sieve_thresholds(double X) {
  require(X > 1.0, ErrorKind::InvalidArgument, "sieve thresholds: X must exceed 1");
  SieveThresholds th;
  th.X = X;
  th.t_542 = snapped_pow(X, 5.0 / 42.0);
  th.t_17 = snapped_pow(X, 1.0 / 7.0);
  th.t_314 = snapped_pow(X, 3.0 / 14.0);
  th.t_14 = kth_root(X, 4);
  th.t_528 = snapped_pow(X, 5.0 / 28.0);
  th.t_514 = snapped_pow(X, 5.0 / 14.0);
  return th;
}

int psi(std::uint64_t m, double z, const PrimeTable& table) {
  require(m >= 1, ErrorKind::InvalidArgument, "psi: m must be positive");
  require(m <= table.limit(), ErrorKind::TableTooSmall,
          "psi: m = " + std::to_string(m) + " exceeds table limit " + std::to_string(table.limit()));
  if (m == 1) return 1;
  return static_cast<double>(table.spf(m)) >= z ? 1 : 0;
}

double z_of(std::uint64_t p, const SieveThresholds& th) {
  const double pd = static_cast<double>(p);
  if (pd < th.t_17) return th.t_528 / std::sqrt(pd);
  if (pd <= th.t_314) return pd;
  return th.t_514 / pd;
}

double z_of(std::uint64_t p, double X) { return z_of(p, sieve_thresholds(X)); }

HarmanWeights::HarmanWeights(double X, const PrimeTable& table)
    : th_(sieve_thresholds(X)), table_(&table) {}

int HarmanWeights::operator()(std::uint64_t m) const {
  const PrimeTable& table = *table_;
  int value = psi(m, th_.t_542, table);
  std::uint64_t rest = m;
  while (rest > 1) {
    const std::uint32_t p = table.spf(rest);
    while (rest % p == 0) rest /= p;
    const double pd = static_cast<double>(p);
    if (pd >= th_.t_542 && pd < th_.t_14) value -= psi(m / p, z_of(p, th_), table);
  }
  return value;
}

std::vector<int> HarmanWeights::over(const Interval& iv) const {
  std::vector<int> out;
  const double lo = std::max(1.0, std::ceil(iv.lo));
  const double hi = std::floor(iv.hi);
  if (hi < lo) return out;
  require(hi <= static_cast<double>(table_->limit()), ErrorKind::TableTooSmall,
          "rho: interval end exceeds table limit " + std::to_string(table_->limit()));
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (auto m = static_cast<std::uint64_t>(lo); m <= static_cast<std::uint64_t>(hi); ++m)
    out.push_back((*this)(m));
  return out;
}

int rho(std::uint64_t m, double X, const PrimeTable& table) { return HarmanWeights(X, table)(m); }

RhoMeanValue rho_mean_value(double X, const Interval& sub, const PrimeTable& table, double eta) {
  const Interval i2 = interval_ij(X, eta, 2);
  const double slack = 1e-9 * i2.hi;
  require(sub.lo <= sub.hi, ErrorKind::InvalidArgument, "rho_mean_value: subinterval has lo > hi");
  require(sub.lo >= i2.lo - slack && sub.hi <= i2.hi + slack, ErrorKind::InvalidArgument,
          "rho_mean_value: subinterval lies outside I_2");
  require(sub.length() > 0.0 && sub.length() >= std::sqrt(X) / 100.0, ErrorKind::InvalidArgument,
          "rho_mean_value: subinterval shorter than X^(1/2)/100");

  HarmanWeights weights(X, table);
  RhoMeanValue out;
  for (int w : weights.over(sub)) out.sum += w;
  out.kappa_hat = static_cast<double>(out.sum) * std::log(X) / sub.length();
  out.sub_lo = sub.lo;
  out.sub_hi = sub.hi;
  out.X = X;
  return out;
}

}  // namespace mixpow
