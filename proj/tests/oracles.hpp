#pragma once

// Independent reference implementations used only by the tests. They share no
// code with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// Plain sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
  std::vector<bool> sieve(limit + 1, true);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

inline std::vector<std::uint64_t> primes_between(double lo, double hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; static_cast<double>(p) <= hi; ++p)
    if (static_cast<double>(p) >= lo && is_prime(p)) out.push_back(p);
  return out;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline int psi(std::uint64_t m, double z) {
  for (std::uint64_t p : distinct_prime_factors(m))
    if (static_cast<double>(p) < z) return 0;
  return 1;
}

// Thresholds evaluated with pow directly.
inline double z_of(std::uint64_t p, double X) {
  const double pd = static_cast<double>(p);
  if (pd < std::pow(X, 1.0 / 7.0)) return std::pow(X, 5.0 / 28.0) / std::sqrt(pd);
  if (pd <= std::pow(X, 3.0 / 14.0)) return pd;
  return std::pow(X, 5.0 / 14.0) / pd;
}

inline int rho(std::uint64_t m, double X) {
  const double lo = std::pow(X, 5.0 / 42.0);
  const double hi = std::pow(X, 0.25);
  int r = psi(m, lo);
  for (std::uint64_t p : distinct_prime_factors(m)) {
    const double pd = static_cast<double>(p);
    if (pd >= lo && pd < hi) r -= psi(m / p, z_of(p, X));
  }
  return r;
}

// Direct evaluation of sum w_n e(beta n^k) in long double.
inline std::complex<long double> power_sum(const std::vector<std::uint64_t>& ns, const std::vector<double>& w,
                                           int k, long double beta) {
  std::complex<long double> s = 0;
  const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    long double power = 1;
    for (int j = 0; j < k; ++j) power *= static_cast<long double>(ns[i]);
    const long double t = beta * power;
    const long double frac = t - std::floor(t);
    s += static_cast<long double>(w[i]) * std::polar(1.0L, two_pi * frac);
  }
  return s;
}

inline long double ipow(std::uint64_t n, int k) {
  long double r = 1;
  for (int j = 0; j < k; ++j) r *= static_cast<long double>(n);
  return r;
}

struct Ranges {
  std::vector<std::uint64_t> m1;  // all integers of I_2
  std::vector<std::uint64_t> p1, p2, p3, p4;
};

inline Ranges ranges(double X, double eta) {
  Ranges r;
  const double lo2 = std::sqrt(eta * X), hi2 = std::sqrt(X);
  for (std::uint64_t m = 1; static_cast<double>(m) <= hi2 + 1e-9; ++m)
    if (static_cast<double>(m) >= lo2 - 1e-9) r.m1.push_back(m);
  auto between = [](double lo, double hi) { return primes_between(lo - 1e-9, hi + 1e-9); };
  r.p1 = between(lo2, hi2);
  r.p2 = between(std::cbrt(eta * X), std::cbrt(X));
  r.p3 = between(std::pow(eta * X, 0.25), std::pow(X, 0.25));
  r.p4 = between(std::pow(eta * X, 0.2), std::pow(X, 0.2));
  return r;
}

// Quadruple loop for the weighted smoothed sum.
inline long double smoothed_sum(const double lambda[4], double X, double v, double tau, double eta) {
  const Ranges r = ranges(X, eta);
  long double total = 0;
  for (std::uint64_t m : r.m1) {
    const int w = rho(m, X);
    if (w == 0) continue;
    for (std::uint64_t p2 : r.p2)
      for (std::uint64_t p3 : r.p3)
        for (std::uint64_t p4 : r.p4) {
          const long double x = lambda[0] * ipow(m, 2) + lambda[1] * ipow(p2, 3) + lambda[2] * ipow(p3, 4) +
                                lambda[3] * ipow(p4, 5) - v;
          const long double window = tau - std::fabs(x);
          if (window > 0)
            total += w * std::log(static_cast<long double>(p2)) * std::log(static_cast<long double>(p3)) *
                     std::log(static_cast<long double>(p4)) * window;
        }
  }
  return total;
}

inline long double quad_residual(const double lambda[4], std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                 std::uint64_t d, double v) {
  return lambda[0] * ipow(a, 2) + lambda[1] * ipow(b, 3) + lambda[2] * ipow(c, 4) + lambda[3] * ipow(d, 5) -
         static_cast<long double>(v);
}

// Prime quadruples with |residual| < tau.
inline std::uint64_t count(const double lambda[4], double X, double v, double tau, double eta) {
  const Ranges r = ranges(X, eta);
  std::uint64_t n = 0;
  for (auto a : r.p1)
    for (auto b : r.p2)
      for (auto c : r.p3)
        for (auto d : r.p4)
          if (std::fabs(quad_residual(lambda, a, b, c, d, v)) < tau) ++n;
  return n;
}

// Smallest |residual| over all prime quadruples; negative when there are none.
inline long double min_residual(const double lambda[4], double X, double v, double eta) {
  const Ranges r = ranges(X, eta);
  long double best = -1;
  for (auto a : r.p1)
    for (auto b : r.p2)
      for (auto c : r.p3)
        for (auto d : r.p4) {
          const long double x = std::fabs(quad_residual(lambda, a, b, c, d, v));
          if (best < 0 || x < best) best = x;
        }
  return best;
}

// v is exceptional when no quadruple gets within v^-delta of it, searched in
// the dyadic block X = N / 2^(j-1) with X/2 < v <= X and eta raised to 1/X.
inline bool exceptional(const double lambda[4], double N, double v, double delta, double eta) {
  double X = N;
  while (X / 2 >= v) X /= 2;
  if (X < 2) return true;
  const long double best = min_residual(lambda, X, v, std::max(eta, 1.0 / X));
  return best < 0 || best >= std::pow(static_cast<long double>(v), -static_cast<long double>(delta));
}

}  // namespace oracle
