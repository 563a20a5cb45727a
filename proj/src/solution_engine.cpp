#include "mixpow/solution_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixpow/errors.hpp"
#include "mixpow/harman_sieve.hpp"
#include "mixpow/parallel.hpp"

namespace mixpow {

namespace {

constexpr std::size_t kChunk = 16;
constexpr double kBorderline = 1e-12;

double ipow(double n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n;
  return r;
}

DoubleDouble dd_abs(DoubleDouble a) { return dd_sign(a) < 0 ? DoubleDouble{-a.hi, -a.lo} : a; }

// |beta| < bound, decided on the double-double value.
bool strictly_below(DoubleDouble abs_beta, double bound) {
  return dd_sign(dd_add(DoubleDouble{bound, 0.0}, DoubleDouble{-abs_beta.hi, -abs_beta.lo})) > 0;
}

// Widening of every window query: covers the rounding of the sorted keys and
// of the per-query target, so no true candidate is missed.
double window_slack(const Lambdas& lambda, double X, double v) {
  double scale = std::fabs(v);
  for (double l : lambda) scale += std::fabs(l) * X;
  return 1e-9 * (1.0 + std::fabs(v)) + 16.0 * kUnitRoundoff * scale;
}

struct PairEntry {
  double key;
  std::uint32_t p3, p4;
  double weight;
};

std::vector<PairEntry> build_pairs(const Lambdas& lambda, std::span<const std::uint32_t> p3s,
                                   std::span<const std::uint32_t> p4s, bool weighted) {
  require(static_cast<double>(p3s.size()) * static_cast<double>(p4s.size()) <= kMaxPairTable,
          ErrorKind::InstanceTooLarge, "pair table would exceed " + std::to_string(kMaxPairTable) + " entries");
  std::vector<PairEntry> pairs;
  pairs.reserve(p3s.size() * p4s.size());
  for (std::uint32_t p3 : p3s) {
    for (std::uint32_t p4 : p4s) {
      const DoubleDouble u = dd_add(two_prod(lambda[2], ipow(p3, 4)), two_prod(lambda[3], ipow(p4, 5)));
      const double w = weighted ? std::log(static_cast<double>(p3)) * std::log(static_cast<double>(p4)) : 1.0;
      pairs.push_back({u.value(), p3, p4, w});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const PairEntry& a, const PairEntry& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.p3 != b.p3) return a.p3 < b.p3;
    return a.p4 < b.p4;
  });
  return pairs;
}

std::vector<PairEntry>::const_iterator first_at_least(const std::vector<PairEntry>& pairs, double x) {
  return std::lower_bound(pairs.begin(), pairs.end(), x,
                          [](const PairEntry& e, double value) { return e.key < value; });
}

void check_search_size(double X, double outer, const char* what) {
  require(X <= kMaxSearchX, ErrorKind::InstanceTooLarge,
          std::string(what) + ": X exceeds the search ceiling 1e12");
  require(outer <= kMaxOuterPairs, ErrorKind::InstanceTooLarge,
          std::string(what) + ": " + std::to_string(static_cast<std::uint64_t>(outer)) +
              " outer pairs exceed the ceiling of 2e8");
}

}  // namespace

DoubleDouble residual(const Lambdas& lambda, const std::array<double, 4>& powers, double v) {
  DoubleDouble acc = two_prod(lambda[0], powers[0]);
  for (int j = 1; j < 4; ++j) acc = dd_add(acc, two_prod(lambda[j], powers[j]));
  return dd_add(acc, -v);
}

double smoothed_sum(const ProblemInstance& inst, unsigned threads) {
  validate(inst);
  const PrimeTable& table = *inst.table;
  const Interval i2 = interval_ij(inst.X, inst.eta, 2);
  const auto p2s = table.primes_in(interval_ij(inst.X, inst.eta, 3));
  const auto p3s = table.primes_in(interval_ij(inst.X, inst.eta, 4));
  const auto p4s = table.primes_in(interval_ij(inst.X, inst.eta, 5));
  check_search_size(inst.X, i2.length() * static_cast<double>(p2s.size()), "smoothed_sum");

  struct Weighted {
    double m;
    double rho;
  };
  std::vector<Weighted> m1s;
  {
    HarmanWeights rho_of(inst.X, table);
    const double lo = std::max(1.0, std::ceil(i2.lo));
    for (double m = lo; m <= i2.hi; m += 1.0) {
      const int w = rho_of(static_cast<std::uint64_t>(m));
      if (w != 0) m1s.push_back({m, static_cast<double>(w)});
    }
  }
  const auto pairs = build_pairs(inst.lambda, p3s, p4s, true);
  if (m1s.empty() || p2s.empty() || pairs.empty()) return 0.0;

  const double slack = window_slack(inst.lambda, inst.X, inst.v);
  const std::size_t chunks = (m1s.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    CompensatedSum acc;
    const std::size_t end = std::min(m1s.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double n1 = m1s[i].m * m1s[i].m;
      for (std::uint32_t p2 : p2s) {
        const double n2 = ipow(p2, 3);
        const double target = inst.v - inst.lambda[0] * n1 - inst.lambda[1] * n2;
        const double hi = target + inst.tau + slack;
        for (auto it = first_at_least(pairs, target - inst.tau - slack); it != pairs.end() && it->key <= hi; ++it) {
          const DoubleDouble beta = residual(inst.lambda, {n1, n2, ipow(it->p3, 4), ipow(it->p4, 5)}, inst.v);
          const double window = inst.tau - std::fabs(beta.value());
          if (window > 0.0) acc.add(m1s[i].rho * std::log(static_cast<double>(p2)) * it->weight * window);
        }
      }
    }
    partial[c] = acc.value();
  });

  CompensatedSum total;
  for (double x : partial) total.add(x);
  return total.value();
}

CountResult count_solutions_detailed(const ProblemInstance& inst, unsigned threads) {
  validate(inst);
  const PrimeTable& table = *inst.table;
  const auto p1s = table.primes_in(interval_ij(inst.X, inst.eta, 2));
  const auto p2s = table.primes_in(interval_ij(inst.X, inst.eta, 3));
  const auto p3s = table.primes_in(interval_ij(inst.X, inst.eta, 4));
  const auto p4s = table.primes_in(interval_ij(inst.X, inst.eta, 5));
  check_search_size(inst.X, static_cast<double>(p1s.size()) * static_cast<double>(p2s.size()), "count_solutions");
  const auto pairs = build_pairs(inst.lambda, p3s, p4s, false);

  const double slack = window_slack(inst.lambda, inst.X, inst.v);
  const std::size_t chunks = (p1s.size() + kChunk - 1) / kChunk;
  std::vector<CountResult> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    CountResult local;
    const std::size_t end = std::min(p1s.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double n1 = ipow(p1s[i], 2);
      for (std::uint32_t p2 : p2s) {
        const double n2 = ipow(p2, 3);
        const double target = inst.v - inst.lambda[0] * n1 - inst.lambda[1] * n2;
        const double hi = target + inst.tau + slack;
        for (auto it = first_at_least(pairs, target - inst.tau - slack); it != pairs.end() && it->key <= hi; ++it) {
          const DoubleDouble beta =
              dd_abs(residual(inst.lambda, {n1, n2, ipow(it->p3, 4), ipow(it->p4, 5)}, inst.v));
          if (strictly_below(beta, inst.tau)) ++local.count;
          if (std::fabs(beta.value() - inst.tau) <= kBorderline) ++local.borderline;
        }
      }
    }
    partial[c] = local;
  });

  CountResult out;
  for (const auto& p : partial) {
    out.count += p.count;
    out.borderline += p.borderline;
  }
  return out;
}

std::uint64_t count_solutions(const ProblemInstance& inst, unsigned threads) {
  return count_solutions_detailed(inst, threads).count;
}

std::uint64_t brute_force_count(const ProblemInstance& inst) {
  validate(inst);
  require(inst.X <= kMaxBruteForceX, ErrorKind::InstanceTooLarge, "brute force refuses X > 1000");
  const PrimeTable& table = *inst.table;
  const auto p1s = table.primes_in(interval_ij(inst.X, inst.eta, 2));
  const auto p2s = table.primes_in(interval_ij(inst.X, inst.eta, 3));
  const auto p3s = table.primes_in(interval_ij(inst.X, inst.eta, 4));
  const auto p4s = table.primes_in(interval_ij(inst.X, inst.eta, 5));
  std::uint64_t count = 0;
  for (std::uint32_t p1 : p1s)
    for (std::uint32_t p2 : p2s)
      for (std::uint32_t p3 : p3s)
        for (std::uint32_t p4 : p4s) {
          const DoubleDouble beta =
              dd_abs(residual(inst.lambda, {ipow(p1, 2), ipow(p2, 3), ipow(p3, 4), ipow(p4, 5)}, inst.v));
          if (strictly_below(beta, inst.tau)) ++count;
        }
  return count;
}

SolutionSearcher::SolutionSearcher(const Lambdas& lambda, double X, double eta, const PrimeTable& table)
    : lambda_(lambda), X_(X) {
  for (double l : lambda)
    require(std::isfinite(l) && l != 0.0, ErrorKind::InvalidArgument, "lambda entries must be finite and nonzero");
  require(X > 1.0, ErrorKind::InvalidArgument, "search: X must exceed 1");
  require(X <= kMaxSearchX, ErrorKind::InstanceTooLarge, "search: X exceeds the search ceiling 1e12");
  const auto p1s = table.primes_in(interval_ij(X, eta, 2));
  const auto p2s = table.primes_in(interval_ij(X, eta, 3));
  check_search_size(X, static_cast<double>(p1s.size()) * static_cast<double>(p2s.size()), "find_solution");
  p1_.assign(p1s.begin(), p1s.end());
  p2_.assign(p2s.begin(), p2s.end());
  const auto raw = build_pairs(lambda, table.primes_in(interval_ij(X, eta, 4)),
                               table.primes_in(interval_ij(X, eta, 5)), false);
  pairs_.reserve(raw.size());
  for (const auto& e : raw) pairs_.push_back({e.key, e.p3, e.p4});
  bound_ = 0.0;
  for (double l : lambda) bound_ += std::fabs(l) * X;
}

SearchOutcome SolutionSearcher::find(double v, double delta) const {
  require(v > 1.0, ErrorKind::InvalidArgument, "find_solution: v must exceed 1");
  require(delta > 0.0, ErrorKind::InvalidArgument, "find_solution: delta must be positive");
  return find_with_tolerance(v, std::pow(v, -delta));
}

SearchOutcome SolutionSearcher::find_with_tolerance(double v, double tolerance) const {
  require(tolerance > 0.0, ErrorKind::InvalidArgument, "find_solution: tolerance must be positive");
  SearchOutcome out;
  out.tolerance = tolerance;
  const double slack = window_slack(lambda_, X_, v);

  double best_abs = INFINITY;
  SolutionQuadruple best;
  auto key_less = [](const Pair& e, double value) { return e.key < value; };
  auto value_less = [](double value, const Pair& e) { return value < e.key; };
  for (std::uint32_t p1 : p1_) {
    const double n1 = ipow(p1, 2);
    for (std::uint32_t p2 : p2_) {
      const double n2 = ipow(p2, 3);
      const double target = v - lambda_[0] * n1 - lambda_[1] * n2;
      auto first = std::lower_bound(pairs_.begin(), pairs_.end(), target - tolerance - slack, key_less);
      auto last = std::upper_bound(pairs_.begin(), pairs_.end(), target + tolerance + slack, value_less);
      // One neighbour on each side keeps the closest candidate in view even
      // when the window is empty.
      if (first != pairs_.begin()) --first;
      if (last != pairs_.end()) ++last;
      for (auto it = first; it != last; ++it) {
        const DoubleDouble beta = residual(lambda_, {n1, n2, ipow(it->p3, 4), ipow(it->p4, 5)}, v);
        const double abs_beta = std::fabs(beta.value());
        if (abs_beta < best_abs) {
          best_abs = abs_beta;
          best = {p1, p2, it->p3, it->p4, beta.value(), tolerance, false};
          if (strictly_below(dd_abs(beta), tolerance)) out.solution = best;
        }
      }
    }
  }
  if (std::isfinite(best_abs)) {
    best.borderline = std::fabs(best_abs - tolerance) <= kBorderline;
    out.borderline = best.borderline;
    out.best = best;
    if (out.solution) out.solution = best;
  }
  return out;
}

SearchOutcome find_solution(double v, const Lambdas& lambda, double X, double delta, const PrimeTable& table,
                            double eta) {
  return SolutionSearcher(lambda, X, eta, table).find(v, delta);
}

SearchOutcome brute_force_find(double v, const Lambdas& lambda, double X, double delta, const PrimeTable& table,
                               double eta) {
  require(v > 1.0 && delta > 0.0, ErrorKind::InvalidArgument, "brute force: need v > 1 and delta > 0");
  return brute_force_find_with_tolerance(v, std::pow(v, -delta), lambda, X, table, eta);
}

SearchOutcome brute_force_find_with_tolerance(double v, double tolerance, const Lambdas& lambda, double X,
                                              const PrimeTable& table, double eta) {
  require(X > 1.0, ErrorKind::InvalidArgument, "brute force: X must exceed 1");
  require(X <= kMaxBruteForceX, ErrorKind::InstanceTooLarge, "brute force refuses X > 1000");
  require(tolerance > 0.0, ErrorKind::InvalidArgument, "brute force: tolerance must be positive");
  const auto p1s = table.primes_in(interval_ij(X, eta, 2));
  const auto p2s = table.primes_in(interval_ij(X, eta, 3));
  const auto p3s = table.primes_in(interval_ij(X, eta, 4));
  const auto p4s = table.primes_in(interval_ij(X, eta, 5));

  SearchOutcome out;
  out.tolerance = tolerance;
  double best_abs = INFINITY;
  SolutionQuadruple best;
  for (std::uint32_t p1 : p1s)
    for (std::uint32_t p2 : p2s)
      for (std::uint32_t p3 : p3s)
        for (std::uint32_t p4 : p4s) {
          const DoubleDouble beta = residual(lambda, {ipow(p1, 2), ipow(p2, 3), ipow(p3, 4), ipow(p4, 5)}, v);
          if (!out.solution && strictly_below(dd_abs(beta), tolerance))
            out.solution = SolutionQuadruple{p1, p2, p3, p4, beta.value(), tolerance, false};
          if (std::fabs(beta.value()) < best_abs) {
            best_abs = std::fabs(beta.value());
            best = {p1, p2, p3, p4, beta.value(), tolerance, false};
          }
        }
  if (std::isfinite(best_abs)) {
    best.borderline = std::fabs(best_abs - tolerance) <= kBorderline;
    out.borderline = best.borderline;
    out.best = best;
  }
  return out;
}

}  // namespace mixpow
