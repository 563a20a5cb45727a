#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mixpow/instance.hpp"
#include "mixpow/numeric.hpp"

namespace mixpow {

// Work ceilings for the discrete searches. Beyond them the engines refuse
// with InstanceTooLarge instead of running for hours.
inline constexpr double kMaxSearchX = 1e12;
inline constexpr double kMaxOuterPairs = 2e8;   // (m1 or p1) x p2 window queries per evaluation
inline constexpr double kMaxPairTable = 5e7;    // (p3, p4) entries
inline constexpr double kMaxBruteForceX = 1e3;

// l1 n1 + l2 n2 + l3 n3 + l4 n4 - v as a double-double, where n_j are the
// (exactly representable) powers m1^2, p2^3, p3^4, p4^5.
DoubleDouble residual(const Lambdas& lambda, const std::array<double, 4>& powers, double v);

// Sum over m1 in I_2 (all integers, weight rho(m1)) and primes p2, p3, p4 in
// I_3, I_4, I_5 of rho(m1) log p2 log p3 log p4 max(0, tau - |residual|).
// Meet-in-the-middle: (p3, p4) values are sorted once and each (m1, p2) pair
// issues a window query. Bit-identical for any thread count.
double smoothed_sum(const ProblemInstance& inst, unsigned threads = 1);

struct CountResult {
  std::uint64_t count = 0;
  // Qualifying or rejected candidates whose |residual| lies within 1e-12 of tau.
  std::uint64_t borderline = 0;
};

// Number of prime quadruples p_j in I_{j+1} with |residual| < tau.
CountResult count_solutions_detailed(const ProblemInstance& inst, unsigned threads = 1);
std::uint64_t count_solutions(const ProblemInstance& inst, unsigned threads = 1);

// Quadruple loop over every prime tuple. Refuses X > 1000.
std::uint64_t brute_force_count(const ProblemInstance& inst);

struct SolutionQuadruple {
  std::uint32_t p1 = 0, p2 = 0, p3 = 0, p4 = 0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool borderline = false;
};

struct SearchOutcome {
  std::optional<SolutionQuadruple> solution;  // set iff best.|residual| < tolerance
  std::optional<SolutionQuadruple> best;      // closest quadruple; empty when some I_j has no prime
  double tolerance = 0.0;
  bool borderline = false;
};

// The family of instances sharing lambda, X and eta: the (p3, p4) table is
// built once and reused for every v.
class SolutionSearcher {
 public:
  SolutionSearcher(const Lambdas& lambda, double X, double eta, const PrimeTable& table);

  // Exhaustive search with tolerance v^(-delta); v > 1.
  SearchOutcome find(double v, double delta) const;
  // Exhaustive search with an explicit tolerance.
  SearchOutcome find_with_tolerance(double v, double tolerance) const;

  double X() const { return X_; }

 private:
  struct Pair {
    double key;
    std::uint32_t p3, p4;
  };

  Lambdas lambda_;
  double X_;
  double bound_;  // sum |lambda_j| X, scale of every residual term
  std::vector<std::uint32_t> p1_, p2_;
  std::vector<Pair> pairs_;
};

// find_solution(v, lambda, X, delta): convenience wrapper over SolutionSearcher.
SearchOutcome find_solution(double v, const Lambdas& lambda, double X, double delta, const PrimeTable& table,
                            double eta = 0.01);

// Quadruple-loop counterpart of find_solution. Refuses X > 1000.
SearchOutcome brute_force_find(double v, const Lambdas& lambda, double X, double delta, const PrimeTable& table,
                               double eta = 0.01);
SearchOutcome brute_force_find_with_tolerance(double v, double tolerance, const Lambdas& lambda, double X,
                                              const PrimeTable& table, double eta = 0.01);

}  // namespace mixpow
