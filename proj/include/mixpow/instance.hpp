#pragma once

#include <array>
#include <optional>

#include "mixpow/prime_tables.hpp"

namespace mixpow {

using Lambdas = std::array<double, 4>;

// The two sign conventions found for the coefficients: "not all negative" and
// the stronger "not all of the same sign". Instances only need the first; the
// second is recorded so reports can say which one holds.
struct SignConventions {
  bool not_all_negative = false;
  bool not_all_same_sign = false;
};

SignConventions sign_conventions(const Lambdas& lambda);

// One evaluation of |l1 p1^2 + l2 p2^3 + l3 p3^4 + l4 p4^5 - v| < tau.
struct ProblemInstance {
  Lambdas lambda{};
  double X = 0.0;
  double v = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  double eta = 0.01;
  double eps = 0.01;
  const PrimeTable* table = nullptr;

  SignConventions signs() const { return sign_conventions(lambda); }
};

struct InstanceOptions {
  double eta = 0.01;
  double eps = 0.01;
  // Overrides tau = X^(-delta); delta is then reported as -log(tau)/log(X).
  std::optional<double> tau;
  // Enforces X/2 <= v <= X.
  bool scan_mode = false;
};

// Validates every field; tau defaults to X^(-delta).
ProblemInstance make_instance(const PrimeTable& table, const Lambdas& lambda, double X, double v, double delta,
                              const InstanceOptions& options = {});

void validate(const ProblemInstance& inst, bool scan_mode = false);

}  // namespace mixpow
