#include "mixpow/instance.hpp"

#include <cmath>
#include <string>

#include "mixpow/errors.hpp"
#include "mixpow/numeric.hpp"

namespace mixpow {

SignConventions sign_conventions(const Lambdas& lambda) {
  int negative = 0;
  int positive = 0;
  for (double l : lambda) {
    negative += l < 0.0;
    positive += l > 0.0;
  }
  return {negative < 4, negative > 0 && positive > 0};
}

void validate(const ProblemInstance& inst, bool scan_mode) {
  for (double l : inst.lambda)
    require(std::isfinite(l) && l != 0.0, ErrorKind::InvalidArgument, "lambda entries must be finite and nonzero");
  require(inst.signs().not_all_negative, ErrorKind::InvalidArgument, "lambda entries must not all be negative");
  require(std::isfinite(inst.X) && inst.X > 1.0, ErrorKind::InvalidArgument, "X must exceed 1");
  require(std::isfinite(inst.v) && inst.v > 0.0, ErrorKind::InvalidArgument, "v must be positive");
  require(inst.tau > 0.0 && inst.tau < 1.0, ErrorKind::InvalidArgument, "tau must lie in (0, 1)");
  require(inst.eta > 0.0 && inst.eta < 1.0, ErrorKind::InvalidArgument, "eta must lie in (0, 1)");
  require(inst.eps > 0.0 && inst.eps <= 0.05, ErrorKind::InvalidArgument, "eps must lie in (0, 0.05]");
  require(inst.eta * inst.X >= 1.0, ErrorKind::EmptyInterval, "eta*X must be at least 1");
  require(inst.table != nullptr, ErrorKind::InvalidArgument, "instance has no prime table");
  require(kth_root(inst.X, 2) <= static_cast<double>(inst.table->limit()), ErrorKind::TableTooSmall,
          "prime table limit " + std::to_string(inst.table->limit()) + " is below X^(1/2)");
  if (scan_mode)
    require(inst.X / 2.0 <= inst.v && inst.v <= inst.X, ErrorKind::InvalidArgument,
            "scan mode requires X/2 <= v <= X");
}

ProblemInstance make_instance(const PrimeTable& table, const Lambdas& lambda, double X, double v, double delta,
                              const InstanceOptions& options) {
  ProblemInstance inst;
  inst.lambda = lambda;
  inst.X = X;
  inst.v = v;
  inst.eta = options.eta;
  inst.eps = options.eps;
  inst.table = &table;
  require(X > 1.0, ErrorKind::InvalidArgument, "X must exceed 1");
  if (options.tau) {
    inst.tau = *options.tau;
    inst.delta = inst.tau > 0.0 ? -std::log(inst.tau) / std::log(X) : delta;
  } else {
    require(delta > 0.0 && std::isfinite(delta), ErrorKind::InvalidArgument, "delta must be positive");
    inst.delta = delta;
    inst.tau = std::pow(X, -delta);
  }
  validate(inst, options.scan_mode);
  return inst;
}

}  // namespace mixpow
