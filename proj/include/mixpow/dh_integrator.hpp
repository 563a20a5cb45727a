#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mixpow/analytic_core.hpp"
#include "mixpow/arc_geometry.hpp"
#include "mixpow/harman_sieve.hpp"
#include "mixpow/instance.hpp"

namespace mixpow {

enum class ArcSelector { Major1, Major2, Major, Minor, Trivial, All };

std::string to_string(ArcSelector arcs);
// Accepts major1, major2, major, minor, trivial, all.
ArcSelector parse_arc_selector(const std::string& text);

// A union of symmetric bands {alpha : lo <= |alpha| <= hi}, optionally with
// the tail |alpha| > R added as a bound.
struct Region {
  struct Band {
    double lo;
    double hi;
  };
  std::vector<Band> bands;
  bool include_tail = false;
  std::string label;
};

// {alpha : lo <= |alpha| <= hi}.
Region explicit_window(double lo, double hi);

struct QuadratureReport {
  double value = 0.0;          // real part of the integral over the region
  double imag_residual = 0.0;  // |imaginary part|
  double tail_bound = 0.0;     // 2 B / (pi^2 R) when the tail is part of the region
  double error = 0.0;          // Gauss remainder + rounding bound (tail excluded)
  std::size_t panels = 0;
  std::string arc;
  bool bound_only = false;     // value is not computed, only bounded by tail_bound
};

inline constexpr std::size_t kDefaultBudget = 10'000'000;

// Quadrature of S_2(l1 a) S_3(l2 a) S_4(l3 a) S_5(l4 a) e(-a v) K(a) for one
// instance. The four sums are built once; nodes are evaluated directly.
class DhIntegrator {
 public:
  explicit DhIntegrator(const ProblemInstance& inst);

  Complex integrand(double alpha) const;

  Region region(ArcSelector arcs) const;

  // Every band is split into Gauss panels no wider than a quarter period of
  // the fastest phase F + tau, F = sum |l_j| X + v, and both signs of alpha
  // are integrated. The reported error is a rigorous Gauss remainder bound
  // plus a floating-point bound. ResolutionError when the panels would
  // exceed `budget`. Results do not depend on `threads`.
  QuadratureReport integrate(const Region& region, std::size_t budget = kDefaultBudget,
                             unsigned threads = 1) const;
  QuadratureReport integrate(ArcSelector arcs, std::size_t budget = kDefaultBudget,
                             unsigned threads = 1) const;

  // Panels integrate() would use for the region.
  std::size_t panel_count(const Region& region) const;

  const ProblemInstance& instance() const { return inst_; }
  const ArcParams& arcs() const { return arcs_; }
  // B = product over the four sums of sum |w_n|.
  double trivial_bound() const { return bound_; }
  double fastest_frequency() const { return fastest_; }
  double tail_bound() const;
  const PowerSum& sum(int k) const { return sums_.at(static_cast<std::size_t>(k - 2)); }

 private:
  ProblemInstance inst_;
  KernelParams kernel_;
  ArcParams arcs_;
  std::array<PowerSum, 4> sums_;
  double bound_;
  double fastest_;
  std::size_t terms_;
};

// H(alpha) = kappa_hat / log X * prod_j T_{j+1}(l_j alpha) * e(-alpha v) K(alpha).
Complex major_approximant_H(double alpha, const ProblemInstance& inst, double kappa_hat,
                            std::size_t budget = 1'000'000);

struct ArcRow {
  std::string arc;
  double value = 0.0;
  double error = 0.0;
  double ratio = 0.0;  // value / (tau^2 X^(17/60) / log X)
  std::size_t panels = 0;
  std::string method;  // "quadrature", "complement" or "bound"
};

struct ArcReport {
  std::vector<ArcRow> rows;  // major1, major2, minor, trivial
  double normalizer = 0.0;   // tau^2 X^(17/60) / log X
  // Share of the minor arc in m_1..m_4, by midpoint sampling of |S_2|, |S_3|.
  std::array<double, 4> minor_split{};
  std::size_t minor_samples = 0;
  double smoothed_sum = 0.0;
  // Integral of H over M_1 and its ratio to the normalizer.
  double H_major1 = 0.0;
  double H_major1_error = 0.0;
  double H_major1_ratio = 0.0;
  RhoMeanValue kappa;
};

// Per-arc contributions for one instance. The minor row is integrated when it
// fits the budget and otherwise recovered as smoothed_sum - M_1 - M_2, whose
// error then includes the tail bound. Purely observational.
ArcReport arc_report(const ProblemInstance& inst, const RhoMeanValue& kappa, std::size_t budget = kDefaultBudget,
                     unsigned threads = 1, std::size_t minor_samples = 4096);

}  // namespace mixpow
