#include "mixpow/numeric.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>

#include "mixpow/errors.hpp"

namespace mixpow {

namespace {

GaussRule build_gauss_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    long double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1.0L;
      long double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double pk = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<long double>(n) * (x * p1 - p0) / (x * x - 1.0L);
      const long double step = p1 / dp;
      x -= step;
      if (std::fabs(static_cast<double>(step)) < 1e-19) break;
    }
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
  }
  const double nd = static_cast<double>(n);
  rule.error_constant =
      std::exp(4.0 * std::lgamma(nd + 1.0) - std::log(2.0 * nd + 1.0) - 3.0 * std::lgamma(2.0 * nd + 1.0));
  return rule;
}

constexpr std::array<double, 15> kKronrodNodes = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144845693013, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144845693013,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr std::array<double, 15> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr std::array<double, 15> kGauss7Weights = {
    0.0, 0.129484966168869693270611432679082, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.417959183673469387755102040816327,
    0.0, 0.381830050505118944950369775488975, 0.0, 0.279705391489276667901467771423780,
    0.0, 0.129484966168869693270611432679082, 0.0};

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  require(n >= 1 && n <= 64, ErrorKind::InvalidArgument, "gauss_legendre: n must be in [1, 64]");
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_gauss_rule(n)).first;
  return it->second;
}

const KronrodRule& gauss_kronrod_15() {
  static const KronrodRule rule{kKronrodNodes, kKronrodWeights, kGauss7Weights};
  return rule;
}

double kth_root(double x, int k) {
  require(x >= 0.0 && k >= 1, ErrorKind::InvalidArgument, "kth_root: need x >= 0 and k >= 1");
  if (k == 1 || x == 0.0) return x;
  double r = k == 2 ? std::sqrt(x) : (k == 3 ? std::cbrt(x) : std::pow(x, 1.0 / k));
  const double n = std::nearbyint(r);
  if (n >= 1.0 && std::fabs(r - n) <= 1e-9 * n && x < 0x1p63) {
    // Exact integer check: n^k == x.
    long double power = 1.0L;
    for (int i = 0; i < k; ++i) power *= static_cast<long double>(n);
    if (power == static_cast<long double>(x)) return n;
  }
  return r;
}

double snapped_pow(double x, double e) {
  const double r = std::pow(x, e);
  const double n = std::nearbyint(r);
  if (std::fabs(r - n) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(r)) return n;
  return r;
}

}  // namespace mixpow
