// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mixpow/analytic_core.hpp"
#include "mixpow/approximation.hpp"
#include "mixpow/arc_geometry.hpp"
#include "mixpow/dh_integrator.hpp"
#include "mixpow/exceptional_scan.hpp"
#include "mixpow/harman_sieve.hpp"
#include "mixpow/solution_engine.hpp"
#include "oracles.hpp"

using namespace mixpow;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  // Everything the run produced, as raw bits, for the determinism check.
  std::vector<std::uint64_t> fingerprint;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void record(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    fingerprint.push_back(bits);
  }
};

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

// v close to the value of a random admissible tuple, so the window is not empty.
double near_tuple(const Lambdas& l, double X, double eta, double spread, std::mt19937_64& gen) {
  const oracle::Ranges r = oracle::ranges(X, eta);
  std::vector<std::uint64_t> m1;
  for (auto m : r.m1)
    if (oracle::rho(m, X) != 0) m1.push_back(m);
  auto pick = [&gen](const std::vector<std::uint64_t>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(gen)];
  };
  const double value = l[0] * std::pow(double(pick(m1)), 2) + l[1] * std::pow(double(pick(r.p2)), 3) +
                       l[2] * std::pow(double(pick(r.p3)), 4) + l[3] * std::pow(double(pick(r.p4)), 5);
  return value + std::uniform_real_distribution<double>(-spread, spread)(gen);
}

Lambdas random_lambda(std::mt19937_64& gen, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(gen), u(gen), u(gen), u(gen)};
}

Outcome kernel_identity() {
  Outcome o;
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> ut(0.01, 0.99), ux(-1.5, 1.5);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const KernelParams kp(ut(gen));
    const double x = ux(gen);
    const auto w = window_A_by_quadrature(x, kp, 1e5, 50'000'000);
    const double diff = std::fabs(w.value - window_A(x, kp));
    worst = std::max(worst, w.error_bound());
    if (diff > w.error_bound()) o.fail(fmt("tau=%.6g x=%.6g: |diff| %.3g exceeds bound", kp.tau, x, diff));
    if (w.error_bound() > 1e-6) o.fail(fmt("tau=%.6g x=%.6g: bound %.3g > 1e-6", kp.tau, x, w.error_bound()));
  }
  if (o.pass) o.detail = fmt("50 windows, largest bound %.3g", worst);
  return o;
}

Outcome kernel_bounds() {
  Outcome o;
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> ut(0.01, 0.99);
  std::uniform_real_distribution<double> ue(-8, 4);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < 10000; ++i) {
    const KernelParams kp(ut(gen));
    const double a = (sign(gen) ? 1 : -1) * std::pow(10.0, ue(gen));
    const double k = fejer_K(a, kp);
    if (!(k >= 0 && k <= kp.tau * kp.tau && k <= kernel_decay_bound(a)))
      o.fail(fmt("alpha=%.17g tau=%.17g K=%.17g", a, kp.tau, k));
  }
  const KernelParams kp(0.5);
  if (fejer_K(0.0, kp) != 0.25) o.fail("K(0) != tau^2");
  if (o.pass) o.detail = "10^4 alphas within both bounds";
  return o;
}

Outcome integral_vs_sum(unsigned threads) {
  Outcome o;
  const PrimeTable table = build_table(100);
  std::mt19937_64 gen(303);
  std::uniform_real_distribution<double> ud(0.02, 0.1);
  double worst = 0;
  int nonzero = 0;
  for (double X : {100.0, 200.0, 500.0}) {
    for (int i = 0; i < 5; ++i) {
      const Lambdas l = random_lambda(gen, 0.5, 1.5);
      const double delta = ud(gen);
      const double tau = std::pow(X, -delta);
      const double v = near_tuple(l, X, 0.01, tau / 2, gen);
      const ProblemInstance inst = make_instance(table, l, X, v, delta);
      const auto q = DhIntegrator(inst).integrate(ArcSelector::All, kDefaultBudget, threads);
      const double s = smoothed_sum(inst, threads);
      nonzero += s != 0;
      const double diff = std::fabs(q.value - s);
      worst = std::max(worst, diff / (q.error + q.tail_bound));
      if (diff > q.error + q.tail_bound)
        o.fail(fmt("X=%g v=%.17g: |integral - sum| = %.3g exceeds the bound", X, v, diff));
      o.record(q.value);
      o.record(q.error);
      o.record(q.tail_bound);
      o.record(s);
    }
  }
  if (o.pass) o.detail = fmt("15 instances (%g with a nonzero sum), largest |diff|/bound %.3g", nonzero, worst);
  return o;
}

Outcome counting(unsigned threads) {
  Outcome o;
  const PrimeTable table = build_table(100);
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> ux(100, 500), ud(0.01, 0.2);
  std::uint64_t total = 0;
  for (int i = 0; i < 25; ++i) {
    const double X = ux(gen);
    const Lambdas l = random_lambda(gen, 0.5, 1.5);
    const double delta = ud(gen);
    const double tau = std::pow(X, -delta);
    // Alternate between targets next to a tuple and uniform targets.
    const double v = i % 2 ? near_tuple(l, X, 0.01, tau, gen)
                           : std::uniform_real_distribution<double>(X / 2, X)(gen);
    const ProblemInstance inst = make_instance(table, l, X, v, delta);
    const auto fast = count_solutions_detailed(inst, threads);
    const auto slow = brute_force_count(inst);
    total += fast.count;
    if (fast.count != slow)
      o.fail(fmt("X=%g v=%.17g: count %g vs brute force", X, v, double(fast.count)) + " " + std::to_string(slow));
    o.record(double(fast.count));
    o.record(double(fast.borderline));
  }
  if (o.pass) o.detail = fmt("25 instances agree, %g solutions in total", double(total));
  return o;
}

Outcome sieve_invariants() {
  Outcome o;
  for (double X : {1e4, 1e6}) {
    const PrimeTable table = build_table(required_table_limit(X));
    const HarmanWeights w(X, table);
    const Interval iv = interval_ij(X, 0.01, 2);
    const auto rho = w.over(iv);
    const double quarter = std::pow(X, 0.25);
    std::int64_t sum = 0;
    std::uint64_t m = static_cast<std::uint64_t>(std::ceil(iv.lo));
    for (int r : rho) {
      if (r > 1) o.fail(fmt("X=%g m=%g: rho=%g > 1", X, double(m), r));
      if (oracle::is_prime(m) && double(m) >= quarter && r != 1) o.fail(fmt("X=%g prime m=%g: rho=%g", X, double(m), r));
      sum += r;
      ++m;
    }
    if (sum <= 0) o.fail(fmt("X=%g: sum of rho = %g", X, double(sum)));
    o.detail += fmt(o.detail.empty() ? "X=%g sum rho=%g" : ", X=%g sum rho=%g", X, double(sum));
  }
  return o;
}

// |x - p/q| < 1/q^2 for a surd x = (a + b sqrt d) / c, exactly.
bool within_inverse_square(const RealSpec& x, const BigInt& p, const BigInt& q) {
  const BigRational A(x.a, x.c), B(x.b, x.c), pq(p, q), e(BigInt(1), q * q);
  return surd_sign(A - pq - e, B, x.d) < 0 && surd_sign(A - pq + e, B, x.d) > 0;
}

Outcome convergent_laws() {
  Outcome o;
  for (const char* text : {"surd:(0+1*sqrt(2))/1", "surd:(1+1*sqrt(5))/2"}) {
    const RealSpec x = parse_real_spec(text);
    const auto seq = convergents(x, 20);
    if (seq.terms.size() != 20 || !seq.exact) o.fail(std::string(text) + ": expected 20 exact convergents");
    for (std::size_t j = 0; j < seq.terms.size(); ++j) {
      const auto& c = seq.terms[j];
      const BigInt pm1 = j >= 1 ? seq.terms[j - 1].p : BigInt(1);
      const BigInt qm1 = j >= 1 ? seq.terms[j - 1].q : BigInt(0);
      const BigInt pm2 = j >= 2 ? seq.terms[j - 2].p : (j == 1 ? BigInt(1) : BigInt(0));
      const BigInt qm2 = j >= 2 ? seq.terms[j - 2].q : (j == 1 ? BigInt(0) : BigInt(1));
      if (boost::multiprecision::gcd(c.p, c.q) != 1) o.fail(std::string(text) + ": gcd(p, q) != 1");
      if (c.p != c.a * pm1 + pm2 || c.q != c.a * qm1 + qm2) o.fail(std::string(text) + ": recurrence broken");
      if (!within_inverse_square(x, c.p, c.q)) o.fail(std::string(text) + ": |x - p/q| >= 1/q^2");
    }
  }
  const auto r2 = convergents(parse_real_spec("surd:(0+1*sqrt(2))/1"), 5);
  const long long want[] = {1, 2, 5, 12, 29};
  for (int j = 0; j < 5; ++j)
    if (r2.terms[j].q != want[j]) o.fail("sqrt 2 denominators do not begin 1, 2, 5, 12, 29");
  if (o.pass) o.detail = "gcd, recurrence and 1/q^2 hold for 20 convergents of each surd";
  return o;
}

Outcome chi_arithmetic() {
  Outcome o;
  if (chi(BigRational(0)) != BigRational(1, 378)) o.fail("chi(0) != 1/378");
  // 378 (1 - w) = 94 - 75 w  <=>  w = (378 - 94) / (378 - 75).
  const BigRational w = BigRational(378 - 94, 378 - 75);
  if (w != BigRational(284, 303)) o.fail("crossover is not 284/303");
  if (378 * (1 - w) != 94 - 75 * w) o.fail("crossover does not solve the equation");
  if ((1 - w) / (94 - 75 * w) != BigRational(1, 378) || chi(w) != BigRational(1, 378))
    o.fail("branches differ at the crossover");
  const BigRational below = w - BigRational(1, 1000000), above = w + BigRational(1, 1000000);
  if (chi(below) != BigRational(1, 378) || chi(above) >= BigRational(1, 378)) o.fail("wrong branch near crossover");
  if (o.pass) o.detail = "chi(0) = 1/378, crossover 284/303";
  return o;
}

Outcome exceptional_sets(unsigned threads) {
  Outcome o;
  const PrimeTable table = build_table(100);
  std::mt19937_64 gen(808);
  std::vector<Lambdas> lambdas{{1, 1, 1, 1}};
  for (int i = 0; i < 2; ++i) lambdas.push_back(random_lambda(gen, 0.5, 2.0));
  std::uint64_t checked = 0;
  for (double N : {100.0, 300.0}) {
    const auto seq = generate_sequence(SequenceKind::Integers, N, 0, 0, 0);
    for (const Lambdas& l : lambdas) {
      ScanOptions options;
      options.threads = threads;
      const ExceptionalReport r = scan(seq, N, 0.1, l, table, options);
      const double arr[4] = {l[0], l[1], l[2], l[3]};
      for (const Verdict& v : r.verdicts) {
        ++checked;
        if (v.exceptional != oracle::exceptional(arr, N, v.v, 0.1, 0.01))
          o.fail(fmt("N=%g v=%g: scanner and brute force disagree", N, v.v));
        o.record(v.exceptional ? 1.0 : 0.0);
        o.record(v.best ? v.best->residual : -1.0);
      }
      if (l == Lambdas{1, 1, 1, 1} && r.verdicts[59].exceptional) o.fail(fmt("N=%g: v = 60 reported exceptional", N));
      o.record(double(r.exceptional_count));
    }
  }
  if (o.pass) o.detail = fmt("%g verdicts agree; v = 60 solved by (2,2,2,2)", double(checked));
  return o;
}

Outcome arc_partition() {
  Outcome o;
  const ArcParams ap = make_arc_params(1e6, std::pow(1e6, -0.05), 0.05, 0.01);
  std::mt19937_64 gen(1010);
  std::uniform_real_distribution<double> ue(-7, 3.5), us(0, 2);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < 100000; ++i) {
    const double a = (sign(gen) ? 1 : -1) * std::pow(10.0, ue(gen));
    const double s2 = ap.Z2_star * us(gen), s3 = ap.Z3_star * us(gen);
    const double m = std::fabs(a);
    const bool minor = m > ap.major_cut() && m <= ap.R;
    const bool in[7] = {m <= ap.m1_cut,
                        m > ap.m1_cut && m <= ap.major_cut(),
                        minor && s2 < ap.Z2_star && s3 < ap.Z3_star,
                        minor && s2 < ap.Z2_star && s3 >= ap.Z3_star,
                        minor && s2 >= ap.Z2_star && s3 < ap.Z3_star,
                        minor && s2 >= ap.Z2_star && s3 >= ap.Z3_star,
                        m > ap.R};
    int hits = 0, which = -1;
    for (int k = 0; k < 7; ++k)
      if (in[k]) ++hits, which = k;
    if (hits != 1) {
      o.fail(fmt("alpha=%.17g lies in %g regions", a, hits));
      break;
    }
    if (classify(a, ap, s2, s3) != kAllArcLabels[which]) {
      o.fail(fmt("alpha=%.17g misclassified", a));
      break;
    }
  }
  // Lengths of [-c, c], [-P/X, -c) u (c, P/X] and [-R, -P/X) u (P/X, R].
  const ArcMeasures am = arc_measures(ap);
  const double direct[3] = {ap.m1_cut - (-ap.m1_cut), (ap.major_cut() - ap.m1_cut) + (-ap.m1_cut - (-ap.major_cut())),
                            (ap.R - ap.major_cut()) + (-ap.major_cut() - (-ap.R))};
  const double got[3] = {am.len_M1, am.len_M2, am.len_m};
  for (int k = 0; k < 3; ++k)
    if (std::fabs(got[k] - direct[k]) > 1e-12 * std::fabs(direct[k])) o.fail(fmt("measure %g disagrees", k));
  if (std::fabs(am.len_M1 + am.len_M2 + am.len_m - 2 * ap.R) > 1e-12 * 2 * ap.R) o.fail("measures do not sum to 2R");
  if (o.pass) o.detail = "10^5 triples, one label each; measures agree";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  Outcome c3, c4, c8;
  const std::vector<Criterion> criteria = {
      {1, "kernel identity", 10, kernel_identity},
      {2, "kernel bounds", 1, kernel_bounds},
      {3, "integral equals smoothed sum", 300, [&] { return c3 = integral_vs_sum(1); }},
      {4, "count equals brute force", 120, [&] { return c4 = counting(1); }},
      {5, "sieve invariants", 60, sieve_invariants},
      {6, "convergent laws", 1, convergent_laws},
      {7, "chi arithmetic", 1, chi_arithmetic},
      {8, "exceptional sets equal brute force", 300, [&] { return c8 = exceptional_sets(1); }},
      {9, "determinism across worker counts", 0,
       [&] {
         Outcome o;
         const Outcome r3 = integral_vs_sum(4), r4 = counting(4), r8 = exceptional_sets(4);
         if (r3.fingerprint != c3.fingerprint) o.fail("criterion 3 differs between 1 and 4 workers");
         if (r4.fingerprint != c4.fingerprint) o.fail("criterion 4 differs between 1 and 4 workers");
         if (r8.fingerprint != c8.fingerprint) o.fail("criterion 8 differs between 1 and 4 workers");
         if (c3.fingerprint.empty() || c4.fingerprint.empty() || c8.fingerprint.empty())
           o.fail("criteria 3, 4 and 8 must run first");
         if (o.pass)
           o.detail = std::to_string(c3.fingerprint.size() + c4.fingerprint.size() + c8.fingerprint.size()) +
                      " values bit-identical";
         return o;
       }},
      {10, "arc partition", 1, arc_partition},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds > c.limit_seconds)
      o.fail(fmt("took %.2f s, limit %.0f s", seconds, c.limit_seconds));
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
