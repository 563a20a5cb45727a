#include <doctest.h>

#include <cmath>
#include <random>

#include "mixpow/errors.hpp"
#include "mixpow/instance.hpp"
#include "mixpow/solution_engine.hpp"
#include "oracles.hpp"

using namespace mixpow;

namespace {

ProblemInstance with_tau(const PrimeTable& t, const Lambdas& l, double X, double v, double tau,
                         double eta = 0.01) {
  InstanceOptions o;
  o.tau = tau;
  o.eta = eta;
  return make_instance(t, l, X, v, 0.0, o);
}

}  // namespace

TEST_CASE("instance validation") {
  const PrimeTable t = build_table(1000);
  CHECK_THROWS_AS(make_instance(t, {-1, -1, -1, -1}, 200, 60, 0.1), Error);
  CHECK_THROWS_AS(make_instance(t, {1, 1, 1, 1}, 200, 60, -0.1), Error);
  const PrimeTable small = build_table(10);
  try {
    make_instance(small, {1, 1, 1, 1}, 1e4, 60, 0.1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TableTooSmall);
  }
  const ProblemInstance inst = make_instance(t, {1, 1, 1, 1}, 1e4, 60, 0.1);
  CHECK(inst.tau == doctest::Approx(std::pow(1e4, -0.1)));
  CHECK(sign_conventions({1, -1, 1, 1}).not_all_same_sign);
  CHECK(!sign_conventions({1, 1, 1, 1}).not_all_same_sign);
  CHECK(sign_conventions({1, 1, 1, 1}).not_all_negative);
}

TEST_CASE("smoothed_sum examples") {
  const PrimeTable t = build_table(100);
  const double sqrt2 = std::sqrt(2.0);
  CHECK(smoothed_sum(with_tau(t, {1, sqrt2, 1, 1}, 200, 1e6, 0.5)) == 0.0);

  const Lambdas ones{1, 1, 1, 1};
  const double l[4] = {1, 1, 1, 1};
  const double got = smoothed_sum(with_tau(t, ones, 200, 60, 0.5));
  const double want = static_cast<double>(oracle::smoothed_sum(l, 200, 60, 0.5, 0.01));
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
  // The m1 = 2, p = (2, 2, 2) term carries rho(2) = 0 at X = 200: 2 lies in
  // [X^(5/42), X^(1/4)) and psi(1, z(2)) = 1. No other tuple reaches the window.
  CHECK(oracle::rho(2, 200) == 0);
  CHECK(got == 0.0);
}

TEST_CASE("smoothed_sum against the quadruple loop") {
  const PrimeTable t = build_table(100);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < 10; ++i) {
    const double X = 100 + 40 * i;
    const Lambdas lam{u(gen), u(gen), u(gen), u(gen)};
    const double l[4] = {lam[0], lam[1], lam[2], lam[3]};
    // v next to the value of a tuple with rho(m1) != 0, so the window is not empty.
    const oracle::Ranges r = oracle::ranges(X, 0.01);
    std::uint64_t m1 = 0;
    for (auto m : r.m1)
      if (oracle::rho(m, X) != 0) m1 = m;
    REQUIRE(m1 != 0);
    const double v = l[0] * oracle::ipow(m1, 2) + l[1] * oracle::ipow(r.p2.back(), 3) +
                     l[2] * oracle::ipow(r.p3.back(), 4) + l[3] * oracle::ipow(r.p4.back(), 5) + 0.1;
    const double tau = 0.5;
    const double got = smoothed_sum(with_tau(t, lam, X, v, tau));
    const double want = static_cast<double>(oracle::smoothed_sum(l, X, v, tau, 0.01));
    CHECK(want > 0);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
    CHECK(smoothed_sum(with_tau(t, lam, X, v, tau), 4) == got);
  }
}

TEST_CASE("count_solutions examples") {
  const PrimeTable t = build_table(100);
  const Lambdas ones{1, 1, 1, 1};
  CHECK(count_solutions(with_tau(t, ones, 100, 60, 0.5)) >= 1);
  CHECK(count_solutions(with_tau(t, ones, 100, 60.25, 1e-9)) == 0);
  const double l[4] = {1, 1, 1, 1};
  CHECK(oracle::count(l, 100, 60.25, 1e-9, 0.01) == 0);
}

TEST_CASE("count_solutions against brute force") {
  const PrimeTable t = build_table(100);
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> ux(100, 300);
  for (int i = 0; i < 10; ++i) {
    const double X = ux(gen);
    const Lambdas lam{u(gen), u(gen), u(gen), u(gen)};
    const double l[4] = {lam[0], lam[1], lam[2], lam[3]};
    std::uniform_real_distribution<double> uv(X / 2, X);
    const double v = uv(gen);
    const double tau = 0.9 * std::pow(X, -0.05);
    const ProblemInstance inst = with_tau(t, lam, X, v, tau);
    const auto got = count_solutions(inst);
    CHECK(got == brute_force_count(inst));
    CHECK(got == oracle::count(l, X, v, tau, 0.01));
  }
}

TEST_CASE("brute force hand enumeration at X = 50") {
  // eta = 0.02 so that eta X = 1.
  // I_2 = [1, 7.07], I_3 = [1, 3.68], I_4 = [1, 2.66], I_5 = [1, 2.19]:
  // p1 in {2,3,5,7}, p2 in {2,3}, p3 = p4 = 2, so the values are p1^2 + p2^3 + 48.
  const PrimeTable t = build_table(100);
  const Lambdas ones{1, 1, 1, 1};
  // The eight values 60, 65, 79, 81, 84, 100, 105, 124 are distinct.
  for (int p1 : {2, 3, 5, 7})
    for (int p2 : {2, 3}) {
      const double value = p1 * p1 + p2 * p2 * p2 + 48;
      CHECK(brute_force_count(with_tau(t, ones, 50, value, 0.5, 0.02)) == 1);
      CHECK(count_solutions(with_tau(t, ones, 50, value, 0.5, 0.02)) == 1);
    }
  CHECK(brute_force_count(with_tau(t, ones, 50, 61, 0.5, 0.02)) == 0);
  CHECK_THROWS_AS(brute_force_count(with_tau(build_table(1000), ones, 1e4, 60, 0.5)), Error);
}

TEST_CASE("find_solution") {
  const PrimeTable t = build_table(100);
  const Lambdas ones{1, 1, 1, 1};
  const auto r = find_solution(60, ones, 100, 0.1, t);
  REQUIRE(r.solution);
  CHECK(r.solution->p1 == 2);
  CHECK(r.solution->p2 == 2);
  CHECK(r.solution->p3 == 2);
  CHECK(r.solution->p4 == 2);
  CHECK(r.solution->residual == 0.0);
  // The smallest achievable value is 4 + 8 + 16 + 32 = 60.
  CHECK(!find_solution(58, ones, 100, 0.1, t).solution);
}

TEST_CASE("searcher agrees with brute force on 100 random v") {
  const PrimeTable t = build_table(100);
  const double X = 300;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> uv(X / 2, X);
  const Lambdas lam{1.0, std::sqrt(2.0), 0.75, 1.25};
  const double l[4] = {lam[0], lam[1], lam[2], lam[3]};
  const SolutionSearcher searcher(lam, X, 0.01, t);
  for (int i = 0; i < 100; ++i) {
    const double v = uv(gen);
    const auto fast = searcher.find(v, 0.1);
    const auto slow = brute_force_find(v, lam, X, 0.1, t);
    CHECK(fast.solution.has_value() == slow.solution.has_value());
    const double best = static_cast<double>(oracle::min_residual(l, X, v, 0.01));
    REQUIRE(fast.best);
    CHECK(std::fabs(fast.best->residual) == doctest::Approx(best).epsilon(1e-12));
    CHECK(fast.solution.has_value() == (best < std::pow(v, -0.1)));
  }
}
