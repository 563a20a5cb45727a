#include <doctest.h>

#include <cmath>
#include <random>

#include "mixpow/errors.hpp"
#include "mixpow/exceptional_scan.hpp"
#include "oracles.hpp"

using namespace mixpow;

TEST_CASE("sequences") {
  const auto ints = generate_sequence(SequenceKind::Integers, 10, 0, 0, 0);
  REQUIRE(ints.values.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(ints.values[i] == i + 1);

  const auto a = generate_sequence(SequenceKind::Jittered, 500, 0.7, 1.9, 42);
  const auto b = generate_sequence(SequenceKind::Jittered, 500, 0.7, 1.9, 42);
  CHECK(a.values == b.values);
  const auto c = generate_sequence(SequenceKind::Jittered, 500, 0.7, 1.9, 43);
  CHECK(a.values != c.values);
  for (std::size_t i = 1; i < a.values.size(); ++i) {
    CHECK(a.values[i] - a.values[i - 1] > 0.7);
    CHECK(a.values[i] - a.values[i - 1] < 1.9);
  }
  CHECK_THROWS_AS(generate_sequence(SequenceKind::Jittered, 500, 2, 1, 1), Error);
  CHECK_THROWS_AS(make_sequence({1, 1.1}, 0.5, 1.5), Error);
  try {
    generate_sequence(SequenceKind::Integers, 1e8, 0, 0, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InstanceTooLarge);
  }
}

TEST_CASE("scan at N = 100 matches the oracle") {
  const PrimeTable t = build_table(100);
  const auto seq = generate_sequence(SequenceKind::Integers, 100, 0, 0, 0);
  const Lambdas ones{1, 1, 1, 1};
  const double l[4] = {1, 1, 1, 1};
  const ExceptionalReport r = scan(seq, 100, 0.1, ones, t);
  REQUIRE(r.verdicts.size() == 100);
  CHECK(!r.verdicts[59].exceptional);
  CHECK(r.verdicts[59].v == 60);
  std::uint64_t exceptional = 0;
  for (const auto& v : r.verdicts) {
    CHECK(v.exceptional == oracle::exceptional(l, 100, v.v, 0.1, 0.01));
    exceptional += v.exceptional;
  }
  CHECK(exceptional == r.exceptional_count);
  CHECK(r.exceptional_values.size() == r.exceptional_count);

  ScanOptions brute;
  brute.brute_force = true;
  const ExceptionalReport rb = scan(seq, 100, 0.1, ones, t, brute);
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) CHECK(rb.verdicts[i].exceptional == r.verdicts[i].exceptional);

  std::uint64_t rows = r.head_total;
  for (const auto& row : r.dyadic_rows) rows += row.total;
  CHECK(rows == r.total);
  CHECK(r.dyadic_rows.size() == static_cast<std::size_t>(dyadic_row_count(100)));
}

TEST_CASE("scan edge cases") {
  const PrimeTable t = build_table(100);
  const ExceptionalReport r = scan(WellSpacedSeq{{}, 0.5, 1.5}, 100, 0.1, {1, 1, 1, 1}, t);
  CHECK(r.total == 0);
  CHECK(r.exceptional_count == 0);
  const auto seq = generate_sequence(SequenceKind::Integers, 20, 0, 0, 0);
  CHECK_THROWS_AS(scan(seq, 20, 0.1, {-1, -1, -1, -1}, t), Error);
  CHECK(dyadic_row_count(100) == 1);
  CHECK(dyadic_row_count(std::pow(2.0, 40)) == 3);
}

TEST_CASE("empirical exponent") {
  CHECK(!empirical_exponent(std::vector<std::pair<double, double>>{{100, 0}, {200, 0}, {400, 0}}).defined);
  std::vector<std::pair<double, double>> points;
  for (double N : {1e3, 1e4, 1e5, 1e6}) points.push_back({N, std::pow(N, 0.9)});
  const ExponentFit f = empirical_exponent(points);
  REQUIRE(f.defined);
  CHECK(std::fabs(f.slope - 0.9) <= 1e-9);
  CHECK(f.r2 == doctest::Approx(1.0));

  const PrimeTable t = build_table(100);
  std::vector<ExceptionalReport> reports;
  for (double N : {200.0, 400.0, 800.0})
    reports.push_back(scan(generate_sequence(SequenceKind::Integers, N, 0, 0, 0), N, 0.1, {1, std::sqrt(2.0), 1, 1}, t));
  const ExponentFit g = empirical_exponent(reports);
  CHECK(g.points == 3);
  CHECK(g.defined);
  CHECK(std::isfinite(g.slope));
}

TEST_CASE("exceptional sets grow with delta") {
  const PrimeTable t = build_table(100);
  const auto seq = generate_sequence(SequenceKind::Jittered, 300, 0.6, 1.6, 9);
  const Lambdas lam{1.0, std::sqrt(2.0), 0.8, 1.1};
  std::vector<bool> previous(seq.values.size(), false);
  for (double delta : {0.05, 0.1, 0.2}) {
    const ExceptionalReport r = scan(seq, 300, delta, lam, t);
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
      if (previous[i]) CHECK(r.verdicts[i].exceptional);
      previous[i] = r.verdicts[i].exceptional;
    }
  }
}

TEST_CASE("oracle equality on random lambda") {
  const PrimeTable t = build_table(100);
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const auto seq = generate_sequence(SequenceKind::Jittered, 300, 0.6, 1.6, 4);
  for (int draw = 0; draw < 3; ++draw) {
    const Lambdas lam{u(gen), -u(gen), u(gen), u(gen)};
    const double l[4] = {lam[0], lam[1], lam[2], lam[3]};
    ScanOptions options;
    options.threads = 3;
    const ExceptionalReport r = scan(seq, 300, 0.1, lam, t, options);
    for (const auto& v : r.verdicts) CHECK(v.exceptional == oracle::exceptional(l, 300, v.v, 0.1, 0.01));
  }
}
