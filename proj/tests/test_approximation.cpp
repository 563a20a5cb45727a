#include <doctest.h>

#include <cmath>

#include "mixpow/approximation.hpp"
#include "mixpow/errors.hpp"

using namespace mixpow;

namespace {

std::vector<long long> denominators(const ConvergentSequence& s) {
  std::vector<long long> q;
  for (const auto& c : s.terms) q.push_back(c.q.convert_to<long long>());
  return q;
}

}  // namespace

TEST_CASE("parse_real_spec") {
  CHECK(parse_real_spec("rat:3/4").rational == BigRational(3, 4));
  const RealSpec g = parse_real_spec("surd:(1+sqrt(5))/2");
  CHECK(g.kind == RealSpec::Kind::Surd);
  CHECK(g.to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(parse_real_spec("surd:(0+1*sqrt(2))/1").to_double() == doctest::Approx(std::sqrt(2.0)));
  const RealSpec d = parse_real_spec("dec:1.41");
  CHECK(d.kind == RealSpec::Kind::Decimal);
  CHECK(d.half_ulp == BigRational(1, 200));
  CHECK_THROWS_AS(parse_real_spec("surd:(1+sqrt(4))/2"), Error);
  CHECK_THROWS_AS(parse_real_spec("rat:1/0"), Error);
  CHECK_THROWS_AS(parse_real_spec("pi"), Error);
}

TEST_CASE("surd continued fractions") {
  const auto r2 = convergents(parse_real_spec("surd:(0+1*sqrt(2))/1"), 5);
  CHECK(denominators(r2) == std::vector<long long>{1, 2, 5, 12, 29});
  CHECK(r2.exact);
  const auto phi = convergents(parse_real_spec("surd:(1+sqrt(5))/2"), 6);
  CHECK(denominators(phi) == std::vector<long long>{1, 1, 2, 3, 5, 8});
  for (const auto& c : phi.terms) CHECK(c.a == 1);

  // Pell-type recurrence q_{j+1} = 2 q_j + q_{j-1} for sqrt 2.
  const auto long_r2 = convergents(parse_real_spec("surd:(0+1*sqrt(2))/1"), 30);
  for (std::size_t j = 2; j < long_r2.terms.size(); ++j)
    CHECK(long_r2.terms[j].q == 2 * long_r2.terms[j - 1].q + long_r2.terms[j - 2].q);

  // (-3 + sqrt 7) / 2 = -0.177 = [-1; 1, 4, 1, 1, 1, ...], checked with 80-digit decimals.
  const auto neg = convergents(parse_real_spec("surd:(-3+1*sqrt(7))/2"), 6);
  const long long want[] = {-1, 1, 4, 1, 1, 1};
  for (int j = 0; j < 6; ++j) CHECK(neg.terms[j].a == want[j]);
}

TEST_CASE("rational and decimal input") {
  CHECK_THROWS_AS(convergents(parse_real_spec("rat:7/3"), 5), Error);
  const auto r = convergents(parse_real_spec("rat:7/3"), 5, false);
  CHECK(r.terminated);
  REQUIRE(r.terms.size() == 2);
  CHECK(r.terms.back().p == 7);
  CHECK(r.terms.back().q == 3);

  const auto d = convergents(parse_real_spec("dec:1.41"), 10);
  CHECK(!d.exact);
  CHECK(d.certified == d.terms.size());
  CHECK(denominators(d) == std::vector<long long>{1, 2, 5});
}

TEST_CASE("compare") {
  const RealSpec r2 = parse_real_spec("surd:(0+1*sqrt(2))/1");
  CHECK(compare(r2, BigRational(141, 100)) > 0);
  CHECK(compare(r2, BigRational(142, 100)) < 0);
  CHECK(surd_sign(BigRational(-3), BigRational(2), 2) < 0);
  CHECK(surd_sign(BigRational(-2), BigRational(2), 2) > 0);
}

TEST_CASE("check_omega") {
  const auto r2 = convergents(parse_real_spec("surd:(0+1*sqrt(2))/1"), 20);
  const auto at0 = check_omega(r2, 0.0);
  CHECK(at0.max_ratio <= 3.0);
  double previous = at0.max_ratio;
  for (double w : {0.2, 0.5, 0.8, 0.99}) {
    const double m = check_omega(r2, w).max_ratio;
    CHECK(m <= previous);
    previous = m;
  }
  const auto two = convergents(parse_real_spec("surd:(0+1*sqrt(2))/1"), 2);
  CHECK_THROWS_AS(check_omega(two, 0.0), Error);
}

TEST_CASE("chi") {
  CHECK(chi(BigRational(0)) == BigRational(1, 378));
  CHECK(chi(BigRational(284, 303)) == BigRational(1, 378));
  // Both branches meet at 284/303.
  const BigRational w(284, 303);
  CHECK((1 - w) / (94 - 75 * w) == BigRational(1, 378));
  CHECK(chi(BigRational(95, 100)) == BigRational(5, 100) / BigRational(2275, 100));
  CHECK(chi(0.95) == doctest::Approx(0.05 / 22.75));
  CHECK(chi(0.95) < 1.0 / 378);
}

TEST_CASE("ladder") {
  const Ladder l = ladder(5, BigRational(1, 378));
  CHECK(l.X == doctest::Approx(std::pow(5.0, 7.0 / 3)));
  CHECK(l.X == doctest::Approx(42.75).epsilon(1e-3));
  CHECK(l.n_exponent == BigRational(378 * 378, 359 * 303));
  // 378^2 / (359 * 303) < 7/3, so N < X.
  CHECK(l.n_vs_x < 0);
  CHECK(l.N < l.X);
  CHECK_THROWS_AS(ladder(1, BigRational(1, 378)), Error);
  CHECK_THROWS_AS(ladder(5, BigRational(1, 300)), Error);
}

TEST_CASE("leading zeros are decimal") {
  CHECK(parse_rational("010/3") == BigRational(10, 3));
  CHECK(parse_rational("-007") == BigRational(-7));
  CHECK(parse_real_spec("dec:0.95").rational == BigRational(19, 20));
  CHECK(parse_real_spec("dec:-0.05").rational == BigRational(-1, 20));
  CHECK(parse_real_spec("surd:(-03+1*sqrt(07))/02").to_double() == doctest::Approx((std::sqrt(7.0) - 3) / 2));
}
