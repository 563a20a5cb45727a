#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mixpow {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// A real number given exactly or as a decimal literal.
//   rat:a/b                 exact rational, b != 0
//   surd:(a+b*sqrt(d))/c    quadratic surd, b, c != 0, d > 0 not a square
//   dec:1.4142135           decimal, accurate to half a unit in its last digit
struct RealSpec {
  enum class Kind { Rational, Surd, Decimal };

  Kind kind = Kind::Rational;
  BigRational rational;   // Rational: the value; Decimal: the literal's value
  BigInt a, b, c, d;      // Surd only
  BigRational half_ulp;   // Decimal only
  std::string text;       // as parsed

  double to_double() const;
};

// Throws InvalidArgument naming the malformed part.
RealSpec parse_real_spec(const std::string& text);

BigRational parse_rational(const std::string& text);

struct Convergent {
  BigInt a;  // partial quotient
  BigInt p;
  BigInt q;
};

struct ConvergentSequence {
  std::vector<Convergent> terms;
  // True when every returned term is exact (rational and surd input). For
  // decimal input the sequence stops at the first partial quotient the digit
  // budget leaves ambiguous, and `exact` is false.
  bool exact = true;
  // Convergents that are certified; equal to terms.size().
  std::size_t certified = 0;
  // The expansion ended (rational input, or a decimal interval touching an integer).
  bool terminated = false;
};

// First n convergents of x. Rational input is rejected when `strict` is set.
ConvergentSequence convergents(const RealSpec& x, std::size_t n, bool strict = true);

// Sign of A + B sqrt(d) for rationals A, B and d > 0.
int surd_sign(const BigRational& A, const BigRational& B, const BigInt& d);

// Sign of x - r, exact for rational and surd x; for decimals the sign of the
// literal's value minus r.
int compare(const RealSpec& x, const BigRational& r);

struct OmegaReport {
  double max_ratio = 0.0;
  std::size_t witness_index = 0;  // j attaining the max of q_{j+1}^(1-omega) / q_j
  std::vector<double> ratios;
};

// Observed sup of q_{j+1}^(1-omega) / q_j over consecutive certified
// convergents. Needs at least 3 convergents and omega in [0, 1).
OmegaReport check_omega(const ConvergentSequence& seq, double omega);

// chi(omega) = min((1 - omega) / (94 - 75 omega), 1/378), exactly.
BigRational chi(const BigRational& omega);
double chi(double omega);

// Exponent e(sigma) = 378 / (359 (1 - 75 sigma)) of N = q^e(sigma).
BigRational ladder_N_exponent(const BigRational& sigma);
inline const BigRational kLadderXExponent{7, 3};

struct Ladder {
  double X = 0.0;  // q^(7/3)
  double N = 0.0;  // q^e(sigma)
  BigRational x_exponent;
  BigRational n_exponent;
  // sign of e(sigma) - 7/3: N >= X for every q >= 2 iff this is >= 0.
  int n_vs_x = 0;
};

// q >= 2, sigma in (0, 1/378].
Ladder ladder(const BigInt& q, const BigRational& sigma);

double log_big(const BigInt& n);
std::string to_string(const BigRational& r);

}  // namespace mixpow
