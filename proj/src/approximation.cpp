#include "mixpow/approximation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "mixpow/errors.hpp"

namespace mixpow {

namespace {

// Unsigned decimal digits. cpp_int reads a leading 0 as an octal prefix, so
// leading zeros are dropped first.
BigInt from_digits(const std::string& digits) {
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
}

BigInt parse_int(const std::string& s, const std::string& what) {
  static const std::regex integer(R"([+-]?\d+)");
  require(std::regex_match(s, integer), ErrorKind::InvalidArgument, what + ": '" + s + "' is not an integer");
  const bool sign = s[0] == '+' || s[0] == '-';
  const BigInt magnitude = from_digits(sign ? s.substr(1) : s);
  return s[0] == '-' ? BigInt(-magnitude) : magnitude;
}

// floor(a / b) for b != 0.
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt floor_of(const BigRational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

bool is_square(const BigInt& n) {
  if (n < 0) return false;
  const BigInt s = boost::multiprecision::sqrt(n);
  return s * s == n;
}

void push_quotient(ConvergentSequence& seq, const BigInt& a) {
  Convergent c;
  c.a = a;
  const std::size_t j = seq.terms.size();
  if (j == 0) {
    c.p = a;
    c.q = 1;
  } else if (j == 1) {
    c.p = a * seq.terms[0].p + 1;
    c.q = a;
  } else {
    c.p = a * seq.terms[j - 1].p + seq.terms[j - 2].p;
    c.q = a * seq.terms[j - 1].q + seq.terms[j - 2].q;
  }
  seq.terms.push_back(c);
}

}  // namespace

BigRational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return BigRational(parse_int(text, "rational"));
  const BigInt num = parse_int(text.substr(0, slash), "rational numerator");
  const BigInt den = parse_int(text.substr(slash + 1), "rational denominator");
  require(den != 0, ErrorKind::InvalidArgument, "rational: denominator is zero");
  return BigRational(num, den);
}

double RealSpec::to_double() const {
  if (kind != Kind::Surd) return rational.convert_to<double>();
  return (a.convert_to<double>() + b.convert_to<double>() * std::sqrt(d.convert_to<double>())) /
         c.convert_to<double>();
}

RealSpec parse_real_spec(const std::string& text) {
  RealSpec x;
  x.text = text;
  std::string body = text;
  body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char ch) { return std::isspace(ch); }),
             body.end());
  if (body.rfind("rat:", 0) == 0) {
    x.kind = RealSpec::Kind::Rational;
    x.rational = parse_rational(body.substr(4));
    return x;
  }
  if (body.rfind("surd:", 0) == 0) {
    static const std::regex surd(R"(\(([+-]?\d+)([+-]\d*)\*?sqrt\((\d+)\)\)/([+-]?\d+))");
    std::smatch m;
    require(std::regex_match(body.cbegin() + 5, body.cend(), m, surd), ErrorKind::InvalidArgument,
            "surd: expected the form (a+b*sqrt(d))/c, got '" + text + "'");
    x.kind = RealSpec::Kind::Surd;
    x.a = parse_int(m[1], "surd a");
    std::string bs = m[2];
    if (bs == "+" || bs == "-") bs += "1";
    x.b = parse_int(bs, "surd b");
    x.d = parse_int(m[3], "surd d");
    x.c = parse_int(m[4], "surd c");
    require(x.c != 0, ErrorKind::InvalidArgument, "surd: c must be nonzero");
    require(x.b != 0, ErrorKind::InvalidArgument, "surd: b must be nonzero");
    require(x.d > 0 && !is_square(x.d), ErrorKind::InvalidArgument, "surd: d must be a positive non-square");
    return x;
  }
  if (body.rfind("dec:", 0) == 0) {
    static const std::regex decimal(R"(([+-]?)(\d+)(?:\.(\d+))?)");
    std::smatch m;
    const std::string digits = body.substr(4);
    require(std::regex_match(digits, m, decimal), ErrorKind::InvalidArgument,
            "decimal: expected digits with an optional fraction, got '" + text + "'");
    x.kind = RealSpec::Kind::Decimal;
    const std::string frac = m[3];
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt value = from_digits(std::string(m[2]) + frac);
    if (m[1] == "-") value = -value;
    x.rational = BigRational(value, scale);
    x.half_ulp = BigRational(1, 2 * scale);
    return x;
  }
  fail(ErrorKind::InvalidArgument, "real: expected a rat:, surd: or dec: prefix, got '" + text + "'");
}

int surd_sign(const BigRational& A, const BigRational& B, const BigInt& d) {
  const int sa = A.sign();
  const int sb = B.sign();
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  // Opposite signs: compare A^2 with B^2 d.
  const BigRational lhs = A * A;
  const BigRational rhs = B * B * BigRational(d);
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sa : sb;
}

int compare(const RealSpec& x, const BigRational& r) {
  if (x.kind != RealSpec::Kind::Surd) {
    if (x.rational == r) return 0;
    return x.rational > r ? 1 : -1;
  }
  // (a + b sqrt d)/c - r = ((a - r c) + b sqrt d) / c
  const BigRational cc(x.c);
  const int s = surd_sign(BigRational(x.a) - r * cc, BigRational(x.b), x.d);
  return x.c > 0 ? s : -s;
}

ConvergentSequence convergents(const RealSpec& x, std::size_t n, bool strict) {
  require(n >= 1, ErrorKind::InvalidArgument, "convergents: n must be at least 1");
  ConvergentSequence seq;

  switch (x.kind) {
    case RealSpec::Kind::Rational: {
      require(!strict, ErrorKind::InvalidArgument,
              "convergents: rational input is rejected in strict mode (lambda_1/lambda_2 must be irrational)");
      BigInt num = boost::multiprecision::numerator(x.rational);
      BigInt den = boost::multiprecision::denominator(x.rational);
      while (seq.terms.size() < n) {
        const BigInt a = floor_div(num, den);
        push_quotient(seq, a);
        const BigInt r = num - a * den;
        if (r == 0) {
          seq.terminated = true;
          break;
        }
        num = den;
        den = r;
      }
      break;
    }
    case RealSpec::Kind::Surd: {
      // Normal form (P + sqrt D) / Q with Q | D - P^2.
      BigInt P = x.b > 0 ? x.a : BigInt(-x.a);
      BigInt Q = x.b > 0 ? x.c : BigInt(-x.c);
      BigInt D = x.b * x.b * x.d;
      if ((D - P * P) % Q != 0) {
        const BigInt absQ = boost::multiprecision::abs(Q);
        P *= absQ;
        D *= Q * Q;
        Q *= absQ;
      }
      const BigInt s = boost::multiprecision::sqrt(D);
      while (seq.terms.size() < n) {
        // floor((P + sqrt D)/Q); sqrt D is irrational so P + s < P + sqrt D < P + s + 1.
        const BigInt a = Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
        push_quotient(seq, a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
      }
      break;
    }
    case RealSpec::Kind::Decimal: {
      seq.exact = false;
      BigRational lo = x.rational - x.half_ulp;
      BigRational hi = x.rational + x.half_ulp;
      while (seq.terms.size() < n) {
        const BigInt a = floor_of(lo);
        if (floor_of(hi) != a) break;
        push_quotient(seq, a);
        const BigRational lo_frac = lo - BigRational(a);
        const BigRational hi_frac = hi - BigRational(a);
        if (lo_frac == 0) {
          seq.terminated = true;
          break;
        }
        lo = 1 / hi_frac;
        hi = 1 / lo_frac;
      }
      break;
    }
  }
  seq.certified = seq.terms.size();
  return seq;
}

double log_big(const BigInt& n) {
  require(n > 0, ErrorKind::InvalidArgument, "log of a non-positive integer");
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) return std::log(n.convert_to<double>());
  const std::size_t shift = bits - 64;
  const BigInt top = n >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

OmegaReport check_omega(const ConvergentSequence& seq, double omega) {
  require(std::isfinite(omega) && omega >= 0.0 && omega < 1.0, ErrorKind::InvalidArgument,
          "check_omega: omega must lie in [0, 1)");
  require(seq.certified >= 3, ErrorKind::InvalidArgument,
          "check_omega: need at least 3 certified convergents, got " + std::to_string(seq.certified));
  OmegaReport out;
  out.max_ratio = -INFINITY;
  for (std::size_t j = 0; j + 1 < seq.certified; ++j) {
    const double r = std::exp((1.0 - omega) * log_big(seq.terms[j + 1].q) - log_big(seq.terms[j].q));
    out.ratios.push_back(r);
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.witness_index = j;
    }
  }
  return out;
}

BigRational chi(const BigRational& omega) {
  require(omega >= 0 && omega < 1, ErrorKind::InvalidArgument, "chi: omega must lie in [0, 1)");
  const BigRational first = (1 - omega) / (94 - 75 * omega);
  const BigRational cap(1, 378);
  return first < cap ? first : cap;
}

double chi(double omega) {
  require(std::isfinite(omega) && omega >= 0.0 && omega < 1.0, ErrorKind::InvalidArgument,
          "chi: omega must lie in [0, 1)");
  return std::min((1.0 - omega) / (94.0 - 75.0 * omega), 1.0 / 378.0);
}

BigRational ladder_N_exponent(const BigRational& sigma) {
  require(sigma > 0 && sigma <= BigRational(1, 378), ErrorKind::InvalidArgument,
          "ladder: sigma must lie in (0, 1/378]");
  return BigRational(378) / (359 * (1 - 75 * sigma));
}

Ladder ladder(const BigInt& q, const BigRational& sigma) {
  require(q >= 2, ErrorKind::InvalidArgument, "ladder: q must be at least 2");
  Ladder out;
  out.x_exponent = kLadderXExponent;
  out.n_exponent = ladder_N_exponent(sigma);
  out.n_vs_x = out.n_exponent == out.x_exponent ? 0 : (out.n_exponent > out.x_exponent ? 1 : -1);
  const double lq = log_big(q);
  out.X = std::exp(out.x_exponent.convert_to<double>() * lq);
  out.N = std::exp(out.n_exponent.convert_to<double>() * lq);
  return out;
}

std::string to_string(const BigRational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

}  // namespace mixpow
