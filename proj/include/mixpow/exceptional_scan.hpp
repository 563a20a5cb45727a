#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixpow/instance.hpp"
#include "mixpow/solution_engine.hpp"

namespace mixpow {

// Ascending reals with c < v_{i+1} - v_i < C.
struct WellSpacedSeq {
  std::vector<double> values;
  double c = 0.0;
  double C = 0.0;
};

// Checks ordering and the gap bounds; InvalidArgument otherwise.
WellSpacedSeq make_sequence(std::vector<double> values, double c, double C);

enum class SequenceKind { Integers, Jittered };

SequenceKind parse_sequence_kind(const std::string& text);
std::string to_string(SequenceKind kind);

inline constexpr double kMaxSequenceLength = 1e7;

// integers: v_i = i for 1 <= i <= N, with (c, C) = (0.5, 1.5).
// jittered: v_i = i s + j_i with s = (c + C)/2 and |j_i| < (C - c)/4, drawn
// from a 64-bit Mersenne twister seeded with `seed`, so the gaps stay in (c, C).
// Values lie in (0, N]. InstanceTooLarge when N / c > kMaxSequenceLength.
WellSpacedSeq generate_sequence(SequenceKind kind, double N, double c, double C, std::uint64_t seed);

// How each v is given its search scale X.
//   Dyadic: v in (N/2^j, N/2^(j-1)] is searched with X = N/2^(j-1), so that
//           X/2 < v <= X. eta is raised to 1/X where eta X < 1.
//   Fixed:  every v uses the same X (N when not set).
enum class XPolicy { Dyadic, Fixed };

struct ScanOptions {
  double eta = 0.01;
  XPolicy policy = XPolicy::Dyadic;
  std::optional<double> fixed_X;
  unsigned threads = 1;
  // Replace the meet-in-the-middle search with the quadruple loop (X <= 1000).
  bool brute_force = false;
};

struct Verdict {
  double v = 0.0;
  bool exceptional = true;
  double X = 0.0;
  double eta = 0.0;
  double tolerance = 0.0;
  std::optional<SolutionQuadruple> best;  // closest candidate, if any prime tuple exists
  bool borderline = false;
};

struct DyadicRow {
  int j = 0;
  double lo = 0.0;  // max(N/2^j, head_cutoff)
  double hi = 0.0;  // N/2^(j-1)
  std::uint64_t total = 0;
  std::uint64_t exceptional = 0;
};

struct ExceptionalReport {
  double N = 0.0;
  double delta = 0.0;
  Lambdas lambda{};
  SignConventions signs;
  std::uint64_t total = 0;
  std::uint64_t exceptional_count = 0;
  std::vector<double> exceptional_values;
  double head_cutoff = 0.0;  // N^(359/378)
  std::uint64_t head_total = 0;        // values below head_cutoff
  std::uint64_t head_exceptional = 0;
  std::vector<DyadicRow> dyadic_rows;  // j = 1 .. floor(19/378 log2 N) + 1
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
};

// Number of dyadic rows, floor(19/378 log2 N) + 1.
int dyadic_row_count(double N);

// v is exceptional iff no prime quadruple with p_j in I_{j+1} satisfies
// |residual| < v^(-delta). Verdicts do not depend on options.threads.
ExceptionalReport scan(const WellSpacedSeq& seq, double N, double delta, const Lambdas& lambda,
                       const PrimeTable& table, const ScanOptions& options = {});

struct ExponentFit {
  bool defined = false;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
  std::string note;
};

// Least-squares slope of log E against log N over the points with E > 0.
// Undefined when fewer than 3 such points exist.
ExponentFit empirical_exponent(const std::vector<std::pair<double, double>>& n_and_count);
ExponentFit empirical_exponent(const std::vector<ExceptionalReport>& reports);

}  // namespace mixpow
