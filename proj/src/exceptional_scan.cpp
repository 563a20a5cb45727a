#include "mixpow/exceptional_scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <random>

#include "mixpow/errors.hpp"
#include "mixpow/parallel.hpp"

namespace mixpow {

namespace {

// Uniform double in [0, 1) from the top 53 bits, independent of the
// standard library's distribution implementation.
double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1p-53; }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

WellSpacedSeq make_sequence(std::vector<double> values, double c, double C) {
  require(std::isfinite(c) && std::isfinite(C) && 0.0 < c && c < C, ErrorKind::InvalidArgument,
          "sequence: need 0 < c < C");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(std::isfinite(values[i]) && values[i] > 0.0, ErrorKind::InvalidArgument,
            "sequence: values must be positive and finite");
    if (i == 0) continue;
    const double gap = values[i] - values[i - 1];
    require(c < gap && gap < C, ErrorKind::InvalidArgument,
            "sequence: gap " + fmt(gap) + " after v = " + fmt(values[i - 1]) + " is outside (c, C)");
  }
  return {std::move(values), c, C};
}

SequenceKind parse_sequence_kind(const std::string& text) {
  if (text == "integers") return SequenceKind::Integers;
  if (text == "jittered") return SequenceKind::Jittered;
  fail(ErrorKind::InvalidArgument, "sequence: expected integers or jittered, got '" + text + "'");
}

std::string to_string(SequenceKind kind) { return kind == SequenceKind::Integers ? "integers" : "jittered"; }

WellSpacedSeq generate_sequence(SequenceKind kind, double N, double c, double C, std::uint64_t seed) {
  require(std::isfinite(N), ErrorKind::InvalidArgument, "sequence: N must be finite");
  if (kind == SequenceKind::Integers) {
    c = 0.5;
    C = 1.5;
  }
  require(std::isfinite(c) && std::isfinite(C) && 0.0 < c && c < C, ErrorKind::InvalidArgument,
          "sequence: need 0 < c < C");
  require(N > C, ErrorKind::InvalidArgument, "sequence: N must exceed C");
  // A sequence holds at most N / c values; 10^7 doubles is the ceiling.
  require(N / c <= kMaxSequenceLength, ErrorKind::InstanceTooLarge,
          "sequence: more than 1e7 values (N / c) is not supported");

  std::vector<double> values;
  if (kind == SequenceKind::Integers) {
    for (double i = 1.0; i <= N; i += 1.0) values.push_back(i);
    return make_sequence(std::move(values), c, C);
  }

  const double s = 0.5 * (c + C);
  const double amplitude = 0.49 * (s - c);
  std::mt19937_64 gen(seed);
  for (double i = 1.0;; i += 1.0) {
    const double v = i * s + amplitude * (2.0 * unit_draw(gen) - 1.0);
    if (v > N) break;
    values.push_back(v);
  }
  return make_sequence(std::move(values), c, C);
}

int dyadic_row_count(double N) {
  require(N > 1.0, ErrorKind::InvalidArgument, "dyadic rows: N must exceed 1");
  return static_cast<int>(std::floor(19.0 / 378.0 * std::log2(N))) + 1;
}

ExceptionalReport scan(const WellSpacedSeq& seq, double N, double delta, const Lambdas& lambda,
                       const PrimeTable& table, const ScanOptions& options) {
  for (double l : lambda)
    require(std::isfinite(l) && l != 0.0, ErrorKind::InvalidArgument, "scan: lambda entries must be finite and nonzero");
  require(sign_conventions(lambda).not_all_negative, ErrorKind::InvalidArgument,
          "scan: all lambda entries are negative, so every large v is trivially exceptional; refusing to scan");
  require(std::isfinite(N) && N > 1.0, ErrorKind::InvalidArgument, "scan: N must exceed 1");
  require(std::isfinite(delta) && delta > 0.0, ErrorKind::InvalidArgument, "scan: delta must be positive");
  require(options.eta > 0.0 && options.eta < 1.0, ErrorKind::InvalidArgument, "scan: eta must lie in (0, 1)");
  for (double v : seq.values)
    require(v <= N, ErrorKind::InvalidArgument, "scan: sequence value " + fmt(v) + " exceeds N");

  ExceptionalReport out;
  out.N = N;
  out.delta = delta;
  out.lambda = lambda;
  out.signs = sign_conventions(lambda);
  out.total = seq.values.size();
  out.head_cutoff = std::pow(N, 359.0 / 378.0);
  if (!out.signs.not_all_same_sign)
    out.notes.push_back("all lambda entries share one sign (the weaker 'not all negative' convention holds)");

  // Search scale for every value.
  const std::size_t count = seq.values.size();
  std::vector<double> scale(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (options.policy == XPolicy::Fixed) {
      scale[i] = options.fixed_X.value_or(N);
    } else {
      double X = N;
      while (seq.values[i] <= 0.5 * X) X *= 0.5;
      scale[i] = X;
    }
  }

  // One searcher per distinct scale, built in ascending order of X.
  std::map<double, std::unique_ptr<SolutionSearcher>> searchers;
  auto eta_for = [&](double X) { return std::max(options.eta, 1.0 / X); };
  for (double X : scale) {
    if (X < 2.0 || searchers.count(X)) continue;
    require(eta_for(X) < 1.0, ErrorKind::InvalidArgument, "scan: eta must stay below 1");
    if (options.policy == XPolicy::Fixed)
      require(options.eta * X >= 1.0, ErrorKind::EmptyInterval, "scan: eta * X must be at least 1 for the fixed X");
    if (options.brute_force) {
      require(X <= kMaxBruteForceX, ErrorKind::InstanceTooLarge, "scan: brute force refuses X > 1000");
      searchers[X] = nullptr;
      continue;
    }
    try {
      searchers[X] = std::make_unique<SolutionSearcher>(lambda, X, eta_for(X), table);
    } catch (const Error& e) {
      fail(e.kind(), std::string(e.what()) + " (block X = " + fmt(X) + ")");
    }
  }
  if (scale.end() != std::find_if(scale.begin(), scale.end(), [](double X) { return X < 2.0; }))
    out.notes.push_back("values with search scale X < 2 have no prime candidates and are exceptional");

  out.verdicts.resize(count);
  parallel_for(count, options.threads, [&](std::size_t i) {
    Verdict& verdict = out.verdicts[i];
    const double v = seq.values[i];
    verdict.v = v;
    verdict.X = scale[i];
    verdict.tolerance = std::pow(v, -delta);
    if (scale[i] < 2.0) return;
    verdict.eta = eta_for(scale[i]);
    SearchOutcome found;
    try {
      if (options.brute_force)
        found = brute_force_find_with_tolerance(v, verdict.tolerance, lambda, scale[i], table, verdict.eta);
      else
        found = searchers.at(scale[i])->find_with_tolerance(v, verdict.tolerance);
    } catch (const Error& e) {
      fail(e.kind(), std::string(e.what()) + " (v = " + fmt(v) + ")");
    }
    verdict.exceptional = !found.solution.has_value();
    verdict.best = found.best;
    verdict.borderline = found.borderline;
  });

  const int rows = dyadic_row_count(N);
  for (int j = 1; j <= rows; ++j) {
    DyadicRow row;
    row.j = j;
    row.hi = std::ldexp(N, 1 - j);
    row.lo = std::max(std::ldexp(N, -j), out.head_cutoff);
    out.dyadic_rows.push_back(row);
  }
  for (const Verdict& verdict : out.verdicts) {
    if (verdict.exceptional) {
      ++out.exceptional_count;
      out.exceptional_values.push_back(verdict.v);
    }
    if (verdict.borderline)
      out.notes.push_back("borderline: v = " + fmt(verdict.v) + " has a candidate within 1e-12 of the tolerance");
    if (verdict.v < out.head_cutoff) {
      ++out.head_total;
      out.head_exceptional += verdict.exceptional;
      continue;
    }
    for (DyadicRow& row : out.dyadic_rows) {
      if (std::ldexp(N, -row.j) < verdict.v && verdict.v <= row.hi) {
        ++row.total;
        row.exceptional += verdict.exceptional;
        break;
      }
    }
  }
  return out;
}

ExponentFit empirical_exponent(const std::vector<std::pair<double, double>>& n_and_count) {
  ExponentFit fit;
  fit.note = "observational only: desk-scale N cannot confirm an asymptotic exponent";
  for (std::size_t i = 1; i < n_and_count.size(); ++i)
    require(n_and_count[i].first > n_and_count[i - 1].first, ErrorKind::InvalidArgument,
            "empirical_exponent: N must be strictly increasing");
  std::vector<double> xs, ys;
  for (const auto& [n, e] : n_and_count) {
    require(n > 0.0 && e >= 0.0, ErrorKind::InvalidArgument, "empirical_exponent: need N > 0 and E >= 0");
    if (e > 0.0) {
      xs.push_back(std::log(n));
      ys.push_back(std::log(e));
    }
  }
  fit.points = xs.size();
  if (xs.size() < 3) {
    fit.note = "undefined: fewer than 3 reports with a positive exceptional count";
    return fit;
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.defined = true;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ExponentFit empirical_exponent(const std::vector<ExceptionalReport>& reports) {
  std::vector<std::pair<double, double>> points;
  for (const auto& r : reports) points.emplace_back(r.N, static_cast<double>(r.exceptional_count));
  return empirical_exponent(points);
}

}  // namespace mixpow
