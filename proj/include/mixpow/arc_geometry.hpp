#pragma once

#include <string_view>

namespace mixpow {

inline constexpr double kSigma = 1.0 / 378.0;

// Arc boundaries for one (X, tau, eps, sigma):
//   major arc  |alpha| <= P/X, split at m1_cut = X^(-11/12);
//   minor arc  P/X < |alpha| <= R;
//   trivial    |alpha| > R;
// with P = X^(1/6), R = tau^-2 X^(43/120 + 2 eps). The minor arc is further
// split by whether |S_2(lambda_1 alpha)| and |S_3(lambda_2 alpha)| reach
// Z2_star = X^(1/2 - 27 sigma + 2 eps) and Z3_star = X^(1/3 - 21/2 sigma + 2 eps).
struct ArcParams {
  double X = 0.0;
  double tau = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  double sigma = 0.0;
  double P = 0.0;
  double R = 0.0;
  double m1_cut = 0.0;
  double Z2_star = 0.0;
  double Z3_star = 0.0;

  double major_cut() const { return P / X; }
};

// Throws InvalidArgument for X <= 1, tau outside (0,1), eps outside (0, 0.05]
// or sigma outside (0, 1/378]; DegenerateArcs when P < 2 or the ordering
// m1_cut < P/X < R fails.
ArcParams make_arc_params(double X, double tau, double delta, double eps, double sigma = kSigma);

enum class ArcLabel { Major1, Major2, Minor1, Minor2, Minor3, Minor4, Trivial };

inline constexpr ArcLabel kAllArcLabels[] = {ArcLabel::Major1, ArcLabel::Major2, ArcLabel::Minor1,
                                            ArcLabel::Minor2, ArcLabel::Minor3, ArcLabel::Minor4,
                                            ArcLabel::Trivial};

std::string_view to_string(ArcLabel label);

// Each boundary belongs to the region nearer the origin.
ArcLabel classify(double alpha, const ArcParams& ap, double s2_abs, double s3_abs);

struct ArcMeasures {
  double len_M1 = 0.0;  // 2 m1_cut
  double len_M2 = 0.0;  // 2 (P/X - m1_cut)
  double len_m = 0.0;   // 2 (R - P/X)
};

ArcMeasures arc_measures(const ArcParams& ap);

}  // namespace mixpow
