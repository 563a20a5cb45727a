#include "mixpow/arc_geometry.hpp"

#include <cmath>
#include <sstream>

#include "mixpow/errors.hpp"

namespace mixpow {

ArcParams make_arc_params(double X, double tau, double delta, double eps, double sigma) {
  require(std::isfinite(X) && X > 1.0, ErrorKind::InvalidArgument, "arc params: X must exceed 1");
  require(tau > 0.0 && tau < 1.0, ErrorKind::InvalidArgument, "arc params: tau must lie in (0, 1)");
  require(eps > 0.0 && eps <= 0.05, ErrorKind::InvalidArgument, "arc params: eps must lie in (0, 0.05]");
  require(sigma > 0.0 && sigma <= kSigma * (1.0 + 1e-15), ErrorKind::InvalidArgument,
          "arc params: sigma must lie in (0, 1/378]");

  ArcParams ap;
  ap.X = X;
  ap.tau = tau;
  ap.delta = delta;
  ap.eps = eps;
  ap.sigma = sigma;
  const double L = std::log(X);
  ap.P = std::exp(L / 6.0);
  ap.R = std::exp(L * (43.0 / 120.0 + 2.0 * eps)) / (tau * tau);
  ap.m1_cut = std::exp(-L * 11.0 / 12.0);
  ap.Z2_star = std::exp(L * (0.5 - 27.0 * sigma + 2.0 * eps));
  ap.Z3_star = std::exp(L * (1.0 / 3.0 - 10.5 * sigma + 2.0 * eps));

  auto degenerate = [&](const char* what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "degenerate arcs at X = " << X << ": " << what << " (m1_cut = " << ap.m1_cut
        << ", P/X = " << ap.major_cut() << ", R = " << ap.R << ", P = " << ap.P << ")";
    fail(ErrorKind::DegenerateArcs, msg.str());
  };
  if (!(ap.P >= 2.0)) degenerate("P = X^(1/6) >= 2 violated");
  if (!(ap.m1_cut < ap.major_cut())) degenerate("m1_cut < P/X violated");
  if (!(ap.major_cut() < ap.R)) degenerate("P/X < R violated");
  return ap;
}

std::string_view to_string(ArcLabel label) {
  switch (label) {
    case ArcLabel::Major1: return "Major1";
    case ArcLabel::Major2: return "Major2";
    case ArcLabel::Minor1: return "Minor1";
    case ArcLabel::Minor2: return "Minor2";
    case ArcLabel::Minor3: return "Minor3";
    case ArcLabel::Minor4: return "Minor4";
    case ArcLabel::Trivial: return "Trivial";
  }
  return "?";
}

ArcLabel classify(double alpha, const ArcParams& ap, double s2_abs, double s3_abs) {
  const double a = std::fabs(alpha);
  if (a <= ap.m1_cut) return ArcLabel::Major1;
  if (a <= ap.major_cut()) return ArcLabel::Major2;
  if (a > ap.R) return ArcLabel::Trivial;
  const bool big2 = s2_abs >= ap.Z2_star;
  const bool big3 = s3_abs >= ap.Z3_star;
  if (!big2) return big3 ? ArcLabel::Minor2 : ArcLabel::Minor1;
  return big3 ? ArcLabel::Minor4 : ArcLabel::Minor3;
}

ArcMeasures arc_measures(const ArcParams& ap) {
  return {2.0 * ap.m1_cut, 2.0 * (ap.major_cut() - ap.m1_cut), 2.0 * (ap.R - ap.major_cut())};
}

}  // namespace mixpow
