#include "mixpow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include "mixpow/analytic_core.hpp"
#include "mixpow/approximation.hpp"
#include "mixpow/arc_geometry.hpp"
#include "mixpow/dh_integrator.hpp"
#include "mixpow/errors.hpp"
#include "mixpow/exceptional_scan.hpp"
#include "mixpow/harman_sieve.hpp"
#include "mixpow/solution_engine.hpp"

namespace mixpow {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json big_json(const BigInt& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return n.convert_to<std::int64_t>();
  return n.str();
}

// Reads and records configuration fields. Every value the command uses ends
// up in `resolved`, defaults included.
class Config {
 public:
  explicit Config(const json& raw) : raw_(raw) {
    require(raw.is_object(), ErrorKind::InvalidArgument, "config must be a JSON object");
  }

  bool has(const char* key) const { return raw_.contains(key) && !raw_[key].is_null(); }

  double number(const char* key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      require(fallback.has_value(), ErrorKind::InvalidArgument, std::string("missing required field '") + key + "'");
      resolved[key] = *fallback;
      return *fallback;
    }
    const double x = to_number(raw_[key], key);
    resolved[key] = x;
    return x;
  }

  std::uint64_t count(const char* key, std::optional<std::uint64_t> fallback = std::nullopt) {
    const double x = number(key, fallback ? std::optional<double>(static_cast<double>(*fallback)) : std::nullopt);
    require(x >= 0.0 && x == std::floor(x) && x < 0x1p63, ErrorKind::InvalidArgument,
            std::string("field '") + key + "' must be a nonnegative integer");
    resolved[key] = static_cast<std::uint64_t>(x);
    return static_cast<std::uint64_t>(x);
  }

  std::string text(const char* key, std::optional<std::string> fallback = std::nullopt) {
    std::string s;
    if (!has(key)) {
      require(fallback.has_value(), ErrorKind::InvalidArgument, std::string("missing required field '") + key + "'");
      s = *fallback;
    } else if (raw_[key].is_string()) {
      s = raw_[key].get<std::string>();
    } else if (raw_[key].is_number()) {
      s = raw_[key].dump();
    } else {
      fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a string");
    }
    resolved[key] = s;
    return s;
  }

  bool flag(const char* key, bool fallback) {
    bool b = fallback;
    if (has(key)) {
      require(raw_[key].is_boolean(), ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a boolean");
      b = raw_[key].get<bool>();
    }
    resolved[key] = b;
    return b;
  }

  // A real given as a number or as a rat:/surd:/dec: string.
  RealSpec real(const json& value, const std::string& what) {
    if (value.is_number()) {
      // A binary double is an exact rational.
      RealSpec x;
      x.kind = RealSpec::Kind::Rational;
      x.rational = BigRational(value.get<double>());
      x.text = value.dump();
      return x;
    }
    require(value.is_string(), ErrorKind::InvalidArgument, what + " must be a number or a rat:/surd:/dec: string");
    const std::string s = value.get<std::string>();
    if (s.rfind("rat:", 0) == 0 || s.rfind("surd:", 0) == 0 || s.rfind("dec:", 0) == 0) return parse_real_spec(s);
    return parse_real_spec("dec:" + s);
  }

  std::vector<RealSpec> lambdas(const char* key, std::size_t n) {
    require(has(key), ErrorKind::InvalidArgument, std::string("missing required field '") + key + "'");
    const json& v = raw_[key];
    require(v.is_array() && v.size() == n, ErrorKind::InvalidArgument,
            std::string("field '") + key + "' must be an array of " + std::to_string(n) + " reals");
    std::vector<RealSpec> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(real(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
    resolved[key] = v;
    return out;
  }

  const json& raw(const char* key) const { return raw_.at(key); }

  json resolved = json::object();

 private:
  static double to_number(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(s, &used);
      } catch (...) {
        used = 0;
      }
      require(used == s.size() && !s.empty(), ErrorKind::InvalidArgument,
              std::string("field '") + key + "' is not a number: '" + s + "'");
      return x;
    }
    fail(ErrorKind::InvalidArgument, std::string("field '") + key + "' must be a number");
  }

  json raw_;
};

// lambda_1 / lambda_2 is rational for two rationals, and for two surds whose
// radicands multiply to a square with matching coefficients.
bool ratio_is_rational(const RealSpec& x, const RealSpec& y) {
  const bool xr = x.kind != RealSpec::Kind::Surd;
  const bool yr = y.kind != RealSpec::Kind::Surd;
  if (xr && yr) return true;
  if (xr != yr) return false;
  const BigInt prod = x.d * y.d;
  const BigInt root = boost::multiprecision::sqrt(prod);
  if (root * root != prod) return false;
  // sqrt(dx) = k sqrt(dy) with k = root / dy.
  const BigRational k(root, y.d);
  // (ax + bx k s)/cx = r (ay + by s)/cy for s = sqrt(dy) irrational.
  const BigRational lhs_a(x.a, x.c), lhs_b = BigRational(x.b, x.c) * k;
  const BigRational rhs_a(y.a, y.c), rhs_b(y.b, y.c);
  const BigRational r = lhs_b / rhs_b;
  return lhs_a == r * rhs_a;
}

struct Common {
  unsigned threads = 1;
  std::string format = "json";
  std::optional<std::uint64_t> table_limit;
};

Common read_common(Config& cfg) {
  Common c;
  const std::uint64_t threads = cfg.count("threads", 1);
  require(threads >= 1 && threads <= 256, ErrorKind::InvalidArgument, "threads must lie in [1, 256]");
  c.threads = static_cast<unsigned>(threads);
  c.format = cfg.text("format", std::string("json"));
  require(c.format == "json" || c.format == "csv", ErrorKind::InvalidArgument, "format must be json or csv");
  if (cfg.has("table_limit")) c.table_limit = cfg.count("table_limit");
  return c;
}

PrimeTable make_table(const Common& common, double X) {
  const std::uint64_t need = required_table_limit(X);
  const std::uint64_t limit = common.table_limit.value_or(need);
  require(limit >= need, ErrorKind::TableTooSmall,
          "table_limit " + std::to_string(limit) + " is below the required " + std::to_string(need));
  require(limit <= PrimeTable::kMaxLimit, ErrorKind::TableTooSmall, "table_limit exceeds 2^32 - 1");
  return PrimeTable(limit);
}

struct InstanceInput {
  Lambdas lambda{};
  std::vector<RealSpec> specs;
  double X = 0.0;
  double v = 0.0;
  double delta = 0.0;
  InstanceOptions options;
};

InstanceInput read_instance(Config& cfg, json& notes, bool need_v) {
  InstanceInput in;
  in.specs = cfg.lambdas("lambda", 4);
  for (std::size_t j = 0; j < 4; ++j) in.lambda[j] = in.specs[j].to_double();
  in.X = cfg.number("X");
  in.v = need_v ? cfg.number("v") : cfg.number("v", in.X);
  in.options.eta = cfg.number("eta", 0.01);
  in.options.eps = cfg.number("eps", 0.01);
  if (cfg.has("tau")) {
    in.options.tau = cfg.number("tau");
    in.delta = 0.0;
  } else {
    in.delta = cfg.number("delta", 0.05);
  }
  if (cfg.flag("strict", false)) {
    require(!ratio_is_rational(in.specs[0], in.specs[1]), ErrorKind::InvalidArgument,
            "strict mode: lambda_1/lambda_2 is rational");
    notes.push_back("strict: eta = " + g17(in.options.eta) + " is " + g17(in.options.eta / 1e-10) +
                    " times the asymptotic-regime bound 1e-10");
    notes.push_back("strict: eps = " + g17(in.options.eps) + " is " + g17(in.options.eps / 1e-10) +
                    " times the asymptotic-regime bound 1e-10");
  }
  return in;
}

json quadrature_json(const QuadratureReport& q) {
  return {{"value", q.value}, {"imag_residual", q.imag_residual}, {"tail_bound", q.tail_bound},
          {"panels", q.panels}, {"arc", q.arc},   {"error", q.error},
          {"bound_only", q.bound_only}};
}

json solution_json(const std::optional<SolutionQuadruple>& s) {
  if (!s) return nullptr;
  return {{"p1", s->p1},       {"p2", s->p2},
          {"p3", s->p3},       {"p4", s->p4},
          {"residual", s->residual}, {"tolerance", s->tolerance},
          {"borderline", s->borderline}};
}

json signs_json(const SignConventions& s) {
  return {{"not_all_negative", s.not_all_negative}, {"not_all_same_sign", s.not_all_same_sign}};
}

std::string csv_kv(const json& result) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = result.begin(); it != result.end(); ++it) {
    if (it->is_structured()) continue;
    os << it.key() << ',';
    if (it->is_number_float())
      os << g17(it->get<double>());
    else if (it->is_string())
      os << it->get<std::string>();
    else
      os << it->dump();
    os << '\n';
  }
  return os.str();
}

CommandOutput finish(const std::string& command, Config& cfg, const Common& common, json result, json notes,
                     const std::string& csv, bool consistent = true, std::string message = {}) {
  CommandOutput out;
  out.consistent = consistent;
  out.message = std::move(message);
  if (common.format == "csv") {
    out.text = csv.empty() ? csv_kv(result) : csv;
    return out;
  }
  json doc = {{"schema", kSchema}, {"command", command}, {"config", cfg.resolved},
              {"result", std::move(result)}, {"notes", std::move(notes)}};
  out.text = doc.dump(2) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

CommandOutput cmd_expsum(Config& cfg) {
  const Common common = read_common(cfg);
  const auto k = static_cast<int>(cfg.count("k"));
  require(k >= 2 && k <= 5, ErrorKind::InvalidArgument, "field 'k' must be one of 2, 3, 4, 5");
  const double lambda = cfg.has("lambda") ? cfg.real(cfg.raw("lambda"), "lambda").to_double() : 1.0;
  cfg.resolved["lambda"] = cfg.has("lambda") ? cfg.raw("lambda") : json(1.0);
  require(lambda != 0.0 && std::isfinite(lambda), ErrorKind::InvalidArgument, "field 'lambda' must be nonzero");
  const double X = cfg.number("X");
  const double eta = cfg.number("eta", 0.01);

  std::vector<double> alphas;
  if (cfg.has("alpha")) {
    const json& a = cfg.raw("alpha");
    if (a.is_array()) {
      for (const auto& x : a) {
        require(x.is_number(), ErrorKind::InvalidArgument, "field 'alpha' must hold numbers");
        alphas.push_back(x.get<double>());
      }
    } else {
      alphas.push_back(cfg.number("alpha"));
    }
    cfg.resolved["alpha"] = alphas;
  } else {
    const double lo = cfg.number("alpha_min", 0.0);
    const double hi = cfg.number("alpha_max", 1.0);
    const std::uint64_t n = cfg.count("alpha_count", 11);
    require(n >= 1 && n <= 10'000'000, ErrorKind::InvalidArgument, "field 'alpha_count' must lie in [1, 1e7]");
    for (std::uint64_t i = 0; i < n; ++i)
      alphas.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  for (double a : alphas) require(std::isfinite(a), ErrorKind::InvalidArgument, "alpha values must be finite");

  const PrimeTable table = make_table(common, X);
  const PowerSum sum(k, X, eta, table);
  json rows = json::array();
  std::ostringstream csv;
  csv << "alpha,abs,arg,re,im\n";
  for (double a : alphas) {
    const Complex s = sum(lambda, a);
    rows.push_back({{"alpha", a}, {"abs", std::abs(s)}, {"arg", std::arg(s)}, {"re", s.real()}, {"im", s.imag()}});
    csv << g17(a) << ',' << g17(std::abs(s)) << ',' << g17(std::arg(s)) << ',' << g17(s.real()) << ','
        << g17(s.imag()) << '\n';
  }
  json result = {{"k", k},
                 {"interval", {sum.interval().lo, sum.interval().hi}},
                 {"terms", sum.size()},
                 {"S0", sum.weight_sum()},
                 {"abs_weight", sum.abs_weight()},
                 {"rows", rows}};
  return finish("expsum", cfg, common, std::move(result), json::array(), csv.str());
}

CommandOutput cmd_integrate(Config& cfg) {
  const Common common = read_common(cfg);
  json notes = json::array();
  const InstanceInput in = read_instance(cfg, notes, true);
  const ArcSelector arcs = parse_arc_selector(cfg.text("arcs", std::string("all")));
  const std::uint64_t budget = cfg.count("budget", kDefaultBudget);
  const bool oracle = cfg.flag("oracle", arcs == ArcSelector::All);

  const PrimeTable table = make_table(common, in.X);
  const ProblemInstance inst = make_instance(table, in.lambda, in.X, in.v, in.delta, in.options);
  const DhIntegrator dh(inst);
  const QuadratureReport q = dh.integrate(arcs, budget, common.threads);

  json result = quadrature_json(q);
  result["tau"] = inst.tau;
  result["delta"] = inst.delta;
  result["R"] = dh.arcs().R;
  result["trivial_bound_B"] = dh.trivial_bound();
  result["fastest_frequency"] = dh.fastest_frequency();
  result["signs"] = signs_json(inst.signs());
  bool consistent = true;
  std::string message;
  if (oracle) {
    require(arcs == ArcSelector::All, ErrorKind::InvalidArgument, "oracle comparison needs arcs = all");
    const double sum = smoothed_sum(inst, common.threads);
    const double diff = std::fabs(q.value - sum);
    const double bound = q.error + q.tail_bound;
    consistent = diff <= bound;
    result["oracle"] = {{"smoothed_sum", sum}, {"difference", diff}, {"bound", bound}, {"agrees", consistent}};
    if (!consistent) message = "integral and smoothed sum differ by " + g17(diff) + " > bound " + g17(bound);
  }
  std::ostringstream csv;
  csv << "arc,value,imag_residual,tail_bound,error,panels\n"
      << q.arc << ',' << g17(q.value) << ',' << g17(q.imag_residual) << ',' << g17(q.tail_bound) << ','
      << g17(q.error) << ',' << q.panels << '\n';
  return finish("integrate", cfg, common, std::move(result), std::move(notes), csv.str(), consistent, message);
}

CommandOutput cmd_arcs(Config& cfg) {
  const Common common = read_common(cfg);
  json notes = json::array();
  const InstanceInput in = read_instance(cfg, notes, false);
  const bool report = cfg.flag("report", false);
  const std::uint64_t budget = cfg.count("budget", kDefaultBudget);
  const std::uint64_t samples = cfg.count("samples", 4096);

  const PrimeTable table = make_table(common, in.X);
  const ProblemInstance inst = make_instance(table, in.lambda, in.X, in.v, in.delta, in.options);
  const ArcParams ap = make_arc_params(inst.X, inst.tau, inst.delta, inst.eps);
  const ArcMeasures m = arc_measures(ap);
  json result = {{"X", ap.X},           {"tau", ap.tau},         {"delta", ap.delta},
                 {"eps", ap.eps},       {"sigma", ap.sigma},     {"P", ap.P},
                 {"P_over_X", ap.major_cut()}, {"R", ap.R},      {"m1_cut", ap.m1_cut},
                 {"Z2_star", ap.Z2_star}, {"Z3_star", ap.Z3_star},
                 {"len_M1", m.len_M1},  {"len_M2", m.len_M2},    {"len_m", m.len_m}};
  std::string csv;
  if (report) {
    const RhoMeanValue kappa = rho_mean_value(inst.X, interval_ij(inst.X, inst.eta, 2), table, inst.eta);
    const ArcReport r = arc_report(inst, kappa, budget, common.threads, samples);
    json rows = json::array();
    std::ostringstream os;
    os << "arc,value,error,ratio,method\n";
    for (const ArcRow& row : r.rows) {
      rows.push_back({{"arc", row.arc}, {"value", row.value}, {"error", row.error}, {"ratio", row.ratio},
                      {"panels", row.panels}, {"method", row.method}, {"bound_only", row.method == "bound"}});
      os << row.arc << ',' << g17(row.value) << ',' << g17(row.error) << ',' << g17(row.ratio) << ','
         << row.method << '\n';
    }
    csv = os.str();
    result["report"] = {
        {"rows", rows},
        {"normalizer", r.normalizer},
        {"minor_split", r.minor_split},
        {"minor_samples", r.minor_samples},
        {"smoothed_sum", r.smoothed_sum},
        {"H_major1", r.H_major1},
        {"H_major1_error", r.H_major1_error},
        {"H_major1_ratio", r.H_major1_ratio},
        {"kappa", {{"kappa_hat", r.kappa.kappa_hat}, {"sum", r.kappa.sum}, {"sub_lo", r.kappa.sub_lo},
                   {"sub_hi", r.kappa.sub_hi}, {"X", r.kappa.X}}}};
    notes.push_back("report rows are observational; ratios carry no pass/fail threshold");
  }
  return finish("arcs", cfg, common, std::move(result), std::move(notes), csv);
}

struct ScanInput {
  Lambdas lambda{};
  double N = 0.0;
  double delta = 0.0;
  SequenceKind kind = SequenceKind::Integers;
  double c = 0.5, C = 1.5;
  std::uint64_t seed = 0;
  ScanOptions options;
};

ScanInput read_scan(Config& cfg, const Common& common, bool need_N) {
  ScanInput in;
  const auto specs = cfg.lambdas("lambda", 4);
  for (std::size_t j = 0; j < 4; ++j) in.lambda[j] = specs[j].to_double();
  if (cfg.flag("strict", false))
    require(!ratio_is_rational(specs[0], specs[1]), ErrorKind::InvalidArgument,
            "strict mode: lambda_1/lambda_2 is rational");
  if (need_N) in.N = cfg.number("N");
  in.delta = cfg.number("delta", 0.1);
  in.kind = parse_sequence_kind(cfg.text("sequence", std::string("integers")));
  in.c = cfg.number("c", 0.5);
  in.C = cfg.number("C", 1.5);
  in.seed = cfg.count("seed", 0);
  in.options.eta = cfg.number("eta", 0.01);
  in.options.threads = common.threads;
  const std::string policy = cfg.text("policy", std::string("dyadic"));
  require(policy == "dyadic" || policy == "fixed", ErrorKind::InvalidArgument, "policy must be dyadic or fixed");
  in.options.policy = policy == "dyadic" ? XPolicy::Dyadic : XPolicy::Fixed;
  if (cfg.has("X")) in.options.fixed_X = cfg.number("X");
  return in;
}

json report_json(const ExceptionalReport& r) {
  json verdicts = json::array();
  for (const Verdict& v : r.verdicts)
    verdicts.push_back({{"v", v.v},
                        {"exceptional", v.exceptional},
                        {"X", v.X},
                        {"eta", v.eta},
                        {"tolerance", v.tolerance},
                        {"best", solution_json(v.best)},
                        {"borderline", v.borderline}});
  json rows = json::array();
  for (const DyadicRow& row : r.dyadic_rows)
    rows.push_back({{"j", row.j}, {"lo", row.lo}, {"hi", row.hi}, {"total", row.total},
                    {"exceptional", row.exceptional}});
  return {{"N", r.N},
          {"delta", r.delta},
          {"lambda", r.lambda},
          {"signs", signs_json(r.signs)},
          {"total", r.total},
          {"exceptional_count", r.exceptional_count},
          {"exceptional_values", r.exceptional_values},
          {"head_cutoff", r.head_cutoff},
          {"head_total", r.head_total},
          {"head_exceptional", r.head_exceptional},
          {"dyadic_rows", rows},
          {"verdicts", verdicts}};
}

CommandOutput cmd_scan(Config& cfg) {
  const Common common = read_common(cfg);
  const ScanInput in = read_scan(cfg, common, true);
  const bool oracle = cfg.flag("oracle", false);
  if (oracle)
    require(in.N <= 300.0, ErrorKind::InvalidArgument, "oracle cross-check needs N <= 300");

  const WellSpacedSeq seq = generate_sequence(in.kind, in.N, in.c, in.C, in.seed);
  const PrimeTable table = make_table(common, std::max(in.N, in.options.fixed_X.value_or(in.N)));
  const ExceptionalReport report = scan(seq, in.N, in.delta, in.lambda, table, in.options);

  json result = report_json(report);
  json notes = report.notes;
  bool consistent = true;
  std::string message;
  if (oracle) {
    ScanOptions brute = in.options;
    brute.brute_force = true;
    const ExceptionalReport check = scan(seq, in.N, in.delta, in.lambda, table, brute);
    json mismatches = json::array();
    for (std::size_t i = 0; i < report.verdicts.size(); ++i)
      if (report.verdicts[i].exceptional != check.verdicts[i].exceptional) mismatches.push_back(report.verdicts[i].v);
    consistent = mismatches.empty();
    result["oracle"] = {{"checked", report.verdicts.size()}, {"mismatches", mismatches}, {"agrees", consistent}};
    if (!consistent) message = "scanner and brute force disagree on " + std::to_string(mismatches.size()) + " values";
  }

  std::ostringstream csv;
  csv << "v,verdict,residual_of_best_candidate\n";
  for (const Verdict& v : report.verdicts)
    csv << g17(v.v) << ',' << (v.exceptional ? "exceptional" : "solved") << ','
        << (v.best ? g17(v.best->residual) : std::string()) << '\n';
  return finish("scan", cfg, common, std::move(result), std::move(notes), csv.str(), consistent, message);
}

CommandOutput cmd_exponent(Config& cfg) {
  const Common common = read_common(cfg);
  ScanInput in = read_scan(cfg, common, false);
  require(cfg.has("Ns") && cfg.raw("Ns").is_array(), ErrorKind::InvalidArgument, "missing required array 'Ns'");
  std::vector<double> Ns;
  for (const auto& x : cfg.raw("Ns")) {
    require(x.is_number(), ErrorKind::InvalidArgument, "field 'Ns' must hold numbers");
    Ns.push_back(x.get<double>());
  }
  cfg.resolved["Ns"] = Ns;
  require(Ns.size() >= 3, ErrorKind::InvalidArgument, "field 'Ns' needs at least 3 values");
  const PrimeTable table = make_table(common, *std::max_element(Ns.begin(), Ns.end()));
  std::vector<ExceptionalReport> reports;
  json rows = json::array();
  std::ostringstream csv;
  csv << "N,total,exceptional\n";
  for (double N : Ns) {
    in.N = N;
    const WellSpacedSeq seq = generate_sequence(in.kind, N, in.c, in.C, in.seed);
    reports.push_back(scan(seq, N, in.delta, in.lambda, table, in.options));
    rows.push_back({{"N", N}, {"total", reports.back().total}, {"exceptional", reports.back().exceptional_count}});
    csv << g17(N) << ',' << reports.back().total << ',' << reports.back().exceptional_count << '\n';
  }
  const ExponentFit fit = empirical_exponent(reports);
  json result = {{"rows", rows},
                 {"defined", fit.defined},
                 {"slope", fit.defined ? json(fit.slope) : json(nullptr)},
                 {"r2", fit.defined ? json(fit.r2) : json(nullptr)},
                 {"points", fit.points}};
  json notes = json::array({fit.note});
  return finish("exponent", cfg, common, std::move(result), std::move(notes), csv.str());
}

CommandOutput cmd_convergents(Config& cfg) {
  const Common common = read_common(cfg);
  const RealSpec x = cfg.real(cfg.has("x") ? cfg.raw("x") : json(nullptr), "x");
  cfg.resolved["x"] = x.text;
  const std::uint64_t n = cfg.count("n", 10);
  require(n >= 1 && n <= 100000, ErrorKind::InvalidArgument, "field 'n' must lie in [1, 100000]");
  const bool strict = cfg.flag("strict", true);
  const ConvergentSequence seq = convergents(x, n, strict);

  json terms = json::array();
  std::ostringstream csv;
  csv << "j,a,p,q\n";
  for (std::size_t j = 0; j < seq.terms.size(); ++j) {
    const Convergent& c = seq.terms[j];
    terms.push_back({{"j", j}, {"a", big_json(c.a)}, {"p", big_json(c.p)}, {"q", big_json(c.q)}});
    csv << j << ',' << c.a.str() << ',' << c.p.str() << ',' << c.q.str() << '\n';
  }
  json q = json::array();
  for (const auto& c : seq.terms) q.push_back(big_json(c.q));
  json result = {{"terms", terms},
                 {"q", q},
                 {"exact", seq.exact},
                 {"certified", seq.certified},
                 {"terminated", seq.terminated},
                 {"requested", n}};
  json notes = json::array();
  if (seq.certified < n && !seq.terminated)
    notes.push_back("digit-limited: only " + std::to_string(seq.certified) + " partial quotients are determined");
  if (cfg.has("omega")) {
    const double omega = cfg.number("omega");
    const OmegaReport r = check_omega(seq, omega);
    result["omega"] = {{"omega", omega}, {"max_ratio", r.max_ratio}, {"witness_index", r.witness_index},
                       {"ratios", r.ratios}};
  }
  return finish("convergents", cfg, common, std::move(result), std::move(notes), csv.str());
}

BigRational read_exact(Config& cfg, const char* key, const std::string& fallback) {
  const std::string s = cfg.text(key, fallback);
  if (s.find('/') != std::string::npos || s.rfind("rat:", 0) == 0)
    return parse_rational(s.rfind("rat:", 0) == 0 ? s.substr(4) : s);
  return parse_real_spec("dec:" + s).rational;
}

CommandOutput cmd_chi(Config& cfg) {
  const Common common = read_common(cfg);
  const BigRational omega = read_exact(cfg, "omega", "0");
  const BigRational value = chi(omega);
  const BigRational first = (1 - omega) / (94 - 75 * omega);
  const BigRational cap(1, 378);
  const std::string branch = first == cap ? "equal" : (first < cap ? "(1-omega)/(94-75omega)" : "1/378");
  json result = {{"omega", to_string(omega)},
                 {"chi", to_string(value)},
                 {"chi_value", value.convert_to<double>()},
                 {"branch", branch}};
  return finish("chi", cfg, common, std::move(result), json::array(), std::string());
}

CommandOutput cmd_ladder(Config& cfg) {
  const Common common = read_common(cfg);
  const std::string qs = cfg.text("q");
  static const std::regex digits(R"(\d+)");
  require(std::regex_match(qs, digits), ErrorKind::InvalidArgument, "field 'q' must be a positive integer");
  const BigInt q = boost::multiprecision::numerator(parse_rational(qs));
  BigRational sigma;
  if (cfg.has("omega")) {
    sigma = chi(read_exact(cfg, "omega", "0"));
    cfg.resolved["sigma"] = to_string(sigma);
  } else {
    sigma = read_exact(cfg, "sigma", "1/378");
  }
  const Ladder l = ladder(q, sigma);
  json result = {{"q", big_json(q)},
                 {"sigma", to_string(sigma)},
                 {"X", l.X},
                 {"N", l.N},
                 {"x_exponent", to_string(l.x_exponent)},
                 {"n_exponent", to_string(l.n_exponent)},
                 {"n_exponent_value", l.n_exponent.convert_to<double>()},
                 {"N_ge_X_for_all_q", l.n_vs_x >= 0}};
  return finish("ladder", cfg, common, std::move(result), json::array(), std::string());
}

}  // namespace

CommandOutput run_command(const std::string& command, const nlohmann::json& config) {
  Config cfg(config.is_null() ? json::object() : config);
  if (command == "expsum") return cmd_expsum(cfg);
  if (command == "integrate") return cmd_integrate(cfg);
  if (command == "arcs") return cmd_arcs(cfg);
  if (command == "scan") return cmd_scan(cfg);
  if (command == "exponent") return cmd_exponent(cfg);
  if (command == "convergents") return cmd_convergents(cfg);
  if (command == "chi") return cmd_chi(cfg);
  if (command == "ladder") return cmd_ladder(cfg);
  fail(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
}

}  // namespace mixpow
