// mixpow command-line front end. Every subcommand builds a JSON configuration
// (config file first, flags on top) and hands it to mixpow_run.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixpow/mixpow.h"

using nlohmann::json;

namespace {

// A flag value that looks like a number is stored as one.
json scalar(const std::string& s) {
  std::size_t used = 0;
  try {
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (...) {
  }
  return s;
}

struct Flags {
  std::map<std::string, std::string> text;
  std::map<std::string, double> numbers;
  std::map<std::string, std::vector<std::string>> lists;
  std::map<std::string, bool> switches;
};

struct Subcommand {
  CLI::App* app = nullptr;
  Flags flags;
};

void add_number(Subcommand& sc, const std::string& flag, const std::string& key, const std::string& help) {
  sc.app->add_option_function<double>(flag, [&sc, key](double x) { sc.flags.numbers[key] = x; }, help);
}

void add_text(Subcommand& sc, const std::string& flag, const std::string& key, const std::string& help) {
  sc.app->add_option_function<std::string>(flag, [&sc, key](const std::string& s) { sc.flags.text[key] = s; },
                                           help);
}

void add_switch(Subcommand& sc, const std::string& flag, const std::string& key, const std::string& help) {
  sc.app->add_flag_function(flag, [&sc, key](std::int64_t) { sc.flags.switches[key] = true; }, help);
}

void add_lambda(Subcommand& sc, const std::string& help) {
  sc.app
      ->add_option_function<std::vector<std::string>>(
          "--lambda", [&sc](const std::vector<std::string>& v) { sc.flags.lists["lambda"] = v; }, help)
      ->delimiter(',');
}

void add_common(Subcommand& sc, std::string& config_path, std::string& output_path) {
  sc.app->add_option("--config", config_path, "JSON configuration file; flags take precedence");
  sc.app->add_option("--output,-o", output_path, "write the document here instead of stdout");
  add_text(sc, "--format", "format", "json or csv");
  add_number(sc, "--threads", "threads", "worker threads (results do not depend on it)");
  add_number(sc, "--seed", "seed", "random seed");
  add_number(sc, "--table-limit", "table_limit", "prime table limit (default: the smallest sufficient one)");
}

json merge(json config, const Flags& flags) {
  for (const auto& [k, v] : flags.text) config[k] = v;
  for (const auto& [k, v] : flags.numbers) config[k] = v;
  for (const auto& [k, v] : flags.switches) config[k] = v;
  for (const auto& [k, list] : flags.lists) {
    json arr = json::array();
    for (const auto& s : list) arr.push_back(scalar(s));
    config[k] = arr;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixpow: Davenport-Heilbronn laboratory for |l1 p1^2 + l2 p2^3 + l3 p3^4 + l4 p4^5 - v| < tau"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mixpow_version()));

  std::string config_path;
  std::string output_path;
  std::map<std::string, Subcommand> subs;
  auto make = [&](const std::string& name, const std::string& help) -> Subcommand& {
    Subcommand& sc = subs[name];
    sc.app = app.add_subcommand(name, help);
    add_common(sc, config_path, output_path);
    return sc;
  };

  {
    Subcommand& sc = make("expsum", "weighted prime power sums S_k(lambda alpha) on an alpha grid");
    add_number(sc, "--k", "k", "power k in {2, 3, 4, 5}");
    add_text(sc, "--lambda", "lambda", "coefficient (number or rat:/surd:/dec: spec)");
    add_number(sc, "--X", "X", "scale X");
    add_number(sc, "--eta", "eta", "lower interval factor eta (default 0.01)");
    add_number(sc, "--alpha", "alpha", "single alpha");
    add_number(sc, "--alpha-min", "alpha_min", "grid start (default 0)");
    add_number(sc, "--alpha-max", "alpha_max", "grid end (default 1)");
    add_number(sc, "--alpha-count", "alpha_count", "grid points (default 11)");
  }
  for (const char* name : {"integrate", "arcs"}) {
    Subcommand& sc = make(name, std::string(name) == "integrate"
                                    ? "integral of the four sums against the kernel over an arc set"
                                    : "arc boundaries, measures and an optional per-arc report");
    add_lambda(sc, "four coefficients, comma separated");
    add_number(sc, "--X", "X", "scale X");
    add_number(sc, "--v", "v", "target v");
    add_number(sc, "--delta", "delta", "tau = X^-delta (default 0.05)");
    add_number(sc, "--tau", "tau", "explicit tau, overrides delta");
    add_number(sc, "--eta", "eta", "default 0.01");
    add_number(sc, "--eps", "eps", "default 0.01");
    add_number(sc, "--budget", "budget", "panel budget");
    add_switch(sc, "--strict", "strict", "reject rational lambda_1/lambda_2 and report eta/eps deviations");
    if (std::string(name) == "integrate") {
      add_text(sc, "--arcs", "arcs", "major, major1, major2, minor, trivial or all");
      sc.app->add_flag_function("--no-oracle", [&sc](std::int64_t) { sc.flags.switches["oracle"] = false; },
                                "skip the smoothed-sum comparison for --arcs all");
    } else {
      add_switch(sc, "--report", "report", "per-arc contributions");
      add_number(sc, "--samples", "samples", "minor-arc classification samples");
    }
  }
  for (const char* name : {"scan", "exponent"}) {
    Subcommand& sc = make(name, std::string(name) == "scan" ? "exceptional set of a well-spaced sequence"
                                                            : "fitted exponent of E(N) over several N");
    add_lambda(sc, "four coefficients, comma separated");
    add_number(sc, "--delta", "delta", "tolerance v^-delta (default 0.1)");
    add_number(sc, "--eta", "eta", "default 0.01");
    add_text(sc, "--sequence", "sequence", "integers or jittered");
    add_number(sc, "--c", "c", "lower gap bound (jittered)");
    add_number(sc, "--C", "C", "upper gap bound (jittered)");
    add_text(sc, "--policy", "policy", "dyadic (default) or fixed");
    add_number(sc, "--X", "X", "search scale for --policy fixed (default N)");
    add_switch(sc, "--strict", "strict", "reject rational lambda_1/lambda_2");
    if (std::string(name) == "scan") {
      add_number(sc, "--N", "N", "sequence bound N");
      add_switch(sc, "--oracle", "oracle", "cross-check every verdict by brute force (N <= 300)");
    } else {
      sc.app
          ->add_option_function<std::vector<std::string>>(
              "--Ns", [&sc](const std::vector<std::string>& v) { sc.flags.lists["Ns"] = v; }, "values of N")
          ->delimiter(',');
    }
  }
  {
    Subcommand& sc = make("convergents", "continued-fraction convergents with exactness certificates");
    add_text(sc, "--x", "x", "real: rat:a/b, surd:(a+b*sqrt(d))/c or dec:digits");
    add_number(sc, "--n", "n", "number of convergents (default 10)");
    add_number(sc, "--omega", "omega", "also report max q_{j+1}^(1-omega)/q_j");
    sc.app->add_flag_function("--no-strict", [&sc](std::int64_t) { sc.flags.switches["strict"] = false; },
                              "accept rational input");
  }
  {
    Subcommand& sc = make("chi", "exponent chi(omega), exact for rational omega");
    add_text(sc, "--omega", "omega", "omega in [0, 1), e.g. 0, 284/303 or 0.95");
  }
  {
    Subcommand& sc = make("ladder", "scales X = q^(7/3) and N = q^(378/(359(1-75 sigma)))");
    add_text(sc, "--q", "q", "convergent denominator q >= 2");
    add_text(sc, "--sigma", "sigma", "sigma in (0, 1/378] (default 1/378)");
    add_text(sc, "--omega", "omega", "use sigma = chi(omega)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string name;
  const Subcommand* chosen = nullptr;
  for (const auto& [n, sc] : subs)
    if (sc.app->parsed()) {
      name = n;
      chosen = &sc;
    }

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "mixpow: cannot read config file " << config_path << "\n";
      return 2;
    }
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      std::cerr << "mixpow: config file " << config_path << ": " << e.what() << "\n";
      return 2;
    }
    if (!config.is_object()) {
      std::cerr << "mixpow: config file must hold a JSON object\n";
      return 2;
    }
  }
  config = merge(std::move(config), chosen->flags);

  char* document = nullptr;
  const mixpow_status status = mixpow_run(name.c_str(), config.dump().c_str(), &document);
  if (document) {
    if (output_path.empty()) {
      std::fputs(document, stdout);
    } else {
      std::ofstream out(output_path);
      out << document;
      if (!out) {
        std::cerr << "mixpow: cannot write " << output_path << "\n";
        mixpow_string_free(document);
        return 1;
      }
    }
    mixpow_string_free(document);
  }
  if (status != MIXPOW_OK) std::cerr << "mixpow: " << mixpow_last_error() << "\n";
  return mixpow_exit_code(status);
}
