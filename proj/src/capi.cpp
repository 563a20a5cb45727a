#include "mixpow/mixpow.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "mixpow/analytic_core.hpp"
#include "mixpow/commands.hpp"
#include "mixpow/dh_integrator.hpp"
#include "mixpow/errors.hpp"
#include "mixpow/instance.hpp"
#include "mixpow/solution_engine.hpp"

struct mixpow_table {
  mixpow::PrimeTable table;
};

struct mixpow_instance {
  mixpow::ProblemInstance inst;
};

namespace {

thread_local std::string last_error;

mixpow_status status_of(mixpow::ErrorKind kind) {
  using mixpow::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return MIXPOW_INVALID_ARGUMENT;
    case ErrorKind::EmptyInterval: return MIXPOW_EMPTY_INTERVAL;
    case ErrorKind::DegenerateArcs: return MIXPOW_DEGENERATE_ARCS;
    case ErrorKind::TableTooSmall: return MIXPOW_TABLE_TOO_SMALL;
    case ErrorKind::InstanceTooLarge: return MIXPOW_INSTANCE_TOO_LARGE;
    case ErrorKind::ResolutionError: return MIXPOW_RESOLUTION;
    case ErrorKind::ConsistencyFailure: return MIXPOW_CONSISTENCY;
  }
  return MIXPOW_INTERNAL;
}

template <class Fn>
mixpow_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return MIXPOW_OK;
  } catch (const mixpow::Error& e) {
    last_error = std::string(mixpow::to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("invalid-argument: ") + e.what();
    return MIXPOW_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "instance-too-large: out of memory";
    return MIXPOW_INSTANCE_TOO_LARGE;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return MIXPOW_INTERNAL;
  } catch (...) {
    last_error = "internal: unknown exception";
    return MIXPOW_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  mixpow::require(p != nullptr, mixpow::ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mixpow::Lambdas lambdas_of(const double lambda[4]) {
  need(lambda, "lambda");
  return {lambda[0], lambda[1], lambda[2], lambda[3]};
}

}  // namespace

extern "C" {

const char* mixpow_version(void) { return MIXPOW_VERSION; }

const char* mixpow_last_error(void) { return last_error.c_str(); }

int mixpow_exit_code(mixpow_status status) {
  if (status == MIXPOW_OK) return 0;
  const int group = static_cast<int>(status) / 10;
  return group >= 2 && group <= 4 ? group : 1;
}

mixpow_status mixpow_table_create(uint64_t limit, mixpow_table** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    *out = new mixpow_table{mixpow::PrimeTable(limit)};
  });
}

void mixpow_table_destroy(mixpow_table* table) { delete table; }

mixpow_status mixpow_table_limit(const mixpow_table* table, uint64_t* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = table->table.limit();
  });
}

mixpow_status mixpow_table_prime_count(const mixpow_table* table, uint64_t* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = table->table.primes().size();
  });
}

mixpow_status mixpow_theta(const mixpow_table* table, double x, double* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = table->table.theta(x);
  });
}

mixpow_status mixpow_expsum(const mixpow_table* table, int k, double lambda, double alpha, double X, double eta,
                            double* re, double* im) {
  return guarded([&] {
    need(table, "table");
    need(re, "re");
    need(im, "im");
    const mixpow::Complex s = mixpow::S(k, lambda, alpha, X, table->table, eta);
    *re = s.real();
    *im = s.imag();
  });
}

mixpow_status mixpow_kernel(double alpha, double tau, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = mixpow::fejer_K(alpha, mixpow::KernelParams(tau));
  });
}

mixpow_status mixpow_window(double x, double tau, double halfwidth, uint64_t budget, double* value,
                            double* error_bound) {
  return guarded([&] {
    need(value, "value");
    need(error_bound, "error_bound");
    const auto w = mixpow::window_A_by_quadrature(x, mixpow::KernelParams(tau), halfwidth, budget);
    *value = w.value;
    *error_bound = w.error_bound();
  });
}

mixpow_status mixpow_instance_create(const mixpow_table* table, const double lambda[4], double X, double v,
                                     double delta, double eta, double eps, mixpow_instance** out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    *out = nullptr;
    mixpow::InstanceOptions options;
    options.eta = eta;
    options.eps = eps;
    *out = new mixpow_instance{mixpow::make_instance(table->table, lambdas_of(lambda), X, v, delta, options)};
  });
}

void mixpow_instance_destroy(mixpow_instance* instance) { delete instance; }

mixpow_status mixpow_integrate(const mixpow_instance* instance, const char* arcs, uint64_t budget, unsigned threads,
                               mixpow_quadrature* out) {
  return guarded([&] {
    need(instance, "instance");
    need(arcs, "arcs");
    need(out, "out");
    const mixpow::DhIntegrator dh(instance->inst);
    const auto q = dh.integrate(mixpow::parse_arc_selector(arcs), budget, threads);
    *out = {q.value, q.imag_residual, q.tail_bound, q.error, q.panels, q.bound_only ? 1 : 0};
  });
}

mixpow_status mixpow_smoothed_sum(const mixpow_instance* instance, unsigned threads, double* out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    *out = mixpow::smoothed_sum(instance->inst, threads);
  });
}

mixpow_status mixpow_count(const mixpow_instance* instance, unsigned threads, uint64_t* count, uint64_t* borderline) {
  return guarded([&] {
    need(instance, "instance");
    need(count, "count");
    const auto r = mixpow::count_solutions_detailed(instance->inst, threads);
    *count = r.count;
    if (borderline) *borderline = r.borderline;
  });
}

mixpow_status mixpow_brute_force_count(const mixpow_instance* instance, uint64_t* out) {
  return guarded([&] {
    need(instance, "instance");
    need(out, "out");
    *out = mixpow::brute_force_count(instance->inst);
  });
}

mixpow_status mixpow_find_solution(const mixpow_table* table, const double lambda[4], double X, double v,
                                   double delta, double eta, mixpow_solution* out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    const auto r = mixpow::find_solution(v, lambdas_of(lambda), X, delta, table->table, eta);
    *out = mixpow_solution{};
    out->tolerance = r.tolerance;
    out->found = r.solution.has_value();
    out->has_best = r.best.has_value();
    out->borderline = r.borderline;
    if (r.best) {
      out->p1 = r.best->p1;
      out->p2 = r.best->p2;
      out->p3 = r.best->p3;
      out->p4 = r.best->p4;
      out->residual = r.best->residual;
    }
  });
}

mixpow_status mixpow_run(const char* command, const char* config_json, char** out) {
  mixpow::CommandOutput result;
  const mixpow_status status = guarded([&] {
    need(command, "command");
    need(out, "out");
    *out = nullptr;
    const auto config = nlohmann::json::parse(config_json ? config_json : "{}");
    result = mixpow::run_command(command, config);
    *out = copy_string(result.text);
  });
  if (status == MIXPOW_OK && !result.consistent) {
    last_error = "consistency-failure: " + result.message;
    return MIXPOW_CONSISTENCY;
  }
  return status;
}

void mixpow_string_free(char* s) { std::free(s); }

}  // extern "C"
