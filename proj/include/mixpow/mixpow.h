#ifndef MIXPOW_H
#define MIXPOW_H

/* C interface to the mixpow library. Every function returns a status code;
   on failure mixpow_last_error() describes the problem (per thread). Handles
   are opaque. An instance keeps a pointer to its table, so the table must
   outlive every instance created from it. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MIXPOW_BUILDING)
#    define MIXPOW_API __declspec(dllexport)
#  else
#    define MIXPOW_API __declspec(dllimport)
#  endif
#else
#  define MIXPOW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixpow_status {
  MIXPOW_OK = 0,
  MIXPOW_INVALID_ARGUMENT = 20,
  MIXPOW_EMPTY_INTERVAL = 21,
  MIXPOW_DEGENERATE_ARCS = 22,
  MIXPOW_TABLE_TOO_SMALL = 30,
  MIXPOW_INSTANCE_TOO_LARGE = 31,
  MIXPOW_RESOLUTION = 32,
  MIXPOW_CONSISTENCY = 40,
  MIXPOW_INTERNAL = 50
} mixpow_status;

typedef struct mixpow_table mixpow_table;
typedef struct mixpow_instance mixpow_instance;

typedef struct mixpow_quadrature {
  double value;
  double imag_residual;
  double tail_bound;
  double error;
  uint64_t panels;
  int bound_only;
} mixpow_quadrature;

typedef struct mixpow_solution {
  int found;     /* |residual| < tolerance */
  int has_best;  /* some prime quadruple exists */
  uint32_t p1, p2, p3, p4;  /* the closest quadruple when has_best */
  double residual;
  double tolerance;
  int borderline;
} mixpow_solution;

MIXPOW_API const char* mixpow_version(void);
MIXPOW_API const char* mixpow_last_error(void);
/* 0 for OK, 2 validation, 3 resource ceiling, 4 consistency, 1 otherwise. */
MIXPOW_API int mixpow_exit_code(mixpow_status status);

MIXPOW_API mixpow_status mixpow_table_create(uint64_t limit, mixpow_table** out);
MIXPOW_API void mixpow_table_destroy(mixpow_table* table);
MIXPOW_API mixpow_status mixpow_table_limit(const mixpow_table* table, uint64_t* out);
MIXPOW_API mixpow_status mixpow_table_prime_count(const mixpow_table* table, uint64_t* out);
MIXPOW_API mixpow_status mixpow_theta(const mixpow_table* table, double x, double* out);

/* S_k(lambda alpha) over I_k(X, eta). */
MIXPOW_API mixpow_status mixpow_expsum(const mixpow_table* table, int k, double lambda, double alpha, double X,
                                       double eta, double* re, double* im);
MIXPOW_API mixpow_status mixpow_kernel(double alpha, double tau, double* out);
MIXPOW_API mixpow_status mixpow_window(double x, double tau, double halfwidth, uint64_t budget, double* value,
                                       double* error_bound);

/* tau = X^(-delta). */
MIXPOW_API mixpow_status mixpow_instance_create(const mixpow_table* table, const double lambda[4], double X,
                                                double v, double delta, double eta, double eps,
                                                mixpow_instance** out);
MIXPOW_API void mixpow_instance_destroy(mixpow_instance* instance);

/* arcs: "major1", "major2", "major", "minor", "trivial" or "all". */
MIXPOW_API mixpow_status mixpow_integrate(const mixpow_instance* instance, const char* arcs, uint64_t budget,
                                          unsigned threads, mixpow_quadrature* out);
MIXPOW_API mixpow_status mixpow_smoothed_sum(const mixpow_instance* instance, unsigned threads, double* out);
MIXPOW_API mixpow_status mixpow_count(const mixpow_instance* instance, unsigned threads, uint64_t* count,
                                      uint64_t* borderline);
MIXPOW_API mixpow_status mixpow_brute_force_count(const mixpow_instance* instance, uint64_t* out);
/* Exhaustive search with tolerance v^(-delta). */
MIXPOW_API mixpow_status mixpow_find_solution(const mixpow_table* table, const double lambda[4], double X, double v,
                                              double delta, double eta, mixpow_solution* out);

/* Runs a command over a JSON configuration and returns the output document in
   *out (free it with mixpow_string_free). On MIXPOW_CONSISTENCY *out still
   holds the document. Commands: expsum, integrate, arcs, scan, exponent,
   convergents, chi, ladder. */
MIXPOW_API mixpow_status mixpow_run(const char* command, const char* config_json, char** out);
MIXPOW_API void mixpow_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
