#ifndef SINGMOD_SINGMOD_H
#define SINGMOD_SINGMOD_H

/*
 * C interface to the singular-moduli library.
 *
 * All objects are opaque handles. Every function returns an sm_status; on
 * failure a human-readable message is available from sm_context_last_error
 * until the next call on the same context. Strings handed out through char**
 * parameters are owned by the caller and released with sm_string_free.
 *
 * A context is not safe for concurrent use from several threads; separate
 * contexts are independent. Computations may use worker threads internally
 * (see sm_context_set_threads).
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SINGMOD_API __declspec(dllexport)
#else
#define SINGMOD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sm_status {
    SM_OK = 0,
    SM_E_ARGUMENT = 1,  /* null pointer or malformed option */
    SM_E_DOMAIN = 2,    /* mathematically invalid input (bad discriminant, k, point) */
    SM_E_SINGULAR = 3,  /* evaluation on a singular locus */
    SM_E_PRECISION = 4, /* precision or truncation budget exhausted */
    SM_E_IO = 5,        /* cache directory problems */
    SM_E_INTERNAL = 6
} sm_status;

/* Outcome of a norm report or sweep; equals the CLI exit code. */
typedef enum sm_outcome {
    SM_OUTCOME_PASS = 0,              /* all assertions hold, or the value is legally zero */
    SM_OUTCOME_ASSERTION_FAILURE = 1, /* a counterexample */
    SM_OUTCOME_COMPUTATIONAL_FAILURE = 2
} sm_outcome;

typedef struct sm_context sm_context;
typedef struct sm_report sm_report;

SINGMOD_API const char * sm_status_string(sm_status status);
SINGMOD_API const char * sm_version(void);

SINGMOD_API sm_status sm_context_create(sm_context ** out);
SINGMOD_API void sm_context_destroy(sm_context * ctx);
SINGMOD_API const char * sm_context_last_error(const sm_context * ctx);

/* Base working precision in bits (>= 64; default 256). */
SINGMOD_API sm_status sm_context_set_precision_bits(sm_context * ctx, long bits);
/* Integer recognition tolerance in (0, 0.5) (default 1e-9). */
SINGMOD_API sm_status sm_context_set_tolerance(sm_context * ctx, double tolerance);
/* 0 selects all cores. */
SINGMOD_API sm_status sm_context_set_threads(sm_context * ctx, unsigned threads);
/* Absolute truncation budget of each Green's function lattice sum (default 1e-6). */
SINGMOD_API sm_status sm_context_set_tail_budget(sm_context * ctx, double budget);
/* Directory for class polynomial and j-coefficient caches; NULL disables. */
SINGMOD_API sm_status sm_context_set_cache_dir(sm_context * ctx, const char * dir);

SINGMOD_API void sm_string_free(char * s);

/* Class polynomial H_d as JSON. */
SINGMOD_API sm_status sm_classpoly_json(sm_context * ctx, int64_t d, char ** json_out);
/* Reduced forms of discriminant d with their CM points and j-values. */
SINGMOD_API sm_status sm_cm_points_json(sm_context * ctx, int64_t d, char ** json_out);

/*
 * Points are strings: "a,b,c" (CM point of a form), a negative discriminant
 * (principal CM point) or a complex number "x+yi" with y > 0.
 */
SINGMOD_API sm_status sm_modpoly_eval_json(sm_context * ctx, int64_t m, const char * z1, const char * z2,
                                           char ** json_out);
/* G_k^m(z1, z2) for k in {1, 3, 5, 7}, with per-coset parts. */
SINGMOD_API sm_status sm_greens_points_json(sm_context * ctx, int k, int64_t m, const char * z1, const char * z2,
                                            char ** json_out);
/* G_k^m summed over the CM cycle of (d1, d2), with per-pair parts. */
SINGMOD_API sm_status sm_greens_cycle_json(sm_context * ctx, int k, int64_t m, int64_t d1, int64_t d2,
                                           char ** json_out);

typedef struct sm_norm_options {
    int chain;               /* check 2 log N >= m_k (-G_k^m) for k = 3, 5, 7 */
    int factor;              /* factor N and report the smallest prime */
    const double * epsilons; /* proximity bounds to check, may be NULL */
    size_t epsilon_count;
    double rho_seconds;      /* Pollard rho budget per composite */
} sm_norm_options;

SINGMOD_API void sm_norm_options_init(sm_norm_options * opts);

SINGMOD_API sm_status sm_norm(sm_context * ctx, int64_t d1, int64_t d2, int64_t m, const sm_norm_options * opts,
                              sm_report ** out);

typedef struct sm_sweep_options {
    int64_t dmin, dmax;      /* range of |d| for both coordinates */
    int64_t mmin, mmax;
    int coprime_fundamental; /* only fundamental, coprime pairs */
    int include_diagnostics; /* also run non-coprime pairs from different fields */
    sm_norm_options verify;
} sm_sweep_options;

SINGMOD_API void sm_sweep_options_init(sm_sweep_options * opts);
SINGMOD_API sm_status sm_sweep(sm_context * ctx, const sm_sweep_options * opts, sm_report ** out);

SINGMOD_API size_t sm_report_count(const sm_report * report);
SINGMOD_API sm_outcome sm_report_outcome(const sm_report * report);
/* A single report is a JSON object, a sweep a JSON array. */
SINGMOD_API sm_status sm_report_json(const sm_report * report, int include_timings, char ** json_out);
SINGMOD_API sm_status sm_report_summary_json(const sm_report * report, char ** json_out);
SINGMOD_API void sm_report_destroy(sm_report * report);

#ifdef __cplusplus
}
#endif

#endif
