/* C interface to the permclust library. Every handle is opaque and owned by
 * the caller once returned; release it with the matching *_free. Strings
 * returned as char* are heap copies released with pc_string_free. Functions
 * returning pc_status leave a message in pc_last_error() on failure. */
#ifndef PERMCLUST_H
#define PERMCLUST_H

#include <stddef.h>
#include <stdint.h>

#if defined(PERMCLUST_BUILDING)
#define PC_API __attribute__((visibility("default")))
#else
#define PC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_PARSE = 1,
  PC_ERR_DOMAIN = 2,
  PC_ERR_APPLICABILITY = 3,
  PC_ERR_UNDEFINED = 4, /* probability on an empty class */
  PC_ERR_IO = 5,
  PC_ERR_ARGUMENT = 6, /* null handle or pointer */
  PC_ERR_INTERNAL = 7
} pc_status;

typedef enum pc_limit_mode { PC_LIMIT_FIXED_K = 0, PC_LIMIT_FIXED_RIGHT_OFFSET = 1, PC_LIMIT_INTERIOR = 2 } pc_limit_mode;

typedef enum pc_value_kind { PC_VALUE_INTEGER = 0, PC_VALUE_RATIONAL = 1, PC_VALUE_QUADRATIC = 2 } pc_value_kind;

typedef struct pc_perm pc_perm;
typedef struct pc_patterns pc_patterns;
typedef struct pc_context pc_context;
typedef struct pc_value pc_value;
typedef struct pc_report pc_report;

typedef struct pc_conditions {
  int c1, c2, c3;
  int tight12, tight21;
  int cluster_free;
} pc_conditions;

/* Thread-local message for the most recent failure on this thread. */
PC_API const char* pc_last_error(void);
PC_API const char* pc_version(void);
PC_API const char* pc_status_name(pc_status status);
PC_API void pc_string_free(char* s);

/* Permutations. Positions and values are 1-based. */
PC_API pc_status pc_perm_parse(const char* text, pc_perm** out);
PC_API pc_status pc_perm_from_values(const uint32_t* values, size_t n, pc_perm** out);
PC_API pc_perm* pc_perm_clone(const pc_perm* p);
PC_API void pc_perm_free(pc_perm* p);
PC_API size_t pc_perm_size(const pc_perm* p);
/* Valid until the handle is freed. */
PC_API const uint32_t* pc_perm_values(const pc_perm* p);
PC_API char* pc_perm_format(const pc_perm* p);
PC_API int pc_perm_equal(const pc_perm* x, const pc_perm* y);
PC_API pc_status pc_perm_reverse(const pc_perm* p, pc_perm** out);
PC_API pc_status pc_perm_complement(const pc_perm* p, pc_perm** out);

PC_API int pc_contains(const pc_perm* sigma, const pc_perm* tau);
PC_API int pc_tight_contains(const pc_perm* tau, const pc_perm* nu);
PC_API int pc_is_cluster_free(const pc_perm* tau);
PC_API int pc_is_separable(const pc_perm* sigma);
/* a = 0 means "any anchor". */
PC_API pc_status pc_in_cluster_event(const pc_perm* sigma, size_t l, size_t k, size_t a, int* out);
PC_API pc_status pc_in_any_cluster_event(const pc_perm* sigma, size_t l, int* out);
PC_API pc_status pc_check_conditions(const pc_perm* tau, pc_conditions* out);

/* Cluster contraction and expansion. */
PC_API pc_status pc_contract(const pc_perm* sigma, size_t l, size_t k, size_t a, pc_perm** out);
PC_API pc_status pc_expand(const pc_perm* eta, const pc_perm* rho, size_t l, size_t k, size_t a, pc_perm** out);
/* Order-isomorphic permutation of n distinct positive values. */
PC_API pc_status pc_flatten(const uint32_t* values, size_t n, pc_perm** out);
/* Writes nu relabelled onto the strictly increasing ground set (length |nu|). */
PC_API pc_status pc_inflate(const pc_perm* nu, const uint32_t* ground, size_t n, uint32_t* out);

/* Pattern sets: "" (none), "321", "2413+3142", "sep". */
PC_API pc_status pc_patterns_parse(const char* spec, pc_patterns** out);
PC_API void pc_patterns_free(pc_patterns* ps);
PC_API size_t pc_patterns_size(const pc_patterns* ps);
PC_API char* pc_patterns_key(const pc_patterns* ps);
PC_API int pc_avoids(const pc_perm* sigma, const pc_patterns* ps);

/* Counting context: memo, event tables and an optional count cache file
 * (cache_path NULL disables it). Safe to share between threads. */
PC_API pc_status pc_context_create(const char* cache_path, unsigned jobs, pc_context** out);
PC_API void pc_context_free(pc_context* ctx);
PC_API size_t pc_context_cache_ignored(const pc_context* ctx);
PC_API size_t pc_context_cache_repairs(const pc_context* ctx);

/* Exact numbers. */
PC_API void pc_value_free(pc_value* v);
PC_API pc_value_kind pc_value_get_kind(const pc_value* v);
/* Integer, "p/q" or "a+b*sqrt2". */
PC_API char* pc_value_exact(const pc_value* v);
/* A symbolic form when one was attached (e.g. "6*(3-2*sqrt2)^2"), else the exact form. */
PC_API char* pc_value_symbolic(const pc_value* v);
PC_API char* pc_value_decimal(const pc_value* v, int digits);
/* Sign of x - y, exact. */
PC_API int pc_value_compare(const pc_value* x, const pc_value* y);
/* |x - y|, exact. */
PC_API pc_status pc_value_abs_difference(const pc_value* x, const pc_value* y, pc_value** out);

PC_API pc_status pc_count_avoiders(pc_context* ctx, size_t n, const pc_patterns* ps, pc_value** out);
PC_API pc_status pc_count_event(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, size_t k, size_t a,
                                pc_value** out);
PC_API pc_status pc_count_union_event(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, pc_value** out);
PC_API pc_status pc_probability(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, size_t k, size_t a,
                                pc_value** out);
PC_API pc_status pc_union_probability(pc_context* ctx, size_t n, const pc_patterns* ps, size_t l, pc_value** out);
/* |S_{n+1}(ps)| / |S_n(ps)|. */
PC_API pc_status pc_growth_ratio(pc_context* ctx, const pc_patterns* ps, size_t n, pc_value** out);

/* Calls visit for each avoider in lexicographic order; a nonzero return stops. */
typedef int (*pc_visit_fn)(const uint32_t* values, size_t n, void* user);
PC_API pc_status pc_enumerate(size_t n, const pc_patterns* ps, pc_visit_fn visit, void* user);

/* Closed forms. */
PC_API pc_status pc_catalan(size_t n, pc_value** out);
PC_API pc_status pc_sep_count(pc_context* ctx, size_t n, pc_value** out);
PC_API pc_status pc_uniform_probability(size_t n, size_t l, size_t k, pc_value** out);
PC_API pc_status pc_catalan_class_probability(size_t n, size_t l, size_t k, pc_value** out);
PC_API pc_status pc_separable_probability(pc_context* ctx, size_t n, size_t l, pc_value** out);
PC_API pc_status pc_cluster_free_probability(pc_context* ctx, const pc_patterns* ps, size_t n, size_t l,
                                             pc_value** out);
/* Name of the formula covering ps ("uniform", "thm3", "thm2", "thm1(ii)"), or
 * NULL in *name when none applies. */
PC_API pc_status pc_closed_form(pc_context* ctx, const pc_patterns* ps, size_t n, size_t l, size_t k, char** name,
                                pc_value** out);

/* Single-pattern bounds; *lower is NULL when no lower bound applies. */
PC_API pc_status pc_bounds(pc_context* ctx, const pc_perm* tau, size_t n, size_t l, pc_value** lower,
                           pc_value** upper, unsigned* lower_factor, char** applicability);
/* Growth constant of a class; *out is NULL when unknown. */
PC_API pc_status pc_growth_constant(const pc_patterns* ps, pc_value** out, char** provenance);
/* n -> infinity limits of the bounds. growth may be NULL (use the known
 * constant) or an exact value such as "8" or "3+2*sqrt2". Outputs are NULL
 * when the matching clause does not apply or the constant is unknown. */
PC_API pc_status pc_avoider_limits(pc_context* ctx, const pc_perm* tau, size_t l, const char* growth,
                                   pc_value** upper, pc_value** lower, pc_value** exact, pc_value** growth_used,
                                   pc_conditions* conditions, char** applicability);
PC_API pc_status pc_catalan_class_limit(size_t l, pc_limit_mode mode, size_t offset, pc_value** out);
/* The k used at finite n for a regime. */
PC_API pc_status pc_limit_k_at(pc_limit_mode mode, size_t offset, size_t n, size_t l, size_t* k);
PC_API pc_status pc_separable_limit(pc_context* ctx, size_t l, pc_value** out);
PC_API pc_status pc_union_asymptotic_ratio(pc_context* ctx, size_t n, size_t l, pc_value** out);

/* Check reports: verification suites and cache audits. Strings returned by
 * pc_report_field stay valid until the report is freed. */
typedef enum pc_report_field_id {
  PC_FIELD_SUITE = 0, /* method name for cache audits */
  PC_FIELD_INSTANCE = 1,
  PC_FIELD_EXPECTED = 2,
  PC_FIELD_ACTUAL = 3
} pc_report_field_id;

/* NULL past the end; the last name is "all". */
PC_API const char* pc_verify_suite_name(size_t i);
PC_API pc_status pc_verify(pc_context* ctx, const char* suite, size_t max_n, pc_report** out);
/* audit_cache: recompute every cache entry and repair mismatches. */
PC_API pc_status pc_cache_audit(pc_context* ctx, pc_report** out);
PC_API void pc_report_free(pc_report* r);
PC_API size_t pc_report_size(const pc_report* r);
PC_API int pc_report_passed(const pc_report* r);
PC_API const char* pc_report_field(const pc_report* r, size_t i, pc_report_field_id field);
PC_API int pc_report_pass(const pc_report* r, size_t i);

#ifdef __cplusplus
}
#endif

#endif
