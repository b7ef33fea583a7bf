/* C interface to the covercert library.
 *
 * Every fallible call returns a covercert_status. On failure the message is
 * available from covercert_last_error() until the next call on the same
 * thread. Strings returned through char** out-parameters are owned by the
 * caller and released with covercert_string_free().
 */
#ifndef COVERCERT_COVERCERT_H_
#define COVERCERT_COVERCERT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COVERCERT_API __declspec(dllexport)
#else
#define COVERCERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum covercert_status {
  COVERCERT_OK = 0,
  COVERCERT_ERR_PARSE = 1,
  COVERCERT_ERR_RESOURCE = 2,
  COVERCERT_ERR_DOMAIN = 3,
  COVERCERT_ERR_INVALID_ARGUMENT = 4,
  COVERCERT_ERR_INTERNAL = 5
} covercert_status;

typedef enum covercert_method {
  COVERCERT_METHOD_AUTO = 0,
  COVERCERT_METHOD_ORACLE = 1,  /* enumerate Z/QZ */
  COVERCERT_METHOD_INTERVAL = 2 /* enumerate {1, ..., 2^n} */
} covercert_method;

typedef enum covercert_format {
  COVERCERT_FORMAT_TEXT = 0,
  COVERCERT_FORMAT_JSON = 1
} covercert_format;

typedef struct covercert_limits {
  uint64_t max_residue_space;
  uint64_t max_interval;
  uint64_t max_divisors;
} covercert_limits;

typedef struct covercert_coverage {
  int covers;
  covercert_method method; /* the method actually used */
  int has_witness;         /* oracle only */
  uint64_t witness;
  int has_count; /* oracle only */
  uint64_t uncovered_count;
} covercert_coverage;

typedef struct covercert_system covercert_system;
typedef struct covercert_certificate covercert_certificate;

COVERCERT_API void covercert_default_limits(covercert_limits* out);
COVERCERT_API const char* covercert_last_error(void);
COVERCERT_API const char* covercert_status_name(covercert_status status);
COVERCERT_API void covercert_string_free(char* s);

/* Systems. Text ("R mod D" lines) or JSON ({"classes":[...]}) input. */
COVERCERT_API covercert_status covercert_system_parse(const char* text, covercert_system** out);
COVERCERT_API covercert_status covercert_system_from_classes(const int64_t* residues,
                                                             const int64_t* moduli, size_t count,
                                                             covercert_system** out);
COVERCERT_API void covercert_system_free(covercert_system* sys);
COVERCERT_API size_t covercert_system_size(const covercert_system* sys);
COVERCERT_API covercert_status covercert_system_class(const covercert_system* sys, size_t index,
                                                      uint64_t* residue, uint64_t* modulus);
/* lcm of the moduli, in decimal. */
COVERCERT_API covercert_status covercert_system_lcm(const covercert_system* sys, char** out);
/* sorted != 0 orders classes by (modulus, residue). */
COVERCERT_API covercert_status covercert_system_emit(const covercert_system* sys, int sorted,
                                                     covercert_format format, char** out);

/* Coverage. limits may be NULL for defaults. */
COVERCERT_API covercert_status covercert_verify(const covercert_system* sys,
                                                const covercert_limits* limits,
                                                covercert_method method, covercert_coverage* out);
COVERCERT_API covercert_status covercert_minimal(const covercert_system* sys,
                                                 const covercert_limits* limits, int* is_minimal,
                                                 size_t** redundant, size_t* redundant_count);
COVERCERT_API void covercert_indices_free(size_t* indices);
COVERCERT_API covercert_status covercert_multiplicity(const covercert_system* sys,
                                                      uint64_t* multiset, uint64_t* distinct);
/* Uncovered density as "num/den". */
COVERCERT_API covercert_status covercert_density(const covercert_system* sys,
                                                 const covercert_limits* limits, char** out);

/* Constructions. */
COVERCERT_API covercert_status covercert_construct_minimal_family(unsigned j,
                                                                  covercert_system** out);
COVERCERT_API covercert_status covercert_shift_expand(const covercert_system* sys, unsigned ell,
                                                      const covercert_limits* limits,
                                                      covercert_system** out);

/* Certificates. deltas is a comma-separated list of rationals ("0,1/2"), one
 * per prime of Q. When deltas is NULL the two-valued schedule with threshold
 * C s^3 is used, C parsed from schedule_c ("1" when NULL). */
COVERCERT_API covercert_status covercert_certify(const covercert_system* sys, const char* deltas,
                                                 const char* schedule_c,
                                                 const covercert_limits* limits,
                                                 covercert_certificate** out);
COVERCERT_API void covercert_certificate_free(covercert_certificate* cert);
COVERCERT_API int covercert_certificate_not_covering(const covercert_certificate* cert);
COVERCERT_API covercert_status covercert_certificate_eta(const covercert_certificate* cert,
                                                         char** out);
/* Returns 1 and stores the witness when one is attached, 0 otherwise. */
COVERCERT_API int covercert_certificate_witness(const covercert_certificate* cert, uint64_t* out);
COVERCERT_API covercert_status covercert_certificate_render(const covercert_certificate* cert,
                                                            covercert_format format, char** out);

/* Analytic quantities. c is a decimal string; output has `digits`
 * significant digits. */
COVERCERT_API covercert_status covercert_jth_modulus_bound(uint64_t j, const char* c,
                                                           unsigned digits, char** out);
COVERCERT_API covercert_status covercert_min_modulus_bound(uint64_t s, const char* c,
                                                           unsigned digits, char** out);
/* Exact sum of 1/d over threshold < d <= cap, d y-smooth, as "num/den". */
COVERCERT_API covercert_status covercert_smooth_sum(uint64_t y, uint64_t threshold, uint64_t cap,
                                                    const covercert_limits* limits, char** out);

#ifdef __cplusplus
}
#endif

#endif /* COVERCERT_COVERCERT_H_ */
