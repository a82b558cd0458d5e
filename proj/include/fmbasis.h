#ifndef FMBASIS_H
#define FMBASIS_H

/* C interface to the fmbasis library. Every call returns an fmb_status;
 * on failure fmb_last_error() describes the problem (per thread).
 * Strings returned through char** are owned by the caller and released
 * with fmb_string_free. Reports are UTF-8 JSON with a schema_version. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FMB_API __declspec(dllexport)
#else
#define FMB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fmb_status {
  FMB_OK = 0,
  FMB_ERR_PARSE = 1,
  FMB_ERR_INVALID = 2,
  FMB_ERR_UNSUPPORTED = 3,
  FMB_ERR_MISMATCH = 4,
  FMB_ERR_INTERNAL = 5,
  FMB_ERR_NULL = 6
} fmb_status;

typedef struct fmb_field fmb_field;
typedef struct fmb_group fmb_group;
typedef struct fmb_basis fmb_basis;

typedef enum fmb_strategy { FMB_STRATEGY_STRUCTURED = 0, FMB_STRATEGY_BRUTE_PAIRS = 1 } fmb_strategy;

typedef struct fmb_search_options {
  fmb_strategy strategy;
  unsigned shard_index;
  unsigned shard_count;
  uint64_t budget;
  int64_t time_limit_ms; /* <= 0: none */
  int record_all;
  unsigned jobs;
  size_t max_order;
} fmb_search_options;

FMB_API const char* fmb_version(void);
FMB_API int fmb_schema_version(void);
FMB_API const char* fmb_last_error(void);
FMB_API void fmb_string_free(char* s);

/* "gf(2)", "gf(4)", "gf(2^2)", "gf(2^2;modulus=1,1,1)" */
FMB_API fmb_status fmb_field_parse(const char* literal, fmb_field** out);
FMB_API void fmb_field_free(fmb_field* f);
FMB_API fmb_status fmb_field_json(const fmb_field* f, char** json);

/* "dihedral(n=3)", "quaternion8", "example16", "product(cyclic(2),cyclic(4))", ...
 * max_order 0 selects the default bound. */
FMB_API fmb_status fmb_group_parse(const char* literal, size_t max_order, fmb_group** out);
FMB_API void fmb_group_free(fmb_group* g);
FMB_API size_t fmb_group_order(const fmb_group* g);
FMB_API fmb_status fmb_group_json(const fmb_group* g, char** json);

/* Radical filtration of KG. When element is non-NULL the report also gives
 * its level and leading-quotient coordinates. */
FMB_API fmb_status fmb_filtration_json(const fmb_group* g, const fmb_field* f, const char* element, char** json);

/* name: abelian, dihedral, quaternion8, example16, product, auto.
 * params_json: NULL or an object such as {"mu1": 0, "mu2": [1,0]}. */
FMB_API fmb_status fmb_basis_construct(const fmb_group* g, const fmb_field* f, const char* name,
                                       const char* params_json, fmb_basis** out);
FMB_API fmb_status fmb_basis_from_json(const char* json, fmb_basis** out);
FMB_API fmb_status fmb_basis_to_json(const fmb_basis* b, char** json);
FMB_API size_t fmb_basis_size(const fmb_basis* b);
FMB_API void fmb_basis_free(fmb_basis* b);

FMB_API fmb_status fmb_verify(const fmb_basis* b, int* pass, char** report_json);

FMB_API void fmb_search_options_init(fmb_search_options* opts);
FMB_API fmb_status fmb_search(const fmb_group* g, const fmb_field* f, const fmb_search_options* opts,
                              int* exhausted, size_t* found, char** report_json);

/* Structured search and brute_pairs agree (GF(2), |G| <= 8). */
FMB_API fmb_status fmb_oracle_check(const fmb_group* g, const fmb_field* f, unsigned jobs, int* equal,
                                    char** report_json);

#ifdef __cplusplus
}
#endif

#endif
