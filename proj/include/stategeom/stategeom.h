/*
 * C interface to the stategeom library.
 *
 * Every object is an opaque handle created and destroyed through this
 * header. Functions return an sg_status; on failure the context keeps a
 * human-readable message retrievable with sg_context_last_error(). Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with sg_string_free().
 *
 * Handles are immutable after creation except for the context's tolerance
 * scale and error slot; use one context per thread.
 */
#ifndef STATEGEOM_H
#define STATEGEOM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SG_API __declspec(dllexport)
#else
#define SG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_NOT_HERMITIAN,
  SG_ERR_NOT_PSD,
  SG_ERR_ZERO_FUNCTIONAL,
  SG_ERR_TRACE,
  SG_ERR_NOT_UNITARY,
  SG_ERR_ZERO_WEIGHT,
  SG_ERR_RANK_MISMATCH,
  SG_ERR_NOT_TRACIAL,
  SG_ERR_DOMAIN,
  SG_ERR_PARSE,
  SG_ERR_CONFIG,
  SG_ERR_SINGULAR,
  SG_ERR_NUMERICALLY_SINGULAR,
  SG_ERR_INVALID_ARGUMENT,
  SG_ERR_INTERNAL
} sg_status;

typedef enum sg_action { SG_ACTION_ALPHA = 0, SG_ACTION_PHI = 1 } sg_action;

typedef enum sg_kind { SG_KIND_OPERATOR = 0, SG_KIND_STATE = 1, SG_KIND_POSITIVE = 2 } sg_kind;

typedef enum sg_format { SG_FORMAT_JSON = 0, SG_FORMAT_CSV = 1 } sg_format;

typedef struct sg_context sg_context;
typedef struct sg_matrix sg_matrix;

/* Error taxonomy name, e.g. "NotPSD". Static storage. */
SG_API const char* sg_status_name(sg_status status);
/* Nonzero for conditioning failures (Singular, NumericallySingular). */
SG_API int sg_status_is_numerical(sg_status status);

SG_API sg_status sg_context_create(sg_context** out);
SG_API void sg_context_destroy(sg_context* ctx);
/* Uniform multiplier on every library tolerance; must be positive. */
SG_API sg_status sg_context_set_tolerance_scale(sg_context* ctx, double scale);
SG_API double sg_context_tolerance_scale(const sg_context* ctx);
/* Message of the last failure on this context, "" if none. */
SG_API const char* sg_context_last_error(const sg_context* ctx);

SG_API void sg_string_free(char* s);

/* Matrices. `interleaved` holds n*n (re, im) pairs in row-major order. */
SG_API sg_status sg_matrix_create(sg_context* ctx, size_t n, const double* interleaved,
                                  sg_kind kind, sg_matrix** out);
/* Parses the MatrixFile JSON format. A missing "kind" reads as operator. */
SG_API sg_status sg_matrix_from_json(sg_context* ctx, const char* json, sg_matrix** out);
/* Canonical MatrixFile JSON. */
SG_API sg_status sg_matrix_to_json(sg_context* ctx, const sg_matrix* m, char** out);
SG_API size_t sg_matrix_dim(const sg_matrix* m);
SG_API sg_kind sg_matrix_kind(const sg_matrix* m);
/* Copies 2*n*n doubles into `out`; `len` is its capacity in doubles. */
SG_API sg_status sg_matrix_entries(const sg_matrix* m, double* out, size_t len);
SG_API void sg_matrix_destroy(sg_matrix* m);

/* Validates `m` as the given kind and returns a JSON report (rank, trace,
 * minimum eigenvalue, orbit class). */
SG_API sg_status sg_validate(sg_context* ctx, const sg_matrix* m, sg_kind kind, char** report);

/* alpha: g x g^dagger for Hermitian x; phi: normalized action on a state. */
SG_API sg_status sg_act(sg_context* ctx, sg_action action, const sg_matrix* g, const sg_matrix* x,
                        sg_matrix** out);

/* Connecting element certificate as JSON (C, norm bound, g, residual). */
SG_API sg_status sg_connect(sg_context* ctx, sg_action action, const sg_matrix* m0,
                            const sg_matrix* m1, char** certificate);

SG_API sg_status sg_isotropy(sg_context* ctx, sg_action action, const sg_matrix* m, char** report);

/* Tangent vector of `generator` at `base`; `value` receives the Hermitian
 * tangent matrix, `report` a JSON summary including the finite-difference
 * error (phi only). `h` <= 0 selects the default step 1e-5. */
SG_API sg_status sg_tangent(sg_context* ctx, sg_action action, const sg_matrix* base,
                            const sg_matrix* generator, double h, sg_matrix** value, char** report);

/* Trajectory phi(exp(t a), rho0) on a uniform grid with `steps` intervals. */
SG_API sg_status sg_flow(sg_context* ctx, const sg_matrix* state, const sg_matrix* generator,
                         double t0, double t1, size_t steps, sg_format format, char** out);

/* GNS triple as JSON. When `verify` is nonzero the product law is sampled
 * with the given seed and a "verification" block is added. */
SG_API sg_status sg_gns(sg_context* ctx, const sg_matrix* state, int verify, uint64_t seed,
                        char** json);

/* Truncation sweep from a JSON configuration. */
SG_API sg_status sg_truncate(sg_context* ctx, const char* config_json, sg_format format,
                             char** out);

SG_API sg_status sg_recombine(sg_context* ctx, const sg_matrix* tau, const sg_matrix* g1,
                              const sg_matrix* g2, double lambda, char** json);

/* Seeded random matrix: kind "state" (rank `rank`), "invertible", "unitary"
 * or "hermitian". */
SG_API sg_status sg_sample(sg_context* ctx, const char* kind, size_t n, size_t rank, uint64_t seed,
                           sg_matrix** out);

#ifdef __cplusplus
}
#endif

#endif /* STATEGEOM_H */
