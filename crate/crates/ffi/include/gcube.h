#ifndef GCUBE_H
#define GCUBE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GcubeEnergyKind {
  /**
   * Parallelotope count `P_k`.
   */
  GCUBE_ENERGY_KIND_P = 0,
  /**
   * Equal k-fold sums `E_k`.
   */
  GCUBE_ENERGY_KIND_E = 1,
  /**
   * Equal consecutive differences `Ẽ_k`.
   */
  GCUBE_ENERGY_KIND_E_TILDE = 2,
} GcubeEnergyKind;

typedef enum GcubeStatus {
  GCUBE_STATUS_OK = 0,
  GCUBE_STATUS_NULL_POINTER = 1,
  GCUBE_STATUS_INVALID_ARGUMENT = 2,
  GCUBE_STATUS_PARSE = 3,
  GCUBE_STATUS_NUMERIC = 4,
  GCUBE_STATUS_PANIC = 5,
} GcubeStatus;

/**
 * Opaque finitely supported function on ℤ^d.
 */
typedef struct GcubeFunction GcubeFunction;

/**
 * Opaque subset of a discrete cube.
 */
typedef struct GcubeSet GcubeSet;

/**
 * Solver output for `gcube_solve_exponent`.
 */
typedef struct GcubeExponent {
  uint32_t k;
  uint32_t n;
  double t;
  double p;
  double residual;
  double bracket_width;
} GcubeExponent;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `gcube_*` call on the same thread.
 */
const char *gcube_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gcube_version(void);

/**
 * Parses a function document `{"d": .., "entries": [..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum GcubeStatus gcube_function_from_json(const char *json, struct GcubeFunction **out_handle);

/**
 * Builds the one-dimensional function `j ↦ values[j]` for `0 ≤ j < len`.
 *
 * # Safety
 * `values` must point to `len` doubles and `out_handle` must be valid.
 */
enum GcubeStatus gcube_function_from_real(const double *values,
                                          uintptr_t len,
                                          struct GcubeFunction **out_handle);

/**
 * # Safety
 * `f` must come from a `gcube_function_from_*` call and not be freed twice.
 */
void gcube_function_free(struct GcubeFunction *f);

/**
 * Parses a set document `{"d": .., "n": .., "members": [..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out_handle` a valid pointer.
 */
enum GcubeStatus gcube_set_from_json(const char *json, struct GcubeSet **out_handle);

/**
 * # Safety
 * `s` must come from `gcube_set_from_json` and not be freed twice.
 */
void gcube_set_free(struct GcubeSet *s);

/**
 * Writes `‖f‖_{U^k}^{2^k}` to `value`.
 *
 * # Safety
 * `f` must be a live handle and `value` a valid pointer.
 */
enum GcubeStatus gcube_gowers_norm_pow(const struct GcubeFunction *f, uint32_t k, double *value);

/**
 * Writes the exact energy as a decimal string; release it with
 * `gcube_string_free`.
 *
 * # Safety
 * `s` must be a live handle and `decimal` a valid pointer.
 */
enum GcubeStatus gcube_energy(const struct GcubeSet *s,
                              enum GcubeEnergyKind kind,
                              uint32_t k,
                              char **decimal);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void gcube_string_free(char *s);

/**
 * Solves for `t_{k,n}` with default settings apart from `tolerance` and `seed`.
 *
 * # Safety
 * `result` must be a valid pointer.
 */
enum GcubeStatus gcube_solve_exponent(uint32_t n,
                                      uint32_t k,
                                      double tolerance,
                                      uint64_t seed,
                                      struct GcubeExponent *result);

/**
 * The root `t` of `Φ_t(g) = 1` for a probability vector `g` of length `n`.
 *
 * # Safety
 * `g` must point to `n` doubles and `value` must be valid.
 */
enum GcubeStatus gcube_witness_lower_bound(uint32_t n, uint32_t k, const double *g, double *value);

/**
 * Entropy in bits of `B(m, 1/2)`.
 *
 * # Safety
 * `value` must be a valid pointer.
 */
enum GcubeStatus gcube_binomial_entropy(uint32_t m, double *value);

/**
 * Entropy in bits of `h_1 X_1 + ... + h_m X_m` for fair Bernoulli `X_i`.
 *
 * # Safety
 * `coefficients` must point to `len` integers and `value` must be valid.
 */
enum GcubeStatus gcube_signed_sum_entropy(const int64_t *coefficients,
                                          uintptr_t len,
                                          double *value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCUBE_H */
