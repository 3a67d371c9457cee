#ifndef HEAVENLY_H
#define HEAVENLY_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HvStatus {
  HV_STATUS_OK = 0,
  HV_STATUS_VERIFICATION_FAILED = 1,
  HV_STATUS_INVALID_INPUT = 2,
  HV_STATUS_RESOURCE_CAP = 3,
  HV_STATUS_NULL_ARGUMENT = 4,
  HV_STATUS_PANIC = 5,
} HvStatus;

typedef enum HvVerdictStatus {
  HV_VERDICT_STATUS_HEAVENLY = 0,
  HV_VERDICT_STATUS_NOT_HEAVENLY = 1,
  HV_VERDICT_STATUS_UNKNOWN = 2,
} HvVerdictStatus;

/*
 Irreducible factors of a polynomial over ℚ with multiplicities.
 */
typedef struct HvFactorization HvFactorization;

/*
 A polynomial over ℚ.
 */
typedef struct HvPolynomial HvPolynomial;

/*
 A classification result together with its input document.
 */
typedef struct HvVerdict HvVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after success.
 Owned by the library and valid until the next call on this thread.
 */
const char *hv_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void hv_string_free(char *s);

/*
 Parses text such as `"x^4 - 2*x + 1/3"`.

 # Safety
 `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HvStatus hv_polynomial_parse(const char *text, struct HvPolynomial **out);

/*
 # Safety
 `p` must be null or a live handle from this library.
 */
void hv_polynomial_free(struct HvPolynomial *p);

/*
 Degree of `p`; the zero polynomial reports 0.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_polynomial_degree(const struct HvPolynomial *p, uintptr_t *out);

/*
 # Safety
 `p` must be a live handle; `out` must be writable. Free the result
 with [`hv_string_free`].
 */
enum HvStatus hv_polynomial_to_string(const struct HvPolynomial *p, char **out);

/*
 Factors over ℚ.

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_polynomial_factor(const struct HvPolynomial *p, struct HvFactorization **out);

/*
 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_factorization_count(const struct HvFactorization *f, uintptr_t *out);

/*
 The leading constant as a decimal string `"a"` or `"a/b"`.

 # Safety
 `f` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_factorization_constant(const struct HvFactorization *f, char **out);

/*
 Factor `index` as a new polynomial handle, with its multiplicity.

 # Safety
 `f` must be a live handle; both out pointers must be writable.
 */
enum HvStatus hv_factorization_factor(const struct HvFactorization *f,
                                      uintptr_t index,
                                      struct HvPolynomial **out_factor,
                                      uint32_t *out_multiplicity);

/*
 # Safety
 `f` must be null or a live handle from this library.
 */
void hv_factorization_free(struct HvFactorization *f);

/*
 Degree over `base` (`"Q"`, `"Q(i)"`, `"Q(sqrt2)"`, `"Q(sqrt-2)"`; null
 means ℚ) of the splitting field of `p`.

 # Safety
 `p` must be a live handle, `base` null or a NUL-terminated string, and
 `out` writable.
 */
enum HvStatus hv_splitting_degree(const struct HvPolynomial *p,
                                  const char *base,
                                  uintptr_t degree_cap,
                                  uintptr_t *out);

/*
 Odd primes ramified in `ℚ[x]/(p)` for irreducible `p`, as a
 comma-separated decimal list (empty when none).

 # Safety
 `p` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_odd_ramified_primes(const struct HvPolynomial *p, char **out);

/*
 Classifies a JSON input document. A resource cap still yields a verdict
 (status unknown) and returns [`HvStatus::ResourceCap`].

 # Safety
 `document` must be a NUL-terminated string; `out` must be writable.
 */
enum HvStatus hv_classify_json(const char *document, uintptr_t degree_cap, struct HvVerdict **out);

/*
 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_verdict_status(const struct HvVerdict *v, enum HvVerdictStatus *out);

/*
 Closure degree over ℚ, or 0 when it was not computed.

 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_verdict_closure_degree(const struct HvVerdict *v, uint64_t *out);

/*
 Degree of the 2-torsion field over the base, or 0 when not computed.

 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_verdict_torsion_degree(const struct HvVerdict *v, uint64_t *out);

/*
 The full output document as JSON.

 # Safety
 `v` must be a live handle; `out` must be writable.
 */
enum HvStatus hv_verdict_json(const struct HvVerdict *v, char **out);

/*
 Replays the verdict's certificate; `out_consistent` receives the result.

 # Safety
 `v` must be a live handle; `out_consistent` must be writable.
 */
enum HvStatus hv_verdict_replay(const struct HvVerdict *v, bool *out_consistent);

/*
 # Safety
 `v` must be null or a live handle from this library.
 */
void hv_verdict_free(struct HvVerdict *v);

/*
 Runs one lemma by id, or the whole suite when `lemma` is null.
 Returns [`HvStatus::VerificationFailed`] when any report fails.

 # Safety
 `lemma` must be null or a NUL-terminated string; `out_passed` must be
 null or writable.
 */
enum HvStatus hv_verify(const char *lemma, bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEAVENLY_H */
