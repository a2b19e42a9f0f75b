#ifndef FURSTENBERG_H
#define FURSTENBERG_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported call.
 */
typedef enum FstStatus {
  FST_STATUS_OK = 0,
  FST_STATUS_NULL_POINTER = 1,
  FST_STATUS_INVALID_UTF8 = 2,
  FST_STATUS_PARSE = 3,
  FST_STATUS_INVALID_ARGUMENT = 4,
  FST_STATUS_INVALID_MODULUS = 5,
  FST_STATUS_EQUAL_POINTS = 6,
  FST_STATUS_NOT_PRIME = 7,
  FST_STATUS_NOT_DISJOINT = 8,
  FST_STATUS_EMPTY_INPUT = 9,
  FST_STATUS_CAP_EXCEEDED = 10,
  FST_STATUS_MODULUS_BLOWUP = 11,
  FST_STATUS_PANIC = 12,
} FstStatus;

/**
 * Opaque separation certificate.
 */
typedef struct FstCertificate FstCertificate;

/**
 * Opaque residue class `r mod m`.
 */
typedef struct FstClass FstClass;

/**
 * Opaque finite union of residue classes, kept canonical.
 */
typedef struct FstUnion FstUnion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next failing call on the same thread.
 */
const char *fst_last_error(void);

/**
 * Releases a string returned through an `out` parameter. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void fst_string_free(char *s);

/**
 * Writes ‖n‖ as `"0"`, `"1"` or `"1/K"`.
 *
 * # Safety
 * `n` must be a valid C string and `out` writable.
 */
enum FstStatus fst_norm(const char *n, char **out);

/**
 * Writes d(m, n) in the same format as [`fst_norm`].
 *
 * # Safety
 * `m` and `n` must be valid C strings and `out` writable.
 */
enum FstStatus fst_dist(const char *m, const char *n, char **out);

/**
 * Writes the Ferry norm of `n` as `"num/2^exp"`, or `"0"`. A `cap` of 0
 * selects the default.
 *
 * # Safety
 * `n` must be a valid C string and `out` writable.
 */
enum FstStatus fst_ferry_norm(const char *n, uint64_t cap, char **out);

/**
 * Creates the class `residue mod modulus`.
 *
 * # Safety
 * Both strings must be valid and `out` writable.
 */
enum FstStatus fst_class_new(const char *residue, const char *modulus, struct FstClass **out);

/**
 * Writes the class as `"r mod m"`.
 *
 * # Safety
 * `class` must be a live handle and `out` writable.
 */
enum FstStatus fst_class_to_string(const struct FstClass *class_, char **out);

/**
 * # Safety
 * `class` must be a live handle, `n` a valid C string and `out` writable.
 */
enum FstStatus fst_class_contains(const struct FstClass *class_, const char *n, bool *out);

/**
 * Intersects two classes. An empty intersection writes null and returns OK.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum FstStatus fst_class_intersect(const struct FstClass *x,
                                   const struct FstClass *y,
                                   struct FstClass **out);

/**
 * # Safety
 * `class` must come from this library and not have been freed. Null is ignored.
 */
void fst_class_free(struct FstClass *class_);

/**
 * Parses a union from `{"classes": [{"residue", "modulus"}, ...]}`.
 * The result is canonicalized.
 *
 * # Safety
 * `json` must be a valid C string and `out` writable.
 */
enum FstStatus fst_union_from_json(const char *json, struct FstUnion **out);

/**
 * Wraps a single class as a union. The class handle stays owned by the caller.
 *
 * # Safety
 * `class` must be a live handle and `out` writable.
 */
enum FstStatus fst_union_from_class(const struct FstClass *class_, struct FstUnion **out);

/**
 * Writes the canonical form as JSON.
 *
 * # Safety
 * `union` must be a live handle and `out` writable.
 */
enum FstStatus fst_union_to_json(const struct FstUnion *union_, char **out);

/**
 * # Safety
 * `union` must be a live handle, `n` a valid C string and `out` writable.
 */
enum FstStatus fst_union_contains(const struct FstUnion *union_, const char *n, bool *out);

/**
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum FstStatus fst_union_union(const struct FstUnion *x,
                               const struct FstUnion *y,
                               struct FstUnion **out);

/**
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum FstStatus fst_union_intersect(const struct FstUnion *x,
                                   const struct FstUnion *y,
                                   struct FstUnion **out);

/**
 * # Safety
 * `union` must be a live handle and `out` writable.
 */
enum FstStatus fst_union_complement(const struct FstUnion *union_, struct FstUnion **out);

/**
 * # Safety
 * `union` must come from this library and not have been freed. Null is ignored.
 */
void fst_union_free(struct FstUnion *union_);

/**
 * Separates two disjoint finite prime sets, each a JSON array of integers
 * or decimal strings, with the lcm-tower construction.
 *
 * # Safety
 * Both strings must be valid and `out` writable.
 */
enum FstStatus fst_separate(const char *a, const char *b, struct FstCertificate **out);

/**
 * Like [`fst_separate`] but searches for small moduli up to `search_bound`.
 *
 * # Safety
 * Both strings must be valid and `out` writable.
 */
enum FstStatus fst_compact_separate(const char *a,
                                    const char *b,
                                    uint64_t search_bound,
                                    struct FstCertificate **out);

/**
 * # Safety
 * `json` must be a valid C string and `out` writable.
 */
enum FstStatus fst_certificate_from_json(const char *json, struct FstCertificate **out);

/**
 * # Safety
 * `cert` must be a live handle and `out` writable.
 */
enum FstStatus fst_certificate_to_json(const struct FstCertificate *cert, char **out);

/**
 * Checks a certificate over `[-window, window]`. Writes whether it holds to
 * `valid` and, if `verdict` is non-null, the verdict as JSON.
 *
 * # Safety
 * `cert` must be a live handle, `valid` writable, `verdict` null or writable.
 */
enum FstStatus fst_certificate_verify(const struct FstCertificate *cert,
                                      uint64_t window,
                                      bool *valid,
                                      char **verdict);

/**
 * # Safety
 * `cert` must come from this library and not have been freed. Null is ignored.
 */
void fst_certificate_free(struct FstCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FURSTENBERG_H */
