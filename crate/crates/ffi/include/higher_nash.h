#ifndef HIGHER_NASH_H
#define HIGHER_NASH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes.
 */
typedef enum hn_status {
  HN_STATUS_OK = 0,
  HN_STATUS_NULL_POINTER = 1,
  HN_STATUS_INVALID_ARGUMENT = 2,
  HN_STATUS_COST_REFUSED = 3,
  HN_STATUS_BUFFER_TOO_SMALL = 4,
  HN_STATUS_INTERNAL = 5,
  HN_STATUS_PANIC = 6,
} hn_status;

/**
 * Opaque fan handle.
 */
typedef struct hn_fan hn_fan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call into the library from the same thread; empty after a success.
 */
const char *hn_last_error_message(void);

/**
 * Fan of the points `m_{J_eta}`, `eta` ranging over all sequences for `n`.
 *
 * # Safety
 * `out` must be a valid pointer to a `HnFan *`.
 */
enum hn_status hn_family_fan_new(uint32_t n, struct hn_fan **out);

/**
 * Fan of all of `S_{A_n}` by exhaustive enumeration. Refused with
 * `CostRefused` for `n > 3` unless `override_cost` is set.
 *
 * # Safety
 * `out` must be a valid pointer to a `HnFan *`.
 */
enum hn_status hn_oracle_fan_new(uint32_t n, bool override_cost, struct hn_fan **out);

/**
 * `sigma_n` subdivided by the rays `(k, 1-k)`, `k = 1..=n`.
 *
 * # Safety
 * `out` must be a valid pointer to a `HnFan *`.
 */
enum hn_status hn_minimal_resolution_fan_new(uint32_t n, struct hn_fan **out);

/**
 * Releases a fan. Null is ignored.
 *
 * # Safety
 * `fan` must come from one of the `hn_*_fan_new` functions and not have
 * been freed already.
 */
void hn_fan_free(struct hn_fan *fan);

/**
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum hn_status hn_fan_ray_count(const struct hn_fan *fan, size_t *out);

/**
 * Ray `index` in clockwise order from `(0,1)`.
 *
 * # Safety
 * `fan` must be a live handle; `x` and `y` valid pointers.
 */
enum hn_status hn_fan_ray(const struct hn_fan *fan, size_t index, int64_t *x, int64_t *y);

/**
 * Minimizing point of cone `index` (between rays `index` and `index + 1`).
 * `has_tag` is false for untagged cones.
 *
 * # Safety
 * `fan` must be a live handle; the out pointers must be valid.
 */
enum hn_status hn_fan_cone_tag(const struct hn_fan *fan,
                               size_t index,
                               bool *has_tag,
                               int64_t *x,
                               int64_t *y);

/**
 * Whether `fine` refines `coarse`.
 *
 * # Safety
 * Both handles must be live; `out` a valid pointer.
 */
enum hn_status hn_fan_refines(const struct hn_fan *fine, const struct hn_fan *coarse, bool *out);

/**
 * The fan as JSON. Release the string with [`hn_string_free`].
 *
 * # Safety
 * `fan` must be a live handle; `out` a valid pointer.
 */
enum hn_status hn_fan_to_json(const struct hn_fan *fan, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void hn_string_free(char *s);

/**
 * Writes `z, d_0, d_1, ..., d_r` of `eta_k` into `buf`. `len` receives the
 * number of entries; if it exceeds `cap`, nothing is written and
 * `BufferTooSmall` is returned.
 *
 * # Safety
 * `buf` must point to `cap` writable `u32`s (it may be null when `cap` is
 * 0); `len` must be valid.
 */
enum hn_status hn_eta_k(uint32_t n, uint32_t k, uint32_t *buf, size_t cap, size_t *len);

/**
 * Whether `J` is in `S_{A_n}`. `triples` holds `count` multi-indices as
 * consecutive `(b1, b2, b3)` triples.
 *
 * # Safety
 * `triples` must point to `3 * count` readable `u32`s; `out` must be valid.
 */
enum hn_status hn_is_in_s(uint32_t n, const uint32_t *triples, size_t count, bool *out);

/**
 * Checks the ray `(k, 1-k)` for `n`. `passed` receives the verdict and,
 * when `json` is non-null, the full report as JSON (release with
 * [`hn_string_free`]).
 *
 * # Safety
 * `passed` must be valid; `json` may be null.
 */
enum hn_status hn_verify_main(uint32_t n, uint32_t k, bool *passed, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HIGHER_NASH_H */
