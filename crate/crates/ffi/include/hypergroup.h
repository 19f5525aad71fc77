#ifndef HYPERGROUP_H
#define HYPERGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum HgStatus {
  HG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HG_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HG_STATUS_INVALID_UTF8 = 2,
  /**
   * The library rejected the input; see `hg_last_error`.
   */
  HG_STATUS_DOMAIN_ERROR = 3,
  /**
   * An internal panic was caught at the boundary.
   */
  HG_STATUS_PANIC = 4,
} HgStatus;

/**
 * A hypergroup owned by the library.
 */
typedef struct HgHypergroup HgHypergroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *hg_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void hg_string_free(char *s);

/**
 * Loads a built-in hypergroup: `su2`, `uq`, `dual:S3`, `dual:C<n>`,
 * `dual:C2xC2`.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is valid for writes.
 */
enum HgStatus hg_hypergroup_from_catalog(const char *name, struct HgHypergroup **out);

/**
 * Loads a finite hypergroup from a hypergroup document (with `elements`)
 * or a fusion document (with `fusion`).
 *
 * # Safety
 * `doc` is a NUL-terminated string; `out` is valid for writes.
 */
enum HgStatus hg_hypergroup_from_json(const char *doc, struct HgHypergroup **out);

/**
 * Releases a handle.
 *
 * # Safety
 * `h` is null or a handle returned by this library and not yet freed.
 */
void hg_hypergroup_free(struct HgHypergroup *h);

/**
 * `x ⋆ y` as a JSON array of element labels.
 *
 * # Safety
 * `h` is a live handle; `x`, `y` are NUL-terminated strings; `out` is
 * valid for writes.
 */
enum HgStatus hg_hypergroup_product(const struct HgHypergroup *h,
                                    const char *x,
                                    const char *y,
                                    char **out);

/**
 * Verifies the hypergroup axioms: exhaustively for finite hypergroups,
 * on elements of size at most `window` otherwise. Writes 1 to `passed`
 * when no violation is found and 0 otherwise.
 *
 * # Safety
 * `h` is a live handle; `passed` is valid for writes.
 */
enum HgStatus hg_hypergroup_check(const struct HgHypergroup *h, size_t window, int32_t *passed);

/**
 * `P/Q` for the Lie type `kind` (one of A–G) and `rank`, as
 * `{"group": "Z/3", "invariants": [3]}`.
 *
 * # Safety
 * `kind` is a NUL-terminated string; `out` is valid for writes.
 */
enum HgStatus hg_fundamental_quotient(const char *kind, size_t rank, char **out);

/**
 * Subgroups of index at most `max_index` of a group such as `C2*C2`, as
 * a JSON array of `{"index": k, "action": {"s": [2, 1], ...}}`.
 *
 * # Safety
 * `group` is a NUL-terminated string; `out` is valid for writes.
 */
enum HgStatus hg_enumerate_subgroups(const char *group, size_t max_index, char **out);

/**
 * Finite-index quantum subgroups for comma-separated Lie types such as
 * `A1,A1`, as `{"grading_group": ..., "records": [...]}`.
 *
 * # Safety
 * `lie` is a NUL-terminated string; `out` is valid for writes.
 */
enum HgStatus hg_classify(const char *lie, size_t max_index, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERGROUP_H */
