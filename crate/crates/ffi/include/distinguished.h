#ifndef DISTINGUISHED_H
#define DISTINGUISHED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum DsStatus {
  DS_STATUS_OK = 0,
  DS_STATUS_NULL_POINTER = 1,
  DS_STATUS_INVALID_UTF8 = 2,
  /**
   * Unknown type, bad rank, unknown preset or stage, malformed JSON.
   */
  DS_STATUS_INVALID_ARGUMENT = 3,
  /**
   * The involution does not define a real form.
   */
  DS_STATUS_INVOLUTION_REJECTED = 4,
  /**
   * The requested construction does not exist for this algebra.
   */
  DS_STATUS_UNSUPPORTED = 5,
  DS_STATUS_INTERNAL = 6,
} DsStatus;

/**
 * A complex simple Lie algebra together with a Cartan involution.
 */
typedef struct DsRealForm DsRealForm;

/**
 * The outcome of checking one candidate set.
 */
typedef struct DsReport DsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *ds_last_error(void);

/**
 * Library version as a static string.
 */
const char *ds_version(void);

/**
 * Builds a real form from a type label ("F4", "B" with `rank`) and a preset
 * name ("compact", "painted", "painted:<node>", "quasi-split"). Pass
 * `rank = 0` when the label already carries the rank.
 *
 * # Safety
 * `type_label` and `preset_name` must be null or NUL-terminated strings;
 * `out` must be null or point to writable storage for one pointer.
 */
enum DsStatus ds_real_form_new(const char *type_label,
                               uint32_t rank,
                               const char *preset_name,
                               struct DsRealForm **out);

/**
 * Like [`ds_real_form_new`] with the involution given as real form spec JSON
 * (`{"perm": [...], "signs": [...]}`).
 *
 * # Safety
 * As for [`ds_real_form_new`], with `spec_json` a NUL-terminated string.
 */
enum DsStatus ds_real_form_from_spec(const char *type_label,
                                     uint32_t rank,
                                     const char *spec_json,
                                     struct DsRealForm **out);

/**
 * # Safety
 * `form` must be null or a handle from `ds_real_form_new`/`_from_spec`
 * that has not been freed.
 */
void ds_real_form_free(struct DsRealForm *form);

/**
 * Complex dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `form` must be null or a live handle.
 */
size_t ds_real_form_dim(const struct DsRealForm *form);

/**
 * Number of roots, or 0 for a null handle.
 *
 * # Safety
 * `form` must be null or a live handle.
 */
size_t ds_real_form_root_count(const struct DsRealForm *form);

/**
 * Number of single roots, or 0 for a null handle.
 *
 * # Safety
 * `form` must be null or a live handle.
 */
size_t ds_real_form_single_count(const struct DsRealForm *form);

/**
 * Number of ordered matched pairs, or 0 for a null handle.
 *
 * # Safety
 * `form` must be null or a live handle.
 */
size_t ds_real_form_matched_pair_count(const struct DsRealForm *form);

/**
 * Builds the stage set (`"S0"`..`"S3"`, `"Sstar"` or `"auto"`) and checks
 * whether it is distinguished.
 *
 * # Safety
 * `form` must be a live handle, `stage` a NUL-terminated string and `out`
 * writable storage for one pointer.
 */
enum DsStatus ds_verify(const struct DsRealForm *form, const char *stage, struct DsReport **out);

/**
 * # Safety
 * `report` must be null or a handle from `ds_verify` not yet freed.
 */
void ds_report_free(struct DsReport *report);

/**
 * True iff the set is distinguished with every scalar real.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool ds_report_verdict(const struct DsReport *report);

/**
 * Number of elements in the checked set.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t ds_report_size(const struct DsReport *report);

/**
 * Real dimension spanned by the checked set.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t ds_report_spanning_rank(const struct DsReport *report);

/**
 * Ordered pairs whose bracket is not a multiple of a member.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uint64_t ds_report_failed_pairs(const struct DsReport *report);

/**
 * The report as JSON; with `summary` the per-pair table is left out.
 * Returns null for a null handle. Free with [`ds_string_free`].
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *ds_report_json(const struct DsReport *report, bool summary);

/**
 * Runs every property suite. `all_passed` receives the overall outcome and
 * `out_json` (if not null) the per-suite reports as a JSON array.
 *
 * # Safety
 * `form` must be a live handle; `all_passed` writable; `out_json` null or
 * writable storage for one pointer.
 */
enum DsStatus ds_run_property_suites(const struct DsRealForm *form,
                                     uint64_t seed,
                                     bool *all_passed,
                                     char **out_json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void ds_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISTINGUISHED_H */
