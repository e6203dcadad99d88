#ifndef CRG_H
#define CRG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CrgStatus {
  CRG_STATUS_OK = 0,
  CRG_STATUS_NULL_ARGUMENT = 1,
  CRG_STATUS_INVALID_UTF8 = 2,
  CRG_STATUS_PARSE = 3,
  CRG_STATUS_UNSUPPORTED = 4,
  CRG_STATUS_OUT_OF_RANGE = 5,
  CRG_STATUS_COMPUTATION = 6,
  CRG_STATUS_PANIC = 7,
} CrgStatus;

typedef enum CrgSuite {
  CRG_SUITE_CORE = 0,
  CRG_SUITE_SPECTRAL = 1,
  CRG_SUITE_TENSOR = 2,
  CRG_SUITE_PARABOLIC = 3,
  CRG_SUITE_DIHEDRAL = 4,
  CRG_SUITE_KRAMMER = 5,
  CRG_SUITE_ALL = 6,
} CrgSuite;

/*
 A built reflection group.
 */
typedef struct CrgGroup CrgGroup;

/*
 The type-A Krammer matrices on `n` strands.
 */
typedef struct CrgKrammer CrgKrammer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. Owned by the
 library and valid until the next call on the same thread.
 */
const char *crg_last_error(void);

/*
 Static description of a status code.
 */
const char *crg_status_message(enum CrgStatus status);

/*
 Parses and builds a group such as `G(3,3,4)`, `E6` or `G24`. Generator data
 is read from `data_dir` when it is not NULL.

 # Safety
 `name` and `data_dir` must be NUL-terminated strings or NULL; `out` must be
 writable.
 */
enum CrgStatus crg_group_new(const char *name, const char *data_dir, struct CrgGroup **out);

/*
 # Safety
 `group` must come from `crg_group_new` and not be used afterwards.
 */
void crg_group_free(struct CrgGroup *group);

/*
 Canonical name of the group, released with `crg_string_free`.

 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_group_name(const struct CrgGroup *group, char **out);

/*
 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_group_reflection_count(const struct CrgGroup *group, size_t *out);

/*
 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_group_class_count(const struct CrgGroup *group, size_t *out);

/*
 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_group_class_size(const struct CrgGroup *group, size_t class_index, size_t *out);

/*
 `alpha(s, u)`: the number of reflections conjugating `u` to `s`.

 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_group_alpha(const struct CrgGroup *group, size_t s, size_t u, uint32_t *out);

/*
 Factored discriminant of one class as JSON
 (`{"factors":[[root,mult],...],"remainder":[...],"sign":s}`).

 # Safety
 Pointers must be valid; the result is released with `crg_string_free`.
 */
enum CrgStatus crg_discriminant_json(const struct CrgGroup *group, size_t class_index, char **out);

/*
 Factored discriminant of one class in text form, e.g. `-(m-9)m^8`.

 # Safety
 Pointers must be valid; the result is released with `crg_string_free`.
 */
enum CrgStatus crg_discriminant_text(const struct CrgGroup *group, size_t class_index, char **out);

/*
 Runs a verification suite with `m = m_num / m_den` for the sampled checks.
 `passed` is set to 1 when no check failed; `report_json`, when not NULL,
 receives the report.

 # Safety
 Pointers must be valid; the report is released with `crg_string_free`.
 */
enum CrgStatus crg_verify(const struct CrgGroup *group,
                          enum CrgSuite suite,
                          int64_t m_num,
                          int64_t m_den,
                          int32_t *passed,
                          char **report_json);

/*
 # Safety
 `s` must come from this library and not be used afterwards.
 */
void crg_string_free(char *s);

/*
 Krammer matrices on `strands >= 2` strands.

 # Safety
 `out` must be writable.
 */
enum CrgStatus crg_krammer_new(size_t strands, struct CrgKrammer **out);

/*
 # Safety
 `model` must come from `crg_krammer_new` and not be used afterwards.
 */
void crg_krammer_free(struct CrgKrammer *model);

/*
 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_krammer_dimension(const struct CrgKrammer *model, size_t *out);

/*
 Sets `out` to 1 when the braid relations hold exactly.

 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_krammer_braid_relations(const struct CrgKrammer *model, int32_t *out);

/*
 Sets `out` to 1 when every generator cubes to the identity at
 `q = -zeta_3`, `t = 1`.

 # Safety
 Pointers must be valid.
 */
enum CrgStatus crg_krammer_cubic(const struct CrgKrammer *model, int32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRG_H */
