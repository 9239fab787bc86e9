#ifndef RAMLOCK_H
#define RAMLOCK_H

/* Generated by cbindgen from crates/ramlock-ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RamlockStatus {
  RAMLOCK_STATUS_OK = 0,
  RAMLOCK_STATUS_NULL_POINTER = 1,
  RAMLOCK_STATUS_INVALID_INPUT = 2,
  RAMLOCK_STATUS_OUT_OF_RANGE = 3,
  RAMLOCK_STATUS_NOT_EISENSTEIN = 4,
  RAMLOCK_STATUS_PRECISION = 5,
  RAMLOCK_STATUS_NOT_FOUND = 6,
  RAMLOCK_STATUS_BUDGET_EXCEEDED = 7,
  RAMLOCK_STATUS_UNSUPPORTED = 8,
  // A rational result does not fit in 64-bit numerator and denominator.
  RAMLOCK_STATUS_OVERFLOW = 9,
  RAMLOCK_STATUS_INTERNAL = 10,
} RamlockStatus;

typedef enum RamlockVerdict {
  RAMLOCK_VERDICT_UNRAMIFIED_RESPECTED = 0,
  RAMLOCK_VERDICT_RESPECTED = 1,
  RAMLOCK_VERDICT_SHARP = 2,
  RAMLOCK_VERDICT_VIOLATED = 3,
} RamlockVerdict;

// A local field K.
typedef struct RamlockField RamlockField;

// A torsion phi-module, validated against the absolute index of the field it was made for.
typedef struct RamlockModule RamlockModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *ramlock_last_error(void);

// Library version as a static NUL-terminated string.
const char *ramlock_version(void);

// K = Q_p(p^(1/e)) with `precision` digits.
//
// # Safety
// `out` must be a valid pointer to write the handle to.
enum RamlockStatus ramlock_field_new(uint64_t p,
                                     uint32_t e,
                                     uint32_t precision,
                                     struct RamlockField **out);

// A field from its JSON presentation.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum RamlockStatus ramlock_field_from_json(const char *json, struct RamlockField **out);

// # Safety
// `field` must come from a `ramlock_field_*` constructor and not be freed twice. NULL is ignored.
void ramlock_field_free(struct RamlockField *field);

// Residue characteristic and absolute ramification index.
//
// # Safety
// `field` must be a live handle; `p` and `e` valid pointers.
enum RamlockStatus ramlock_field_info(const struct RamlockField *field, uint64_t *p, uint32_t *e);

// u(K, r, n) as a reduced fraction.
//
// # Safety
// `num` and `den` must be valid pointers.
enum RamlockStatus ramlock_bound(uint64_t p,
                                 uint32_t e,
                                 uint32_t r,
                                 uint32_t n,
                                 int64_t *num,
                                 int64_t *den);

// Upper break of F_n/K, with whether it equals 1 + e(n + 1/(p-1)).
//
// # Safety
// `field` must be a live handle; the out pointers valid.
enum RamlockStatus ramlock_break_fn(const struct RamlockField *field,
                                    uint32_t n,
                                    int64_t *num,
                                    int64_t *den,
                                    bool *matches_closed_form);

// Whether the different of F_n/K lies below u(K, r, n); for r = 0, whether it vanishes.
//
// # Safety
// `field` must be a live handle and `holds` a valid pointer.
enum RamlockStatus ramlock_check_discriminant(const struct RamlockField *field,
                                              uint32_t r,
                                              uint32_t n,
                                              bool *holds);

// One of the shipped example modules, validated for `field`.
//
// # Safety
// `name` must be a NUL-terminated string, `field` a live handle and `out` a valid pointer.
enum RamlockStatus ramlock_module_bundled(const struct RamlockField *field,
                                          const char *name,
                                          struct RamlockModule **out);

// A module from its JSON description, validated for `field`.
//
// # Safety
// `json` must be a NUL-terminated string, `field` a live handle and `out` a valid pointer.
enum RamlockStatus ramlock_module_from_json(const struct RamlockField *field,
                                            const char *json,
                                            struct RamlockModule **out);

// # Safety
// `module` must come from a `ramlock_module_*` constructor and not be freed twice. NULL is ignored.
void ramlock_module_free(struct RamlockModule *module);

// Number of points of `module` over F_n (`candidate` 0) or its unramified quadratic
// extension (`candidate` 1). A zero budget means the environment default.
//
// # Safety
// Handles must be live and `count` a valid pointer.
enum RamlockStatus ramlock_count_points(const struct RamlockField *field,
                                        const struct RamlockModule *module,
                                        uint32_t candidate,
                                        uint64_t budget,
                                        uint64_t *count);

// Locates the first candidate with all p^(nd) points and compares its break with u(K, r, n).
//
// # Safety
// Handles must be live and the out pointers valid.
enum RamlockStatus ramlock_cut_out(const struct RamlockField *field,
                                   const struct RamlockModule *module,
                                   uint64_t budget,
                                   uint32_t *candidate,
                                   int64_t *break_num,
                                   int64_t *break_den,
                                   enum RamlockVerdict *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAMLOCK_H */
