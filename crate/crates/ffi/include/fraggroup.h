#ifndef FRAGGROUP_H
#define FRAGGROUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_UTF8 = 2,
  FG_STATUS_PARSE = 3,
  FG_STATUS_UNKNOWN_GENERATOR = 4,
  FG_STATUS_INVALID_ARGUMENT = 5,
  FG_STATUS_BUFFER_TOO_SMALL = 6,
  FG_STATUS_EXCEEDS_BOUND = 7,
  FG_STATUS_IO = 8,
  FG_STATUS_INTERNAL = 9,
  FG_STATUS_PANIC = 10,
} FgStatus;

/**
 * A group element in normal form. Free with `fg_element_free`.
 */
typedef struct FgElement FgElement;

/**
 * A loaded system. Free with `fg_system_free`.
 */
typedef struct FgSystem FgSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the last error message of this thread into `buf`. Returns `Ok` with an
 * empty string when there is none.
 *
 * # Safety
 * `buf` must be valid for `len` bytes; `needed` may be null.
 */
enum FgStatus fg_last_error(char *buf, size_t len, size_t *needed);

/**
 * Load a built-in system (`f`, `grigorchuk`) or a JSON system file.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum FgStatus fg_system_load(const char *name, struct FgSystem **out);

/**
 * # Safety
 * `sys` must be null or come from `fg_system_load`, and not be used afterwards.
 */
void fg_system_free(struct FgSystem *sys);

/**
 * Number of generators of the system.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum FgStatus fg_system_generator_count(const struct FgSystem *sys, size_t *out);

/**
 * Product of space-separated generator names, the last applied first. An
 * empty string gives the identity.
 *
 * # Safety
 * `sys` must be a live handle, `word` a nul-terminated string, `out` writable.
 */
enum FgStatus fg_element_from_word(const struct FgSystem *sys,
                                   const char *word,
                                   struct FgElement **out);

/**
 * # Safety
 * `g` must be null or come from this library, and not be used afterwards.
 */
void fg_element_free(struct FgElement *g);

/**
 * `g2 ∘ g1`.
 *
 * # Safety
 * `g2`, `g1` must be live handles; `out` writable.
 */
enum FgStatus fg_element_compose(const struct FgElement *g2,
                                 const struct FgElement *g1,
                                 struct FgElement **out);

/**
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
enum FgStatus fg_element_equal(const struct FgElement *a, const struct FgElement *b, bool *out);

/**
 * Order of `g`; `ExceedsBound` if `g^k ≠ 1` for all `k ≤ max_power`.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum FgStatus fg_element_order(const struct FgElement *g, uint64_t max_power, uint64_t *out);

/**
 * Image of an eventually periodic point such as `2(12)`, written into `buf`.
 *
 * # Safety
 * `g` must be a live handle, `point` a nul-terminated string, `buf` valid
 * for `len` bytes; `needed` may be null.
 */
enum FgStatus fg_element_evaluate(const struct FgElement *g,
                                  const char *point,
                                  char *buf,
                                  size_t len,
                                  size_t *needed);

/**
 * Run a verification suite (`all`, `relations`, `returns`, `models`, `frag`).
 *
 * # Safety
 * `suite` must be a nul-terminated string; `passed` writable.
 */
enum FgStatus fg_verify(const char *suite, uint64_t seed, bool *passed);

/**
 * Library version as a static nul-terminated string.
 */
const char *fg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRAGGROUP_H */
