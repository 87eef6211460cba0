#ifndef STABFORGE_H
#define STABFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum StabStatus {
  STAB_STATUS_OK = 0,
  STAB_STATUS_NULL_POINTER = 1,
  STAB_STATUS_INVALID_ARGUMENT = 2,
  STAB_STATUS_INVALID_UTF8 = 3,
  STAB_STATUS_PARSE_ERROR = 4,
  STAB_STATUS_INVALID_CODE = 5,
  STAB_STATUS_PANIC = 6,
} StabStatus;

/**
 * A validated stabilizer code.
 */
typedef struct StabCode StabCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *stab_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *stab_version(void);

/**
 * Builds the `2^j`-qubit family member, `3 <= j <= 16`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum StabStatus stab_family_build(uint32_t j, struct StabCode **out);

/**
 * Parses and validates a code file.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum StabStatus stab_code_from_json(const char *json, struct StabCode **out);

/**
 * Serializes a code; free the result with [`stab_string_free`].
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum StabStatus stab_code_to_json(const struct StabCode *code, char **out);

/**
 * Qubit count, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t stab_code_n(const struct StabCode *code);

/**
 * Logical qubit count, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t stab_code_k(const struct StabCode *code);

/**
 * Generator count, or 0 for a null handle.
 *
 * # Safety
 * `code` must be null or a live handle.
 */
size_t stab_code_a(const struct StabCode *code);

/**
 * Generator `r` (1-based) as a signed string such as `+XIXIZYZY`.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum StabStatus stab_code_generator(const struct StabCode *code, size_t r, char **out);

/**
 * Syndrome of an error given as a full string (`+IIIIIYII`) or sparse
 * factors (`Y6`), written as a string of `0`/`1` with `M_1` first.
 *
 * # Safety
 * `code` must be a live handle; `error` nul-terminated; `out` writable.
 */
enum StabStatus stab_code_syndrome(const struct StabCode *code, const char *error, char **out);

/**
 * Whether every error of weight `<= t` has its own syndrome.
 *
 * # Safety
 * `code` must be a live handle; `passed` writable.
 */
enum StabStatus stab_code_check_correctability(const struct StabCode *code, size_t t, bool *passed);

/**
 * Largest `k` allowed by the quantum Hamming bound, or -1 if none.
 */
int64_t stab_qhb_max_k(size_t n, size_t t);

/**
 * Bound on `k` for a one-error code with `l` degeneracy conditions.
 *
 * # Safety
 * `out` must be writable.
 */
enum StabStatus stab_degenerate_max_k(size_t n, size_t l, int64_t *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `code` must be null or a handle not yet freed.
 */
void stab_code_free(struct StabCode *code);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void stab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STABFORGE_H */
