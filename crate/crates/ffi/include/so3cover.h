#ifndef SO3COVER_H
#define SO3COVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

#define SO3_OK 0

#define SO3_ERR_NULL -1

#define SO3_ERR_INVALID_ARGUMENT -2

#define SO3_ERR_DOMAIN -3

#define SO3_ERR_UTF8 -4

#define SO3_ERR_PANIC -5

/**
 * Written by `so3_invariant_valuation` when the invariant vanishes.
 */
#define SO3_VALUATION_INFINITE INT64_MAX

/**
 * An element of `Z[ζ_N]`.
 */
typedef struct So3CycInt So3CycInt;

/**
 * An element of `Z[ζ_N][1/p]`.
 */
typedef struct So3CycNum So3CycNum;

/**
 * Result of a residue test `x ≡ n·g^m (mod p)`.
 */
typedef struct So3Verdict {
  bool congruent;
  /**
   * Witness exponent `m`; meaningful only when `congruent`.
   */
  uint32_t m;
  /**
   * Witness scalar `n`; meaningful only when `congruent`.
   */
  uint64_t n;
  uint64_t candidates_checked;
} So3Verdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *so3_last_error(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void so3_string_free(char *s);

/**
 * `N` for the ring `Z[ζ_N]` used at prime `p`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t so3_ring_modulus(uint64_t p, uint64_t *out);

/**
 * The unnormalised bracket of the `n`-component Hopf link, each component
 * framed `+1`, at level `p`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t so3_hopf_bracket(uint64_t p, uint32_t n, struct So3CycInt **out);

/**
 * Build `Σ coeffs[i]·ζ_N^i`.
 *
 * # Safety
 * `coeffs` must point to `len` readable values (may be NULL when `len` is
 * zero); `out` must be valid for writes.
 */
int32_t so3_cyc_from_coeffs(uint64_t modulus,
                            const int64_t *coeffs,
                            uintptr_t len,
                            struct So3CycInt **out);

/**
 * `a·b`; both operands must live in the same ring.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
int32_t so3_cyc_mul(const struct So3CycInt *a, const struct So3CycInt *b, struct So3CycInt **out);

/**
 * Whether two handles hold the same element of the same ring.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` must be valid for writes.
 */
int32_t so3_cyc_equal(const struct So3CycInt *a, const struct So3CycInt *b, bool *out);

/**
 * Human-readable form, e.g. `1 + ζ20^3`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_cyc_to_string(const struct So3CycInt *x, char **out);

/**
 * JSON form, as produced by the command-line tool.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_cyc_to_json(const struct So3CycInt *x, char **out);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `x` must come from this library and not have been freed already.
 */
void so3_cyc_free(struct So3CycInt *x);

/**
 * The signed invariant of the surgered cabled Hopf link at `p`. Only
 * `p = 5` and `p = 7` carry a pinned sign convention; other primes give
 * `SO3_ERR_DOMAIN`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t so3_invariant(uint64_t p, struct So3CycNum **out);

/**
 * Valuation of the invariant at `(1-ζ_p)`; defined for every prime
 * `p ≥ 5`. Writes `SO3_VALUATION_INFINITE` if the invariant vanishes.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t so3_invariant_valuation(uint64_t p, int64_t *out);

/**
 * `⌈(p² - 7p + 12)/6⌉`.
 */
uint64_t so3_cm_bound(uint64_t p);

/**
 * Exponent `k` of the denominator `p^k`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_num_denominator_exponent(const struct So3CycNum *x, uint32_t *out);

/**
 * Numerator as a ring handle, when the value is integral.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_num_to_integral(const struct So3CycNum *x, struct So3CycInt **out);

/**
 * Human-readable form.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_num_to_string(const struct So3CycNum *x, char **out);

/**
 * JSON form, as produced by the command-line tool.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_num_to_json(const struct So3CycNum *x, char **out);

/**
 * Release a handle. NULL is ignored.
 *
 * # Safety
 * `x` must come from this library and not have been freed already.
 */
void so3_num_free(struct So3CycNum *x);

/**
 * Is `x ≡ n·κ^m (mod p)` for some `m, n`? With `any_root` set the
 * generator is `ζ_N` instead of `κ`.
 *
 * # Safety
 * `x` must be a live handle; `out` must be valid for writes.
 */
int32_t so3_check_congruence(const struct So3CycNum *x,
                             uint64_t p,
                             bool any_root,
                             struct So3Verdict *out);

/**
 * Run the command-line driver in-process. `argv` excludes the program
 * name. Standard output and error are returned as strings and the process
 * exit code is written to `exit_code`; the return value reports only
 * argument-marshalling failures.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings (may be NULL when
 * `argc` is zero); the out-pointers must be valid for writes.
 */
int32_t so3_cli_run(const char *const *argv,
                    uintptr_t argc,
                    char **stdout_out,
                    char **stderr_out,
                    int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SO3COVER_H */
