#ifndef DIHEDRAL_GRIESS_H
#define DIHEDRAL_GRIESS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an FFI call.
typedef enum DgStatus {
  // The call succeeded.
  DG_STATUS_OK = 0,
  // A pointer was null, a string was not valid UTF-8, or a parameter was
  // outside the domain of the function (bad rational, unsupported orbit
  // size).
  DG_STATUS_INVALID_ARGUMENT = 1,
  // The parameters are well-formed but no algebra exists at them: a
  // classification constraint fails or a degenerate configuration is hit.
  DG_STATUS_INCONSISTENT_PARAMETERS = 2,
  // The multiplication table does not close over the spanning set.
  DG_STATUS_NOT_CLOSED = 3,
  // An internal invariant was violated (including a caught panic).
  DG_STATUS_INTERNAL = 4,
} DgStatus;

// Opaque handle wrapping a fully built algebra.
typedef struct DgAlgebra DgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the algebra on an orbit of size `n` (1 through 6) at the inner
// products `lambda1 = (e|f)` and `lambda2 = (e|e^{tau_f})`, given as exact
// fractions such as `"1/8"`.  On success stores a handle in `*out`; release
// it with `dg_algebra_free`.
//
// # Safety
// `lambda1` and `lambda2` must be valid NUL-terminated strings and `out`
// must be a valid pointer.
enum DgStatus dg_algebra_build(uint32_t n,
                               const char *lambda1,
                               const char *lambda2,
                               struct DgAlgebra **out);

// Releases a handle returned by `dg_algebra_build`.  Null is ignored.
//
// # Safety
// `alg` must be null or a handle obtained from `dg_algebra_build` that has
// not already been freed.
void dg_algebra_free(struct DgAlgebra *alg);

// Stores the rank of the invariant bilinear form in `*out`.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer.
enum DgStatus dg_algebra_rank(const struct DgAlgebra *alg, uint32_t *out);

// Serializes the full algebra (basis, multiplication table, Gram matrix,
// involutions) into `*out` as a JSON document.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer; release the string
// with `dg_string_free`.
enum DgStatus dg_algebra_to_json(const struct DgAlgebra *alg, char **out);

// Runs the full axiom verification suite and stores the report in `*out`
// as a JSON document.  The status is `Ok` even when individual checks fail;
// inspect the report's `passed` flags.
//
// # Safety
// `alg` must be a live handle and `out` a valid pointer; release the string
// with `dg_string_free`.
enum DgStatus dg_algebra_verify_json(const struct DgAlgebra *alg, char **out);

// Stores the full classification of admissible parameter pairs in `*out`
// as a JSON array.
//
// # Safety
// `out` must be a valid pointer; release the string with `dg_string_free`.
enum DgStatus dg_classify_json(char **out);

// Releases a string returned by this library.  Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library that has not
// already been freed.
void dg_string_free(char *s);

// Returns the message of the most recent error on this thread, or null if
// the last call succeeded.  The pointer is valid until the next library
// call on the same thread; do not free it.
const char *dg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIHEDRAL_GRIESS_H */
