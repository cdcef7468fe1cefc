#ifndef WEYLMOD_H
#define WEYLMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WeylmodStatus {
  WEYLMOD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  WEYLMOD_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  WEYLMOD_STATUS_INVALID_UTF8 = 2,
  /**
   * Syntax error in an expression.
   */
  WEYLMOD_STATUS_PARSE = 3,
  /**
   * Invalid arguments or configuration.
   */
  WEYLMOD_STATUS_USAGE = 4,
  /**
   * The computation itself failed (e.g. a non-invertible division).
   */
  WEYLMOD_STATUS_MATH = 5,
  /**
   * A verification suite reported failures.
   */
  WEYLMOD_STATUS_VERIFICATION_FAILED = 6,
  /**
   * Internal error; the library caught a panic.
   */
  WEYLMOD_STATUS_INTERNAL = 7,
} WeylmodStatus;

/**
 * Declared parameters and the rank operators live in.
 */
typedef struct WeylmodContext WeylmodContext;

/**
 * A module on polynomials.
 */
typedef struct WeylmodModule WeylmodModule;

/**
 * An operator of the (centrally extended, in rank 1) algebra.
 */
typedef struct WeylmodOp WeylmodOp;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failed call on this thread, or null. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *weylmod_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void weylmod_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *weylmod_version(void);

/**
 * Creates a context from a parameter declaration such as
 * `"lambda:inv,a,b"` and a rank `>= 1`.
 *
 * # Safety
 * `params` is a nul-terminated string; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_context_new(const char *params,
                                       size_t rank,
                                       struct WeylmodContext **out);

/**
 * # Safety
 * `ctx` is null or a context not yet freed.
 */
void weylmod_context_free(struct WeylmodContext *ctx);

/**
 * Parses an operator such as `"3/2*t^-1*D + C"`.
 *
 * # Safety
 * `ctx` is a live context, `src` a nul-terminated string, `out` valid for
 * writes.
 */
enum WeylmodStatus weylmod_op_parse(const struct WeylmodContext *ctx,
                                    const char *src,
                                    struct WeylmodOp **out);

/**
 * # Safety
 * `op` is null or an operator not yet freed.
 */
void weylmod_op_free(struct WeylmodOp *op);

/**
 * Canonical text of an operator.
 *
 * # Safety
 * `op` is a live operator; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_to_string(const struct WeylmodOp *op, char **out);

/**
 * JSON form of an operator (numbers as exact strings).
 *
 * # Safety
 * `op` is a live operator; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_to_json(const struct WeylmodOp *op, char **out);

/**
 * `[a, b]`, including the central term in rank 1.
 *
 * # Safety
 * `a`, `b` are live operators; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_bracket(const struct WeylmodOp *a,
                                      const struct WeylmodOp *b,
                                      struct WeylmodOp **out);

/**
 * The associative product `a b`; fails if either has a central term.
 *
 * # Safety
 * `a`, `b` are live operators; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_product(const struct WeylmodOp *a,
                                      const struct WeylmodOp *b,
                                      struct WeylmodOp **out);

/**
 * The central cocycle `phi(a, b)` as text.
 *
 * # Safety
 * `a`, `b` are live rank-one operators; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_cocycle(const struct WeylmodOp *a,
                                      const struct WeylmodOp *b,
                                      char **out);

/**
 * Whether two operators are equal: writes 1 or 0 to `out`.
 *
 * # Safety
 * `a`, `b` are live operators; `out` is valid for writes.
 */
enum WeylmodStatus weylmod_op_equal(const struct WeylmodOp *a, const struct WeylmodOp *b, int *out);

/**
 * The module `Omega(lambda, eps)` of the context's rank; `lambda` is a
 * scalar expression in the context's parameters, used for every
 * coordinate when the rank exceeds one.
 *
 * # Safety
 * `ctx` is a live context, `lambda` a nul-terminated string, `out` valid
 * for writes.
 */
enum WeylmodStatus weylmod_module_new(const struct WeylmodContext *ctx,
                                      const char *lambda,
                                      uint8_t eps,
                                      struct WeylmodModule **out);

/**
 * # Safety
 * `m` is null or a module not yet freed.
 */
void weylmod_module_free(struct WeylmodModule *m);

/**
 * Acts by `op` on the polynomial `f` (text) and writes the result as text.
 *
 * # Safety
 * `m`, `op` are live handles, `f` a nul-terminated string, `out` valid for
 * writes.
 */
enum WeylmodStatus weylmod_module_act(const struct WeylmodModule *m,
                                      const struct WeylmodOp *op,
                                      const char *f,
                                      char **out);

/**
 * Runs one verification suite at bounds `m`, `n`, `deg` and writes its
 * one-line summary. Returns `VerificationFailed` if any check failed.
 *
 * # Safety
 * `name` is a nul-terminated string; `out` is null or valid for writes.
 */
enum WeylmodStatus weylmod_verify_suite(const char *name,
                                        int64_t m,
                                        uint32_t n,
                                        uint32_t deg,
                                        char **out);

/**
 * Runs the command-line interface on `argc` arguments (without the
 * program name) and returns its exit code; standard output and error are
 * written to `out` and `err` when those are non-null.
 *
 * # Safety
 * `argv` holds `argc` nul-terminated strings; `out` and `err` are null or
 * valid for writes.
 */
int weylmod_cli_run(const char *const *argv, size_t argc, char **out, char **err);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLMOD_H */
