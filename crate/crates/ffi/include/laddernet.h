#ifndef LADDERNET_H
#define LADDERNET_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LnLadderKind {
  /**
   * Series inductors, capacitor rungs.
   */
  LN_LADDER_KIND_LC = 0,
  /**
   * Series capacitors, inductor rungs.
   */
  LN_LADDER_KIND_CL = 1,
} LnLadderKind;

typedef enum LnRegion {
  LN_REGION_OMEGA1 = 0,
  LN_REGION_OMEGA2 = 1,
  LN_REGION_OMEGA3 = 2,
  LN_REGION_LAMBDA_BAR = 3,
  /**
   * LC segment or CL rays on the imaginary axis.
   */
  LN_REGION_SEGMENT = 4,
  LN_REGION_ENDPOINT = 5,
  LN_REGION_ZERO = 6,
} LnRegion;

typedef enum LnSide {
  LN_SIDE_RIGHT = 0,
  LN_SIDE_LEFT = 1,
} LnSide;

typedef enum LnStatus {
  LN_STATUS_OK = 0,
  LN_STATUS_NULL_POINTER = 1,
  LN_STATUS_INVALID_ARGUMENT = 2,
  LN_STATUS_PARSE_ERROR = 3,
  /**
   * An edge impedance vanishes at the requested λ.
   */
  LN_STATUS_NOT_IN_LAMBDA_SET = 4,
  LN_STATUS_NO_SOLUTION = 5,
  LN_STATUS_UNIT_CIRCLE_DEGENERACY = 6,
  LN_STATUS_NON_CONVERGENT = 7,
  LN_STATUS_OUT_OF_RANGE = 8,
  LN_STATUS_PANIC = 9,
} LnStatus;

/**
 * Opaque network handle.
 */
typedef struct LnNetwork LnNetwork;

typedef struct LnComplex {
  double re;
  double im;
} LnComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ln_last_error(void);

/**
 * Parses a JSON network description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LnStatus ln_network_from_json(const char *json, struct LnNetwork **out);

/**
 * Builds the n-th LC or CL ladder.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum LnStatus ln_network_build_ladder(enum LnLadderKind kind,
                                      double inductance,
                                      double capacitance,
                                      size_t n,
                                      struct LnNetwork **out);

/**
 * # Safety
 * `net` must come from this library and not be used afterwards; null is ignored.
 */
void ln_network_free(struct LnNetwork *net);

/**
 * Serialises a network to JSON; release the string with `ln_string_free`.
 *
 * # Safety
 * `net` must be a live handle and `out` a writable pointer.
 */
enum LnStatus ln_network_to_json(const struct LnNetwork *net, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards; null is ignored.
 */
void ln_string_free(char *s);

/**
 * Effective admittance of a network at λ. When the Dirichlet problem has
 * no solution, `*infinite` is set and `*out` holds `+inf`.
 *
 * # Safety
 * `net` must be a live handle; `out` and `infinite` writable pointers.
 */
enum LnStatus ln_effective_admittance(const struct LnNetwork *net,
                                      struct LnComplex lambda_value,
                                      struct LnComplex *out,
                                      bool *infinite);

/**
 * Closed-form admittance of the finite αβ-ladder with `n` sections.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum LnStatus ln_finite_ladder_admittance(struct LnComplex alpha,
                                          struct LnComplex beta,
                                          size_t n,
                                          struct LnComplex *out);

/**
 * Infinite-ladder admittance. Returns `LN_STATUS_NON_CONVERGENT` with the
 * region filled in when the finite ladders have no limit.
 *
 * # Safety
 * `out` and `region` must be writable pointers.
 */
enum LnStatus ln_infinite_admittance(enum LnLadderKind kind,
                                     double inductance,
                                     double capacitance,
                                     struct LnComplex lambda_value,
                                     struct LnComplex *out,
                                     enum LnRegion *region);

/**
 * One-sided limit of the infinite-ladder admittance at `λ = iω` on the
 * non-convergent part of the imaginary axis.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum LnStatus ln_boundary_limit(enum LnLadderKind kind,
                                double omega,
                                double inductance,
                                double capacitance,
                                enum LnSide side,
                                struct LnComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LADDERNET_H */
