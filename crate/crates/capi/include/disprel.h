#ifndef DISPREL_H
#define DISPREL_H

/* Generated by cbindgen from the disprel-capi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum DisprelStatus {
  // Operation succeeded.
  DISPREL_STATUS_OK = 0,
  // A pointer argument was null.
  DISPREL_STATUS_NULL_POINTER = 1,
  // Arguments failed validation (grid, medium, or value errors).
  DISPREL_STATUS_INVALID_ARGUMENT = 2,
  // A numeric routine reported an error.
  DISPREL_STATUS_COMPUTATION_FAILED = 3,
  // A panic was caught at the boundary; state may be incomplete.
  DISPREL_STATUS_PANIC = 4,
} DisprelStatus;

// Verdict codes mirrored from the library's three-way answer.
typedef enum DisprelVerdict {
  DISPREL_VERDICT_CAUSAL = 0,
  DISPREL_VERDICT_ANTICAUSAL = 1,
  DISPREL_VERDICT_INCONCLUSIVE = 2,
} DisprelVerdict;

// Opaque damped-oscillator medium.
typedef struct disprel_medium disprel_medium;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a medium from parallel resonance arrays
// (`omega_j`, `gamma_j`, `f_j`, all of length `count`) and the plasma
// frequency squared. Returns null on invalid parameters.
//
// # Safety
// The three arrays must be readable for `count` elements.
struct disprel_medium *disprel_medium_new(const double *omegas,
                                          const double *gammas,
                                          const double *strengths,
                                          size_t count,
                                          double plasma_omega_sq);

// Create a medium from the key-value spec format
// (`resonance = w,g,f; plasma_omega_sq = v`). Returns null on parse errors.
//
// # Safety
// `spec` must point to a valid NUL-terminated string.
struct disprel_medium *disprel_medium_from_spec(const char *spec);

// Free a medium created by this library. Null is ignored.
//
// # Safety
// `medium` must have come from this library and not been freed before.
void disprel_medium_free(struct disprel_medium *medium);

// Complex refractive index at `omega` (rad/s, any sign).
//
// # Safety
// `medium` must be a live handle; the out-pointers must be writable.
enum DisprelStatus disprel_medium_index(const struct disprel_medium *medium,
                                        double omega,
                                        double *n_real,
                                        double *n_imag);

// Group velocity `c / (Re n + w dRe n/dw)` in cm/s.
//
// # Safety
// `medium` must be a live handle; `out` must be writable.
enum DisprelStatus disprel_group_velocity(const struct disprel_medium *medium,
                                          double omega,
                                          double *out);

// Reconstruct `Re n` from `Im n` sampled on the uniform grid
// `nu_k = k * domega`, writing `count` values into `out`.
// `truncation_warning` (optional) is set when the input has not decayed
// at the band edge.
//
// # Safety
// `n_imag` must be readable and `out` writable for `count` elements;
// `truncation_warning` may be null.
enum DisprelStatus disprel_kk_real_from_imag(const double *n_imag,
                                             size_t count,
                                             double domega,
                                             double *out,
                                             bool *truncation_warning);

// Mirror relation: reconstruct `Im n` from `Re n`.
//
// # Safety
// `n_real` must be readable and `out` writable for `count` elements;
// `truncation_warning` may be null.
enum DisprelStatus disprel_kk_imag_from_real(const double *n_real,
                                             size_t count,
                                             double domega,
                                             double *out,
                                             bool *truncation_warning);

// Causality verdict of a complex spectrum sampled on the two-sided grid
// `omega_m = (m - count/2) * domega` (interleaved re/im pairs).
//
// # Safety
// `g_interleaved` must be readable for `2 * count` doubles; the
// out-pointers must be writable.
enum DisprelStatus disprel_causality_verdict(const double *g_interleaved,
                                             size_t count,
                                             double domega,
                                             double leak_tol,
                                             enum DisprelVerdict *verdict,
                                             double *leakage);

// Causality verdict of the delay-shifted slab kernel of a medium on a
// centered time window of `count` samples spanning `window_s` seconds.
//
// # Safety
// `medium` must be a live handle; the out-pointers must be writable.
enum DisprelStatus disprel_slab_causality_check(const struct disprel_medium *medium,
                                                double thickness_cm,
                                                size_t count,
                                                double window_s,
                                                enum DisprelVerdict *verdict,
                                                double *leakage);

// Mirror-experiment measurability ratio; pass zero or negative optional
// parameters to use the built-in defaults.
//
// # Safety
// The out-pointers must be writable.
enum DisprelStatus disprel_scharnhorst_ratio(double l_cm,
                                             double wavelength_cm,
                                             double k,
                                             double alpha,
                                             double *ratio,
                                             double *delta_c_over_c);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DISPREL_H */
