#ifndef TFWEYL_H
#define TFWEYL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Physical meaning of the two axes of a field.
 */
typedef enum TfwAxes {
  TFW_AXES_POSITION_FREQUENCY = 0,
  TFW_AXES_POSITION_POSITION = 1,
  TFW_AXES_FREQUENCY_FREQUENCY = 2,
} TfwAxes;

/**
 * Result code of every fallible call.
 */
typedef enum TfwStatus {
  TFW_STATUS_OK = 0,
  TFW_STATUS_NULL_POINTER = 1,
  TFW_STATUS_INVALID_GRID = 2,
  TFW_STATUS_GRID_MISMATCH = 3,
  TFW_STATUS_CAP_EXCEEDED = 4,
  TFW_STATUS_INVALID_ARGUMENT = 5,
  TFW_STATUS_BUFFER_SIZE = 6,
  TFW_STATUS_PANIC = 7,
} TfwStatus;

/**
 * An `N×N` phase-space field.
 */
typedef struct TfwField TfwField;

/**
 * An `N×N` operator matrix.
 */
typedef struct TfwOperator TfwOperator;

/**
 * A sampled signal on a centered grid.
 */
typedef struct TfwSignal TfwSignal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *tfw_version(void);

/**
 * Message for the most recent failed call on this thread, or NULL after a
 * success. Valid until the next call into the library on this thread.
 */
const char *tfw_last_error_message(void);

/**
 * Builds a signal from `n` samples. `im` may be NULL for real data.
 */
enum TfwStatus tfw_signal_new(size_t n, const double *re, const double *im, struct TfwSignal **out);

/**
 * The unit-norm Gaussian `2^{1/4} e^{−πt²}` on an `n`-point grid.
 */
enum TfwStatus tfw_signal_gaussian(size_t n, struct TfwSignal **out);

/**
 * Number of samples, or 0 for NULL.
 */
size_t tfw_signal_len(const struct TfwSignal *s);

/**
 * Copies the samples into caller buffers of exactly `len` values.
 */
enum TfwStatus tfw_signal_copy_out(const struct TfwSignal *s, double *re, double *im, size_t len);

void tfw_signal_free(struct TfwSignal *s);

/**
 * Builds an `n×n` field from `n*n` row-major samples. `im` may be NULL.
 */
enum TfwStatus tfw_field_new(size_t n,
                             enum TfwAxes axes,
                             const double *re,
                             const double *im,
                             struct TfwField **out);

/**
 * Grid size `n` of an `n×n` field, or 0 for NULL.
 */
size_t tfw_field_grid_len(const struct TfwField *f);

/**
 * Axes tag of a non-NULL field.
 */
enum TfwStatus tfw_field_axes(const struct TfwField *f, enum TfwAxes *out);

/**
 * Copies the `n*n` samples into caller buffers of exactly `len` values.
 */
enum TfwStatus tfw_field_copy_out(const struct TfwField *f, double *re, double *im, size_t len);

void tfw_field_free(struct TfwField *f);

/**
 * Short-time Fourier transform of `f` with window `g`.
 */
enum TfwStatus tfw_stft(const struct TfwSignal *f,
                        const struct TfwSignal *g,
                        struct TfwField **out);

/**
 * Cross-Wigner distribution `W(f, g)`.
 */
enum TfwStatus tfw_wigner(const struct TfwSignal *f,
                          const struct TfwSignal *g,
                          struct TfwField **out);

/**
 * Cross-τ-Wigner distribution, `tau` in [0, 1].
 */
enum TfwStatus tfw_tau_wigner(const struct TfwSignal *f,
                              const struct TfwSignal *g,
                              double tau,
                              struct TfwField **out);

/**
 * Weyl operator matrix of a position-frequency symbol.
 */
enum TfwStatus tfw_weyl_matrix(const struct TfwField *symbol, struct TfwOperator **out);

/**
 * τ-operator matrix of a position-frequency symbol.
 */
enum TfwStatus tfw_tau_matrix(const struct TfwField *symbol, double tau, struct TfwOperator **out);

/**
 * `out = op · f`.
 */
enum TfwStatus tfw_operator_apply(const struct TfwOperator *op,
                                  const struct TfwSignal *f,
                                  struct TfwSignal **out);

/**
 * Matrix size `n`, or 0 for NULL.
 */
size_t tfw_operator_grid_len(const struct TfwOperator *op);

/**
 * Copies the `n*n` row-major entries into caller buffers of exactly `len` values.
 */
enum TfwStatus tfw_operator_copy_out(const struct TfwOperator *op,
                                     double *re,
                                     double *im,
                                     size_t len);

void tfw_operator_free(struct TfwOperator *op);

/**
 * Admissibility of `(p, q, r1, r2)`. Exponents are strings such as `"2"`,
 * `"4/3"` or `"inf"`. An inadmissible tuple is not an error: the call
 * succeeds with `*admissible = false` and the reasons in the last-error slot.
 */
enum TfwStatus tfw_check_exponents(const char *p,
                                   const char *q,
                                   const char *r1,
                                   const char *r2,
                                   bool *admissible);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TFWEYL_H */
