#ifndef QUADRATE_H
#define QUADRATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QuadrateStatus {
  QUADRATE_STATUS_OK = 0,
  QUADRATE_STATUS_NULL_POINTER = 1,
  /**
   * Argument outside the mathematical domain (bad n, m, s, xi, tolerance).
   */
  QUADRATE_STATUS_DOMAIN = 2,
  /**
   * Newton or Remez iteration did not converge.
   */
  QUADRATE_STATUS_CONVERGENCE = 3,
  /**
   * The integrand returned a non-finite value.
   */
  QUADRATE_STATUS_EVALUATION = 4,
  /**
   * Output buffer shorter than required.
   */
  QUADRATE_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Panic or other unexpected failure.
   */
  QUADRATE_STATUS_INTERNAL = 6,
} QuadrateStatus;

typedef enum QuadrateFamily {
  QUADRATE_FAMILY_CLENSHAW_CURTIS = 0,
  QUADRATE_FAMILY_GAUSS_LEGENDRE = 1,
} QuadrateFamily;

/**
 * Opaque Chebyshev series `a_0 / 2 + sum a_m T_m`.
 */
typedef struct QuadrateChebSeries QuadrateChebSeries;

/**
 * Opaque quadrature rule.
 */
typedef struct QuadrateRule QuadrateRule;

/**
 * Integrand callback: `f(x, user_data)`.
 */
typedef double (*QuadrateFn)(double x, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *quadrate_last_error(void);

/**
 * Builds the `n`-point rule of `family`.
 */
enum QuadrateStatus quadrate_rule_new(enum QuadrateFamily family,
                                      size_t n,
                                      struct QuadrateRule **out);

/**
 * Releases a rule; NULL is ignored.
 */
void quadrate_rule_free(struct QuadrateRule *rule);

/**
 * Number of nodes, or 0 for NULL.
 */
size_t quadrate_rule_len(const struct QuadrateRule *rule);

/**
 * Copies the nodes, largest first, into `out` (capacity `len`).
 */
enum QuadrateStatus quadrate_rule_nodes(const struct QuadrateRule *rule, double *out, size_t len);

/**
 * Copies the weights into `out` (capacity `len`).
 */
enum QuadrateStatus quadrate_rule_weights(const struct QuadrateRule *rule, double *out, size_t len);

/**
 * `sum w_k f(x_k)`.
 */
enum QuadrateStatus quadrate_rule_apply(const struct QuadrateRule *rule,
                                        QuadrateFn f,
                                        void *user_data,
                                        double *out);

/**
 * `I(T_m) - Q_n(T_m)` for the given rule.
 */
enum QuadrateStatus quadrate_rule_error_cheb_t(const struct QuadrateRule *rule,
                                               uint64_t m,
                                               double *out);

/**
 * Degree-`degree` Chebyshev interpolant of `f` at the Chebyshev-Lobatto points.
 */
enum QuadrateStatus quadrate_cheb_interpolate(QuadrateFn f,
                                              void *user_data,
                                              size_t degree,
                                              struct QuadrateChebSeries **out);

/**
 * Series from explicit coefficients (`a_0` halved on evaluation).
 */
enum QuadrateStatus quadrate_cheb_from_coeffs(const double *coeffs,
                                              size_t len,
                                              struct QuadrateChebSeries **out);

/**
 * Releases a series; NULL is ignored.
 */
void quadrate_cheb_free(struct QuadrateChebSeries *series);

/**
 * Number of coefficients, or 0 for NULL.
 */
size_t quadrate_cheb_len(const struct QuadrateChebSeries *series);

enum QuadrateStatus quadrate_cheb_coeffs(const struct QuadrateChebSeries *series,
                                         double *out,
                                         size_t len);

/**
 * Clenshaw evaluation at `x` in `[-1, 1]`.
 */
enum QuadrateStatus quadrate_cheb_evaluate(const struct QuadrateChebSeries *series,
                                           double x,
                                           double *out);

/**
 * Exact integral of the series over `[-1, 1]`.
 */
enum QuadrateStatus quadrate_cheb_integral(const struct QuadrateChebSeries *series, double *out);

/**
 * `T_m(x)` for `x` in `[-1, 1]`.
 */
enum QuadrateStatus quadrate_cheb_t(uint64_t m, double x, double *out);

/**
 * Closed-form Clenshaw-Curtis error `E_n^C(T_m)`.
 */
enum QuadrateStatus quadrate_cc_error_t(size_t n, uint64_t m, double *out);

/**
 * Leading-order model of the Gauss error `E_n^G(T_m)`, even `m >= 2n`.
 */
enum QuadrateStatus quadrate_gauss_error_t_model(size_t n, uint64_t m, double *out);

/**
 * Minimax error of degree-`degree` polynomials for a callback on `[-1, 1]`.
 */
enum QuadrateStatus quadrate_minimax(QuadrateFn f,
                                     void *user_data,
                                     size_t degree,
                                     double tol,
                                     double *out);

/**
 * Minimax error for `|x - xi|^s`, with the kink added to the search grid.
 */
enum QuadrateStatus quadrate_minimax_abs_power(double s,
                                               double xi,
                                               size_t degree,
                                               double tol,
                                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADRATE_H */
