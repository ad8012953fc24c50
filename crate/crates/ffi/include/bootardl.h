#ifndef BOOTARDL_H
#define BOOTARDL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BootardlStatus {
  BOOTARDL_STATUS_OK = 0,
  BOOTARDL_STATUS_NULL_POINTER = 1,
  BOOTARDL_STATUS_INVALID_ARGUMENT = 2,
  BOOTARDL_STATUS_CONFIG_ERROR = 3,
  BOOTARDL_STATUS_DATA_ERROR = 4,
  BOOTARDL_STATUS_ESTIMATION_ERROR = 5,
  BOOTARDL_STATUS_PANIC = 6,
} BootardlStatus;

typedef enum BootardlDeterministic {
  BOOTARDL_DETERMINISTIC_CONSTANT = 0,
  BOOTARDL_DETERMINISTIC_CONSTANT_TREND = 1,
} BootardlDeterministic;

typedef enum BootardlClassification {
  BOOTARDL_CLASSIFICATION_COINTEGRATED = 0,
  BOOTARDL_CLASSIFICATION_DEGENERATE_CASE1 = 1,
  BOOTARDL_CLASSIFICATION_DEGENERATE_CASE2 = 2,
  BOOTARDL_CLASSIFICATION_NO_COINTEGRATION = 3,
} BootardlClassification;

/*
 Opaque bootstrap cointegration result.
 */
typedef struct BootardlCoint BootardlCoint;

/*
 Opaque OLS fit.
 */
typedef struct BootardlFit BootardlFit;

typedef struct BootardlUnitRoot {
  double statistic;
  /*
   Augmentation lags (ADF) or bandwidth (PP).
   */
  size_t lag;
  size_t nobs;
  double cv_1pct;
  double cv_5pct;
  double cv_10pct;
  bool reject_1pct;
  bool reject_5pct;
  bool reject_10pct;
} BootardlUnitRoot;

/*
 Overall F, t-dependent and F-independent values.
 */
typedef struct BootardlTriple {
  double overall_f;
  double t_dep;
  double f_indep;
} BootardlTriple;

typedef struct BootardlEstimate {
  double value;
  double std_error;
  double p_value;
} BootardlEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. The pointer stays
 valid until the next call into the library from the same thread.
 */
const char *bootardl_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *bootardl_version(void);

/*
 OLS of `y` (length `nrows`) on the row-major `nrows x ncols` matrix `x`.

 # Safety
 `x` must point to `nrows * ncols` doubles, `y` to `nrows`, and `out` to
 writable storage for one handle pointer.
 */
enum BootardlStatus bootardl_ols(const double *x,
                                 size_t nrows,
                                 size_t ncols,
                                 const double *y,
                                 struct BootardlFit **out);

/*
 Number of coefficients in `fit`, or 0 for a null handle.

 # Safety
 `fit` must be null or a live handle from [`bootardl_ols`].
 */
size_t bootardl_fit_ncoef(const struct BootardlFit *fit);

/*
 Copies the coefficients into `out`, which holds `len` doubles.

 # Safety
 `fit` must be a live handle and `out` must point to `len` doubles.
 */
enum BootardlStatus bootardl_fit_coefficients(const struct BootardlFit *fit,
                                              double *out,
                                              size_t len);

/*
 Copies the coefficient standard errors into `out`.

 # Safety
 As for [`bootardl_fit_coefficients`].
 */
enum BootardlStatus bootardl_fit_std_errors(const struct BootardlFit *fit, double *out, size_t len);

/*
 Copies the residuals (one per observation) into `out`.

 # Safety
 As for [`bootardl_fit_coefficients`].
 */
enum BootardlStatus bootardl_fit_residuals(const struct BootardlFit *fit, double *out, size_t len);

/*
 Residual sum of squares, residual variance and Schwarz criterion.

 # Safety
 `fit` must be a live handle; each out pointer may be null to skip it.
 */
enum BootardlStatus bootardl_fit_summary(const struct BootardlFit *fit,
                                         double *rss,
                                         double *sigma2,
                                         double *sbc);

/*
 Releases a fit. Null is ignored.

 # Safety
 `fit` must be null or a handle not already freed.
 */
void bootardl_fit_free(struct BootardlFit *fit);

/*
 ADF test on levels. A negative `max_lag` uses the Schwert rule.

 # Safety
 `y` must point to `len` doubles and `out` to one [`BootardlUnitRoot`].
 */
enum BootardlStatus bootardl_adf(const double *y,
                                 size_t len,
                                 enum BootardlDeterministic det,
                                 int64_t max_lag,
                                 struct BootardlUnitRoot *out);

/*
 Phillips-Perron Z-tau. A negative `bandwidth` uses the Newey-West rule.

 # Safety
 As for [`bootardl_adf`].
 */
enum BootardlStatus bootardl_pp(const double *y,
                                size_t len,
                                enum BootardlDeterministic det,
                                int64_t bandwidth,
                                struct BootardlUnitRoot *out);

/*
 SBC choice of `(p, q)` over `1..=p_max` and `0..=q_max`.

 # Safety
 `y` and `x` must point to `len` doubles; `p` and `q` must be writable.
 */
enum BootardlStatus bootardl_select_lags(const double *y,
                                         const double *x,
                                         size_t len,
                                         size_t p_max,
                                         size_t q_max,
                                         size_t *p,
                                         size_t *q);

/*
 Fits the UECM with lags `(p, q)` and bootstraps the three statistics under
 the joint null. The result depends only on the inputs and `seed`.

 # Safety
 `y` and `x` must point to `len` doubles; `out` must be writable.
 */
enum BootardlStatus bootardl_coint_test(const double *y,
                                        const double *x,
                                        size_t len,
                                        size_t p,
                                        size_t q,
                                        size_t replications,
                                        double level,
                                        uint64_t seed,
                                        struct BootardlCoint **out);

/*
 Sample statistics of a cointegration test.

 # Safety
 `h` must be a live handle and `out` writable.
 */
enum BootardlStatus bootardl_coint_statistics(const struct BootardlCoint *h,
                                              struct BootardlTriple *out);

/*
 Bootstrap critical values at `level`, taken from the stored draws.

 # Safety
 As for [`bootardl_coint_statistics`].
 */
enum BootardlStatus bootardl_coint_critical(const struct BootardlCoint *h,
                                            double level,
                                            struct BootardlTriple *out);

/*
 Verdict at the level the test was run with.

 # Safety
 As for [`bootardl_coint_statistics`].
 */
enum BootardlStatus bootardl_coint_classification(const struct BootardlCoint *h,
                                                  enum BootardlClassification *out);

/*
 Error-correction coefficient and long-run coefficient of x.

 # Safety
 `h` must be a live handle; `ect` and `long_run` must be writable.
 */
enum BootardlStatus bootardl_coint_ecm(const struct BootardlCoint *h,
                                       struct BootardlEstimate *ect,
                                       struct BootardlEstimate *long_run);

/*
 Releases a cointegration result. Null is ignored.

 # Safety
 `h` must be null or a handle not already freed.
 */
void bootardl_coint_free(struct BootardlCoint *h);

/*
 Classification of given statistics against given critical values.
 */
enum BootardlClassification bootardl_decide(struct BootardlTriple stats,
                                            struct BootardlTriple critical);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOOTARDL_H */
