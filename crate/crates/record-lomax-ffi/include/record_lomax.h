/* C interface to the record-lomax library. Generated by cbindgen; do not edit. */

#ifndef RECORD_LOMAX_H
#define RECORD_LOMAX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of an FFI call. Zero is success; everything else is a failure
// whose detail text `rlx_last_error_message` returns.
typedef enum {
  // The call succeeded and every out parameter is filled.
  RlxStatusOk = 0,
  // A required pointer argument was null.
  RlxStatusNullPointer = 1,
  // A parameter was outside its admissible range.
  RlxStatusInvalidArgument = 2,
  // An argument lay outside the domain of the operation.
  RlxStatusDomainError = 3,
  // An input sequence was empty.
  RlxStatusEmptyInput = 4,
  // The data admit no maximum-likelihood estimate.
  RlxStatusDegenerateData = 5,
  // Values violated the strict-increase requirement of record sequences.
  RlxStatusNotIncreasing = 6,
  // A numerical routine failed to produce a trustworthy value.
  RlxStatusNumericalFailure = 7,
  // An output buffer was too small for the result.
  RlxStatusBufferTooSmall = 8,
} RlxStatus;

// Origin of an estimate.
typedef enum {
  RlxSourceSample = 0,
  RlxSourceRecords = 1,
} RlxEstimatorSource;

// Which moment the quadrature oracle integrates.
typedef enum {
  RlxOraclePdfHat = 0,
  RlxOraclePdfHatSquared = 1,
  RlxOracleCdfHat = 2,
  RlxOracleCdfHatSquared = 3,
} RlxOracleTarget;

// Strictly increasing record sequence handle.
typedef struct RlxRecords RlxRecords;

// Deterministic stream generator handle.
typedef struct RlxRng RlxRng;

// A point estimate of the shape parameter.
typedef struct {
  double theta_hat;
  RlxEstimatorSource source;
  // Observations used (sample size n or record count m).
  size_t count;
} RlxEstimate;

// A finite-series evaluation plus its numerical diagnostics.
typedef struct {
  double value;
  // Terms the truncated series summed.
  uint32_t terms;
  // Magnitude of the largest intermediate term.
  double max_term_magnitude;
  // True when the sum is so small against its largest term that the
  // summation itself may have lost precision.
  bool cancellation_flag;
} RlxSeriesResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the message of the most recent failure on this thread into `buf`
// as a NUL-terminated string (truncating if needed) and returns the full
// length the message requires, including the terminator. With a null `buf`
// or zero `cap`, nothing is written and only the required length returns.
//
// # Safety
// `buf` must be null or valid for writing `cap` bytes.
size_t rlx_last_error_message(char *buf, size_t cap);

// The library version as a static NUL-terminated string.
const char *rlx_version(void);

// Creates a generator for the given master seed, domain tag, and stream
// index. Streams with different tags or indices are statistically
// independent; identical triples reproduce identical draws.
RlxRng *rlx_rng_new(uint64_t master_seed, uint64_t domain, uint64_t stream);

// Releases a generator. Null is ignored.
//
// # Safety
// `rng` must be null or a live handle from `rlx_rng_new`; it must not be
// used after this call.
void rlx_rng_free(RlxRng *rng);

// Draws `n` values into the caller's buffer, which must hold at least `n`
// doubles.
//
// # Safety
// `rng` must be null or a live handle from `rlx_rng_new`; `out` must be
// null or valid for writing `n` doubles.
RlxStatus rlx_sample(double theta, size_t n, RlxRng *rng, double *out);

// Builds a record-sequence handle from values that must already be
// strictly increasing and nonnegative.
//
// # Safety
// `values` must be null or point to `len` readable doubles; `out` must be
// null or valid for writing one pointer.
RlxStatus rlx_records_from_values(const double *values, size_t len, RlxRecords **out);

// Extracts the upper records of an arbitrary observation sequence into a
// new handle.
//
// # Safety
// `values` must be null or point to `len` readable doubles; `out` must be
// null or valid for writing one pointer.
RlxStatus rlx_records_extract(const double *values, size_t len, RlxRecords **out);

// Draws the first `m` records of an i.i.d. stream into a new handle.
//
// # Safety
// `rng` must be null or a live handle from `rlx_rng_new`; `out` must be
// null or valid for writing one pointer.
RlxStatus rlx_records_sample(size_t m, double theta, RlxRng *rng, RlxRecords **out);

// Number of records held by the handle; zero for null.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor.
size_t rlx_records_len(const RlxRecords *records);

// Copies the record values into the caller's buffer of capacity `cap`.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor; `out` must be null or valid for writing `cap` doubles.
RlxStatus rlx_records_values(const RlxRecords *records, double *out, size_t cap);

// Releases a record-sequence handle. Null is ignored.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor; it must not be used after this call.
void rlx_records_free(RlxRecords *records);

// Maximum-likelihood estimate from a complete sample.
//
// # Safety
// `values` must be null or point to `len` readable doubles; `out` must be
// null or valid for writing one `RlxEstimate`.
RlxStatus rlx_mle_from_sample(const double *values, size_t len, RlxEstimate *out);

// Maximum-likelihood estimate from a record sequence.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor; `out` must be null or valid for writing one `RlxEstimate`.
RlxStatus rlx_mle_from_records(const RlxRecords *records, RlxEstimate *out);

// Plug-in density estimate f(x; θ̂) from a record sequence.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor; `out` must be null or valid for writing one double.
RlxStatus rlx_pdf_hat(double x, const RlxRecords *records, double *out);

// Plug-in CDF estimate F(x; θ̂) from a record sequence.
//
// # Safety
// `records` must be null or a live handle from an `rlx_records_*`
// constructor; `out` must be null or valid for writing one double.
RlxStatus rlx_cdf_hat(double x, const RlxRecords *records, double *out);

// Density of the distribution at `x`.
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_pdf(double theta, double x, double *out);

// Distribution function at `x`.
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_cdf(double theta, double x, double *out);

// Quantile at probability `p` in [0, 1).
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_quantile(double theta, double p, double *out);

// Truncated-series value of E[f̂(x)] for m records. The diagnostics in the
// result describe summation precision only; at small m the truncated series
// deviates from the true moment by its truncation remainder.
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_expected_pdf_hat(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Truncated-series value of E[F̂(x)] for m records.
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_expected_cdf_hat(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Truncated-series value of E[f̂(x)²] for m records.
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_second_moment_pdf_hat(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Truncated-series mean squared error of the plug-in density estimate.
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_mse_pdf_hat(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Truncated-series mean squared error of the plug-in CDF estimate.
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_mse_cdf_hat(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Gap between the survival/density moment ratio and its limit θ(1+x).
//
// # Safety
// `out` must be null or valid for writing one `RlxSeriesResult`.
RlxStatus rlx_identity_gap(double x, double theta, uint32_t m, RlxSeriesResult *out);

// Ratio Γ(n−i−1)·n^{i+1}/Γ(n), which tends to 1 as n grows.
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_gamma_ratio(uint64_t n, uint64_t i, double *out);

// True moment of the chosen plug-in quantity by adaptive quadrature of its
// defining integral — independent of the truncated series.
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_quadrature_oracle(RlxOracleTarget target,
                                double x,
                                double theta,
                                uint32_t m,
                                double *out);

// Exact P(|θ̂ − θ| ≥ ε) for the record-based estimator via the
// regularized incomplete gamma function.
//
// # Safety
// `out` must be null or valid for writing one double.
RlxStatus rlx_exact_record_mle_exceedance(double theta, uint32_t m, double epsilon, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECORD_LOMAX_H */
