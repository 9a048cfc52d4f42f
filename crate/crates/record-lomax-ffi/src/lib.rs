//! C ABI over the record-lomax library.
//!
//! Every function returns an `RlxStatus`; results travel through out
//! pointers. On any non-zero status a thread-local message describing the
//! failure is retrievable with `rlx_last_error_message`. Handles returned by
//! `rlx_*_new`/`rlx_records_*` constructors are owned by the caller and must
//! be released with the matching `rlx_*_free`; passing them to any other
//! allocator is undefined behavior. All pointer arguments must be valid for
//! the stated lengths; null pointers are rejected with
//! `RLX_STATUS_NULL_POINTER` rather than dereferenced.
//!
//! The generated header lives at `include/record_lomax.h` and is committed;
//! the build script regenerates it so drift is caught by version control.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use record_lomax::analytic::{
    asymptotic_identity_gap, expected_cdf_hat, expected_pdf_hat, gamma_ratio, mse_cdf_hat,
    mse_pdf_hat, quadrature_oracle, second_moment_pdf_hat, OracleTarget, SeriesResult,
};
use record_lomax::error::Error;
use record_lomax::estimators::{
    cdf_hat, mle_from_records, mle_from_sample, pdf_hat, EstimatorSource,
};
use record_lomax::lomax::{LomaxParams, Probability};
use record_lomax::montecarlo::exact_record_mle_exceedance;
use record_lomax::records::{extract_upper_records, sample_records, RecordSequence};
use record_lomax::rng::{derive_seed, StreamRng};

/// Outcome of an FFI call. Zero is success; everything else is a failure
/// whose detail text `rlx_last_error_message` returns.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlxStatus {
    /// The call succeeded and every out parameter is filled.
    RlxStatusOk = 0,
    /// A required pointer argument was null.
    RlxStatusNullPointer = 1,
    /// A parameter was outside its admissible range.
    RlxStatusInvalidArgument = 2,
    /// An argument lay outside the domain of the operation.
    RlxStatusDomainError = 3,
    /// An input sequence was empty.
    RlxStatusEmptyInput = 4,
    /// The data admit no maximum-likelihood estimate.
    RlxStatusDegenerateData = 5,
    /// Values violated the strict-increase requirement of record sequences.
    RlxStatusNotIncreasing = 6,
    /// A numerical routine failed to produce a trustworthy value.
    RlxStatusNumericalFailure = 7,
    /// An output buffer was too small for the result.
    RlxStatusBufferTooSmall = 8,
}

/// Which moment the quadrature oracle integrates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlxOracleTarget {
    RlxOraclePdfHat = 0,
    RlxOraclePdfHatSquared = 1,
    RlxOracleCdfHat = 2,
    RlxOracleCdfHatSquared = 3,
}

/// Origin of an estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RlxEstimatorSource {
    RlxSourceSample = 0,
    RlxSourceRecords = 1,
}

/// A point estimate of the shape parameter.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RlxEstimate {
    pub theta_hat: f64,
    pub source: RlxEstimatorSource,
    /// Observations used (sample size n or record count m).
    pub count: usize,
}

/// A finite-series evaluation plus its numerical diagnostics.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RlxSeriesResult {
    pub value: f64,
    /// Terms the truncated series summed.
    pub terms: u32,
    /// Magnitude of the largest intermediate term.
    pub max_term_magnitude: f64,
    /// True when the sum is so small against its largest term that the
    /// summation itself may have lost precision.
    pub cancellation_flag: bool,
}

/// Deterministic stream generator handle.
pub struct RlxRng(StreamRng);

/// Strictly increasing record sequence handle.
pub struct RlxRecords(RecordSequence);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember_error(message: &str) {
    let sanitized = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::default());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = sanitized);
}

fn status_of(err: &Error) -> RlxStatus {
    remember_error(&err.to_string());
    match err {
        Error::InvalidParameter { .. } => RlxStatus::RlxStatusInvalidArgument,
        Error::Domain { .. } => RlxStatus::RlxStatusDomainError,
        Error::EmptyInput => RlxStatus::RlxStatusEmptyInput,
        Error::Degenerate(_) => RlxStatus::RlxStatusDegenerateData,
        Error::NotIncreasing { .. } => RlxStatus::RlxStatusNotIncreasing,
        Error::QuadratureDidNotConverge { .. } | Error::NonPositiveExpectedPdf { .. } => {
            RlxStatus::RlxStatusNumericalFailure
        }
    }
}

fn null_pointer(which: &str) -> RlxStatus {
    remember_error(&format!("{which} must not be null"));
    RlxStatus::RlxStatusNullPointer
}

fn series_out(result: &SeriesResult) -> RlxSeriesResult {
    RlxSeriesResult {
        value: result.value,
        terms: result.terms,
        max_term_magnitude: result.max_term_magnitude,
        cancellation_flag: result.cancellation_flag,
    }
}

/// Copies the message of the most recent failure on this thread into `buf`
/// as a NUL-terminated string (truncating if needed) and returns the full
/// length the message requires, including the terminator. With a null `buf`
/// or zero `cap`, nothing is written and only the required length returns.
///
/// # Safety
/// `buf` must be null or valid for writing `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn rlx_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        let bytes = message.as_bytes_with_nul();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap);
            std::ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            // Guarantee termination even after truncation.
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rlx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a generator for the given master seed, domain tag, and stream
/// index. Streams with different tags or indices are statistically
/// independent; identical triples reproduce identical draws.
#[no_mangle]
pub extern "C" fn rlx_rng_new(master_seed: u64, domain: u64, stream: u64) -> *mut RlxRng {
    let rng = StreamRng::new(derive_seed(master_seed, domain), stream);
    Box::into_raw(Box::new(RlxRng(rng)))
}

/// Releases a generator. Null is ignored.
///
/// # Safety
/// `rng` must be null or a live handle from `rlx_rng_new`; it must not be
/// used after this call.
#[no_mangle]
pub unsafe extern "C" fn rlx_rng_free(rng: *mut RlxRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// Draws `n` values into the caller's buffer, which must hold at least `n`
/// doubles.
///
/// # Safety
/// `rng` must be null or a live handle from `rlx_rng_new`; `out` must be
/// null or valid for writing `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn rlx_sample(
    theta: f64,
    n: usize,
    rng: *mut RlxRng,
    out: *mut f64,
) -> RlxStatus {
    if rng.is_null() {
        return null_pointer("rng");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let params = match LomaxParams::new(theta) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match params.sample(n, &mut (*rng).0) {
        Ok(values) => {
            std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Builds a record-sequence handle from values that must already be
/// strictly increasing and nonnegative.
///
/// # Safety
/// `values` must be null or point to `len` readable doubles; `out` must be
/// null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_from_values(
    values: *const f64,
    len: usize,
    out: *mut *mut RlxRecords,
) -> RlxStatus {
    if values.is_null() {
        return null_pointer("values");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let slice = std::slice::from_raw_parts(values, len);
    match RecordSequence::new(slice.to_vec()) {
        Ok(records) => {
            *out = Box::into_raw(Box::new(RlxRecords(records)));
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Extracts the upper records of an arbitrary observation sequence into a
/// new handle.
///
/// # Safety
/// `values` must be null or point to `len` readable doubles; `out` must be
/// null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_extract(
    values: *const f64,
    len: usize,
    out: *mut *mut RlxRecords,
) -> RlxStatus {
    if values.is_null() {
        return null_pointer("values");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let slice = std::slice::from_raw_parts(values, len);
    match extract_upper_records(slice) {
        Ok(records) => {
            *out = Box::into_raw(Box::new(RlxRecords(records)));
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Draws the first `m` records of an i.i.d. stream into a new handle.
///
/// # Safety
/// `rng` must be null or a live handle from `rlx_rng_new`; `out` must be
/// null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_sample(
    m: usize,
    theta: f64,
    rng: *mut RlxRng,
    out: *mut *mut RlxRecords,
) -> RlxStatus {
    if rng.is_null() {
        return null_pointer("rng");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let params = match LomaxParams::new(theta) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match sample_records(m, &params, &mut (*rng).0) {
        Ok(records) => {
            *out = Box::into_raw(Box::new(RlxRecords(records)));
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Number of records held by the handle; zero for null.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_len(records: *const RlxRecords) -> usize {
    if records.is_null() {
        0
    } else {
        (*records).0.m()
    }
}

/// Copies the record values into the caller's buffer of capacity `cap`.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor; `out` must be null or valid for writing `cap` doubles.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_values(
    records: *const RlxRecords,
    out: *mut f64,
    cap: usize,
) -> RlxStatus {
    if records.is_null() {
        return null_pointer("records");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let values = (*records).0.values();
    if cap < values.len() {
        remember_error("output buffer shorter than the record sequence");
        return RlxStatus::RlxStatusBufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    RlxStatus::RlxStatusOk
}

/// Releases a record-sequence handle. Null is ignored.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor; it must not be used after this call.
#[no_mangle]
pub unsafe extern "C" fn rlx_records_free(records: *mut RlxRecords) {
    if !records.is_null() {
        drop(Box::from_raw(records));
    }
}

/// Maximum-likelihood estimate from a complete sample.
///
/// # Safety
/// `values` must be null or point to `len` readable doubles; `out` must be
/// null or valid for writing one `RlxEstimate`.
#[no_mangle]
pub unsafe extern "C" fn rlx_mle_from_sample(
    values: *const f64,
    len: usize,
    out: *mut RlxEstimate,
) -> RlxStatus {
    if values.is_null() {
        return null_pointer("values");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let slice = std::slice::from_raw_parts(values, len);
    match mle_from_sample(slice) {
        Ok(report) => {
            *out = RlxEstimate {
                theta_hat: report.theta_hat,
                source: match report.source {
                    EstimatorSource::Sample => RlxEstimatorSource::RlxSourceSample,
                    EstimatorSource::Records => RlxEstimatorSource::RlxSourceRecords,
                },
                count: report.count,
            };
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Maximum-likelihood estimate from a record sequence.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor; `out` must be null or valid for writing one `RlxEstimate`.
#[no_mangle]
pub unsafe extern "C" fn rlx_mle_from_records(
    records: *const RlxRecords,
    out: *mut RlxEstimate,
) -> RlxStatus {
    if records.is_null() {
        return null_pointer("records");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    match mle_from_records(&(*records).0) {
        Ok(report) => {
            *out = RlxEstimate {
                theta_hat: report.theta_hat,
                source: RlxEstimatorSource::RlxSourceRecords,
                count: report.count,
            };
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Plug-in density estimate f(x; θ̂) from a record sequence.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor; `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_pdf_hat(
    x: f64,
    records: *const RlxRecords,
    out: *mut f64,
) -> RlxStatus {
    if records.is_null() {
        return null_pointer("records");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    match pdf_hat(x, &(*records).0) {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Plug-in CDF estimate F(x; θ̂) from a record sequence.
///
/// # Safety
/// `records` must be null or a live handle from an `rlx_records_*`
/// constructor; `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_cdf_hat(
    x: f64,
    records: *const RlxRecords,
    out: *mut f64,
) -> RlxStatus {
    if records.is_null() {
        return null_pointer("records");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    match cdf_hat(x, &(*records).0) {
        Ok(p) => {
            *out = p.value();
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Density of the distribution at `x`.
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_pdf(theta: f64, x: f64, out: *mut f64) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match LomaxParams::new(theta).and_then(|p| p.pdf(x)) {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Distribution function at `x`.
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_cdf(theta: f64, x: f64, out: *mut f64) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match LomaxParams::new(theta).and_then(|p| p.cdf(x)) {
        Ok(p) => {
            *out = p.value();
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Quantile at probability `p` in [0, 1).
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_quantile(theta: f64, p: f64, out: *mut f64) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let result = LomaxParams::new(theta)
        .and_then(|params| Probability::new(p).and_then(|prob| params.quantile(prob)));
    match result {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

unsafe fn series_call(
    theta: f64,
    out: *mut RlxSeriesResult,
    eval: impl FnOnce(&LomaxParams) -> record_lomax::error::Result<SeriesResult>,
) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let params = match LomaxParams::new(theta) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match eval(&params) {
        Ok(result) => {
            *out = series_out(&result);
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Truncated-series value of E[f̂(x)] for m records. The diagnostics in the
/// result describe summation precision only; at small m the truncated series
/// deviates from the true moment by its truncation remainder.
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_expected_pdf_hat(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| expected_pdf_hat(x, p, m))
}

/// Truncated-series value of E[F̂(x)] for m records.
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_expected_cdf_hat(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| expected_cdf_hat(x, p, m))
}

/// Truncated-series value of E[f̂(x)²] for m records.
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_second_moment_pdf_hat(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| second_moment_pdf_hat(x, p, m))
}

/// Truncated-series mean squared error of the plug-in density estimate.
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_mse_pdf_hat(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| mse_pdf_hat(x, p, m))
}

/// Truncated-series mean squared error of the plug-in CDF estimate.
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_mse_cdf_hat(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| mse_cdf_hat(x, p, m))
}

/// Gap between the survival/density moment ratio and its limit θ(1+x).
///
/// # Safety
/// `out` must be null or valid for writing one `RlxSeriesResult`.
#[no_mangle]
pub unsafe extern "C" fn rlx_identity_gap(
    x: f64,
    theta: f64,
    m: u32,
    out: *mut RlxSeriesResult,
) -> RlxStatus {
    series_call(theta, out, |p| asymptotic_identity_gap(x, p, m))
}

/// Ratio Γ(n−i−1)·n^{i+1}/Γ(n), which tends to 1 as n grows.
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_gamma_ratio(n: u64, i: u64, out: *mut f64) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match gamma_ratio(n, i) {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// True moment of the chosen plug-in quantity by adaptive quadrature of its
/// defining integral — independent of the truncated series.
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_quadrature_oracle(
    target: RlxOracleTarget,
    x: f64,
    theta: f64,
    m: u32,
    out: *mut f64,
) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let target = match target {
        RlxOracleTarget::RlxOraclePdfHat => OracleTarget::PdfHat,
        RlxOracleTarget::RlxOraclePdfHatSquared => OracleTarget::PdfHatSquared,
        RlxOracleTarget::RlxOracleCdfHat => OracleTarget::CdfHat,
        RlxOracleTarget::RlxOracleCdfHatSquared => OracleTarget::CdfHatSquared,
    };
    let result = LomaxParams::new(theta).and_then(|p| quadrature_oracle(target, x, &p, m));
    match result {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

/// Exact P(|θ̂ − θ| ≥ ε) for the record-based estimator via the
/// regularized incomplete gamma function.
///
/// # Safety
/// `out` must be null or valid for writing one double.
#[no_mangle]
pub unsafe extern "C" fn rlx_exact_record_mle_exceedance(
    theta: f64,
    m: u32,
    epsilon: f64,
    out: *mut f64,
) -> RlxStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let result =
        LomaxParams::new(theta).and_then(|p| exact_record_mle_exceedance(&p, m, epsilon));
    match result {
        Ok(v) => {
            *out = v;
            RlxStatus::RlxStatusOk
        }
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn message() -> String {
        let mut buf = vec![0i8; 256];
        let needed = unsafe { rlx_last_error_message(buf.as_mut_ptr(), buf.len()) };
        assert!(needed <= buf.len());
        let bytes: Vec<u8> = buf
            .iter()
            .take_while(|&&c| c != 0)
            .map(|&c| c as u8)
            .collect();
        String::from_utf8(bytes).unwrap()
    }

    #[test]
    fn sample_to_estimate_round_trip() {
        let rng = rlx_rng_new(42, 0, 0);
        let mut draws = vec![0.0f64; 500];
        let status = unsafe { rlx_sample(1.0, draws.len(), rng, draws.as_mut_ptr()) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        let mut estimate = RlxEstimate {
            theta_hat: 0.0,
            source: RlxEstimatorSource::RlxSourceSample,
            count: 0,
        };
        let status = unsafe { rlx_mle_from_sample(draws.as_ptr(), draws.len(), &mut estimate) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert_eq!(estimate.count, 500);
        assert!((estimate.theta_hat - 1.0).abs() < 0.2, "{}", estimate.theta_hat);
        unsafe { rlx_rng_free(rng) };
    }

    #[test]
    fn identical_seeds_reproduce_identical_draws() {
        let mut first = vec![0.0f64; 16];
        let mut second = vec![0.0f64; 16];
        for buf in [&mut first, &mut second] {
            let rng = rlx_rng_new(7, 3, 11);
            let status = unsafe { rlx_sample(2.0, buf.len(), rng, buf.as_mut_ptr()) };
            assert_eq!(status, RlxStatus::RlxStatusOk);
            unsafe { rlx_rng_free(rng) };
        }
        assert_eq!(first, second);
    }

    #[test]
    fn record_handles_round_trip_and_estimate() {
        let values = [0.5f64, 1.25, 4.0];
        let mut handle: *mut RlxRecords = std::ptr::null_mut();
        let status = unsafe { rlx_records_from_values(values.as_ptr(), 3, &mut handle) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert_eq!(unsafe { rlx_records_len(handle) }, 3);

        let mut copied = [0.0f64; 3];
        let status = unsafe { rlx_records_values(handle, copied.as_mut_ptr(), 3) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert_eq!(copied, values);

        let mut short = [0.0f64; 2];
        let status = unsafe { rlx_records_values(handle, short.as_mut_ptr(), 2) };
        assert_eq!(status, RlxStatus::RlxStatusBufferTooSmall);

        let mut estimate = RlxEstimate {
            theta_hat: 0.0,
            source: RlxEstimatorSource::RlxSourceSample,
            count: 0,
        };
        let status = unsafe { rlx_mle_from_records(handle, &mut estimate) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert!((estimate.theta_hat - 5.0f64.ln() / 3.0).abs() < 1e-15);
        assert_eq!(estimate.source as i32, RlxEstimatorSource::RlxSourceRecords as i32);
        unsafe { rlx_records_free(handle) };
    }

    #[test]
    fn extraction_matches_library_behavior() {
        let raw = [3.0f64, 1.0, 4.0, 1.0, 5.0];
        let mut handle: *mut RlxRecords = std::ptr::null_mut();
        let status = unsafe { rlx_records_extract(raw.as_ptr(), raw.len(), &mut handle) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        let mut values = [0.0f64; 3];
        assert_eq!(unsafe { rlx_records_len(handle) }, 3);
        unsafe { rlx_records_values(handle, values.as_mut_ptr(), 3) };
        assert_eq!(values, [3.0, 4.0, 5.0]);
        unsafe { rlx_records_free(handle) };
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn series_functions_match_the_library() {
        let params = LomaxParams::new(1.0).unwrap();
        let want = expected_pdf_hat(0.5, &params, 8).unwrap();
        let mut got = RlxSeriesResult {
            value: 0.0,
            terms: 0,
            max_term_magnitude: 0.0,
            cancellation_flag: true,
        };
        let status = unsafe { rlx_expected_pdf_hat(0.5, 1.0, 8, &mut got) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert_eq!(got.value.to_bits(), want.value.to_bits());
        assert_eq!(got.terms, want.terms);
        assert!(!got.cancellation_flag);

        let mut oracle = 0.0f64;
        let status = unsafe {
            rlx_quadrature_oracle(RlxOracleTarget::RlxOraclePdfHat, 0.5, 1.0, 8, &mut oracle)
        };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        // The oracle computes the true moment; the truncated series carries
        // its remainder at m=8, so they differ in the fourth decimal here.
        assert!((oracle - 0.45501871867776841).abs() < 1e-9);
        assert!((got.value - oracle).abs() > 1e-4);

        let mut gap = RlxSeriesResult {
            value: 0.0,
            terms: 0,
            max_term_magnitude: 0.0,
            cancellation_flag: true,
        };
        let status = unsafe { rlx_identity_gap(0.0, 1.0, 5, &mut gap) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        assert!((gap.value - (-0.2)).abs() < 1e-13);

        let mut ratio = 0.0f64;
        assert_eq!(
            unsafe { rlx_gamma_ratio(3, 0, &mut ratio) },
            RlxStatus::RlxStatusOk
        );
        assert!((ratio - 1.5).abs() < 1e-12);

        let mut tail = 0.0f64;
        assert_eq!(
            unsafe { rlx_exact_record_mle_exceedance(1.0, 160, 0.05, &mut tail) },
            RlxStatus::RlxStatusOk
        );
        assert!((tail - 0.52701148269649079).abs() < 1e-12);
    }

    #[test]
    fn distribution_scalars_work() {
        let mut value = 0.0f64;
        assert_eq!(unsafe { rlx_pdf(1.0, 0.0, &mut value) }, RlxStatus::RlxStatusOk);
        assert!((value - 1.0).abs() < 1e-15);
        assert_eq!(unsafe { rlx_cdf(1.0, 1.0, &mut value) }, RlxStatus::RlxStatusOk);
        assert!((value - 0.5).abs() < 1e-15);
        assert_eq!(unsafe { rlx_quantile(1.0, 0.5, &mut value) }, RlxStatus::RlxStatusOk);
        assert!((value - 1.0).abs() < 1e-12);

        let rng = rlx_rng_new(1, 0, 0);
        let mut handle: *mut RlxRecords = std::ptr::null_mut();
        let status = unsafe { rlx_records_sample(5, 1.0, rng, &mut handle) };
        assert_eq!(status, RlxStatus::RlxStatusOk);
        let mut hat = 0.0f64;
        assert_eq!(unsafe { rlx_pdf_hat(0.5, handle, &mut hat) }, RlxStatus::RlxStatusOk);
        assert!(hat > 0.0);
        assert_eq!(unsafe { rlx_cdf_hat(0.5, handle, &mut hat) }, RlxStatus::RlxStatusOk);
        assert!((0.0..1.0).contains(&hat));
        unsafe { rlx_records_free(handle) };
        unsafe { rlx_rng_free(rng) };
    }

    #[test]
    fn null_pointers_and_bad_arguments_are_reported() {
        let mut value = 0.0f64;
        assert_eq!(
            unsafe { rlx_sample(1.0, 4, std::ptr::null_mut(), &mut value) },
            RlxStatus::RlxStatusNullPointer
        );
        assert!(message().contains("must not be null"));

        assert_eq!(
            unsafe { rlx_pdf(-1.0, 0.0, &mut value) },
            RlxStatus::RlxStatusInvalidArgument
        );
        assert!(message().contains("invalid parameter"));

        let mut handle: *mut RlxRecords = std::ptr::null_mut();
        let unsorted = [2.0f64, 1.0];
        assert_eq!(
            unsafe { rlx_records_from_values(unsorted.as_ptr(), 2, &mut handle) },
            RlxStatus::RlxStatusNotIncreasing
        );
        let empty: [f64; 0] = [];
        assert_eq!(
            unsafe { rlx_records_extract(empty.as_ptr(), 0, &mut handle) },
            RlxStatus::RlxStatusEmptyInput
        );

        let zeros = [0.0f64, 0.0];
        let mut estimate = RlxEstimate {
            theta_hat: 0.0,
            source: RlxEstimatorSource::RlxSourceSample,
            count: 0,
        };
        assert_eq!(
            unsafe { rlx_mle_from_sample(zeros.as_ptr(), 2, &mut estimate) },
            RlxStatus::RlxStatusDegenerateData
        );
        assert!(message().contains("degenerate"));

        let mut series = RlxSeriesResult {
            value: 0.0,
            terms: 0,
            max_term_magnitude: 0.0,
            cancellation_flag: false,
        };
        assert_eq!(
            unsafe { rlx_expected_pdf_hat(0.5, 1.0, 1, &mut series) },
            RlxStatus::RlxStatusInvalidArgument,
            "E[pdf_hat] needs m >= 2"
        );
        assert_eq!(
            unsafe { rlx_expected_pdf_hat(0.5, 1.0, 8, std::ptr::null_mut()) },
            RlxStatus::RlxStatusNullPointer
        );
    }

    #[test]
    fn error_message_truncates_but_stays_terminated() {
        let mut value = 0.0f64;
        unsafe { rlx_pdf(-1.0, 0.0, &mut value) };
        let mut tiny = vec![0x7fi8; 8];
        let needed = unsafe { rlx_last_error_message(tiny.as_mut_ptr(), tiny.len()) };
        assert!(needed > tiny.len(), "message should not fit in 8 bytes");
        assert_eq!(tiny[7], 0, "truncated copy must still be NUL-terminated");
        let needed_only = unsafe { rlx_last_error_message(std::ptr::null_mut(), 0) };
        assert_eq!(needed, needed_only);
    }

    #[test]
    fn version_string_is_static_and_sane() {
        let ptr = rlx_version();
        let text = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
        assert_eq!(text, env!("CARGO_PKG_VERSION"));
    }
}
