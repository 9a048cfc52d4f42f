//! Exact finite-series moments of the record-based plug-in estimators, and an
//! independent quadrature oracle for validating them.
//!
//! With `T = ln(1 + R_m) ~ Gamma(m, theta)` and `A = ln(1 + x)`, expanding
//! the plug-in density and CDF estimates termwise against the Gamma density
//! yields sums of the form
//!
//! ```text
//!   sum_{i=0}^{m-1-shift}  Gamma(m - i - shift) / (Gamma(m) Gamma(i + 1)) * z^i
//! ```
//!
//! with `z = -mA/theta` (or `-2mA/theta` for squared targets) and a shift of
//! 0, 1, or 2 picking out the CDF, density, and squared-density cases. The
//! expansion is truncated at the last index whose gamma argument is positive.
//!
//! An honesty note that governs how these values may be used: the truncated
//! series is NOT the exact moment at finite `m`. The termwise integrals past
//! the truncation diverge, so the interchange of sum and integral that
//! produces the series leaves a remainder. The remainder vanishes
//! superexponentially as `m` grows at fixed `x`, so series and true moment
//! agree to near machine precision once `m` is comfortably larger than
//! `m·ln(1+x)/theta` is "small" — concretely, once
//! `(m·A/theta)^{m-1}/(Gamma(m-1)Gamma(m))` is negligible — but at small `m`
//! with large `A/theta` the two differ by orders of magnitude, and the
//! squared-target series can even turn negative. The [`quadrature_oracle`]
//! computes the true moment by direct integration and shares no series code;
//! comparing the two routes measures exactly this truncation remainder.
//!
//! Within the series itself, terms alternate and can grow before they
//! shrink, so they are generated in log space, accumulated with compensated
//! summation, and re-evaluated in double-double arithmetic when the result is
//! small enough relative to the largest term for cancellation to matter.
//! Results carry the largest term magnitude and a cancellation flag so
//! callers can judge how much of the 53-bit budget survived. The flag speaks
//! only to summation precision, never to the truncation remainder above.

use crate::error::{Error, Result};
use crate::kahan::{DoubleDouble, KahanSum};
use crate::lomax::LomaxParams;
use crate::quad;
use crate::special::ln_gamma;

/// A series value is flagged when it is smaller than this fraction of the
/// largest term that produced it.
pub const CANCELLATION_THRESHOLD: f64 = 1e-8;

/// Whether the series argument carries `-mA/theta` or `-2mA/theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesScale {
    Single,
    Double,
}

/// Describes one gamma-series evaluation point.
#[derive(Debug, Clone, Copy)]
pub struct SeriesTermSpec {
    pub m: u32,
    pub x: f64,
    pub theta: LomaxParams,
    pub scale: SeriesScale,
}

impl SeriesTermSpec {
    /// The expansion argument `z`: `-mA/theta`, doubled for squared targets.
    pub fn argument(&self) -> f64 {
        let base = -(f64::from(self.m) * self.x.ln_1p()) / self.theta.theta();
        match self.scale {
            SeriesScale::Single => base,
            SeriesScale::Double => 2.0 * base,
        }
    }
}

/// Value of a finite gamma series together with conditioning diagnostics.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SeriesResult {
    /// The (possibly composed) series value.
    pub value: f64,
    /// Number of terms in the truncation, summed over component series for
    /// composed quantities such as mean squared errors.
    pub terms: u32,
    /// Magnitude of the largest contribution, on the scale of `value`.
    pub max_term_magnitude: f64,
    /// True when `|value| < 1e-8 * max_term_magnitude`: at least eight
    /// digits were lost to cancellation and the value should be treated
    /// with suspicion even after the double-double re-evaluation.
    pub cancellation_flag: bool,
}

impl SeriesResult {
    fn flag_of(value: f64, max_term: f64) -> bool {
        value.abs() < CANCELLATION_THRESHOLD * max_term
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            name: "x",
            value: x,
            reason: "support is x >= 0",
        });
    }
    Ok(())
}

fn check_m(m: u32, minimum: u32, why: &'static str) -> Result<()> {
    if m < minimum {
        return Err(Error::InvalidParameter {
            name: "m",
            value: f64::from(m),
            reason: why,
        });
    }
    Ok(())
}

/// Evaluates `sum_{i=0}^{m-1-shift} Gamma(m-i-shift) / (Gamma(m) Gamma(i+1)) z^i`.
///
/// Terms are generated by the exact ratio recursion
/// `t_{i} = t_{i-1} * z / ((m - i - shift) * i)` carried in log space, so no
/// log-gamma differences enter and the `i = 0` term is correct to an ulp.
fn gamma_shift_series(m: u32, shift: u32, z: f64) -> SeriesResult {
    debug_assert!(m > shift, "series needs m > shift");
    let n_terms = m - shift;
    let mf = f64::from(m);

    // ln t_0 = -sum_{j=1}^{shift} ln(m - j).
    let mut ln_t = 0.0;
    for j in 1..=shift {
        ln_t -= (mf - f64::from(j)).ln();
    }
    let ln_abs_z = z.abs().ln();
    let negative_z = z < 0.0;

    let mut acc = KahanSum::new();
    let mut sign = 1.0f64;
    let mut max_ln = f64::NEG_INFINITY;
    for i in 0..n_terms {
        if i > 0 {
            ln_t += ln_abs_z - (mf - f64::from(i + shift)).ln() - f64::from(i).ln();
            if negative_z {
                sign = -sign;
            }
        }
        if ln_t > max_ln {
            max_ln = ln_t;
        }
        acc.add(sign * ln_t.exp());
    }
    let value = acc.value();
    let max_term = max_ln.exp();

    if !SeriesResult::flag_of(value, max_term) {
        return SeriesResult {
            value,
            terms: n_terms,
            max_term_magnitude: max_term,
            cancellation_flag: false,
        };
    }

    // Heavy cancellation: re-evaluate with ~31 significant digits. The term
    // recursion is exact rational arithmetic (integer factors below 2^53), so
    // the double-double pass loses essentially nothing per step.
    let mut denom0 = 1.0f64;
    for j in 1..=shift {
        denom0 *= mf - f64::from(j);
    }
    let mut term = DoubleDouble::from_div(1.0, denom0);
    let mut sum = DoubleDouble::from_f64(0.0);
    let mut max_term_dd = 0.0f64;
    for i in 0..n_terms {
        if i > 0 {
            let denominator = (mf - f64::from(i + shift)) * f64::from(i);
            term = term.mul_f64(z).div_f64(denominator);
        }
        if term.abs_value() > 1e300 {
            // The terms themselves overflow the fallback's range; keep the
            // first-pass value and leave the flag raised.
            return SeriesResult {
                value,
                terms: n_terms,
                max_term_magnitude: max_term,
                cancellation_flag: true,
            };
        }
        if term.abs_value() > max_term_dd {
            max_term_dd = term.abs_value();
        }
        sum = sum + term;
    }
    let refined = sum.value();
    SeriesResult {
        value: refined,
        terms: n_terms,
        max_term_magnitude: max_term_dd,
        cancellation_flag: SeriesResult::flag_of(refined, max_term_dd),
    }
}

/// Exact mean of the plug-in density estimate at `x`, for `m >= 2` records.
pub fn expected_pdf_hat(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    check_x(x)?;
    check_m(m, 2, "mean of the plug-in density needs m >= 2")?;
    let spec = SeriesTermSpec {
        m,
        x,
        theta: *params,
        scale: SeriesScale::Single,
    };
    let series = gamma_shift_series(m, 1, spec.argument());
    let prefactor = f64::from(m) / (params.theta() * (1.0 + x));
    Ok(SeriesResult {
        value: prefactor * series.value,
        terms: series.terms,
        max_term_magnitude: prefactor * series.max_term_magnitude,
        cancellation_flag: series.cancellation_flag,
    })
}

/// Exact mean of the plug-in CDF estimate at `x`, for `m >= 1` records.
pub fn expected_cdf_hat(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    check_x(x)?;
    check_m(m, 1, "mean of the plug-in CDF needs m >= 1")?;
    let series = survival_side_series(x, params, m, SeriesScale::Single);
    Ok(SeriesResult {
        value: 1.0 - series.value,
        terms: series.terms,
        max_term_magnitude: series.max_term_magnitude,
        cancellation_flag: series.cancellation_flag,
    })
}

/// The shift-0 series `E[(1+x)^{-m/T}]`, which is `1 - E[F_hat(x)]`; squared
/// targets use the doubled argument.
fn survival_side_series(
    x: f64,
    params: &LomaxParams,
    m: u32,
    scale: SeriesScale,
) -> SeriesResult {
    let spec = SeriesTermSpec {
        m,
        x,
        theta: *params,
        scale,
    };
    gamma_shift_series(m, 0, spec.argument())
}

/// Exact second moment of the plug-in density estimate, for `m >= 3`.
pub fn second_moment_pdf_hat(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    check_x(x)?;
    check_m(m, 3, "second moment of the plug-in density needs m >= 3")?;
    let spec = SeriesTermSpec {
        m,
        x,
        theta: *params,
        scale: SeriesScale::Double,
    };
    let series = gamma_shift_series(m, 2, spec.argument());
    let prefactor = f64::from(m) / (params.theta() * (1.0 + x));
    let prefactor_sq = prefactor * prefactor;
    Ok(SeriesResult {
        value: prefactor_sq * series.value,
        terms: series.terms,
        max_term_magnitude: prefactor_sq * series.max_term_magnitude,
        cancellation_flag: series.cancellation_flag,
    })
}

/// Mean squared error of the plug-in density estimate,
/// `E[f_hat^2] - 2 f E[f_hat] + f^2`, for `m >= 3`.
pub fn mse_pdf_hat(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    let second = second_moment_pdf_hat(x, params, m)?;
    let first = expected_pdf_hat(x, params, m)?;
    let f = params.pdf(x)?;
    let value = second.value - 2.0 * f * first.value + f * f;
    let max_term = second
        .max_term_magnitude
        .max(2.0 * f * first.max_term_magnitude)
        .max(f * f);
    Ok(SeriesResult {
        value,
        terms: second.terms + first.terms,
        max_term_magnitude: max_term,
        cancellation_flag: second.cancellation_flag || first.cancellation_flag,
    })
}

/// Mean squared error of the plug-in CDF estimate,
/// `E[F_hat^2] - 2 F E[F_hat] + F^2`, for `m >= 1`.
///
/// Uses `E[F_hat^2] = 1 - 2 S(z) + S(2z)` where `S` is the shift-0 series,
/// so only two series evaluations are needed.
pub fn mse_cdf_hat(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    check_x(x)?;
    check_m(m, 1, "MSE of the plug-in CDF needs m >= 1")?;
    let single = survival_side_series(x, params, m, SeriesScale::Single);
    let double = survival_side_series(x, params, m, SeriesScale::Double);
    let big_f = params.cdf(x)?.value();
    let expected = 1.0 - single.value;
    let second_moment = 1.0 - 2.0 * single.value + double.value;
    let value = second_moment - 2.0 * big_f * expected + big_f * big_f;
    let max_term = (2.0 * single.max_term_magnitude)
        .max(double.max_term_magnitude)
        .max(1.0);
    Ok(SeriesResult {
        value,
        terms: single.terms + double.terms,
        max_term_magnitude: max_term,
        cancellation_flag: single.cancellation_flag || double.cancellation_flag,
    })
}

/// The normalized gamma ratio `Gamma(n - i - 1) n^{i+1} / Gamma(n)`, which
/// tends to 1 as `n` grows with `i` fixed. Requires `n >= i + 2`.
pub fn gamma_ratio(n: u64, i: u64) -> Result<f64> {
    if n < i + 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "gamma ratio needs n >= i + 2",
        });
    }
    let nf = n as f64;
    let exponent = ln_gamma(nf - i as f64 - 1.0) + (i as f64 + 1.0) * nf.ln() - ln_gamma(nf);
    Ok(exponent.exp())
}

/// Deviation of the finite-`m` moments from the hazard-rate identity:
/// `(1 - E[F_hat]) / E[f_hat] - theta (1 + x)`, which tends to 0 as `m`
/// grows. Requires `m >= 3`.
pub fn asymptotic_identity_gap(x: f64, params: &LomaxParams, m: u32) -> Result<SeriesResult> {
    check_x(x)?;
    check_m(m, 3, "the identity gap is defined for m >= 3")?;
    let survival_side = survival_side_series(x, params, m, SeriesScale::Single);
    let density_side = expected_pdf_hat(x, params, m)?;
    if density_side.value <= 0.0 {
        return Err(Error::NonPositiveExpectedPdf {
            value: density_side.value,
        });
    }
    Ok(SeriesResult {
        value: survival_side.value / density_side.value - params.theta() * (1.0 + x),
        terms: survival_side.terms + density_side.terms,
        max_term_magnitude: survival_side
            .max_term_magnitude
            .max(density_side.max_term_magnitude),
        cancellation_flag: survival_side.cancellation_flag || density_side.cancellation_flag,
    })
}

/// True when `E[f_hat(x)] < 1/theta` for every grid point. The bound holds
/// for interior `x` once `m` is moderately large but fails at `x = 0` for
/// every finite `m`, so grids should start strictly above zero.
pub fn pdf_hat_upper_bound_check(x_grid: &[f64], params: &LomaxParams, m: u32) -> Result<bool> {
    check_m(m, 2, "the bound check needs m >= 2")?;
    if x_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let limit = 1.0 / params.theta();
    for &x in x_grid {
        if expected_pdf_hat(x, params, m)?.value >= limit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scans candidate record counts (ascending) and reports the smallest one for
/// which the upper bound holds across the whole grid.
pub fn smallest_m_satisfying_bound(
    x_grid: &[f64],
    params: &LomaxParams,
    candidates: &[u32],
) -> Result<Option<u32>> {
    for &m in candidates {
        if pdf_hat_upper_bound_check(x_grid, params, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Which expectation the quadrature oracle should integrate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleTarget {
    PdfHat,
    PdfHatSquared,
    CdfHat,
    CdfHatSquared,
}

impl OracleTarget {
    fn minimum_m(self) -> (u32, &'static str) {
        match self {
            OracleTarget::PdfHat => (2, "the density mean integral needs m >= 2"),
            OracleTarget::PdfHatSquared => (3, "the squared-density integral needs m >= 3"),
            OracleTarget::CdfHat | OracleTarget::CdfHatSquared => {
                (1, "the CDF integrals need m >= 1")
            }
        }
    }
}

/// Integrates the chosen plug-in expectation against the Gamma(m, theta) law
/// of `T = ln(1 + R_m)` by adaptive quadrature, mapped from `t in (0, inf)`
/// to `z in (0, 1)` via `t = m theta z / (1 - z)`.
///
/// This path never touches the series code: it exists to cross-check it.
/// Relative tolerance is 1e-10.
pub fn quadrature_oracle(
    target: OracleTarget,
    x: f64,
    params: &LomaxParams,
    m: u32,
) -> Result<f64> {
    check_x(x)?;
    let (min_m, why) = target.minimum_m();
    check_m(m, min_m, why)?;

    let theta = params.theta();
    let mf = f64::from(m);
    let a = x.ln_1p();
    let scale = mf * theta;
    let log_norm = ln_gamma(mf) + mf * theta.ln();

    let integrand = move |z: f64| {
        let t = scale * z / (1.0 - z);
        if !(t > 0.0) || !t.is_finite() {
            return 0.0;
        }
        let log_jacobian = scale.ln() - 2.0 * (1.0 - z).ln();
        let log_density = (mf - 1.0) * t.ln() - t / theta - log_norm;
        match target {
            OracleTarget::PdfHat => {
                // (m/t) (1 + x)^{-(m/t + 1)}; assembled in one exponent so the
                // t -> 0 corner stays finite.
                let log_g = mf.ln() - t.ln() - ((mf * a) / t + a);
                (log_density + log_jacobian + log_g).exp()
            }
            OracleTarget::PdfHatSquared => {
                let log_g = 2.0 * (mf.ln() - t.ln()) - 2.0 * ((mf * a) / t + a);
                (log_density + log_jacobian + log_g).exp()
            }
            OracleTarget::CdfHat => {
                let g = -(-(mf * a) / t).exp_m1();
                (log_density + log_jacobian).exp() * g
            }
            OracleTarget::CdfHatSquared => {
                let g = -(-(mf * a) / t).exp_m1();
                (log_density + log_jacobian).exp() * g * g
            }
        }
    };

    Ok(quad::integrate(integrand, 0.0, 1.0, 1e-10, 1e-300, 4000)?.value)
}
