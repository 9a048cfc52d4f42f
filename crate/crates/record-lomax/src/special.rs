//! Log-gamma and the regularized incomplete gamma function.
//!
//! Everything downstream evaluates gamma functions at positive (mostly
//! integer) arguments, and several consumers exponentiate *differences* of
//! log-gamma values, so absolute accuracy of `ln_gamma` matters more than
//! usual. Integer arguments up to 1023 come from a cached table of compensated
//! log-factorial sums; everything else goes through the Stirling series after
//! shifting the argument above 15, where the truncation error of the series
//! is far below one ulp.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use std::sync::OnceLock;

const LN_FACTORIAL_TABLE_LEN: usize = 1024;

fn ln_factorial_table() -> &'static [f64; LN_FACTORIAL_TABLE_LEN] {
    static TABLE: OnceLock<[f64; LN_FACTORIAL_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0f64; LN_FACTORIAL_TABLE_LEN];
        let mut acc = KahanSum::new();
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            acc.add((k as f64).ln());
            *slot = acc.value();
        }
        table
    })
}

/// `ln(k!)`, exact table lookup for `k < 1024`, Stirling beyond.
pub fn ln_factorial(k: u64) -> f64 {
    if (k as usize) < LN_FACTORIAL_TABLE_LEN {
        ln_factorial_table()[k as usize]
    } else {
        stirling_ln_gamma(k as f64 + 1.0)
    }
}

/// Natural log of the gamma function for `x > 0`.
///
/// Integer arguments resolve through the log-factorial table, so identities
/// such as `ln_gamma(2) == 0` hold exactly.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0 && x.is_finite(), "ln_gamma requires finite x > 0");
    if x.fract() == 0.0 && x < LN_FACTORIAL_TABLE_LEN as f64 {
        return ln_factorial(x as u64 - 1);
    }
    if x >= 15.0 {
        return stirling_ln_gamma(x);
    }
    // Shift into the Stirling region: ln G(x) = ln G(x + k) - sum ln(x + j).
    let mut shift = KahanSum::new();
    let mut z = x;
    while z < 15.0 {
        shift.add(z.ln());
        z += 1.0;
    }
    stirling_ln_gamma(z) - shift.value()
}

/// Stirling series with six Bernoulli correction terms; for `z >= 15` the
/// truncation error is below 1e-17 in absolute terms.
fn stirling_ln_gamma(z: f64) -> f64 {
    const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_74;
    // B_{2n} / (2n (2n - 1)) for n = 1..6.
    const COEFFS: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
    ];
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut correction = 0.0;
    let mut power = inv;
    for c in COEFFS {
        correction += c * power;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + correction
}

/// Regularized lower incomplete gamma function `P(a, x)`.
///
/// Series expansion for `x < a + 1`, Lentz continued fraction for the upper
/// tail otherwise; both iterate to double-precision convergence.
pub fn regularized_lower_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "shape must be positive and finite",
        });
    }
    if !(x >= 0.0) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            reason: "incomplete gamma argument must be nonnegative",
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let log_prefactor = a * x.ln() - x - ln_gamma(a);
    const EPS: f64 = 1e-16;
    const MAX_ITER: usize = 10_000;
    if x < a + 1.0 {
        // P(a, x) = x^a e^-x / Gamma(a) * sum_{n>=0} x^n / (a (a+1) ... (a+n)).
        let mut term = 1.0 / a;
        let mut sum = term;
        for n in 1..MAX_ITER {
            term *= x / (a + n as f64);
            sum += term;
            if term.abs() < sum.abs() * EPS {
                return Ok((log_prefactor.exp() * sum).min(1.0));
            }
        }
        Err(Error::QuadratureDidNotConverge {
            estimate: log_prefactor.exp() * sum,
            error_bound: term.abs(),
            segments: MAX_ITER as u32,
        })
    } else {
        // Q(a, x) via the standard continued fraction, evaluated with
        // modified Lentz; P = 1 - Q.
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < EPS {
                let q = log_prefactor.exp() * h;
                return Ok((1.0 - q).clamp(0.0, 1.0));
            }
        }
        Err(Error::QuadratureDidNotConverge {
            estimate: 1.0 - log_prefactor.exp() * h,
            error_bound: f64::NAN,
            segments: MAX_ITER as u32,
        })
    }
}

/// CDF of the gamma distribution with integer-or-real `shape` and `scale`.
pub fn gamma_cdf(x: f64, shape: f64, scale: f64) -> Result<f64> {
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::InvalidParameter {
            name: "scale",
            value: scale,
            reason: "scale must be positive and finite",
        });
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    regularized_lower_gamma(shape, x / scale)
}
