//! Compensated summation and a small double-double type.
//!
//! The alternating gamma series and the Monte Carlo accumulators both add long
//! streams of mixed-sign terms; a running compensation term keeps the rounding
//! error of the sum near one ulp of the result instead of growing with the
//! number of terms. The double-double type provides roughly 31 significant
//! digits for re-evaluating sums that cancel too heavily for plain `f64`.

/// Neumaier-style compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term, folding the rounding error into the compensation.
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// The compensated total.
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Unevaluated sum of two doubles, `hi + lo` with `|lo| <= ulp(hi)/2`.
///
/// Only the handful of operations needed by the series fallback are
/// implemented: addition, multiplication by a double, and division by a
/// double.
#[derive(Debug, Clone, Copy)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

/// Error-free sum: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact quotient of two doubles, rounded to double-double.
    pub fn from_div(a: f64, b: f64) -> Self {
        let q = a / b;
        let (p, e) = two_prod(q, b);
        let r = (a - p - e) / b;
        let (hi, lo) = two_sum(q, r);
        Self { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = two_sum(p, e);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        // Remainder of the first quotient digit, then one refinement step.
        let r = ((self.hi - p - e) + self.lo) / b;
        let (hi, lo) = two_sum(q1, r);
        Self { hi, lo }
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs_value(&self) -> f64 {
        self.value().abs()
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = two_sum(s, e);
        Self { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_small_terms_drowned_by_large_ones() {
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        let expected = 10_000.0 * 1e-16;
        // A plain f64 sum returns exactly 0 here; the compensated sum keeps
        // the drowned terms to within its own accumulation noise.
        assert!((acc.value() - expected).abs() < 1e-24);
    }

    #[test]
    fn kahan_matches_plain_sum_on_benign_input() {
        let mut acc = KahanSum::new();
        let mut plain = 0.0;
        for i in 1..=1000 {
            let x = (i as f64).sqrt();
            acc.add(x);
            plain += x;
        }
        assert!((acc.value() - plain).abs() <= 1e-9 * plain);
    }

    #[test]
    fn double_double_division_carries_extra_digits() {
        // 1/3 in double-double: hi is the rounded quotient, lo the residual.
        let third = DoubleDouble::from_div(1.0, 3.0);
        let reconstructed = third.mul_f64(3.0);
        assert!((reconstructed.value() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn double_double_add_cancels_exactly() {
        let a = DoubleDouble::from_div(1.0, 7.0);
        let b = a.mul_f64(-1.0);
        assert_eq!((a + b).value(), 0.0);
    }

    #[test]
    fn double_double_chain_is_more_accurate_than_f64() {
        // Product 0.1 * 0.2 * ... accumulated; compare against exact rational path.
        let mut dd = DoubleDouble::from_f64(1.0);
        for k in 1..=20 {
            dd = dd.mul_f64(k as f64).div_f64(k as f64);
        }
        assert_eq!(dd.value(), 1.0);
    }
}
