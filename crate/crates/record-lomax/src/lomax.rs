//! The Lomax distribution in its shape-only parametrization.
//!
//! Density `f(x; theta) = (1/theta) (1+x)^{-(1/theta + 1)}` and CDF
//! `F(x; theta) = 1 - (1+x)^{-1/theta}` on `x >= 0`, for `theta > 0`. The key
//! structural fact used throughout the crate is that `ln(1 + X)` is
//! exponential with mean `theta`, so log-transformed sums and record maxima
//! have exact gamma laws.
//!
//! All transforms route through `ln_1p`/`exp_m1` so values near the left
//! endpoint keep full precision.

use crate::error::{Error, Result};
use crate::rng::uniform_from_bits;
use rand_chacha::rand_core::RngCore;
use serde::Serialize;

/// Validated shape parameter `theta > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LomaxParams {
    theta: f64,
}

impl LomaxParams {
    /// Accepts any finite `theta > 0`.
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "theta must be positive and finite",
            });
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Probability density at `x >= 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        let inv = 1.0 / self.theta;
        Ok(inv * (-(inv + 1.0) * x.ln_1p()).exp())
    }

    /// Distribution function at `x >= 0`.
    pub fn cdf(&self, x: f64) -> Result<Probability> {
        check_support(x)?;
        let value = -(-x.ln_1p() / self.theta).exp_m1();
        Ok(Probability(value))
    }

    /// Survival function `1 - F(x)`, computed without the subtraction so it
    /// stays accurate deep in the tail.
    pub fn survival(&self, x: f64) -> Result<f64> {
        check_support(x)?;
        Ok((-x.ln_1p() / self.theta).exp())
    }

    /// Quantile function on `p in [0, 1)`: `(1-p)^{-theta} - 1`.
    pub fn quantile(&self, p: Probability) -> Result<f64> {
        if p.0 >= 1.0 {
            return Err(Error::Domain {
                name: "p",
                value: p.0,
                reason: "quantile requires p < 1",
            });
        }
        Ok(self.quantile_from_uniform(p.0))
    }

    /// Inverse-CDF transform of a uniform variate in `[0, 1)`.
    #[inline]
    pub(crate) fn quantile_from_uniform(&self, u: f64) -> f64 {
        (-self.theta * (-u).ln_1p()).exp_m1()
    }

    /// Draws `n >= 1` independent values by inverse transform; draw `i`
    /// consumes exactly one 64-bit word from the stream.
    pub fn sample<R: RngCore>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Domain {
                name: "n",
                value: 0.0,
                reason: "sample size must be at least 1",
            });
        }
        Ok((0..n)
            .map(|_| self.quantile_from_uniform(uniform_from_bits(rng.next_u64())))
            .collect())
    }

    /// Exponential draw with mean `theta`; this is the law of `ln(1 + X)`.
    /// Strictly positive: the measure-zero uniform that would map to zero is
    /// rejected and redrawn.
    pub(crate) fn log_spacing_draw<R: RngCore>(&self, rng: &mut R) -> f64 {
        loop {
            let u = uniform_from_bits(rng.next_u64());
            let e = -self.theta * (-u).ln_1p();
            if e > 0.0 {
                return e;
            }
        }
    }
}

/// A checked probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain {
                name: "p",
                value: p,
                reason: "probability must lie in [0, 1]",
            });
        }
        Ok(Self(p))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

fn check_support(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            name: "x",
            value: x,
            reason: "support is x >= 0",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::StreamRng;
    use proptest::prelude::*;

    fn params(theta: f64) -> LomaxParams {
        LomaxParams::new(theta).unwrap()
    }

    /// Fixed 64-bit words standing in for a random stream.
    struct FixedBits(Vec<u64>, usize);

    impl RngCore for FixedBits {
        fn next_u32(&mut self) -> u32 {
            self.next_u64() as u32
        }
        fn next_u64(&mut self) -> u64 {
            let v = self.0[self.1 % self.0.len()];
            self.1 += 1;
            v
        }
        fn fill_bytes(&mut self, dest: &mut [u8]) {
            for b in dest.iter_mut() {
                *b = 0;
            }
        }
    }

    #[test]
    fn rejects_bad_theta() {
        assert!(LomaxParams::new(0.0).is_err());
        assert!(LomaxParams::new(-1.0).is_err());
        assert!(LomaxParams::new(f64::NAN).is_err());
        assert!(LomaxParams::new(f64::INFINITY).is_err());
        assert!(LomaxParams::new(1e-12).is_ok());
    }

    #[test]
    fn pdf_spot_values() {
        // (1/theta)(1+x)^{-(1/theta+1)} at hand-checked points.
        let p = params(0.5);
        let got = p.pdf(0.5).unwrap();
        let want = 2.0 * 1.5f64.powi(-3);
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");

        assert_eq!(params(1.0).pdf(0.0).unwrap(), 1.0);
        assert_eq!(params(2.0).pdf(0.0).unwrap(), 0.5);
    }

    #[test]
    fn cdf_spot_values() {
        let p = params(2.0);
        let x = 2.0f64.exp() - 1.0;
        let got = p.cdf(x).unwrap().value();
        let want = 1.0 - (-1.0f64).exp();
        assert!((got - want).abs() < 1e-15);
        assert_eq!(params(1.0).cdf(0.0).unwrap().value(), 0.0);
    }

    #[test]
    fn quantile_spot_values() {
        let p = params(2.0);
        let got = p.quantile(Probability::new(0.9).unwrap()).unwrap();
        assert!((got - 99.0).abs() < 1e-12 * 99.0);
        assert_eq!(
            params(1.0).quantile(Probability::new(0.0).unwrap()).unwrap(),
            0.0
        );
    }

    #[test]
    fn domain_errors() {
        let p = params(1.0);
        assert!(p.pdf(-0.1).is_err());
        assert!(p.cdf(-1e-9).is_err());
        assert!(p.pdf(f64::NAN).is_err());
        assert!(p.quantile(Probability::new(1.0).unwrap()).is_err());
        assert!(Probability::new(1.5).is_err());
        assert!(Probability::new(-0.1).is_err());
    }

    #[test]
    fn sample_is_the_inverse_transform_of_the_stream() {
        // A draw must equal quantile(U) for the U produced by the same word.
        let p = params(1.0);
        let mut bits = FixedBits(vec![1u64 << 63], 0);
        let draws = p.sample(1, &mut bits).unwrap();
        // U = 0.5 and theta = 1 gives (1 - 0.5)^{-1} - 1 = 1.
        assert_eq!(draws, vec![1.0]);

        let mut rng_a = StreamRng::new(11, 0);
        let mut rng_b = StreamRng::new(11, 0);
        let sampled = p.sample(64, &mut rng_a).unwrap();
        for v in sampled {
            let u = rng_b.next_uniform();
            assert_eq!(v, p.quantile_from_uniform(u));
        }
    }

    #[test]
    fn sample_rejects_zero_n() {
        let mut rng = StreamRng::new(1, 0);
        assert!(params(1.0).sample(0, &mut rng).is_err());
    }

    #[test]
    fn empirical_cdf_tracks_analytic_cdf() {
        let p = params(0.5);
        let mut rng = StreamRng::new(5, 0);
        let n = 200_000;
        let draws = p.sample(n, &mut rng).unwrap();
        for &x in &[0.1, 0.5, 2.0] {
            let empirical = draws.iter().filter(|&&v| v <= x).count() as f64 / n as f64;
            let want = p.cdf(x).unwrap().value();
            // Binomial SE at n = 2e5 is under 0.0012; allow 4 of them.
            assert!(
                (empirical - want).abs() < 0.005,
                "x={x}: {empirical} vs {want}"
            );
        }
    }

    #[test]
    fn hazard_identity_via_survival() {
        // (1 - F) / f = theta (1 + x), exact for the survival form.
        for &theta in &[0.25, 0.5, 1.0, 2.0, 5.0] {
            let p = params(theta);
            let mut x = 0.0;
            while x < 50.0 {
                let ratio = p.survival(x).unwrap() / p.pdf(x).unwrap();
                let want = theta * (1.0 + x);
                assert!(
                    (ratio - want).abs() <= 1e-10 * want,
                    "theta={theta} x={x}: {ratio} vs {want}"
                );
                x += 0.7;
            }
        }
    }

    proptest! {
        #[test]
        fn prop_quantile_cdf_round_trip(
            theta in 0.25f64..4.0,
            p in 0.0f64..0.999,
        ) {
            let params = LomaxParams::new(theta).unwrap();
            let x = params.quantile(Probability::new(p).unwrap()).unwrap();
            let back = params.cdf(x).unwrap().value();
            prop_assert!((back - p).abs() <= 1e-12);
        }

        #[test]
        fn prop_cdf_monotone_and_bounded(
            theta in 0.25f64..4.0,
            a in 0.0f64..100.0,
            delta in 1e-6f64..10.0,
        ) {
            let params = LomaxParams::new(theta).unwrap();
            let fa = params.cdf(a).unwrap().value();
            let fb = params.cdf(a + delta).unwrap().value();
            prop_assert!((0.0..=1.0).contains(&fa));
            prop_assert!(fb >= fa);
        }

        #[test]
        fn prop_pdf_positive_on_support(
            theta in 0.25f64..4.0,
            x in 0.0f64..100.0,
        ) {
            let params = LomaxParams::new(theta).unwrap();
            prop_assert!(params.pdf(x).unwrap() > 0.0);
        }
    }
}
