//! Maximum-likelihood estimation of the Lomax shape from complete samples and
//! from record values, plus the plug-in density and CDF estimators.
//!
//! Both estimators are means of log-transformed data:
//! the sample MLE is `(1/n) sum ln(1 + x_i)` and the record MLE is
//! `ln(1 + R_m) / m`. With `n = m` the two carry identical Gamma laws, which
//! is what the Monte Carlo harness exercises.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::lomax::{LomaxParams, Probability};
use crate::records::RecordSequence;
use serde::Serialize;

/// Which data the estimate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorSource {
    Sample,
    Records,
}

/// A point estimate together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateReport {
    /// The estimated shape parameter.
    pub theta_hat: f64,
    /// Whether a complete sample or a record sequence produced it.
    pub source: EstimatorSource,
    /// Number of observations used (sample size `n` or record count `m`).
    pub count: usize,
}

fn validate_sample(sample: &[f64]) -> Result<()> {
    if sample.is_empty() {
        return Err(Error::EmptyInput);
    }
    for &x in sample {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Domain {
                name: "sample",
                value: x,
                reason: "observations must be finite and nonnegative",
            });
        }
    }
    Ok(())
}

fn log_transform_sum(sample: &[f64]) -> f64 {
    let mut acc = KahanSum::new();
    for &x in sample {
        acc.add(x.ln_1p());
    }
    acc.value()
}

/// MLE from a complete i.i.d. sample: the mean of `ln(1 + x_i)`.
///
/// Errors on empty input, on observations outside `[0, inf)`, and on the
/// all-zero sample, which pushes the likelihood maximum to the boundary.
pub fn mle_from_sample(sample: &[f64]) -> Result<EstimateReport> {
    validate_sample(sample)?;
    let theta_hat = log_transform_sum(sample) / sample.len() as f64;
    if theta_hat <= 0.0 {
        return Err(Error::Degenerate(
            "all observations are zero; the likelihood has no interior maximum",
        ));
    }
    Ok(EstimateReport {
        theta_hat,
        source: EstimatorSource::Sample,
        count: sample.len(),
    })
}

/// MLE from the first `m` record values: `ln(1 + R_m) / m`.
///
/// Only the largest record enters the estimate; that is the full sufficiency
/// of the record likelihood in this model.
pub fn mle_from_records(records: &RecordSequence) -> Result<EstimateReport> {
    let r_m = records.last();
    if r_m < 0.0 {
        return Err(Error::Domain {
            name: "records",
            value: r_m,
            reason: "record MLE requires nonnegative records",
        });
    }
    let theta_hat = r_m.ln_1p() / records.m() as f64;
    if theta_hat <= 0.0 {
        return Err(Error::Degenerate(
            "largest record is zero; the likelihood has no interior maximum",
        ));
    }
    Ok(EstimateReport {
        theta_hat,
        source: EstimatorSource::Records,
        count: records.m(),
    })
}

/// Plug-in density estimate `f(x; theta_hat)` with `theta_hat` from records.
pub fn pdf_hat(x: f64, records: &RecordSequence) -> Result<f64> {
    let report = mle_from_records(records)?;
    LomaxParams::new(report.theta_hat)?.pdf(x)
}

/// Plug-in CDF estimate `F(x; theta_hat)` with `theta_hat` from records.
pub fn cdf_hat(x: f64, records: &RecordSequence) -> Result<Probability> {
    let report = mle_from_records(records)?;
    LomaxParams::new(report.theta_hat)?.cdf(x)
}

/// Log-likelihood of a complete sample:
/// `-n ln(theta) - (1/theta + 1) sum ln(1 + x_i)`.
pub fn log_likelihood_sample(sample: &[f64], params: &LomaxParams) -> Result<f64> {
    validate_sample(sample)?;
    let s = log_transform_sum(sample);
    if s <= 0.0 {
        return Err(Error::Degenerate(
            "all observations are zero; the likelihood has no interior maximum",
        ));
    }
    let theta = params.theta();
    Ok(-(sample.len() as f64) * theta.ln() - (1.0 / theta + 1.0) * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::{extract_upper_records, sample_records};
    use crate::rng::StreamRng;
    use proptest::prelude::*;

    #[test]
    fn sample_mle_spot_value() {
        let e = 1.0f64.exp();
        let report = mle_from_sample(&[e - 1.0, e * e - 1.0]).unwrap();
        assert!((report.theta_hat - 1.5).abs() < 1e-14);
        assert_eq!(report.source, EstimatorSource::Sample);
        assert_eq!(report.count, 2);
    }

    #[test]
    fn record_mle_spot_value() {
        // Extract-then-estimate on [3, 1, 4, 1, 5]: records [3, 4, 5],
        // theta_hat = ln(6)/3.
        let records = extract_upper_records(&[3.0, 1.0, 4.0, 1.0, 5.0]).unwrap();
        let report = mle_from_records(&records).unwrap();
        let want = 6.0f64.ln() / 3.0;
        assert!((report.theta_hat - want).abs() < 1e-14);
        assert!((report.theta_hat - 0.59725).abs() < 1e-5);
        assert_eq!(report.source, EstimatorSource::Records);
        assert_eq!(report.count, 3);
    }

    #[test]
    fn sample_mle_errors() {
        assert_eq!(mle_from_sample(&[]), Err(Error::EmptyInput));
        assert!(matches!(
            mle_from_sample(&[0.0, 0.0]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            mle_from_sample(&[1.0, -0.5]),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn record_mle_errors() {
        let zero = RecordSequence::new(vec![0.0]).unwrap();
        assert!(matches!(mle_from_records(&zero), Err(Error::Degenerate(_))));
        let negative = RecordSequence::new(vec![-0.3]).unwrap();
        assert!(matches!(
            mle_from_records(&negative),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn log_likelihood_spot_value() {
        // Single observation e - 1 at theta = 1: -0 - 2 * 1 = -2, matching
        // the joint record density of the same point.
        let p = LomaxParams::new(1.0).unwrap();
        let ll = log_likelihood_sample(&[1.0f64.exp() - 1.0], &p).unwrap();
        assert!((ll - (-2.0)).abs() < 1e-14);
    }

    #[test]
    fn log_likelihood_errors_mirror_the_estimator() {
        let p = LomaxParams::new(1.0).unwrap();
        assert!(log_likelihood_sample(&[], &p).is_err());
        assert!(log_likelihood_sample(&[0.0, 0.0], &p).is_err());
    }

    #[test]
    fn mle_maximizes_the_sample_likelihood() {
        // Likelihood at theta_hat beats a surrounding grid, and the central
        // second difference there is negative.
        let sample = [0.3, 2.0, 0.9, 5.5, 0.05, 1.4];
        let report = mle_from_sample(&sample).unwrap();
        let at = |t: f64| {
            log_likelihood_sample(&sample, &LomaxParams::new(t).unwrap()).unwrap()
        };
        let peak = at(report.theta_hat);
        let mut t = report.theta_hat / 4.0;
        while t < report.theta_hat * 4.0 {
            assert!(at(t) <= peak + 1e-12, "likelihood at {t} beats theta_hat");
            t += report.theta_hat / 50.0;
        }
        let h = 1e-4;
        let second = (at(report.theta_hat + h) - 2.0 * peak + at(report.theta_hat - h)) / (h * h);
        assert!(second < 0.0, "second difference {second} not negative");
    }

    #[test]
    fn plug_in_estimators_evaluate_at_theta_hat() {
        let records = RecordSequence::new(vec![0.5, 2.0, 6.0]).unwrap();
        let theta_hat = mle_from_records(&records).unwrap().theta_hat;
        let p = LomaxParams::new(theta_hat).unwrap();
        for &x in &[0.0, 0.4, 3.0] {
            assert_eq!(pdf_hat(x, &records).unwrap(), p.pdf(x).unwrap());
            assert_eq!(
                cdf_hat(x, &records).unwrap().value(),
                p.cdf(x).unwrap().value()
            );
        }
        assert!(pdf_hat(-1.0, &records).is_err());
    }

    #[test]
    fn cdf_hat_is_a_valid_cdf_in_x() {
        let mut rng = StreamRng::new(13, 2);
        let records =
            sample_records(6, &LomaxParams::new(0.9).unwrap(), &mut rng).unwrap();
        assert_eq!(cdf_hat(0.0, &records).unwrap().value(), 0.0);
        let mut previous = 0.0;
        let mut x = 0.0;
        while x < 400.0 {
            let v = cdf_hat(x, &records).unwrap().value();
            assert!(v >= previous);
            previous = v;
            x = x * 1.5 + 0.25;
        }
        assert!(previous > 0.99);
    }

    #[test]
    fn record_estimator_matches_scaled_gamma_moments() {
        // theta_hat over replications has mean theta and variance theta^2/m.
        let (m, theta) = (5usize, 1.0f64);
        let p = LomaxParams::new(theta).unwrap();
        let reps = 100_000u64;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for rep in 0..reps {
            let mut rng = StreamRng::new(31, rep);
            let est = mle_from_records(&sample_records(m, &p, &mut rng).unwrap())
                .unwrap()
                .theta_hat;
            sum += est;
            sum_sq += est * est;
        }
        let n = reps as f64;
        let mean = sum / n;
        let var = (sum_sq - n * mean * mean) / (n - 1.0);
        let want_var = theta * theta / m as f64;
        assert!((mean - theta).abs() < 3.0 * (want_var / n).sqrt());
        assert!((var - want_var).abs() < 0.05 * want_var);
    }

    proptest! {
        #[test]
        fn prop_sample_mle_is_positive_and_finite(
            sample in proptest::collection::vec(1e-6f64..1e6, 1..40),
        ) {
            let report = mle_from_sample(&sample).unwrap();
            prop_assert!(report.theta_hat > 0.0);
            prop_assert!(report.theta_hat.is_finite());
        }

        #[test]
        fn prop_record_mle_uses_only_the_last_record(
            tail in 0.5f64..50.0,
            head in 0.01f64..0.4,
        ) {
            let a = RecordSequence::new(vec![head, tail]).unwrap();
            let b = RecordSequence::new(vec![head / 2.0, tail]).unwrap();
            let ra = mle_from_records(&a).unwrap();
            let rb = mle_from_records(&b).unwrap();
            prop_assert_eq!(ra.theta_hat, rb.theta_hat);
        }
    }
}
