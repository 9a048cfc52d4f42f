//! Kolmogorov–Smirnov goodness-of-fit statistics.
//!
//! One-sample tests compare an empirical distribution against a reference
//! CDF; two-sample tests compare two empirical distributions directly.
//! Critical values use the standard asymptotic Kolmogorov distribution,
//! which is accurate for the sample sizes this crate drives through it
//! (10^3 and up). At significance level α the critical statistic is
//! `K_α / sqrt(n)` with `K_α = sqrt(-ln(α/2)/2)`, and `n` replaced by the
//! harmonic pairing `n1·n2/(n1+n2)` in the two-sample case.

use crate::error::{Error, Result};

/// `K` for the 1% significance level: `sqrt(-ln(0.005)/2)`.
const K_ONE_PERCENT: f64 = 1.627_624_060_195_873_4;

/// Outcome of a Kolmogorov–Smirnov comparison at the 1% level.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct KsOutcome {
    /// The supremum distance between the compared distribution functions.
    pub statistic: f64,
    /// Asymptotic 1% critical value for the sample size(s) used.
    pub critical_value: f64,
    /// True when `statistic < critical_value`.
    pub passed: bool,
}

fn outcome(statistic: f64, critical_value: f64) -> KsOutcome {
    KsOutcome {
        statistic,
        critical_value,
        passed: statistic < critical_value,
    }
}

/// One-sample KS test of `data` against the reference CDF, at the 1% level.
///
/// The reference must be a proper CDF on the data's support; values are
/// clamped into [0, 1] defensively before the distance is taken.
pub fn ks_one_sample<F: Fn(f64) -> f64>(data: &[f64], cdf: F) -> Result<KsOutcome> {
    if data.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = data.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut statistic = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x).clamp(0.0, 1.0);
        let below = f - i as f64 / n;
        let above = (i + 1) as f64 / n - f;
        statistic = statistic.max(below).max(above);
    }
    Ok(outcome(statistic, K_ONE_PERCENT / n.sqrt()))
}

/// Two-sample KS test between `first` and `second`, at the 1% level.
pub fn ks_two_sample(first: &[f64], second: &[f64]) -> Result<KsOutcome> {
    if first.is_empty() || second.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut a = first.to_vec();
    let mut b = second.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n1, n2) = (a.len() as f64, b.len() as f64);

    // Walk the merged order, tracking the gap between the two empirical CDFs.
    let mut statistic = 0.0f64;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        // Advance past ties in lockstep so the gap is measured after all
        // equal values on both sides are consumed.
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / n1 - j as f64 / n2).abs();
        statistic = statistic.max(gap);
    }
    // Once one side is exhausted the gap only shrinks back to 0, so the walk
    // can stop here.
    let critical = K_ONE_PERCENT * ((n1 + n2) / (n1 * n2)).sqrt();
    Ok(outcome(statistic, critical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::StreamRng;

    #[test]
    fn one_sample_statistic_on_a_hand_case() {
        // Data {0.25, 0.75} against Uniform(0,1): steps at 0.25 (ecdf 0->0.5)
        // and 0.75 (0.5->1). Max gap is 0.25 on either side of each step.
        let got = ks_one_sample(&[0.75, 0.25], |x| x).unwrap();
        assert!((got.statistic - 0.25).abs() < 1e-15);
        assert!((got.critical_value - K_ONE_PERCENT / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn two_sample_statistic_on_a_hand_case() {
        // {1, 3} vs {2, 4}: after 1 the gap is 1/2, after 2 it is 0, after 3
        // it is 1/2 again; maximum 0.5.
        let got = ks_two_sample(&[1.0, 3.0], &[2.0, 4.0]).unwrap();
        assert!((got.statistic - 0.5).abs() < 1e-15);
        // Disjoint supports separate completely.
        let split = ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert!((split.statistic - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ties_across_samples_are_handled_symmetrically() {
        let d = ks_two_sample(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(d.statistic, 0.0);
        assert!(d.passed);
    }

    #[test]
    fn empty_inputs_error() {
        assert!(ks_one_sample(&[], |x| x).is_err());
        assert!(ks_two_sample(&[], &[1.0]).is_err());
        assert!(ks_two_sample(&[1.0], &[]).is_err());
    }

    #[test]
    fn uniform_draws_pass_against_uniform_cdf() {
        let mut rng = StreamRng::new(41, 0);
        let data: Vec<f64> = (0..20_000).map(|_| rng.next_uniform()).collect();
        let got = ks_one_sample(&data, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!(got.passed, "statistic {} vs {}", got.statistic, got.critical_value);
    }

    #[test]
    fn wrong_reference_law_fails_decisively() {
        let mut rng = StreamRng::new(42, 0);
        let data: Vec<f64> = (0..20_000).map(|_| rng.next_uniform()).collect();
        // Uniform draws against a square-law CDF: true distance is 0.25.
        let got = ks_one_sample(&data, |x| (x * x).clamp(0.0, 1.0)).unwrap();
        assert!(!got.passed);
        assert!(got.statistic > 0.2);
    }

    #[test]
    fn same_law_passes_two_sample_and_shifted_fails() {
        let mut rng_a = StreamRng::new(43, 0);
        let mut rng_b = StreamRng::new(43, 1);
        let a: Vec<f64> = (0..10_000).map(|_| rng_a.next_uniform()).collect();
        let b: Vec<f64> = (0..10_000).map(|_| rng_b.next_uniform()).collect();
        assert!(ks_two_sample(&a, &b).unwrap().passed);

        let shifted: Vec<f64> = a.iter().map(|v| v + 0.05).collect();
        assert!(!ks_two_sample(&shifted, &b).unwrap().passed);
    }

    #[test]
    fn critical_value_shrinks_with_sample_size() {
        let small = ks_one_sample(&[0.5; 10], |x| x).unwrap().critical_value;
        let large = ks_one_sample(&vec![0.5; 1000], |x| x).unwrap().critical_value;
        assert!(large < small);
        assert!((small / large - 10.0).abs() < 1e-12);
    }
}
