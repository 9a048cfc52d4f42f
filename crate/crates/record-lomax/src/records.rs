//! Upper record values: extraction from observed sequences, direct
//! simulation, and the joint density of the first `m` records.
//!
//! For an i.i.d. Lomax sequence the log-transformed records
//! `ln(1 + R_i)` are partial sums of independent exponentials with mean
//! `theta`, which is both how `sample_records` draws them (no raw sequence is
//! materialized) and why `ln(1 + R_m)` carries a Gamma(m, theta) law.

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::lomax::LomaxParams;
use rand_chacha::rand_core::RngCore;

/// A strictly increasing, finite, nonempty sequence of record values.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordSequence {
    values: Vec<f64>,
}

impl RecordSequence {
    /// Validates that `values` is nonempty, finite, and strictly increasing.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Domain {
                    name: "values",
                    value: v,
                    reason: "record values must be finite",
                });
            }
            if i > 0 && v <= values[i - 1] {
                return Err(Error::NotIncreasing { index: i });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of records, written `m` throughout.
    pub fn m(&self) -> usize {
        self.values.len()
    }

    /// The largest (most recent) record `R_m`.
    pub fn last(&self) -> f64 {
        *self.values.last().expect("sequence is nonempty")
    }
}

/// Scans a raw observation sequence and keeps the upper records: the first
/// element and every later element strictly greater than all before it.
pub fn extract_upper_records(sequence: &[f64]) -> Result<RecordSequence> {
    if sequence.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut records = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for &v in sequence {
        if !v.is_finite() {
            return Err(Error::Domain {
                name: "sequence",
                value: v,
                reason: "observations must be finite",
            });
        }
        if v > best {
            records.push(v);
            best = v;
        }
    }
    RecordSequence::new(records)
}

/// Draws the first `m` upper records of an i.i.d. Lomax stream directly,
/// via cumulative exponential spacings of `ln(1 + R_i)`.
///
/// Consumes one uniform per record (more only in the measure-zero event that
/// a spacing underflows to zero, which is rejected and redrawn).
pub fn sample_records<R: RngCore>(
    m: usize,
    params: &LomaxParams,
    rng: &mut R,
) -> Result<RecordSequence> {
    if m == 0 {
        return Err(Error::Domain {
            name: "m",
            value: 0.0,
            reason: "record count must be at least 1",
        });
    }
    let mut values = Vec::with_capacity(m);
    let mut log_sum = 0.0f64;
    while values.len() < m {
        let spacing = params.log_spacing_draw(rng);
        // Guard against spacings small enough to vanish in the running sum;
        // the strict-increase invariant must survive floating point.
        if log_sum + spacing > log_sum {
            log_sum += spacing;
            values.push(log_sum.exp_m1());
        }
    }
    RecordSequence::new(values)
}

/// Log of the joint density of the first `m` records at the observed values,
/// `-m ln(theta) - ln(1 + r_m)/theta - sum_i ln(1 + r_i)`.
///
/// Defined for nonnegative records only; the sequence type already guarantees
/// strict increase.
pub fn joint_log_density(records: &RecordSequence, params: &LomaxParams) -> Result<f64> {
    let first = records.values()[0];
    if first < 0.0 {
        return Err(Error::Domain {
            name: "records",
            value: first,
            reason: "joint density requires nonnegative records",
        });
    }
    let theta = params.theta();
    let mut log_terms = KahanSum::new();
    for &r in records.values() {
        log_terms.add(r.ln_1p());
    }
    let m = records.m() as f64;
    Ok(-m * theta.ln() - records.last().ln_1p() / theta - log_terms.value())
}
