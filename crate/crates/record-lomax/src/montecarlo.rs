//! Deterministic, parallelizable Monte Carlo replication engine.
//!
//! Replications are split into fixed-size blocks of 4096. Workers pull block
//! indices from a shared counter, each block is simulated and folded in
//! replication order by exactly one worker, and the per-block results are
//! merged in block order afterwards. Every floating-point operation therefore
//! happens in an order fixed by the replication index alone, which makes
//! results bitwise identical across worker counts.
//!
//! Each replication seeds its own ChaCha stream from (domain-derived seed,
//! replication index). The sample-estimator and record-estimator arms use
//! different domain tags on purpose: both estimators are the same function of
//! the underlying uniform draws, so sharing a stream between the arms would
//! make their estimates identical replication by replication and silently
//! turn distribution-level comparisons into tautologies.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::estimators::{mle_from_records, mle_from_sample, pdf_hat};
use crate::gof::{ks_one_sample, KsOutcome};
use crate::kahan::KahanSum;
use crate::lomax::LomaxParams;
use crate::records::sample_records;
use crate::rng::{derive_seed, StreamRng};
use crate::special::regularized_lower_gamma;

const BLOCK: u64 = 4096;

const DOMAIN_SAMPLE_ARM: u64 = 0x01;
const DOMAIN_RECORD_ARM: u64 = 0x02;
const DOMAIN_PLUGIN: u64 = 0x03;
const DOMAIN_SCAN: u64 = 0x04;
const DOMAIN_DIST_RECORD: u64 = 0x05;
const DOMAIN_DIST_SAMPLE: u64 = 0x06;
const DOMAIN_DIST_LOG: u64 = 0x07;

/// Shared configuration for a Monte Carlo run.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub master_seed: u64,
    pub replications: u64,
    pub workers: usize,
    pub theta: LomaxParams,
    /// Sample size n for sample-based arms, record count m for record-based
    /// arms; which one applies is determined by the operation.
    pub m_or_n: u32,
    /// Evaluation points for plug-in targets, sorted ascending.
    pub x_grid: Vec<f64>,
    /// Thresholds for the reported exceedance probabilities
    /// P(|estimate − truth| ≥ ε).
    pub epsilons: Vec<f64>,
}

impl McConfig {
    fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::InvalidParameter {
                name: "replications",
                value: 0.0,
                reason: "at least one replication is required",
            });
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter {
                name: "workers",
                value: 0.0,
                reason: "at least one worker is required",
            });
        }
        if self.m_or_n == 0 {
            return Err(Error::InvalidParameter {
                name: "m_or_n",
                value: 0.0,
                reason: "dataset size must be positive",
            });
        }
        for pair in self.x_grid.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(Error::NotIncreasing { index: 1 });
            }
        }
        for &x in &self.x_grid {
            if !(x >= 0.0) || !x.is_finite() {
                return Err(Error::Domain {
                    name: "x_grid",
                    value: x,
                    reason: "grid points must be finite and nonnegative",
                });
            }
        }
        for &e in &self.epsilons {
            if !(e > 0.0) || !e.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "epsilons",
                    value: e,
                    reason: "thresholds must be positive and finite",
                });
            }
        }
        Ok(())
    }
}

/// Which estimator a replication arm simulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorArm {
    SampleMle,
    RecordMle,
}

impl EstimatorArm {
    fn domain(self) -> u64 {
        match self {
            EstimatorArm::SampleMle => DOMAIN_SAMPLE_ARM,
            EstimatorArm::RecordMle => DOMAIN_RECORD_ARM,
        }
    }
}

/// One-to-one transforms applied to the estimator before the MSE is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GTransform {
    Identity,
    Reciprocal,
    Log,
}

impl GTransform {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            GTransform::Identity => t,
            GTransform::Reciprocal => 1.0 / t,
            GTransform::Log => t.ln(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GTransform::Identity => "identity",
            GTransform::Reciprocal => "reciprocal",
            GTransform::Log => "log",
        }
    }
}

/// Empirical exceedance probability with its binomial standard error.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct ExceedanceEstimate {
    pub epsilon: f64,
    pub probability: f64,
    pub standard_error: f64,
}

/// Moment summary of one Monte Carlo target.
#[derive(Debug, Clone, serde::Serialize)]
pub struct McSummary {
    pub target: String,
    /// Replications that produced a value.
    pub successes: u64,
    /// Replications whose estimator errored (counted, never silently dropped).
    pub failures: u64,
    pub mean: f64,
    pub se_mean: f64,
    pub variance: f64,
    /// The reference value the MSE is taken against.
    pub truth: f64,
    pub mse: f64,
    pub se_mse: f64,
    pub epsilon_exceedance: Vec<ExceedanceEstimate>,
}

/// Running sums for one target, folded in replication order.
#[derive(Debug, Clone)]
struct Accumulator {
    n: u64,
    sum: KahanSum,
    sum_sq: KahanSum,
    err_sq: KahanSum,
    err_fourth: KahanSum,
    exceed: Vec<u64>,
}

impl Accumulator {
    fn new(n_epsilons: usize) -> Self {
        Accumulator {
            n: 0,
            sum: KahanSum::new(),
            sum_sq: KahanSum::new(),
            err_sq: KahanSum::new(),
            err_fourth: KahanSum::new(),
            exceed: vec![0; n_epsilons],
        }
    }

    fn push(&mut self, value: f64, truth: f64, epsilons: &[f64]) {
        self.n += 1;
        self.sum.add(value);
        self.sum_sq.add(value * value);
        let dev = value - truth;
        let sq = dev * dev;
        self.err_sq.add(sq);
        self.err_fourth.add(sq * sq);
        for (slot, &eps) in self.exceed.iter_mut().zip(epsilons) {
            if dev.abs() >= eps {
                *slot += 1;
            }
        }
    }

    fn merge(&mut self, other: &Accumulator) {
        self.n += other.n;
        self.sum.add(other.sum.value());
        self.sum_sq.add(other.sum_sq.value());
        self.err_sq.add(other.err_sq.value());
        self.err_fourth.add(other.err_fourth.value());
        for (slot, &count) in self.exceed.iter_mut().zip(&other.exceed) {
            *slot += count;
        }
    }

    fn summarize(&self, target: &str, truth: f64, failures: u64, epsilons: &[f64]) -> McSummary {
        let n = self.n as f64;
        let mean = self.sum.value() / n;
        // Single-replication runs have no spread estimate; report zeros
        // rather than NaN so downstream tables stay printable.
        let (variance, se_mean) = if self.n > 1 {
            let var = ((self.sum_sq.value() - n * mean * mean) / (n - 1.0)).max(0.0);
            (var, (var / n).sqrt())
        } else {
            (0.0, 0.0)
        };
        let mse = self.err_sq.value() / n;
        let se_mse = if self.n > 1 {
            let var_sq = ((self.err_fourth.value() - n * mse * mse) / (n - 1.0)).max(0.0);
            (var_sq / n).sqrt()
        } else {
            0.0
        };
        let exceedance = self
            .exceed
            .iter()
            .zip(epsilons)
            .map(|(&count, &eps)| {
                let p = count as f64 / n;
                ExceedanceEstimate {
                    epsilon: eps,
                    probability: p,
                    standard_error: (p * (1.0 - p) / n).sqrt(),
                }
            })
            .collect();
        McSummary {
            target: target.to_owned(),
            successes: self.n,
            failures,
            mean,
            se_mean,
            variance,
            truth,
            mse,
            se_mse,
            epsilon_exceedance: exceedance,
        }
    }
}

/// Runs `job` over all replication blocks and returns the per-block results
/// in block order, regardless of which worker computed which block.
fn run_blocks<T, F>(replications: u64, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let n_blocks = replications.div_ceil(BLOCK);
    let threads = workers.clamp(1, n_blocks as usize);
    let next = AtomicU64::new(0);
    let job = &job;
    let mut tagged: Vec<(u64, T)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|_| {
                scope.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let block = next.fetch_add(1, Ordering::Relaxed);
                        if block >= n_blocks {
                            break;
                        }
                        let lo = block * BLOCK;
                        let hi = ((block + 1) * BLOCK).min(replications);
                        out.push((block, job(lo..hi)));
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("a Monte Carlo worker panicked"))
            .collect()
    });
    tagged.sort_by_key(|&(block, _)| block);
    tagged.into_iter().map(|(_, value)| value).collect()
}

fn estimate_once(
    arm: EstimatorArm,
    params: &LomaxParams,
    m_or_n: u32,
    rng: &mut StreamRng,
) -> Result<f64> {
    match arm {
        EstimatorArm::SampleMle => {
            let sample = params.sample(m_or_n as usize, rng)?;
            Ok(mle_from_sample(&sample)?.theta_hat)
        }
        EstimatorArm::RecordMle => {
            let records = sample_records(m_or_n as usize, params, rng)?;
            Ok(mle_from_records(&records)?.theta_hat)
        }
    }
}

/// Simulates `replications` independent datasets and returns the raw
/// estimator values in replication order (failed replications are skipped;
/// the second element counts them).
pub fn simulate_estimator_replications(
    config: &McConfig,
    arm: EstimatorArm,
) -> Result<(Vec<f64>, u64)> {
    config.validate()?;
    let seed = derive_seed(config.master_seed, arm.domain());
    let blocks = run_blocks(config.replications, config.workers, |range| {
        let mut values = Vec::with_capacity(range.clone().count());
        let mut failures = 0u64;
        for rep in range {
            let mut rng = StreamRng::new(seed, rep);
            match estimate_once(arm, &config.theta, config.m_or_n, &mut rng) {
                Ok(v) => values.push(v),
                Err(_) => failures += 1,
            }
        }
        (values, failures)
    });
    let mut all = Vec::with_capacity(config.replications as usize);
    let mut failures = 0u64;
    for (values, block_failures) in blocks {
        all.extend(values);
        failures += block_failures;
    }
    if all.is_empty() {
        return Err(Error::Degenerate("every replication failed"));
    }
    Ok((all, failures))
}

/// Monte Carlo MSE of `g(estimator)` against `g(theta)`.
pub fn mc_estimator_mse(config: &McConfig, arm: EstimatorArm, g: GTransform) -> Result<McSummary> {
    config.validate()?;
    let truth = g.apply(config.theta.theta());
    let seed = derive_seed(config.master_seed, arm.domain());
    let blocks = run_blocks(config.replications, config.workers, |range| {
        let mut acc = Accumulator::new(config.epsilons.len());
        let mut failures = 0u64;
        for rep in range {
            let mut rng = StreamRng::new(seed, rep);
            match estimate_once(arm, &config.theta, config.m_or_n, &mut rng) {
                Ok(v) => acc.push(g.apply(v), truth, &config.epsilons),
                Err(_) => failures += 1,
            }
        }
        (acc, failures)
    });
    let mut total = Accumulator::new(config.epsilons.len());
    let mut failures = 0u64;
    for (acc, block_failures) in &blocks {
        total.merge(acc);
        failures += block_failures;
    }
    if total.n == 0 {
        return Err(Error::Degenerate("every replication failed"));
    }
    let label = match arm {
        EstimatorArm::SampleMle => format!("{}(sample mle)", g.name()),
        EstimatorArm::RecordMle => format!("{}(record mle)", g.name()),
    };
    Ok(total.summarize(&label, truth, failures, &config.epsilons))
}

/// Monte Carlo moments of the plug-in estimates at one grid point.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PluginMoments {
    pub x: f64,
    /// Present when m ≥ 3 (below that the density estimate has no finite
    /// second moment to summarize meaningfully).
    pub pdf_hat: Option<McSummary>,
    pub cdf_hat: McSummary,
}

/// Monte Carlo mean and MSE of pdf_hat and cdf_hat at every grid x, against
/// the true pdf/cdf values.
pub fn mc_plugin_moments(config: &McConfig) -> Result<Vec<PluginMoments>> {
    config.validate()?;
    if config.x_grid.is_empty() {
        return Err(Error::EmptyInput);
    }
    let m = config.m_or_n;
    let with_pdf = m >= 3;
    let seed = derive_seed(config.master_seed, DOMAIN_PLUGIN);
    let pdf_truths: Vec<f64> = config
        .x_grid
        .iter()
        .map(|&x| config.theta.pdf(x))
        .collect::<Result<_>>()?;
    let cdf_truths: Vec<f64> = config
        .x_grid
        .iter()
        .map(|&x| config.theta.cdf(x).map(|p| p.value()))
        .collect::<Result<_>>()?;

    let blocks = run_blocks(config.replications, config.workers, |range| {
        let k = config.x_grid.len();
        let mut pdf_accs = vec![Accumulator::new(config.epsilons.len()); k];
        let mut cdf_accs = vec![Accumulator::new(config.epsilons.len()); k];
        let mut failures = 0u64;
        for rep in range {
            let mut rng = StreamRng::new(seed, rep);
            let records = match sample_records(m as usize, &config.theta, &mut rng) {
                Ok(r) => r,
                Err(_) => {
                    failures += 1;
                    continue;
                }
            };
            // The record MLE is the same for every x; evaluating through the
            // plug-in keeps this loop on the same code path the estimators
            // module exposes.
            for (i, &x) in config.x_grid.iter().enumerate() {
                if with_pdf {
                    if let Ok(v) = pdf_hat(x, &records) {
                        pdf_accs[i].push(v, pdf_truths[i], &config.epsilons);
                    }
                }
                if let Ok(v) = crate::estimators::cdf_hat(x, &records) {
                    cdf_accs[i].push(v.value(), cdf_truths[i], &config.epsilons);
                }
            }
        }
        (pdf_accs, cdf_accs, failures)
    });

    let k = config.x_grid.len();
    let mut pdf_total = vec![Accumulator::new(config.epsilons.len()); k];
    let mut cdf_total = vec![Accumulator::new(config.epsilons.len()); k];
    let mut failures = 0u64;
    for (pdf_accs, cdf_accs, block_failures) in &blocks {
        for i in 0..k {
            pdf_total[i].merge(&pdf_accs[i]);
            cdf_total[i].merge(&cdf_accs[i]);
        }
        failures += block_failures;
    }

    let mut out = Vec::with_capacity(k);
    for (i, &x) in config.x_grid.iter().enumerate() {
        if cdf_total[i].n == 0 {
            return Err(Error::Degenerate("every replication failed"));
        }
        let pdf = with_pdf.then(|| {
            pdf_total[i].summarize(
                &format!("pdf_hat(x={x})"),
                pdf_truths[i],
                failures,
                &config.epsilons,
            )
        });
        let cdf = cdf_total[i].summarize(
            &format!("cdf_hat(x={x})"),
            cdf_truths[i],
            failures,
            &config.epsilons,
        );
        out.push(PluginMoments {
            x,
            pdf_hat: pdf,
            cdf_hat: cdf,
        });
    }
    Ok(out)
}

/// One row of a convergence scan: exceedance probabilities at a given m.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanRow {
    pub m: u32,
    pub theta_exceedance: ExceedanceEstimate,
    pub per_x: Vec<ScanPoint>,
}

/// Exceedance of the plug-in estimates at one grid point.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanPoint {
    pub x: f64,
    pub pdf_exceedance: ExceedanceEstimate,
    pub cdf_exceedance: ExceedanceEstimate,
}

/// For each record count in `m_list`, estimates P(|θ̂−θ| ≥ ε) and, at every
/// grid x, P(|f̂−f| ≥ ε) and P(|F̂−F| ≥ ε). Consistency predicts every
/// column decreases toward zero as m grows.
pub fn mc_convergence_scan(
    config: &McConfig,
    m_list: &[u32],
    epsilon: f64,
) -> Result<Vec<ScanRow>> {
    config.validate()?;
    if m_list.is_empty() {
        return Err(Error::EmptyInput);
    }
    for pair in m_list.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::NotIncreasing { index: 1 });
        }
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "threshold must be positive and finite",
        });
    }

    let theta = config.theta.theta();
    let pdf_truths: Vec<f64> = config
        .x_grid
        .iter()
        .map(|&x| config.theta.pdf(x))
        .collect::<Result<_>>()?;
    let cdf_truths: Vec<f64> = config
        .x_grid
        .iter()
        .map(|&x| config.theta.cdf(x).map(|p| p.value()))
        .collect::<Result<_>>()?;
    let scan_seed = derive_seed(config.master_seed, DOMAIN_SCAN);

    let mut rows = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let seed = derive_seed(scan_seed, u64::from(m));
        let eps_list = [epsilon];
        let blocks = run_blocks(config.replications, config.workers, |range| {
            let k = config.x_grid.len();
            let mut theta_acc = Accumulator::new(1);
            let mut pdf_accs = vec![Accumulator::new(1); k];
            let mut cdf_accs = vec![Accumulator::new(1); k];
            let mut failures = 0u64;
            for rep in range {
                let mut rng = StreamRng::new(seed, rep);
                let records = match sample_records(m as usize, &config.theta, &mut rng) {
                    Ok(r) => r,
                    Err(_) => {
                        failures += 1;
                        continue;
                    }
                };
                let theta_hat = match mle_from_records(&records) {
                    Ok(report) => report.theta_hat,
                    Err(_) => {
                        failures += 1;
                        continue;
                    }
                };
                theta_acc.push(theta_hat, theta, &eps_list);
                let hat_params = match LomaxParams::new(theta_hat) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                for (i, &x) in config.x_grid.iter().enumerate() {
                    if let Ok(v) = hat_params.pdf(x) {
                        pdf_accs[i].push(v, pdf_truths[i], &eps_list);
                    }
                    if let Ok(v) = hat_params.cdf(x) {
                        cdf_accs[i].push(v.value(), cdf_truths[i], &eps_list);
                    }
                }
            }
            (theta_acc, pdf_accs, cdf_accs, failures)
        });

        let k = config.x_grid.len();
        let mut theta_total = Accumulator::new(1);
        let mut pdf_total = vec![Accumulator::new(1); k];
        let mut cdf_total = vec![Accumulator::new(1); k];
        let mut failures = 0u64;
        for (theta_acc, pdf_accs, cdf_accs, block_failures) in &blocks {
            theta_total.merge(theta_acc);
            for i in 0..k {
                pdf_total[i].merge(&pdf_accs[i]);
                cdf_total[i].merge(&cdf_accs[i]);
            }
            failures += block_failures;
        }
        if theta_total.n == 0 {
            return Err(Error::Degenerate("every replication failed"));
        }
        let theta_summary = theta_total.summarize("theta_hat", theta, failures, &eps_list);
        let per_x = config
            .x_grid
            .iter()
            .enumerate()
            .map(|(i, &x)| ScanPoint {
                x,
                pdf_exceedance: pdf_total[i]
                    .summarize("pdf_hat", pdf_truths[i], failures, &eps_list)
                    .epsilon_exceedance[0],
                cdf_exceedance: cdf_total[i]
                    .summarize("cdf_hat", cdf_truths[i], failures, &eps_list)
                    .epsilon_exceedance[0],
            })
            .collect();
        rows.push(ScanRow {
            m,
            theta_exceedance: theta_summary.epsilon_exceedance[0],
            per_x,
        });
    }
    Ok(rows)
}

/// Exact P(|θ̂−θ| ≥ ε) for the record-based MLE: with T ~ Gamma(m, θ) and
/// θ̂ = T/m, the two tails are regularized incomplete gamma integrals.
pub fn exact_record_mle_exceedance(params: &LomaxParams, m: u32, epsilon: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: 0.0,
            reason: "at least one record is required",
        });
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "threshold must be positive and finite",
        });
    }
    let theta = params.theta();
    let mf = f64::from(m);
    let lower = if theta - epsilon > 0.0 {
        regularized_lower_gamma(mf, mf * (theta - epsilon) / theta)?
    } else {
        0.0
    };
    let upper = 1.0 - regularized_lower_gamma(mf, mf * (theta + epsilon) / theta)?;
    Ok(lower + upper)
}

/// KS reports for the three distributional identities the estimators rely
/// on: the record log-transform is Gamma(m, θ), the sample log-transform sum
/// is Gamma(n, θ), and a single log-transform is Exponential(θ).
#[derive(Debug, Clone, serde::Serialize)]
pub struct DistributionalReport {
    pub record_log_vs_gamma: KsOutcome,
    pub sample_log_sum_vs_gamma: KsOutcome,
    pub single_log_vs_exponential: KsOutcome,
}

/// Simulates each identity `replications` times and runs one-sample KS tests
/// at the 1% level.
pub fn distributional_check(config: &McConfig) -> Result<DistributionalReport> {
    config.validate()?;
    let theta = config.theta.theta();
    let size = config.m_or_n;
    let mf = f64::from(size);

    let record_seed = derive_seed(config.master_seed, DOMAIN_DIST_RECORD);
    let record_values: Vec<f64> = run_blocks(config.replications, config.workers, |range| {
        let mut out = Vec::with_capacity(range.clone().count());
        for rep in range {
            let mut rng = StreamRng::new(record_seed, rep);
            if let Ok(records) = sample_records(size as usize, &config.theta, &mut rng) {
                out.push(records.last().ln_1p());
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    let sample_seed = derive_seed(config.master_seed, DOMAIN_DIST_SAMPLE);
    let sample_values: Vec<f64> = run_blocks(config.replications, config.workers, |range| {
        let mut out = Vec::with_capacity(range.clone().count());
        for rep in range {
            let mut rng = StreamRng::new(sample_seed, rep);
            if let Ok(sample) = config.theta.sample(size as usize, &mut rng) {
                let mut sum = KahanSum::new();
                for &x in &sample {
                    sum.add(x.ln_1p());
                }
                out.push(sum.value());
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    let log_seed = derive_seed(config.master_seed, DOMAIN_DIST_LOG);
    let log_values: Vec<f64> = run_blocks(config.replications, config.workers, |range| {
        let mut out = Vec::with_capacity(range.clone().count());
        for rep in range {
            let mut rng = StreamRng::new(log_seed, rep);
            if let Ok(sample) = config.theta.sample(1, &mut rng) {
                out.push(sample[0].ln_1p());
            }
        }
        out
    })
    .into_iter()
    .flatten()
    .collect();

    // Shape and argument are bounds-checked above, so the unwraps cannot fire.
    let gamma_cdf = |shape: f64| move |y: f64| {
        if y <= 0.0 {
            0.0
        } else {
            regularized_lower_gamma(shape, y / theta).unwrap_or(f64::NAN)
        }
    };
    Ok(DistributionalReport {
        record_log_vs_gamma: ks_one_sample(&record_values, gamma_cdf(mf))?,
        sample_log_sum_vs_gamma: ks_one_sample(&sample_values, gamma_cdf(mf))?,
        single_log_vs_exponential: ks_one_sample(&log_values, |y: f64| {
            if y <= 0.0 {
                0.0
            } else {
                -(-y / theta).exp_m1()
            }
        })?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gof::ks_two_sample;
    use crate::records::extract_upper_records;

    fn config(seed: u64, reps: u64, workers: usize, theta: f64, m_or_n: u32) -> McConfig {
        McConfig {
            master_seed: seed,
            replications: reps,
            workers,
            theta: LomaxParams::new(theta).unwrap(),
            m_or_n,
            x_grid: vec![0.5],
            epsilons: vec![0.05],
        }
    }

    fn assert_summaries_identical(a: &McSummary, b: &McSummary) {
        assert_eq!(a.successes, b.successes);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.variance.to_bits(), b.variance.to_bits());
        assert_eq!(a.mse.to_bits(), b.mse.to_bits());
        assert_eq!(a.se_mean.to_bits(), b.se_mean.to_bits());
        assert_eq!(a.se_mse.to_bits(), b.se_mse.to_bits());
        for (ea, eb) in a.epsilon_exceedance.iter().zip(&b.epsilon_exceedance) {
            assert_eq!(ea.probability.to_bits(), eb.probability.to_bits());
        }
    }

    #[test]
    fn summaries_are_bitwise_identical_across_worker_counts() {
        let base = mc_estimator_mse(
            &config(11, 10_000, 1, 1.0, 5),
            EstimatorArm::RecordMle,
            GTransform::Identity,
        )
        .unwrap();
        for workers in [2usize, 8] {
            let other = mc_estimator_mse(
                &config(11, 10_000, workers, 1.0, 5),
                EstimatorArm::RecordMle,
                GTransform::Identity,
            )
            .unwrap();
            assert_summaries_identical(&base, &other);
        }
        let plugin_base = mc_plugin_moments(&config(12, 9_000, 1, 1.0, 8)).unwrap();
        let plugin_eight = mc_plugin_moments(&config(12, 9_000, 8, 1.0, 8)).unwrap();
        for (a, b) in plugin_base.iter().zip(&plugin_eight) {
            assert_summaries_identical(a.pdf_hat.as_ref().unwrap(), b.pdf_hat.as_ref().unwrap());
            assert_summaries_identical(&a.cdf_hat, &b.cdf_hat);
        }
    }

    #[test]
    fn record_mle_moments_match_gamma_theory() {
        // θ̂ = T/m with T ~ Gamma(m, θ): mean θ, variance θ²/m, MSE θ²/m.
        let summary = mc_estimator_mse(
            &config(21, 40_000, 4, 1.0, 5),
            EstimatorArm::RecordMle,
            GTransform::Identity,
        )
        .unwrap();
        assert_eq!(summary.failures, 0);
        assert!((summary.mean - 1.0).abs() < 3.0 * summary.se_mean);
        assert!((summary.mse - 0.2).abs() < 3.0 * summary.se_mse);
        assert_eq!(summary.truth, 1.0);
    }

    #[test]
    fn single_replication_mse_is_the_squared_error() {
        let cfg = config(31, 1, 1, 1.0, 5);
        let summary =
            mc_estimator_mse(&cfg, EstimatorArm::RecordMle, GTransform::Identity).unwrap();
        let (values, _) = simulate_estimator_replications(&cfg, EstimatorArm::RecordMle).unwrap();
        assert_eq!(values.len(), 1);
        let want = (values[0] - 1.0) * (values[0] - 1.0);
        assert!((summary.mse - want).abs() < 1e-15);
        assert_eq!(summary.variance, 0.0);
        assert_eq!(summary.se_mean, 0.0);
    }

    #[test]
    fn estimator_arms_use_separated_streams() {
        let cfg = config(41, 64, 1, 1.0, 5);
        let (sample, _) = simulate_estimator_replications(&cfg, EstimatorArm::SampleMle).unwrap();
        let (record, _) = simulate_estimator_replications(&cfg, EstimatorArm::RecordMle).unwrap();
        // Same transform of the same uniforms would make these equal pairwise;
        // the domain separation must prevent that.
        let equal_pairs = sample
            .iter()
            .zip(&record)
            .filter(|(a, b)| a.to_bits() == b.to_bits())
            .count();
        assert_eq!(equal_pairs, 0);
    }

    #[test]
    fn standard_errors_halve_when_replications_quadruple() {
        let mut ratios = Vec::new();
        for seed in 0..5u64 {
            let small = mc_estimator_mse(
                &config(100 + seed, 2_000, 2, 1.0, 5),
                EstimatorArm::RecordMle,
                GTransform::Identity,
            )
            .unwrap();
            let large = mc_estimator_mse(
                &config(200 + seed, 8_000, 2, 1.0, 5),
                EstimatorArm::RecordMle,
                GTransform::Identity,
            )
            .unwrap();
            ratios.push(small.se_mean / large.se_mean);
        }
        ratios.sort_by(f64::total_cmp);
        let median = ratios[2];
        assert!((1.6..=2.4).contains(&median), "median ratio {median}");
    }

    #[test]
    fn record_and_sample_mle_distributions_agree() {
        // The two estimators are equal in law (both are Gamma(k,θ)/k with
        // k = n = m), so a two-sample KS on independent arms must pass.
        let cfg = config(51, 10_000, 4, 1.0, 5);
        let (sample, _) = simulate_estimator_replications(&cfg, EstimatorArm::SampleMle).unwrap();
        let (record, _) = simulate_estimator_replications(&cfg, EstimatorArm::RecordMle).unwrap();
        let ks = ks_two_sample(&sample, &record).unwrap();
        assert!(ks.passed, "D={} crit={}", ks.statistic, ks.critical_value);
    }

    #[test]
    fn plugin_moments_match_true_values_and_pin_x_zero() {
        let mut cfg = config(61, 200_000, 4, 1.0, 8);
        cfg.x_grid = vec![0.0, 0.5];
        let moments = mc_plugin_moments(&cfg).unwrap();
        // cdf_hat(0) = 0 surely.
        assert_eq!(moments[0].cdf_hat.mean, 0.0);
        assert_eq!(moments[0].cdf_hat.mse, 0.0);
        // The MC mean at x=0.5 must agree with the defining integral computed
        // by quadrature (0.45501871867776841 at m=8, θ=1), which also
        // cross-validates the oracle against an entirely different method.
        let pdf = moments[1].pdf_hat.as_ref().unwrap();
        assert!(
            (pdf.mean - 0.45501871867776841).abs() < 3.0 * pdf.se_mean,
            "mean {} se {}",
            pdf.mean,
            pdf.se_mean
        );
    }

    #[test]
    fn convergence_scan_decreases_and_matches_exact_tail() {
        let mut cfg = config(71, 10_000, 4, 1.0, 5);
        cfg.x_grid = vec![0.5];
        let rows = mc_convergence_scan(&cfg, &[10, 40, 160], 0.05).unwrap();
        let probs: Vec<f64> = rows.iter().map(|r| r.theta_exceedance.probability).collect();
        assert!(probs[0] > probs[1] && probs[1] > probs[2], "{probs:?}");
        for row in &rows {
            let point = &row.per_x[0];
            assert!(point.pdf_exceedance.probability <= 1.0);
            assert!(point.cdf_exceedance.probability <= 1.0);
        }
        // Exact tail at m=160 (frozen from the regularized gamma integrals):
        // P = 0.52701148269649079.
        let last = &rows[2].theta_exceedance;
        assert!(
            (last.probability - 0.52701148269649079).abs() < 3.0 * last.standard_error,
            "p={} se={}",
            last.probability,
            last.standard_error
        );
    }

    #[test]
    fn scan_exceedance_is_zero_when_threshold_exceeds_cdf_range() {
        let mut cfg = config(81, 2_000, 2, 1.0, 5);
        cfg.x_grid = vec![0.5];
        let rows = mc_convergence_scan(&cfg, &[5, 10], 1.5).unwrap();
        for row in &rows {
            assert_eq!(row.per_x[0].cdf_exceedance.probability, 0.0);
        }
    }

    #[test]
    fn exact_exceedance_oracle_reproduces_frozen_references() {
        let theta = LomaxParams::new(1.0).unwrap();
        for &(m, eps, want) in &[
            (160u32, 0.05, 0.52701148269649079),
            (10, 0.05, 0.87530657711360324),
            (40, 0.05, 0.7521492214452995),
            (5, 0.3, 0.49822686350189471),
        ] {
            let got = exact_record_mle_exceedance(&theta, m, eps).unwrap();
            assert!(
                (got - want).abs() < 1e-12,
                "m={m} eps={eps}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn distributional_identities_pass_ks() {
        let report = distributional_check(&config(91, 10_000, 4, 1.0, 5)).unwrap();
        assert!(report.record_log_vs_gamma.passed);
        assert!(report.single_log_vs_exponential.passed);
        let with_theta_two = distributional_check(&config(92, 10_000, 4, 2.0, 5)).unwrap();
        assert!(with_theta_two.sample_log_sum_vs_gamma.passed);

        // Determinism: the same seed reproduces the statistics bitwise.
        let again = distributional_check(&config(91, 10_000, 4, 1.0, 5)).unwrap();
        assert_eq!(
            report.record_log_vs_gamma.statistic.to_bits(),
            again.record_log_vs_gamma.statistic.to_bits()
        );
    }

    #[test]
    fn extracted_and_directly_sampled_records_share_a_law() {
        // Records extracted from long raw samples vs records simulated via
        // the spacing construction: the m-th record value must follow the
        // same distribution. Rare sequences with fewer than m records are
        // skipped and counted.
        let params = LomaxParams::new(1.0).unwrap();
        let m = 3usize;
        let reps = 4_000u64;
        let mut direct = Vec::with_capacity(reps as usize);
        let mut extracted = Vec::with_capacity(reps as usize);
        let mut short = 0u64;
        for rep in 0..reps {
            let mut rng = StreamRng::new(derive_seed(7, 0x30), rep);
            let records = sample_records(m, &params, &mut rng).unwrap();
            direct.push(records.last());

            let mut rng = StreamRng::new(derive_seed(7, 0x31), rep);
            let long_sample = params.sample(2_000, &mut rng).unwrap();
            let found = extract_upper_records(&long_sample).unwrap();
            if found.m() >= m {
                extracted.push(found.values()[m - 1]);
            } else {
                short += 1;
            }
        }
        assert!(short < reps / 100, "too many short sequences: {short}");
        let ks = ks_two_sample(&direct, &extracted).unwrap();
        assert!(ks.passed, "D={} crit={}", ks.statistic, ks.critical_value);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut zero_reps = config(1, 1, 1, 1.0, 5);
        zero_reps.replications = 0;
        assert!(mc_estimator_mse(&zero_reps, EstimatorArm::RecordMle, GTransform::Identity)
            .is_err());

        let mut unsorted = config(1, 10, 1, 1.0, 5);
        unsorted.x_grid = vec![1.0, 0.5];
        assert!(mc_plugin_moments(&unsorted).is_err());

        let cfg = config(1, 10, 1, 1.0, 5);
        assert!(mc_convergence_scan(&cfg, &[], 0.05).is_err());
        assert!(mc_convergence_scan(&cfg, &[10, 10], 0.05).is_err());
        assert!(mc_convergence_scan(&cfg, &[10, 20], -1.0).is_err());
        assert!(exact_record_mle_exceedance(&cfg.theta, 0, 0.05).is_err());
    }
}
