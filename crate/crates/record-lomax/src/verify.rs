//! Acceptance suite: one function per criterion, each returning a pass/fail
//! verdict with the measured values it was judged on.
//!
//! Two criteria (03 and 04) compare the truncated-series moment formulas
//! against independent references — numerical quadrature of the defining
//! integrals and large Monte Carlo runs. The truncated series deviates from
//! the true moments by a remainder that only vanishes as the record count
//! grows (see the analytic module), so at the small record counts those
//! criteria pin, both comparisons genuinely disagree. The suite reports that
//! disagreement as a FAIL with the measured gaps; it is the honest state of
//! the formulas, not a defect in either reference.
//!
//! Rendered reports contain no timing or machine information, so a fixed
//! seed yields byte-identical text across runs and worker counts. Runtime
//! budgets are still enforced (a criterion that blows its budget fails and
//! says so); measured durations go to stderr only.

use std::fmt::Write as _;
use std::time::Instant;

use crate::analytic::{
    asymptotic_identity_gap, expected_cdf_hat, expected_pdf_hat, gamma_ratio, mse_cdf_hat,
    mse_pdf_hat, pdf_hat_upper_bound_check, quadrature_oracle, second_moment_pdf_hat,
    OracleTarget,
};
use crate::error::Result;
use crate::gof::ks_two_sample;
use crate::lomax::LomaxParams;
use crate::montecarlo::{
    exact_record_mle_exceedance, mc_convergence_scan, mc_estimator_mse, mc_plugin_moments,
    simulate_estimator_replications, EstimatorArm, GTransform, McConfig,
};

/// How much simulation effort the suite spends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Roughly ten times fewer replications; every tolerance is tied to the
    /// realized standard errors, so conclusions are unchanged.
    Fast,
    /// The replication counts the criteria are stated at.
    Full,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Fast => "fast",
            Suite::Full => "full",
        }
    }

    fn mse_replications(self) -> u64 {
        match self {
            Suite::Fast => 10_000,
            Suite::Full => 100_000,
        }
    }

    fn ks_replications(self) -> u64 {
        match self {
            Suite::Fast => 2_000,
            Suite::Full => 10_000,
        }
    }

    fn plugin_replications(self) -> u64 {
        match self {
            Suite::Fast => 100_000,
            Suite::Full => 1_000_000,
        }
    }

    fn scan_replications(self) -> u64 {
        match self {
            Suite::Fast => 2_000,
            Suite::Full => 10_000,
        }
    }
}

/// Verdict for one criterion.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

/// The whole suite's outcome.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub master_seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

impl SuiteReport {
    /// Deterministic plain-text rendering: one line per criterion, no
    /// timings, no machine details.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "acceptance report (suite: {}, seed: {})",
            self.suite, self.master_seed
        );
        for c in &self.criteria {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "criterion {:02} {} {}: {}", c.id, verdict, c.name, c.details);
        }
        let passed = self.criteria.iter().filter(|c| c.passed).count();
        let _ = writeln!(
            out,
            "overall: {} ({passed}/{} criteria passed)",
            if self.all_passed { "PASS" } else { "FAIL" },
            self.criteria.len()
        );
        out
    }
}

fn num(x: f64) -> String {
    format!("{x:.6e}")
}

fn fail_on_error(id: u32, name: &'static str, err: &crate::error::Error) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed: false,
        details: format!("errored: {err}"),
    }
}

fn budget_note(details: &mut String, passed: &mut bool, elapsed: f64, budget: f64) {
    if elapsed > budget {
        *passed = false;
        let _ = write!(details, "; runtime budget of {budget:.0}s exceeded");
    }
}

/// Criterion 1: with n = m, the MSEs of g(record MLE) and g(sample MLE) are
/// equal for every smooth one-to-one g; checked via overlapping 3·SE
/// intervals for the identity, reciprocal, and log transforms.
fn criterion_01(seed: u64, suite: Suite) -> CriterionResult {
    const NAME: &str = "transform-invariant mse equality of the two estimators";
    let started = Instant::now();
    let config = McConfig {
        master_seed: seed,
        replications: suite.mse_replications(),
        workers: 1,
        theta: LomaxParams::new(1.0).expect("valid shape"),
        m_or_n: 5,
        x_grid: Vec::new(),
        epsilons: Vec::new(),
    };
    let mut details = format!("replications={}", config.replications);
    let mut passed = true;
    for g in [GTransform::Identity, GTransform::Reciprocal, GTransform::Log] {
        let record = match mc_estimator_mse(&config, EstimatorArm::RecordMle, g) {
            Ok(s) => s,
            Err(e) => return fail_on_error(1, NAME, &e),
        };
        let sample = match mc_estimator_mse(&config, EstimatorArm::SampleMle, g) {
            Ok(s) => s,
            Err(e) => return fail_on_error(1, NAME, &e),
        };
        let gap = (record.mse - sample.mse).abs();
        let allowance = 3.0 * (record.se_mse + sample.se_mse);
        let ok = gap <= allowance;
        passed &= ok;
        let _ = write!(
            details,
            "; {}: |Δmse|={} vs 3·SE={} [{}]",
            g.name(),
            num(gap),
            num(allowance),
            if ok { "ok" } else { "gap" }
        );
    }
    budget_note(&mut details, &mut passed, started.elapsed().as_secs_f64(), 30.0);
    eprintln!("criterion 01 finished in {:.2}s", started.elapsed().as_secs_f64());
    CriterionResult { id: 1, name: NAME, passed, details }
}

/// Criterion 2: the two estimators share one distribution; two-sample KS on
/// independent replication sets must pass at the 1% level.
fn criterion_02(seed: u64, suite: Suite) -> CriterionResult {
    const NAME: &str = "distributional equality of the two estimators";
    let config = McConfig {
        master_seed: seed,
        replications: suite.ks_replications(),
        workers: 1,
        theta: LomaxParams::new(1.0).expect("valid shape"),
        m_or_n: 5,
        x_grid: Vec::new(),
        epsilons: Vec::new(),
    };
    let record = match simulate_estimator_replications(&config, EstimatorArm::RecordMle) {
        Ok((v, _)) => v,
        Err(e) => return fail_on_error(2, NAME, &e),
    };
    let sample = match simulate_estimator_replications(&config, EstimatorArm::SampleMle) {
        Ok((v, _)) => v,
        Err(e) => return fail_on_error(2, NAME, &e),
    };
    let ks = match ks_two_sample(&record, &sample) {
        Ok(k) => k,
        Err(e) => return fail_on_error(2, NAME, &e),
    };
    CriterionResult {
        id: 2,
        name: NAME,
        passed: ks.passed,
        details: format!(
            "n={} per arm; KS statistic={} vs 1% critical value={}",
            config.replications,
            num(ks.statistic),
            num(ks.critical_value)
        ),
    }
}

/// Criterion 3: the truncated series for E[f̂], E[F̂], E[f̂²] against the
/// quadrature oracle at 1e-8 relative over the reference grid, with
/// cancellation-flagged points exempt (and required to stay under 10%).
fn criterion_03(_seed: u64) -> CriterionResult {
    const NAME: &str = "series agrees with quadrature oracle on the reference grid";
    let started = Instant::now();
    let xs = [0.0, 0.1, 0.5, 1.0, 2.0];
    let thetas = [0.5, 1.0, 2.0];
    let ms = [3u32, 5, 8, 12, 20];
    let mut total = 0u32;
    let mut flagged = 0u32;
    let mut violations = 0u32;
    let mut worst_rel = 0.0f64;
    let mut worst_at = (0.0f64, 0.0f64, 0u32, "");
    for &theta in &thetas {
        let params = match LomaxParams::new(theta) {
            Ok(p) => p,
            Err(e) => return fail_on_error(3, NAME, &e),
        };
        for &m in &ms {
            for &x in &xs {
                let trio: [(&str, Result<crate::analytic::SeriesResult>, OracleTarget); 3] = [
                    ("E[pdf_hat]", expected_pdf_hat(x, &params, m), OracleTarget::PdfHat),
                    ("E[cdf_hat]", expected_cdf_hat(x, &params, m), OracleTarget::CdfHat),
                    (
                        "E[pdf_hat^2]",
                        second_moment_pdf_hat(x, &params, m),
                        OracleTarget::PdfHatSquared,
                    ),
                ];
                for (label, series, target) in trio {
                    let series = match series {
                        Ok(s) => s,
                        Err(e) => return fail_on_error(3, NAME, &e),
                    };
                    total += 1;
                    if series.cancellation_flag {
                        flagged += 1;
                        continue;
                    }
                    let oracle = match quadrature_oracle(target, x, &params, m) {
                        Ok(v) => v,
                        Err(e) => return fail_on_error(3, NAME, &e),
                    };
                    let diff = (series.value - oracle).abs();
                    let rel = if diff == 0.0 {
                        0.0
                    } else {
                        diff / oracle.abs().max(f64::MIN_POSITIVE)
                    };
                    if rel > 1e-8 {
                        violations += 1;
                        if rel > worst_rel {
                            worst_rel = rel;
                            worst_at = (x, theta, m, label);
                        }
                    }
                }
            }
        }
    }
    let flagged_fraction = f64::from(flagged) / f64::from(total);
    let mut passed = violations == 0 && flagged_fraction < 0.10;
    let mut details = format!(
        "{violations}/{total} unflagged comparisons exceed 1e-8 relative; flagged {flagged}/{total}",
    );
    if violations > 0 {
        let (x, theta, m, label) = worst_at;
        let _ = write!(
            details,
            "; worst {} at (x={x}, theta={theta}, m={m}) with relative gap {}; \
             the truncated series differs from the true moment at small m",
            label,
            num(worst_rel)
        );
    }
    budget_note(&mut details, &mut passed, started.elapsed().as_secs_f64(), 10.0);
    eprintln!("criterion 03 finished in {:.2}s", started.elapsed().as_secs_f64());
    CriterionResult { id: 3, name: NAME, passed, details }
}

/// Criterion 4: series mean/MSE of the plug-in density at (x=0.5, θ=1, m=8)
/// and of the plug-in CDF at (x=1, θ=1, m=6) against Monte Carlo within
/// 3·SE.
fn criterion_04(seed: u64, suite: Suite, workers: usize) -> CriterionResult {
    const NAME: &str = "series moments match monte carlo at the pinned points";
    let started = Instant::now();
    let reps = suite.plugin_replications();
    let mut details = format!("replications={reps}");
    let mut passed = true;

    let mut compare = |label: &str, mc_value: f64, mc_se: f64, series_value: f64| {
        let gap = (mc_value - series_value).abs();
        let allowance = 3.0 * mc_se;
        let ok = gap <= allowance;
        passed &= ok;
        let _ = write!(
            details,
            "; {label}: |mc−series|={} vs 3·SE={} [{}]",
            num(gap),
            num(allowance),
            if ok { "ok" } else { "gap" }
        );
    };

    {
        let params = LomaxParams::new(1.0).expect("valid shape");
        let config = McConfig {
            master_seed: seed,
            replications: reps,
            workers,
            theta: params,
            m_or_n: 8,
            x_grid: vec![0.5],
            epsilons: Vec::new(),
        };
        let moments = match mc_plugin_moments(&config) {
            Ok(m) => m,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        let pdf = moments[0].pdf_hat.as_ref().expect("m is at least 3");
        let series_mean = match expected_pdf_hat(0.5, &params, 8) {
            Ok(s) => s.value,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        let series_mse = match mse_pdf_hat(0.5, &params, 8) {
            Ok(s) => s.value,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        compare("pdf mean", pdf.mean, pdf.se_mean, series_mean);
        compare("pdf mse", pdf.mse, pdf.se_mse, series_mse);
    }
    {
        let params = LomaxParams::new(1.0).expect("valid shape");
        let config = McConfig {
            master_seed: seed,
            replications: reps,
            workers,
            theta: params,
            m_or_n: 6,
            x_grid: vec![1.0],
            epsilons: Vec::new(),
        };
        let moments = match mc_plugin_moments(&config) {
            Ok(m) => m,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        let cdf = &moments[0].cdf_hat;
        let series_mean = match expected_cdf_hat(1.0, &params, 6) {
            Ok(s) => s.value,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        let series_mse = match mse_cdf_hat(1.0, &params, 6) {
            Ok(s) => s.value,
            Err(e) => return fail_on_error(4, NAME, &e),
        };
        compare("cdf mean", cdf.mean, cdf.se_mean, series_mean);
        compare("cdf mse", cdf.mse, cdf.se_mse, series_mse);
    }
    if !passed {
        let _ = write!(
            details,
            "; monte carlo tracks the defining integrals, so the gaps measure \
             the truncated-series remainder at these record counts"
        );
    }
    budget_note(&mut details, &mut passed, started.elapsed().as_secs_f64(), 60.0);
    eprintln!("criterion 04 finished in {:.2}s", started.elapsed().as_secs_f64());
    CriterionResult { id: 4, name: NAME, passed, details }
}

/// Criterion 5: plug-in bias shrinks strictly along m ∈ {10,20,40,80} at
/// x ∈ {0.5, 1}, θ = 1, for both the density and CDF estimates, ending
/// below 2% relative at m = 80.
fn criterion_05(_seed: u64) -> CriterionResult {
    const NAME: &str = "plug-in bias decays along growing record counts";
    let params = match LomaxParams::new(1.0) {
        Ok(p) => p,
        Err(e) => return fail_on_error(5, NAME, &e),
    };
    let ms = [10u32, 20, 40, 80];
    let mut passed = true;
    let mut details = String::from("m in {10,20,40,80}");
    for &x in &[0.5f64, 1.0] {
        let f_true = match params.pdf(x) {
            Ok(v) => v,
            Err(e) => return fail_on_error(5, NAME, &e),
        };
        let cdf_true = match params.cdf(x) {
            Ok(p) => p.value(),
            Err(e) => return fail_on_error(5, NAME, &e),
        };
        let mut pdf_bias = Vec::new();
        let mut cdf_bias = Vec::new();
        for &m in &ms {
            match expected_pdf_hat(x, &params, m) {
                Ok(s) => pdf_bias.push((s.value - f_true).abs()),
                Err(e) => return fail_on_error(5, NAME, &e),
            }
            match expected_cdf_hat(x, &params, m) {
                Ok(s) => cdf_bias.push((s.value - cdf_true).abs()),
                Err(e) => return fail_on_error(5, NAME, &e),
            }
        }
        let decreasing = |b: &[f64]| b.windows(2).all(|w| w[1] < w[0]);
        let pdf_ok = decreasing(&pdf_bias) && pdf_bias[3] / f_true < 0.02;
        let cdf_ok = decreasing(&cdf_bias) && cdf_bias[3] / cdf_true < 0.02;
        passed &= pdf_ok && cdf_ok;
        let _ = write!(
            details,
            "; x={x}: pdf bias {}→{} rel {} [{}], cdf bias {}→{} rel {} [{}]",
            num(pdf_bias[0]),
            num(pdf_bias[3]),
            num(pdf_bias[3] / f_true),
            if pdf_ok { "ok" } else { "bad" },
            num(cdf_bias[0]),
            num(cdf_bias[3]),
            num(cdf_bias[3] / cdf_true),
            if cdf_ok { "ok" } else { "bad" }
        );
    }
    CriterionResult { id: 5, name: NAME, passed, details }
}

/// Criterion 6: the gamma ratio tends to 1 — within 1e-3 at n = 1e5 for
/// i ≤ 5 — and equals 3/2 at (n=3, i=0) to 1e-12.
fn criterion_06(_seed: u64) -> CriterionResult {
    const NAME: &str = "gamma ratio limit and exact small case";
    let mut passed = true;
    let mut worst = 0.0f64;
    for i in 0..=5u64 {
        match gamma_ratio(100_000, i) {
            Ok(r) => {
                let err = (r - 1.0).abs();
                worst = worst.max(err);
                passed &= err < 1e-3;
            }
            Err(e) => return fail_on_error(6, NAME, &e),
        }
    }
    let small = match gamma_ratio(3, 0) {
        Ok(r) => r,
        Err(e) => return fail_on_error(6, NAME, &e),
    };
    let small_err = (small - 1.5).abs();
    passed &= small_err < 1e-12;
    CriterionResult {
        id: 6,
        name: NAME,
        passed,
        details: format!(
            "max |ratio−1| at n=1e5, i≤5: {}; |ratio(3,0)−1.5|={}",
            num(worst),
            num(small_err)
        ),
    }
}

/// Criterion 7: the hazard-identity gap at (x=0.5, θ=1) shrinks by ≥1.5×
/// per doubling of m across {10,…,160}, and E[f̂] stays below 1/θ on
/// x ∈ [0.1, 2] for every checked m ≥ 20.
fn criterion_07(_seed: u64) -> CriterionResult {
    const NAME: &str = "identity gap decay and density upper bound";
    let params = match LomaxParams::new(1.0) {
        Ok(p) => p,
        Err(e) => return fail_on_error(7, NAME, &e),
    };
    let ms = [10u32, 20, 40, 80, 160];
    let mut gaps = Vec::new();
    for &m in &ms {
        match asymptotic_identity_gap(0.5, &params, m) {
            Ok(g) => gaps.push(g.value.abs()),
            Err(e) => return fail_on_error(7, NAME, &e),
        }
    }
    let mut min_ratio = f64::INFINITY;
    for pair in gaps.windows(2) {
        min_ratio = min_ratio.min(pair[0] / pair[1]);
    }
    let gap_ok = min_ratio >= 1.5;

    let grid: Vec<f64> = (1..=20).map(|k| f64::from(k) * 0.1).collect();
    let mut bound_ok = true;
    for &m in &[20u32, 40, 80, 160] {
        match pdf_hat_upper_bound_check(&grid, &params, m) {
            Ok(holds) => bound_ok &= holds,
            Err(e) => return fail_on_error(7, NAME, &e),
        }
    }
    CriterionResult {
        id: 7,
        name: NAME,
        passed: gap_ok && bound_ok,
        details: format!(
            "min gap shrink factor per doubling: {}; density bound on [0.1,2] for m in {{20,40,80,160}}: {}",
            num(min_ratio),
            if bound_ok { "holds" } else { "violated" }
        ),
    }
}

/// Criterion 8: exceedance P(|θ̂−θ| ≥ 0.05) strictly decreases along
/// m ∈ {10,40,160}, matches the exact gamma-tail value at m=160 within
/// 3·SE, and the plug-in density/CDF exceedances at x=0.5 decrease too.
fn criterion_08(seed: u64, suite: Suite, workers: usize) -> CriterionResult {
    const NAME: &str = "convergence in probability of estimator and plug-ins";
    let config = McConfig {
        master_seed: seed,
        replications: suite.scan_replications(),
        workers,
        theta: LomaxParams::new(1.0).expect("valid shape"),
        m_or_n: 5,
        x_grid: vec![0.5],
        epsilons: Vec::new(),
    };
    let rows = match mc_convergence_scan(&config, &[10, 40, 160], 0.05) {
        Ok(r) => r,
        Err(e) => return fail_on_error(8, NAME, &e),
    };
    let theta_p: Vec<f64> = rows.iter().map(|r| r.theta_exceedance.probability).collect();
    let pdf_p: Vec<f64> = rows.iter().map(|r| r.per_x[0].pdf_exceedance.probability).collect();
    let cdf_p: Vec<f64> = rows.iter().map(|r| r.per_x[0].cdf_exceedance.probability).collect();
    let strictly_down = |p: &[f64]| p.windows(2).all(|w| w[1] < w[0]);
    let trend_ok = strictly_down(&theta_p) && strictly_down(&pdf_p) && strictly_down(&cdf_p);

    let exact = match exact_record_mle_exceedance(&config.theta, 160, 0.05) {
        Ok(v) => v,
        Err(e) => return fail_on_error(8, NAME, &e),
    };
    let last = &rows[2].theta_exceedance;
    let tail_gap = (last.probability - exact).abs();
    let tail_ok = tail_gap <= 3.0 * last.standard_error;
    CriterionResult {
        id: 8,
        name: NAME,
        passed: trend_ok && tail_ok,
        details: format!(
            "theta exceedance {}→{}→{}; pdf {}→{}→{}; cdf {}→{}→{}; |mc−exact| at m=160: {} vs 3·SE {}",
            num(theta_p[0]),
            num(theta_p[1]),
            num(theta_p[2]),
            num(pdf_p[0]),
            num(pdf_p[1]),
            num(pdf_p[2]),
            num(cdf_p[0]),
            num(cdf_p[1]),
            num(cdf_p[2]),
            num(tail_gap),
            num(3.0 * last.standard_error)
        ),
    }
}

/// Criterion 9: the closed forms E[f̂(0)] = m/((m−1)θ) and
/// E[f̂(0)²] = m²/(θ²(m−1)(m−2)) reproduced to 1e-12 relative.
fn criterion_09(_seed: u64) -> CriterionResult {
    const NAME: &str = "closed-form spot values at x = 0";
    let mut passed = true;
    let mut worst = 0.0f64;
    for &m in &[3u32, 5, 10] {
        for &theta in &[0.5f64, 1.0, 2.0] {
            let params = match LomaxParams::new(theta) {
                Ok(p) => p,
                Err(e) => return fail_on_error(9, NAME, &e),
            };
            let mf = f64::from(m);
            let mean_want = mf / ((mf - 1.0) * theta);
            let sq_want = mf * mf / (theta * theta * (mf - 1.0) * (mf - 2.0));
            let mean_got = match expected_pdf_hat(0.0, &params, m) {
                Ok(s) => s.value,
                Err(e) => return fail_on_error(9, NAME, &e),
            };
            let sq_got = match second_moment_pdf_hat(0.0, &params, m) {
                Ok(s) => s.value,
                Err(e) => return fail_on_error(9, NAME, &e),
            };
            let rel_mean = (mean_got - mean_want).abs() / mean_want;
            let rel_sq = (sq_got - sq_want).abs() / sq_want;
            worst = worst.max(rel_mean).max(rel_sq);
            passed &= rel_mean < 1e-12 && rel_sq < 1e-12;
        }
    }
    CriterionResult {
        id: 9,
        name: NAME,
        passed,
        details: format!("max relative error over m in {{3,5,10}}, theta in {{0.5,1,2}}: {}", num(worst)),
    }
}

/// Criterion 10: a fixed seed yields byte-identical rendered results across
/// repeated runs and across worker counts 1 and 4; probed with a reduced
/// replication budget on the distribution-level and convergence checks.
fn criterion_10(seed: u64, suite: Suite) -> CriterionResult {
    const NAME: &str = "byte-identical reports across runs and worker counts";
    let reps = match suite {
        Suite::Fast => 1_000,
        Suite::Full => 2_000,
    };
    let probe = |workers: usize| -> Result<String> {
        let config = McConfig {
            master_seed: seed,
            replications: reps,
            workers,
            theta: LomaxParams::new(1.0)?,
            m_or_n: 5,
            x_grid: vec![0.5],
            epsilons: Vec::new(),
        };
        let (record, _) = simulate_estimator_replications(&config, EstimatorArm::RecordMle)?;
        let (sample, _) = simulate_estimator_replications(&config, EstimatorArm::SampleMle)?;
        let ks = ks_two_sample(&record, &sample)?;
        let rows = mc_convergence_scan(&config, &[10, 40], 0.05)?;
        let mut text = format!("ks={:016x}", ks.statistic.to_bits());
        for row in rows {
            let _ = write!(
                text,
                ";m={}:{:016x},{:016x},{:016x}",
                row.m,
                row.theta_exceedance.probability.to_bits(),
                row.per_x[0].pdf_exceedance.probability.to_bits(),
                row.per_x[0].cdf_exceedance.probability.to_bits()
            );
        }
        Ok(text)
    };
    let first = match probe(1) {
        Ok(t) => t,
        Err(e) => return fail_on_error(10, NAME, &e),
    };
    let mut passed = true;
    for workers in [1usize, 4, 4] {
        match probe(workers) {
            Ok(t) => passed &= t == first,
            Err(e) => return fail_on_error(10, NAME, &e),
        }
    }
    CriterionResult {
        id: 10,
        name: NAME,
        passed,
        details: format!(
            "probe of {reps}-replication summaries repeated at workers 1 and 4: {}",
            if passed { "all bitwise identical" } else { "mismatch" }
        ),
    }
}

/// Runs every criterion and assembles the report. `workers` is forwarded to
/// the Monte Carlo criteria whose budgets are not stated single-threaded;
/// results are bitwise independent of it. Criteria 3 and 4 are expected to
/// fail (see the module docs); `all_passed` reflects the verdicts as
/// measured.
pub fn run_suite(suite: Suite, master_seed: u64, workers: usize) -> SuiteReport {
    let workers = workers.max(1);
    let criteria = vec![
        criterion_01(master_seed, suite),
        criterion_02(master_seed, suite),
        criterion_03(master_seed),
        criterion_04(master_seed, suite, workers),
        criterion_05(master_seed),
        criterion_06(master_seed),
        criterion_07(master_seed),
        criterion_08(master_seed, suite, workers),
        criterion_09(master_seed),
        criterion_10(master_seed, suite),
    ];
    let all_passed = criteria.iter().all(|c| c.passed);
    SuiteReport {
        suite: suite.name(),
        master_seed,
        criteria,
        all_passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_matches_the_proven_verdict_pattern() {
        let report = run_suite(Suite::Fast, 1, 2);
        assert_eq!(report.criteria.len(), 10);
        for c in &report.criteria {
            let expect_pass = !matches!(c.id, 3 | 4);
            assert_eq!(
                c.passed, expect_pass,
                "criterion {:02}: {}",
                c.id, c.details
            );
        }
        assert!(!report.all_passed);
        // The series-vs-oracle criterion must report a large but not total
        // disagreement count and no flagged points on this grid.
        let c3 = &report.criteria[2];
        assert!(c3.details.contains("flagged 0/225"), "{}", c3.details);
    }

    #[test]
    fn fast_suite_renders_identically_across_runs() {
        let first = run_suite(Suite::Fast, 7, 1).render();
        let second = run_suite(Suite::Fast, 7, 4).render();
        assert_eq!(first, second);
        assert!(first.starts_with("acceptance report (suite: fast, seed: 7)"));
        assert!(first.contains("criterion 03 FAIL"));
        assert!(first.contains("criterion 04 FAIL"));
        assert!(first.ends_with("overall: FAIL (8/10 criteria passed)\n"));
    }

    #[test]
    fn reports_serialize_with_stable_fields() {
        let report = run_suite(Suite::Fast, 3, 2);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["suite"], "fast");
        assert_eq!(json["master_seed"], 3);
        assert_eq!(json["criteria"].as_array().unwrap().len(), 10);
        for c in json["criteria"].as_array().unwrap() {
            assert!(c["id"].is_u64());
            assert!(c["name"].is_string());
            assert!(c["passed"].is_boolean());
            assert!(c["details"].is_string());
        }
        assert_eq!(json["all_passed"], false);
    }
}
