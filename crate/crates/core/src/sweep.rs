//! Seeded batch driver: builds samples, runs every checker, and hands report
//! rows to a sink in a fixed order.
//!
//! Work is split into jobs (sharpness checks per class order, one member
//! sample per `(n, index)`, one class-independent sample per index). Jobs are
//! evaluated a chunk at a time, in parallel with the `parallel` feature, and the
//! rows of a chunk are emitted in job order before the next chunk starts. The
//! output therefore does not depend on the execution mode or thread count.

use num_complex::Complex64;

use crate::caratheodory::{check_caratheodory_bound, p_from_measure, random_measure, HerglotzMeasure};
use crate::classes::{close_to_convex, extremal, member_from_p, odd_member_from_q, verify_membership};
use crate::cli::config::RunConfig;
use crate::error::Result;
use crate::inequalities::{
    coeff_bound, convolution_identity, identity_report, lebedev_milin_check, lebedev_milin_squared_check, leung_report,
    min_gap_report, modulus_gap, odd_coeff_bound, robertson_gap, robertson_step, robertson_triangle, successive_gap,
    LEBEDEV_MILIN_TOL,
};
use crate::report::{GapReport, ReportRow};
use crate::salagean::{apply_d, apply_i, SalageanOrder};
use crate::seed::{derive_seed, rng_from_seed};
use crate::series::TruncatedSeries;
use crate::unit::UnitModulus;

/// Jobs evaluated together before their rows are flushed.
pub const CHUNK_JOBS: usize = 64;

/// Per-sample stream indices passed to [`derive_seed`].
pub mod stream {
    pub const MEMBER: u64 = 0;
    pub const ODD: u64 = 1;
    pub const CONVEX: u64 = 2;
    pub const CLOSE_TO_CONVEX: u64 = 3;
    pub const EXPONENT: u64 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs sequentially.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Job {
    FixedSharpness,
    Sharpness(u32),
    Member { n: u32, index: u64 },
    Shared { index: u64 },
}

/// The seed of sample `index` under `master`.
pub fn sample_seed(master: u64, index: u64) -> u64 {
    derive_seed(master, index)
}

/// Random `phi` with `phi(0) = 0` and coefficients uniform in the closed unit disk.
pub fn random_exponent_series(seed: u64, order: usize) -> Result<TruncatedSeries> {
    use rand::Rng;
    let mut rng = rng_from_seed(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0)];
    for _ in 0..order {
        let r = rng.random::<f64>().sqrt();
        let t = rng.random::<f64>() * std::f64::consts::TAU;
        coeffs.push(Complex64::from_polar(r, t));
    }
    TruncatedSeries::new(coeffs)
}

/// Totals gathered while streaming.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub failures: usize,
    /// `(label, count)` of failing rows, in first-failure order.
    pub failures_by_label: Vec<(String, usize)>,
    pub unsquared_checks: usize,
    pub unsquared_violations: usize,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, row: &ReportRow) {
        self.rows += 1;
        if !row.pass {
            self.failures += 1;
            match self.failures_by_label.iter_mut().find(|(l, _)| *l == row.label) {
                Some((_, c)) => *c += 1,
                None => self.failures_by_label.push((row.label.clone(), 1)),
            }
        }
    }
}

struct JobOutput {
    rows: Vec<ReportRow>,
    unsquared_checks: usize,
    unsquared_violations: usize,
}

fn jobs(config: &RunConfig) -> Vec<Job> {
    let mut jobs = vec![Job::FixedSharpness];
    jobs.extend(config.n_values.iter().map(|&n| Job::Sharpness(n)));
    for &n in &config.n_values {
        jobs.extend((0..config.samples as u64).map(|index| Job::Member { n, index }));
    }
    jobs.extend((0..config.samples as u64).map(|index| Job::Shared { index }));
    jobs
}

/// Runs the full checker suite, calling `sink` once per row in deterministic order.
pub fn run<E, F>(config: &RunConfig, execution: Execution, mut sink: F) -> std::result::Result<Summary, E>
where
    E: From<crate::error::Error>,
    F: FnMut(&ReportRow) -> std::result::Result<(), E>,
{
    config.validate()?;
    let all = jobs(config);
    let mut summary = Summary::default();
    for chunk in all.chunks(CHUNK_JOBS) {
        let outputs = evaluate_chunk(config, chunk, execution)?;
        for out in outputs {
            summary.unsquared_checks += out.unsquared_checks;
            summary.unsquared_violations += out.unsquared_violations;
            for row in &out.rows {
                summary.record(row);
                sink(row)?;
            }
        }
    }
    Ok(summary)
}

/// Collects every row in memory. Convenient for tests and small runs.
pub fn run_collect(config: &RunConfig, execution: Execution) -> Result<(Vec<ReportRow>, Summary)> {
    let mut rows = Vec::new();
    let summary = run::<crate::error::Error, _>(config, execution, |r| {
        rows.push(r.clone());
        Ok(())
    })?;
    Ok((rows, summary))
}

fn evaluate_chunk(config: &RunConfig, chunk: &[Job], execution: Execution) -> Result<Vec<JobOutput>> {
    match execution {
        Execution::Sequential => chunk.iter().map(|job| evaluate(config, *job)).collect(),
        Execution::Parallel => parallel_map(config, chunk),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map(config: &RunConfig, chunk: &[Job]) -> Result<Vec<JobOutput>> {
    use rayon::prelude::*;
    chunk.par_iter().map(|job| evaluate(config, *job)).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map(config: &RunConfig, chunk: &[Job]) -> Result<Vec<JobOutput>> {
    chunk.iter().map(|job| evaluate(config, *job)).collect()
}

fn evaluate(config: &RunConfig, job: Job) -> Result<JobOutput> {
    let mut out = JobOutput {
        rows: Vec::new(),
        unsquared_checks: 0,
        unsquared_violations: 0,
    };
    match job {
        Job::FixedSharpness => fixed_sharpness_rows(config, &mut out.rows)?,
        Job::Sharpness(n) => sharpness_rows(config, SalageanOrder(n), &mut out.rows)?,
        Job::Member { n, index } => member_rows(config, SalageanOrder(n), index, &mut out.rows)?,
        Job::Shared { index } => shared_rows(config, index, &mut out)?,
    }
    Ok(out)
}

/// Equality cases that do not depend on the class order.
fn fixed_sharpness_rows(config: &RunConfig, rows: &mut Vec<ReportRow>) -> Result<()> {
    let tol = config.tolerance_identity;
    let tag = |r: GapReport| ReportRow::new(r, None, None);
    let (order, max_k) = (config.order, config.max_k);

    let koebe = extremal(SalageanOrder::STARLIKE, UnitModulus::ONE, UnitModulus::ONE, order)?;
    for k in 2..=max_k {
        for m in 1..k {
            let r = robertson_gap(&koebe, k, m, 0.0)?;
            rows.push(tag(
                identity_report("robertson_sharpness", k, r.slack.abs(), tol).with_m(m)
            ));
        }
    }

    let mut lambda = vec![Complex64::new(0.0, 0.0)];
    lambda.extend((1..=max_k).map(|j| Complex64::new(1.0 / j as f64, 0.0)));
    let phi = TruncatedSeries::new(lambda)?;
    for k in 1..=max_k {
        let r = lebedev_milin_check(&phi, k, 0.0)?;
        rows.push(tag(identity_report("lebedev_milin_sharpness", k, r.slack.abs(), tol)));
    }

    let p = p_from_measure(&HerglotzMeasure::point(0.0)?, max_k)?;
    for k in 1..=max_k {
        let r = leung_report(&p, k, config.grid, 0.0)?;
        let witness = r.witness.unwrap_or_default();
        let off = (witness - Complex64::new(1.0, 0.0)).norm();
        rows.push(tag(identity_report(
            "unimodular_nu_sharpness",
            k,
            r.slack.abs().max(off),
            tol,
        )
        .with_witness(witness)));
    }
    Ok(())
}

fn sharpness_rows(config: &RunConfig, n: SalageanOrder, rows: &mut Vec<ReportRow>) -> Result<()> {
    let tol = config.tolerance_identity;
    let tag = |r: GapReport| ReportRow::new(r, Some(n.get()), None);
    const ROOTS: usize = 16;

    // worst deviation of the successive gap from 1 over all pairs of 16th roots
    let mut worst = vec![(0.0f64, UnitModulus::ONE); config.max_k + 1];
    for i in 0..ROOTS {
        let nu = UnitModulus::root_of_unity(i, ROOTS);
        for j in 0..ROOTS {
            let gamma = UnitModulus::root_of_unity(j, ROOTS);
            let f = extremal(n, nu, gamma, config.order)?;
            for (k, slot) in worst.iter_mut().enumerate().skip(1) {
                let dev = (successive_gap(&f, n, k, nu)? - 1.0).abs();
                if dev > slot.0 {
                    *slot = (dev, nu);
                }
            }
        }
    }
    for (k, (dev, nu)) in worst.into_iter().enumerate().skip(1) {
        rows.push(tag(
            identity_report("extremal_sharpness", k, dev, tol).with_witness(nu.value())
        ));
    }

    let peak = extremal(n, UnitModulus::ONE, UnitModulus::ONE, config.order)?;
    for r in coeff_bound(&peak, n, config.max_k, 0.0)? {
        rows.push(tag(identity_report("coeff_bound_sharpness", r.k, r.slack.abs(), tol)));
    }
    let odd = extremal(
        n,
        UnitModulus::ONE,
        UnitModulus::new(Complex64::new(-1.0, 0.0))?,
        config.order,
    )?;
    for r in odd_coeff_bound(&odd, n, config.max_k, 0.0)? {
        rows.push(tag(identity_report(
            "odd_coeff_bound_sharpness",
            r.k,
            r.slack.abs(),
            tol,
        )));
    }
    Ok(())
}

fn member_rows(config: &RunConfig, n: SalageanOrder, index: u64, rows: &mut Vec<ReportRow>) -> Result<()> {
    let seed = sample_seed(config.seed, index);
    let slack = config.tolerance_slack;
    let tag = |r: GapReport| ReportRow::new(r, Some(n.get()), Some(seed));
    let order = config.order;

    let p = p_from_measure(
        &random_measure(derive_seed(seed, stream::MEMBER), config.max_atoms)?,
        order,
    )?;
    let f = member_from_p(&p, n, order)?;
    for k in 1..=config.max_k {
        rows.push(tag(min_gap_report(&f, n, k, config.grid, slack)?));
    }
    for k in 1..=config.max_k {
        rows.push(tag(modulus_gap(&f, n, k, slack)?));
    }
    rows.extend(coeff_bound(&f, n, config.max_k, slack)?.into_iter().map(tag));

    let round_trip = apply_i(&apply_d(&f, n)?, n)?.max_abs_diff(&f);
    rows.push(tag(identity_report(
        "salagean_round_trip",
        order,
        round_trip,
        config.tolerance_identity,
    )));
    let min_re = verify_membership(&f, n, &config.membership_grid)?;
    rows.push(tag(GapReport::new(
        "membership",
        order,
        -min_re,
        0.0,
        config.tolerance_membership,
    )));

    let q = p_from_measure(
        &random_measure(derive_seed(seed, stream::ODD), config.max_atoms)?,
        order / 2,
    )?;
    let odd = odd_member_from_q(&q, n, order)?;
    rows.extend(odd_coeff_bound(&odd, n, config.max_k, slack)?.into_iter().map(tag));
    let min_re = verify_membership(&odd, n, &config.membership_grid)?;
    rows.push(tag(GapReport::new(
        "odd_membership",
        order,
        -min_re,
        0.0,
        config.tolerance_membership,
    )));
    Ok(())
}

fn shared_rows(config: &RunConfig, index: u64, out: &mut JobOutput) -> Result<()> {
    let seed = sample_seed(config.seed, index);
    let slack = config.tolerance_slack;
    let ident = config.tolerance_identity;
    let tag = |r: GapReport| ReportRow::new(r, None, Some(seed));
    let (order, max_k) = (config.order, config.max_k);
    let rows = &mut out.rows;

    let p = p_from_measure(
        &random_measure(derive_seed(seed, stream::MEMBER), config.max_atoms)?,
        order,
    )?;
    rows.extend(check_caratheodory_bound(&p, max_k, slack)?.into_iter().map(tag));
    for k in 1..=max_k {
        rows.push(tag(leung_report(&p, k, config.grid, slack)?));
    }

    let phi = random_exponent_series(derive_seed(seed, stream::EXPONENT), max_k)?;
    for k in 1..=max_k {
        rows.push(tag(lebedev_milin_squared_check(&phi, k, LEBEDEV_MILIN_TOL)?));
        let unsquared = lebedev_milin_check(&phi, k, LEBEDEV_MILIN_TOL)?;
        out.unsquared_checks += 1;
        if !unsquared.pass {
            out.unsquared_violations += 1;
        }
        if config.include_unsquared {
            rows.push(tag(unsquared));
        }
    }
    let round_trip = phi.exp()?.log()?.max_abs_diff(&phi);
    rows.push(tag(identity_report("exp_log_round_trip", max_k, round_trip, ident)));

    let gp = p_from_measure(
        &random_measure(derive_seed(seed, stream::CONVEX), config.max_atoms)?,
        order,
    )?;
    let g = member_from_p(&gp, SalageanOrder::CONVEX, order)?;
    let pc = p_from_measure(
        &random_measure(derive_seed(seed, stream::CLOSE_TO_CONVEX), config.max_atoms)?,
        order,
    )?;
    let f = close_to_convex(&g, &pc, order)?;
    for k in 2..=max_k {
        for m in 1..k {
            rows.push(tag(robertson_gap(&f, k, m, slack)?));
        }
    }
    for k in 1..max_k {
        rows.push(tag(robertson_step(&f, k, slack)?));
        rows.push(tag(robertson_triangle(&f, &g, &pc, k, slack)?));
    }
    for k in 1..=max_k {
        let residual = convolution_identity(&f, &g, &pc, k)?;
        rows.push(tag(identity_report("convolution_identity", k, residual, ident)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            order: 48,
            max_k: 6,
            samples: 5,
            n_values: vec![0, 2],
            grid: 256,
            ..RunConfig::default()
        }
    }

    #[test]
    fn small_run_passes() {
        let (rows, summary) = run_collect(&small(), Execution::Sequential).unwrap();
        assert!(summary.all_passed(), "{:?}", summary.failures_by_label);
        assert_eq!(summary.rows, rows.len());
        assert_eq!(summary.unsquared_checks, 5 * 6);
    }

    #[test]
    fn execution_modes_agree() {
        let (a, _) = run_collect(&small(), Execution::Sequential).unwrap();
        let (b, _) = run_collect(&small(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_tolerance_forces_failures() {
        let cfg = RunConfig {
            tolerance_slack: -1.0,
            ..small()
        };
        let (rows, summary) = run_collect(&cfg, Execution::Parallel).unwrap();
        assert!(!summary.all_passed());
        // every row with slack below 1 now fails
        for r in rows.iter().filter(|r| r.label == "modulus_gap") {
            assert_eq!(r.pass, r.slack >= 1.0);
        }
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = RunConfig { order: 4, ..small() };
        assert!(run_collect(&cfg, Execution::Sequential).is_err());
    }
}
