//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p salagean-core --test acceptance`. The process exits
//! nonzero when a gating criterion fails. The unsquared exponentiated-series
//! bound is reported on its own line and does not gate; see the README.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use salagean_core::caratheodory::{p_from_measure, random_measure, HerglotzMeasure};
use salagean_core::classes::{close_to_convex, extremal, member_from_p, odd_member_from_q, verify_membership};
use salagean_core::inequalities::{
    coeff_bound, convolution_identity, harmonic, lebedev_milin_check, lebedev_milin_squared_check, leung_nu_search,
    min_gap_over_circle, odd_coeff_bound, robertson_gap, robertson_step, successive_gap,
};
use salagean_core::salagean::{apply_d, apply_i};
use salagean_core::seed::derive_seed;
use salagean_core::sweep::{random_exponent_series, sample_seed, stream};
use salagean_core::{DiskGrid, SalageanOrder, TruncatedSeries, UnitModulus};

const MASTER: u64 = 20250101;
const N_VALUES: [u32; 4] = [0, 1, 2, 3];
const MAX_ATOMS: usize = 8;
const GRID: usize = 2048;
const MEMBER_ORDER: usize = 48;
const MAX_K: usize = 12;

struct Line {
    id: &'static str,
    pass: bool,
    gating: bool,
    detail: String,
}

struct Checks {
    lines: Vec<Line>,
}

impl Checks {
    fn record(&mut self, id: &'static str, pass: bool, gating: bool, detail: String, elapsed: Duration) {
        let tag = match (pass, gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (reported, not gating)",
        };
        println!("{tag} [{id}] {detail} ({:.2} s)", elapsed.as_secs_f64());
        self.lines.push(Line {
            id,
            pass,
            gating,
            detail,
        });
    }
}

/// Tracks the largest value seen and where it occurred.
#[derive(Default)]
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn see(&mut self, value: f64, at: impl FnOnce() -> String) {
        if value > self.value || self.at.is_empty() {
            self.value = value;
            self.at = at();
        }
    }
}

fn unit(re: f64, im: f64) -> UnitModulus {
    UnitModulus::new(Complex64::new(re, im)).unwrap()
}

fn member(seed: u64, n: SalageanOrder) -> TruncatedSeries {
    let p = p_from_measure(
        &random_measure(derive_seed(seed, stream::MEMBER), MAX_ATOMS).unwrap(),
        MEMBER_ORDER,
    )
    .unwrap();
    member_from_p(&p, n, MEMBER_ORDER).unwrap()
}

fn odd_member(seed: u64, n: SalageanOrder) -> TruncatedSeries {
    let q = p_from_measure(
        &random_measure(derive_seed(seed, stream::ODD), MAX_ATOMS).unwrap(),
        MEMBER_ORDER / 2,
    )
    .unwrap();
    odd_member_from_q(&q, n, MEMBER_ORDER).unwrap()
}

/// Close-to-convex sample `(f, g, p)` with `g` convex.
fn close_to_convex_sample(seed: u64) -> (TruncatedSeries, TruncatedSeries, TruncatedSeries) {
    let g = member(derive_seed(seed, stream::CONVEX), SalageanOrder::CONVEX);
    let p = p_from_measure(
        &random_measure(derive_seed(seed, stream::CLOSE_TO_CONVEX), MAX_ATOMS).unwrap(),
        MEMBER_ORDER,
    )
    .unwrap();
    let f = close_to_convex(&g, &p, MEMBER_ORDER).unwrap();
    (f, g, p)
}

fn seeds(count: u64) -> impl Iterator<Item = u64> {
    (0..count).map(|i| sample_seed(MASTER, i))
}

fn extremal_sharpness(checks: &mut Checks) {
    let start = Instant::now();
    let mut worst = Worst::default();
    for n in N_VALUES.map(SalageanOrder) {
        for i in 0..16 {
            let nu = UnitModulus::root_of_unity(i, 16);
            for j in 0..16 {
                let gamma = UnitModulus::root_of_unity(j, 16);
                let f = extremal(n, nu, gamma, 32).unwrap();
                for k in 1..=20 {
                    let dev = (successive_gap(&f, n, k, nu).unwrap() - 1.0).abs();
                    worst.see(dev, || format!("n={} nu=#{i} gamma=#{j} k={k}", n.get()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = worst.value <= 1e-10 && elapsed < Duration::from_secs(5);
    let detail = format!(
        "extremal successive gap = 1: max deviation {:.3e} at {} (tol 1e-10, < 5 s)",
        worst.value, worst.at
    );
    checks.record("1", pass, true, detail, elapsed);
}

fn random_gap_and_coefficients(checks: &mut Checks) {
    let start = Instant::now();
    let mut gap = Worst::default();
    let mut coeff = Worst::default();
    for seed in seeds(500) {
        for n in N_VALUES.map(SalageanOrder) {
            let f = member(seed, n);
            for k in 1..=MAX_K {
                let (_, min) = min_gap_over_circle(&f, n, k, GRID).unwrap();
                gap.see(min - 1.0, || format!("seed={seed} n={} k={k}", n.get()));
            }
            for r in coeff_bound(&f, n, MAX_K, 0.0).unwrap() {
                coeff.see(-r.slack, || format!("seed={seed} n={} k={}", n.get(), r.k));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = gap.value <= 1e-6 && elapsed < Duration::from_secs(60);
    let detail = format!(
        "min over |nu|=1 of successive gap <= 1 on 500 members x 4 orders x k<=12: worst excess {:.3e} at {} (tol 1e-6, < 60 s)",
        gap.value, gap.at
    );
    checks.record("2", pass, true, detail, elapsed);

    let start = Instant::now();
    let koebe = extremal(
        SalageanOrder::STARLIKE,
        UnitModulus::ONE,
        UnitModulus::ONE,
        MEMBER_ORDER,
    )
    .unwrap();
    let koebe_exact = coeff_bound(&koebe, SalageanOrder::STARLIKE, MAX_K, 0.0)
        .unwrap()
        .iter()
        .all(|r| r.slack == 0.0);
    let pass = coeff.value <= 1e-8 && koebe_exact;
    let detail = format!(
        "|a_k| <= k^(1-n) for 2<=k<=12: worst excess {:.3e} at {} (tol 1e-8); Koebe equality exact: {koebe_exact}",
        coeff.value, coeff.at
    );
    checks.record("3", pass, true, detail, elapsed + start.elapsed());
}

fn odd_coefficients(checks: &mut Checks) {
    let start = Instant::now();
    let mut excess = Worst::default();
    let mut sharp = 0.0f64;
    for n in N_VALUES.map(SalageanOrder) {
        for seed in seeds(200) {
            let f = odd_member(seed, n);
            for r in odd_coeff_bound(&f, n, MAX_K, 0.0).unwrap() {
                excess.see(-r.slack, || format!("seed={seed} n={} k={}", n.get(), r.k));
            }
        }
        let peak = extremal(n, UnitModulus::ONE, unit(-1.0, 0.0), MEMBER_ORDER).unwrap();
        for r in odd_coeff_bound(&peak, n, MAX_K, 0.0).unwrap() {
            sharp = sharp.max(r.slack.abs());
        }
    }
    let pass = excess.value <= 1e-8 && sharp <= 1e-10;
    let detail = format!(
        "|a_(2k+1)| <= (2k+1)^(-n) on 200 odd members per order: worst excess {:.3e} at {} (tol 1e-8); extremal equality deviation {sharp:.3e} (tol 1e-10)",
        excess.value, excess.at
    );
    checks.record("4", pass, true, detail, start.elapsed());
}

fn unimodular_nu(checks: &mut Checks) {
    let start = Instant::now();
    let mut excess = Worst::default();
    for seed in seeds(500) {
        let p = p_from_measure(
            &random_measure(derive_seed(seed, stream::MEMBER), MAX_ATOMS).unwrap(),
            MAX_K,
        )
        .unwrap();
        for k in 1..=MAX_K {
            let s = leung_nu_search(&p, k, GRID).unwrap();
            excess.see(s.exponent(), || format!("seed={seed} k={k}"));
        }
    }
    let p = p_from_measure(&HerglotzMeasure::point(0.0).unwrap(), MAX_K).unwrap();
    let mut sharp = 0.0f64;
    for k in 1..=MAX_K {
        let s = leung_nu_search(&p, k, GRID).unwrap();
        sharp = sharp
            .max((s.achieved - harmonic(k)).abs())
            .max((s.nu.value() - 1.0).norm());
    }
    let pass = excess.value <= 1e-6 && sharp <= 1e-12;
    let detail = format!(
        "min over nu of sum |p_j - nu^j|^2/j <= H_k on 500 p x k<=12: worst excess {:.3e} at {} (tol 1e-6); p_j = 2 equality at nu = 1 deviation {sharp:.3e} (tol 1e-12)",
        excess.value, excess.at
    );
    checks.record("5", pass, true, detail, start.elapsed());
}

fn exponentiated_series(checks: &mut Checks) {
    let start = Instant::now();
    let mut unsquared = Worst::default();
    let mut squared = Worst::default();
    let mut violations = 0usize;
    let mut total = 0usize;
    for seed in seeds(500) {
        let phi = random_exponent_series(derive_seed(seed, stream::EXPONENT), MAX_K).unwrap();
        for k in 1..=MAX_K {
            let r = lebedev_milin_check(&phi, k, 1e-9).unwrap();
            total += 1;
            violations += usize::from(!r.pass);
            unsquared.see(-r.slack, || format!("seed={seed} k={k}"));
            let r = lebedev_milin_squared_check(&phi, k, 1e-9).unwrap();
            squared.see(-r.slack, || format!("seed={seed} k={k}"));
        }
    }
    let mut lambda = vec![Complex64::new(0.0, 0.0)];
    lambda.extend((1..=MAX_K).map(|j| Complex64::new(1.0 / j as f64, 0.0)));
    let phi = TruncatedSeries::new(lambda).unwrap();
    let mut sharp = 0.0f64;
    for k in 1..=MAX_K {
        sharp = sharp
            .max(lebedev_milin_check(&phi, k, 0.0).unwrap().slack.abs())
            .max(lebedev_milin_squared_check(&phi, k, 0.0).unwrap().slack.abs());
    }
    let elapsed = start.elapsed();

    let detail = format!(
        "|beta_k| <= exp(sum (j|lambda_j|^2 - 1/j)) on 500 phi x k<=12: {violations} of {total} checks violated, worst excess {:.3e} at {} (tol 1e-9)",
        unsquared.value, unsquared.at
    );
    checks.record("6-unsquared", violations == 0 && sharp <= 1e-12, false, detail, elapsed);
    let detail = format!(
        "|beta_k|^2 <= exp(sum (j|lambda_j|^2 - 1/j)) on the same phi: worst excess {:.3e} at {} (tol 1e-9); lambda_j = 1/j equality deviation {sharp:.3e} (tol 1e-12)",
        squared.value, squared.at
    );
    checks.record("6", squared.value <= 1e-9 && sharp <= 1e-12, true, detail, elapsed);
}

fn robertson_and_identities(checks: &mut Checks) {
    let start = Instant::now();
    let mut gap = Worst::default();
    let mut step = Worst::default();
    let mut conv = Worst::default();
    for seed in seeds(500) {
        let (f, g, p) = close_to_convex_sample(seed);
        for k in 2..=MAX_K {
            for m in 1..k {
                let r = robertson_gap(&f, k, m, 0.0).unwrap();
                gap.see(-r.slack, || format!("seed={seed} k={k} m={m}"));
            }
        }
        for k in 1..MAX_K {
            let r = robertson_step(&f, k, 0.0).unwrap();
            step.see(-r.slack, || format!("seed={seed} k={k}"));
        }
        for k in 1..=MAX_K {
            let residual = convolution_identity(&f, &g, &p, k).unwrap();
            conv.see(residual, || format!("seed={seed} k={k}"));
        }
    }
    let koebe = extremal(
        SalageanOrder::STARLIKE,
        UnitModulus::ONE,
        UnitModulus::ONE,
        MEMBER_ORDER,
    )
    .unwrap();
    let koebe_exact = (2..=MAX_K).all(|k| (1..k).all(|m| robertson_gap(&koebe, k, m, 0.0).unwrap().slack == 0.0));
    let pass = gap.value <= 1e-6 && step.value <= 1e-6 && koebe_exact;
    let detail = format!(
        "|k|a_k| - m|a_m|| <= k^2 - m^2 on 500 close-to-convex f, m<k<=12: worst excess {:.3e} at {}; step <= 2k+1 worst excess {:.3e} at {} (tol 1e-6); Koebe equality exact: {koebe_exact}",
        gap.value, gap.at, step.value, step.at
    );
    let elapsed = start.elapsed();
    checks.record("7", pass, true, detail, elapsed);

    let start = Instant::now();
    let mut salagean = Worst::default();
    let mut exp_log = Worst::default();
    for seed in seeds(500) {
        for n in N_VALUES.map(SalageanOrder) {
            let f = member(seed, n);
            let back = apply_i(&apply_d(&f, n).unwrap(), n).unwrap();
            salagean.see(back.max_abs_diff(&f), || format!("seed={seed} n={}", n.get()));
        }
        let phi = random_exponent_series(derive_seed(seed, stream::EXPONENT), 32).unwrap();
        let back = phi.exp().unwrap().log().unwrap();
        exp_log.see(back.max_abs_diff(&phi), || format!("seed={seed}"));
    }
    let pass = salagean.value <= 1e-12 && exp_log.value <= 1e-10 && conv.value <= 1e-10;
    let detail = format!(
        "I_n D^n round trip {:.3e} (tol 1e-12); exp/log round trip {:.3e} (tol 1e-10); convolution identity residual {:.3e} at {} (tol 1e-10)",
        salagean.value, exp_log.value, conv.value, conv.at
    );
    checks.record("8", pass, true, detail, elapsed + start.elapsed());
}

fn membership(checks: &mut Checks) {
    let start = Instant::now();
    let grid = DiskGrid {
        radius: 0.9,
        radial: 64,
        angular: 256,
    };
    let mut worst = Worst::default();
    let mut count = 0usize;
    let mut see = |f: &TruncatedSeries, n: SalageanOrder, what: &str| {
        let min_re = verify_membership(f, n, &grid).unwrap();
        count += 1;
        worst.see(-min_re, || format!("{what} n={}", n.get()));
    };
    for seed in seeds(500) {
        for n in N_VALUES.map(SalageanOrder) {
            see(&member(seed, n), n, &format!("member seed={seed}"));
        }
        let (_, g, _) = close_to_convex_sample(seed);
        see(&g, SalageanOrder::CONVEX, &format!("convex seed={seed}"));
    }
    for n in N_VALUES.map(SalageanOrder) {
        for seed in seeds(200) {
            see(&odd_member(seed, n), n, &format!("odd seed={seed}"));
        }
        for i in 0..16 {
            for j in 0..16 {
                let nu = UnitModulus::root_of_unity(i, 16);
                let gamma = UnitModulus::root_of_unity(j, 16);
                see(
                    &extremal(n, nu, gamma, MEMBER_ORDER).unwrap(),
                    n,
                    &format!("extremal #{i},#{j}"),
                );
            }
        }
    }
    let detail = format!(
        "min Re(D^(n+1) f / D^n f) > -1e-3 on r<=0.9, 64x256 grid, N=48 for {count} members: worst {:.3e} at {}",
        -worst.value, worst.at
    );
    checks.record("9", worst.value < 1e-3, true, detail, start.elapsed());
}

fn cli_determinism(checks: &mut Checks) {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"seed": 7, "samples": 100}"#).unwrap();
    let mut outputs = Vec::new();
    let mut codes = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("run{run}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_salagean"))
            .arg("verify")
            .arg("--config")
            .arg(&config)
            .arg("--output")
            .arg(&out)
            .output()
            .unwrap();
        codes.push(status.status.code());
        outputs.push(std::fs::read(&out).unwrap_or_default());
    }
    let identical = !outputs[0].is_empty() && outputs[0] == outputs[1];
    let pass = identical && codes.iter().all(|c| *c == Some(0));
    let detail = format!(
        "verify twice with a fixed config: byte-identical {identical} ({} bytes), exit codes {codes:?}",
        outputs[0].len()
    );
    checks.record("10", pass, true, detail, start.elapsed());
}

fn main() {
    let mut checks = Checks { lines: Vec::new() };
    extremal_sharpness(&mut checks);
    random_gap_and_coefficients(&mut checks);
    odd_coefficients(&mut checks);
    unimodular_nu(&mut checks);
    exponentiated_series(&mut checks);
    robertson_and_identities(&mut checks);
    membership(&mut checks);
    cli_determinism(&mut checks);

    let failed: Vec<&Line> = checks.lines.iter().filter(|l| l.gating && !l.pass).collect();
    let reported = checks.lines.iter().filter(|l| !l.gating && !l.pass).count();
    println!(
        "acceptance: {} of {} gating criteria passed; {reported} non-gating line(s) failed",
        checks.lines.iter().filter(|l| l.gating && l.pass).count(),
        checks.lines.iter().filter(|l| l.gating).count()
    );
    if !failed.is_empty() {
        for l in &failed {
            eprintln!("failed [{}]: {}", l.id, l.detail);
        }
        std::process::exit(1);
    }
}
