//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use wentropy_cli::qutrit_report;
use wentropy_core::channel::{apply_projective_channel, channel_then_check, reference_projector};
use wentropy_core::entropy::{
    qutrit_mutual_information_closed_form, weighted_entropy, weighted_mutual_information,
};
use wentropy_core::inequality::{
    audit_random_with_tolerance, check_subadditivity, trace_condition, AuditRegime,
};
use wentropy_core::linalg::CMatrix;
use wentropy_core::states::sample::{
    haar_unitary, random_density_with_rng, random_weight_with_rng, rng_from_seed, simplex_point,
    DEFAULT_WEIGHT_RANGE,
};
use wentropy_core::states::{
    embed_qutrit, BipartiteState, DensityMatrix, QutritDiagonal, WeightMatrix,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn ac1_example_value() -> Outcome {
    let start = Instant::now();
    let r = qutrit_report(0.1, 0.1, 0.75, 0.25, 1.0 / 3.0, 2.0 / 3.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let detail = format!(
        "I = {:.6} (target 0.0728 ± 5e-4), condition = {:?}, runtime {:.3} ms",
        r.mutual_information,
        r.weight_condition.value,
        ms(elapsed)
    );
    ensure(
        (r.mutual_information - 0.0728).abs() <= 5e-4
            && r.weight_condition.value == 1.0 / 6.0
            && elapsed < Duration::from_millis(1),
        detail,
    )
}

fn ac2_closed_form_agreement() -> Outcome {
    let mut rng = rng_from_seed(0xA2);
    let samples: Vec<([f64; 3], [f64; 4])> = (0..1000)
        .map(|_| {
            let p = simplex_point(3, &mut rng);
            let w =
                [(); 4].map(|_| rng.random_range(DEFAULT_WEIGHT_RANGE.0..DEFAULT_WEIGHT_RANGE.1));
            ([p[0], p[1], p[2]], w)
        })
        .collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (p, [phi1, phi2, chi1, chi2]) in &samples {
        let closed = qutrit_mutual_information_closed_form(p[0], p[1], *phi1, *phi2, *chi1, *chi2)
            .map_err(|e| e.to_string())?;
        let q = QutritDiagonal::new(p[0], p[1], p[2]).map_err(|e| e.to_string())?;
        let general = weighted_mutual_information(
            &WeightMatrix::from_diagonal(&[*phi1, *phi2]).map_err(|e| e.to_string())?,
            &WeightMatrix::from_diagonal(&[*chi1, *chi2]).map_err(|e| e.to_string())?,
            &embed_qutrit(&q),
        )
        .map_err(|e| e.to_string())?;
        worst = worst.max((closed - general).abs());
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-10 && elapsed < Duration::from_secs(1),
        format!(
            "1000 samples, max |closed - general| = {worst:.3e} (tol 1e-10), runtime {:.1} ms",
            ms(elapsed)
        ),
    )
}

fn ac3_gap_identity() -> Outcome {
    let mut rng = rng_from_seed(0xA3);
    let samples: Vec<([f64; 3], [f64; 4])> = (0..10_000)
        .map(|_| {
            let p = simplex_point(3, &mut rng);
            let w =
                [(); 4].map(|_| rng.random_range(DEFAULT_WEIGHT_RANGE.0..DEFAULT_WEIGHT_RANGE.1));
            ([p[0], p[1], p[2]], w)
        })
        .collect();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (p, [phi1, phi2, chi1, chi2]) in &samples {
        let q = QutritDiagonal::new(p[0], p[1], p[2]).map_err(|e| e.to_string())?;
        let tc = trace_condition(
            &WeightMatrix::from_diagonal(&[*phi1, *phi2]).map_err(|e| e.to_string())?,
            &WeightMatrix::from_diagonal(&[*chi1, *chi2]).map_err(|e| e.to_string())?,
            &embed_qutrit(&q),
        )
        .map_err(|e| e.to_string())?;
        let identity = p[1] * (1.0 - p[0] - p[1]) * (phi1 - phi2) * (chi2 - chi1);
        worst = worst.max((tc.gap() - identity).abs());
    }
    let elapsed = start.elapsed();
    ensure(
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!(
            "10000 samples, max |gap - identity| = {worst:.3e} (tol 1e-12), runtime {:.1} ms",
            ms(elapsed)
        ),
    )
}

fn ac4_product_equality() -> Outcome {
    let mut rng = rng_from_seed(0xA4);
    let mut worst = 0.0f64;
    for k in 0..500 {
        let (da, db) = (2 + k % 2, 2 + (k / 2) % 2);
        let ra = random_density_with_rng(da, &mut rng).map_err(|e| e.to_string())?;
        let rb = random_density_with_rng(db, &mut rng).map_err(|e| e.to_string())?;
        let wa = random_weight_with_rng(da, &mut rng, DEFAULT_WEIGHT_RANGE)
            .map_err(|e| e.to_string())?;
        let wb = random_weight_with_rng(db, &mut rng, DEFAULT_WEIGHT_RANGE)
            .map_err(|e| e.to_string())?;
        let s = BipartiteState::product(&ra, &rb).map_err(|e| e.to_string())?;
        let r = check_subadditivity(&wa, &wb, &s, 1e-9).map_err(|e| e.to_string())?;
        worst = worst.max(r.gap.abs());
    }
    ensure(
        worst <= 1e-9,
        format!("500 product states up to 3x3, max |gap| = {worst:.3e} (tol 1e-9)"),
    )
}

fn ac5_identity_weight() -> Outcome {
    let mut rng = rng_from_seed(0xA5);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let dim = 2 + k % 5;
        let lambda = simplex_point(dim, &mut rng);
        let u = haar_unitary(dim, &mut rng);
        let rho = &(&u * &CMatrix::from_real_diagonal(&lambda)) * &u.adjoint();
        let rho = DensityMatrix::new(rho).map_err(|e| e.to_string())?;
        let got =
            weighted_entropy(&WeightMatrix::identity(dim), &rho).map_err(|e| e.to_string())?;
        // Spectrum-only oracle: the eigenvalues are known by construction.
        let oracle: f64 = -lambda
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| l * l.ln())
            .sum::<f64>();
        worst = worst.max((got - oracle).abs());
    }
    ensure(
        worst <= 1e-10,
        format!("200 samples, dims 2-6, max |S - oracle| = {worst:.3e} (tol 1e-10)"),
    )
}

fn ac6_audit() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let summary = pool
        .install(|| {
            audit_random_with_tolerance(
                100_000,
                2,
                2,
                2024,
                AuditRegime::DiagonalConditionSatisfying,
                1e-9,
            )
        })
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(
        summary.violations.is_empty() && summary.samples == 100_000 && elapsed < Duration::from_secs(10),
        format!(
            "n = 100000, 2x2, violations = {}, min_gap = {:.6e} (sample {}), single-threaded runtime {:.2} s",
            summary.violations.len(),
            summary.min_gap,
            summary.min_gap_index,
            elapsed.as_secs_f64()
        ),
    )
}

fn ac7_channel() -> Outcome {
    let rho = DensityMatrix::from_diagonal(&[0.1, 0.1, 0.8, 0.0]).map_err(|e| e.to_string())?;
    let out = apply_projective_channel(&reference_projector(), &rho).map_err(|e| e.to_string())?;
    let expected = CMatrix::from_real_diagonal(&[1.0 / 9.0, 0.0, 8.0 / 9.0, 0.0]);
    let err = out
        .matrix()
        .max_abs_diff(&expected)
        .map_err(|e| e.to_string())?;
    let s = BipartiteState::new(rho, 2, 2).map_err(|e| e.to_string())?;
    let (_, report) = channel_then_check(
        &reference_projector(),
        &WeightMatrix::from_diagonal(&[0.75, 0.25]).map_err(|e| e.to_string())?,
        &WeightMatrix::from_diagonal(&[1.0 / 3.0, 2.0 / 3.0]).map_err(|e| e.to_string())?,
        &s,
        1e-10,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        err <= 1e-15 && report.gap.abs() <= 1e-10,
        format!(
            "max elementwise error {err:.3e} (tol 1e-15), transformed gap {:.3e} (tol 1e-10)",
            report.gap
        ),
    )
}

fn run_sweep(args: &[&str], out: &Path) -> Result<(Vec<u8>, Duration), String> {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_wentropy"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !status.success() {
        return Err(format!("wentropy {} exited with {status}", args.join(" ")));
    }
    Ok((std::fs::read(out).map_err(|e| e.to_string())?, elapsed))
}

fn ac8_figure_data() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cases: [(&str, &[&str], usize); 3] = [
        ("prob", &["sweep", "prob", "--n", "97"], 97 * 96 / 2),
        (
            "weight a",
            &[
                "sweep", "weight", "--region", "a", "--p1", "1/4", "--p2", "1/8", "--n", "97",
            ],
            97 * 97,
        ),
        (
            "weight b",
            &[
                "sweep", "weight", "--region", "b", "--p1", "1/4", "--p2", "1/8", "--n", "97",
            ],
            97 * 97,
        ),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (k, (name, args, cells)) in cases.iter().enumerate() {
        let (first, t1) = run_sweep(args, &dir.path().join(format!("{k}a.csv")))?;
        let (second, t2) = run_sweep(args, &dir.path().join(format!("{k}b.csv")))?;
        let text = String::from_utf8(first.clone()).map_err(|e| e.to_string())?;
        let values: Vec<f64> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .map(|l| {
                l.rsplit(',')
                    .next()
                    .unwrap_or("")
                    .parse::<f64>()
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let slowest = t1.max(t2);
        let pass = first == second
            && values.len() == *cells
            && min >= -1e-9
            && slowest < Duration::from_secs(5);
        ok &= pass;
        details.push(format!(
            "{name}: {} cells, min I = {min:.3e}, identical = {}, {:.0} ms",
            values.len(),
            first == second,
            ms(slowest)
        ));
    }
    ensure(ok, details.join("; "))
}

fn ac9_unitary_covariance() -> Outcome {
    let mut rng = rng_from_seed(0xA9);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let dim = 2 + k % 3;
        let rho = random_density_with_rng(dim, &mut rng).map_err(|e| e.to_string())?;
        let phi = random_weight_with_rng(dim, &mut rng, DEFAULT_WEIGHT_RANGE)
            .map_err(|e| e.to_string())?;
        let u = haar_unitary(dim, &mut rng);
        let conj = |m: &CMatrix| &(&u * m) * &u.adjoint();
        let rho_u = DensityMatrix::new(conj(rho.matrix())).map_err(|e| e.to_string())?;
        let phi_u = WeightMatrix::new(conj(phi.matrix())).map_err(|e| e.to_string())?;
        let a = weighted_entropy(&phi, &rho).map_err(|e| e.to_string())?;
        let b = weighted_entropy(&phi_u, &rho_u).map_err(|e| e.to_string())?;
        worst = worst.max((a - b).abs());
    }
    ensure(
        worst <= 1e-10,
        format!("200 unitaries, dims 2-4, max |ΔS| = {worst:.3e} (tol 1e-10)"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 example value reproduction", ac1_example_value),
        ("AC2 closed form vs general path", ac2_closed_form_agreement),
        ("AC3 trace-condition gap identity", ac3_gap_identity),
        ("AC4 product-state equality", ac4_product_equality),
        ("AC5 identity-weight reduction", ac5_identity_weight),
        ("AC6 subadditivity audit", ac6_audit),
        ("AC7 projective channel", ac7_channel),
        ("AC8 sweep grids", ac8_figure_data),
        ("AC9 unitary covariance", ac9_unitary_covariance),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
