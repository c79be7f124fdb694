//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits 0 so the rest of the workspace suite still runs; set
//! `LANDAU_ACCEPTANCE_STRICT=1` to exit 1 when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use landau_core::ensemble::{
    fit_scaling, interlacing_check, localization_suite, trial_couplings, CouplingDensity, FitAxis, LatticeGrid,
    LatticeOperator, LatticeSpec, McStudy, ScalingStudyResult, Statistic,
};
use landau_core::grushin::{bellissard_convergence, l2_norm_sq, residual_scaling, TensorBasisSpec};
use landau_core::linalg::CMat;
use landau_core::mehler::mehler_gaussian_eig;
use landau_core::singlesite::{check_gap_assumption, gaussian_envelope, SiteSymbolFamily};
use landau_core::weyl::{default_quad_order, hs_norm_sq, quantize_hermite};
use landau_core::{Complex64, PhaseSymbol};
use landau_lab::parallel::run_study;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

/// Family, centre and Minami widths shared by the Monte Carlo criteria.
const MC_Z: f64 = 3.0;
const MC_MU0: f64 = 0.6;
const MINAMI_DELTAS: [f64; 3] = [0.05, 0.07, 0.1];
const MINAMI_TRIALS: usize = 2000;

type Outcome = (bool, String);

fn unit_gaussian() -> PhaseSymbol {
    PhaseSymbol::Gaussian { z: 1.0 }
}

fn c1() -> Outcome {
    let mut worst_off = 0.0_f64;
    let mut worst_diag = 0.0_f64;
    for h in [0.05, 0.1, 0.2] {
        let m = quantize_hermite(&unit_gaussian(), h, 60, default_quad_order(60)).unwrap().matrix;
        let total = m.norm();
        let diag: f64 = (0..60).map(|i| m[(i, i)].norm_sqr()).sum();
        worst_off = worst_off.max((total * total - diag).max(0.0).sqrt() / total);
        for k in 0..=30 {
            worst_diag = worst_diag.max((m[(k, k)].re - mehler_gaussian_eig(h, k, 1.0)).abs());
        }
    }
    (worst_off < 1e-6 && worst_diag < 1e-6, format!("off-diagonal mass {worst_off:.2e}, diagonal error {worst_diag:.2e}"))
}

fn c2() -> Outcome {
    let l2 = l2_norm_sq(&unit_gaussian()).unwrap().unwrap();
    let mut worst = 0.0_f64;
    for h in [0.05, 0.1, 0.2] {
        let op = quantize_hermite(&unit_gaussian(), h, 120, default_quad_order(120)).unwrap();
        let hs = hs_norm_sq(&op);
        let target = 1.0 / (4.0 * h);
        worst = worst.max((hs - target).abs() / target).max((l2 / (2.0 * std::f64::consts::PI * h) - target).abs() / target);
    }
    (worst < 1e-5, format!("worst relative error {worst:.2e}"))
}

fn c3() -> Outcome {
    let basis = TensorBasisSpec::new(8, 32, 0).unwrap();
    let r = residual_scaling(&unit_gaussian(), basis, 0.5, &[0.2, 0.1, 0.05, 0.025], 8).unwrap();
    let slope = r.slope.unwrap();
    let pts: Vec<String> = r.points.iter().map(|p| format!("{}:{:.2e}", p.0, p.1)).collect();
    (slope >= 2.7, format!("slope {slope:.3} (need >= 2.7), residuals {}", pts.join(" ")))
}

fn c4() -> Outcome {
    let bases = [TensorBasisSpec::new(6, 12, 0).unwrap(), TensorBasisSpec::new(8, 16, 0).unwrap(), TensorBasisSpec::new(10, 24, 0).unwrap()];
    let mut ok = true;
    let mut notes = Vec::new();
    for w in [0.5, 0.8] {
        let s = bellissard_convergence(&unit_gaussian().scaled(w), 0.1, &bases, 12).unwrap();
        let d: Vec<f64> = s.reports.iter().map(|r| r.distance).collect();
        ok &= s.monotone && d.iter().all(|x| *x <= 5e-3);
        notes.push(format!("omega {w}: {}", d.iter().map(|x| format!("{x:.1e}")).collect::<Vec<_>>().join(", ")));
    }
    (ok, notes.join("; "))
}

fn c5() -> Outcome {
    let v0 = PhaseSymbol::CutoffGaussian { z: 1.0, start: 2.0, end: 5.0 };
    let reports = check_gap_assumption(&v0, 0, 0.3, 0.5, &[0.2, 0.1, 0.05]).unwrap();
    let gap = reports.iter().all(|r| r.pass);
    let kappas: Vec<String> = reports.iter().map(|r| format!("{:.3}", r.kappa_observed.unwrap_or(f64::INFINITY))).collect();
    let env = gaussian_envelope(0, &[0.2, 0.1, 0.05], 1.0).unwrap();
    let consts: Vec<String> = env.constants.iter().map(|c| format!("{:.3}", c.1)).collect();
    (
        gap && env.stable,
        format!("gap {} (kappa/h {}), envelope constants {} stable {}", if gap { "ok" } else { "fails" }, kappas.join(" "), consts.join(" "), env.stable),
    )
}

fn c6() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..100 {
        let n = rng.random_range(10..=50);
        let mut g = || Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        let x = CMat::from_fn(n, n, |_, _| g());
        let a = (&x + x.adjoint()) * Complex64::new(0.5, 0.0);
        let mut phi: Vec<Complex64> = (0..n).map(|_| g()).collect();
        let norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        phi.iter_mut().for_each(|z| *z /= norm);
        let mu = 4.0 * rng.random::<f64>();
        worst = worst.max(interlacing_check(&a, &phi, mu).unwrap().worst_violation);
    }
    (worst <= 1e-9, format!("worst violation {worst:.2e} over 100 instances"))
}

fn mc(statistic: Statistic, sides: Vec<usize>, deltas: Vec<f64>, trials: usize) -> ScalingStudyResult {
    let study = McStudy {
        v0: PhaseSymbol::Gaussian { z: MC_Z },
        n: 0,
        h: 0.1,
        sides,
        deltas,
        mu0: MC_MU0,
        trials,
        seed: SEED,
        statistic,
        density: CouplingDensity::Uniform,
    };
    run_study(&study, None).unwrap()
}

fn c7() -> Outcome {
    let r = mc(Statistic::BandEdge, vec![2, 3], vec![0.05, 0.1], 1000);
    let mut ok = true;
    let mut notes = Vec::new();
    for c in &r.cells {
        let exact = 1.0 - (1.0 - c.delta).powi(c.volume as i32);
        ok &= c.wilson.0 <= exact && exact <= c.wilson.1;
        notes.push(format!("{}x{}: {:.3} vs {:.3}", c.volume, c.delta, c.p_hat, exact));
    }
    (ok, notes.join(", "))
}

fn exponents(r: &ScalingStudyResult) -> ((f64, f64), (f64, f64)) {
    let f = fit_scaling(r, FitAxis::Both).unwrap();
    (f.volume.unwrap(), f.interval.unwrap())
}

fn c8() -> Outcome {
    let r = mc(Statistic::Wegner, vec![1, 2, 3], vec![0.01, 0.02, 0.04], 500);
    let (v, i) = exponents(&r);
    let inside = |x: f64| (0.8..=1.2).contains(&x);
    (inside(v.0) && inside(i.0), format!("volume {:.3} +- {:.3}, interval {:.3} +- {:.3}", v.0, v.1, i.0, i.1))
}

fn c9() -> Outcome {
    let two = mc(Statistic::Minami, vec![1, 2, 3], MINAMI_DELTAS.to_vec(), MINAMI_TRIALS);
    // p̂(≥1) of the same trials, from the count histogram.
    let ordered = two.cells.iter().all(|c| c.p_hat <= 1.0 - c.histogram[0] as f64 / c.trials as f64);
    let (v, i) = exponents(&two);
    let inside = |x: f64| (1.6..=2.4).contains(&x);
    (
        inside(v.0) && inside(i.0) && ordered,
        format!("volume {:.3} +- {:.3}, interval {:.3} +- {:.3}, ordered {ordered}", v.0, v.1, i.0, i.1),
    )
}

fn c10() -> Outcome {
    let omega = trial_couplings(CouplingDensity::Uniform, 3, SEED, 0, 0).iter().map(|w| 0.5 + 0.5 * w.abs()).collect::<Vec<_>>();
    let mut rows = Vec::new();
    for h in [0.1, 0.05] {
        let fam = SiteSymbolFamily::new(PhaseSymbol::Gaussian { z: MC_Z }, 0, h).unwrap();
        let op = LatticeOperator::new(fam, LatticeSpec::line(3).unwrap(), LatticeGrid::for_h(h)).unwrap();
        let r = localization_suite(&op, &omega, 0.3).unwrap();
        rows.push((r.max_product, r.spectral_distance));
    }
    let (a, b) = (rows[0], rows[1]);
    let ok = a.0 <= 1e-6 && a.1 <= 1e-5 && b.0 < a.0 && b.1 < a.1;
    (
        ok,
        format!("h=0.1: product {:.2e}, distance {:.2e}; h=0.05: product {:.2e}, distance {:.2e}", a.0, a.1, b.0, b.1),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Mehler diagonalization", c1),
        ("Hilbert-Schmidt identity", c2),
        ("cubic remainder slope", c3),
        ("band/root equivalence", c4),
        ("gap assumption and envelope", c5),
        ("interlacing", c6),
        ("band-edge law", c7),
        ("Wegner scaling", c8),
        ("Minami scaling", c9),
        ("localization magnitudes", c10),
    ];
    let mut passed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(o) => o,
            Err(e) => (false, format!("panicked: {}", e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())),
        };
        passed += usize::from(ok);
        println!("criterion {:>2} {} {name}: {detail} [{:.1}s]", k + 1, if ok { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {passed}/{} PASS", criteria.len());
    if passed < criteria.len() && std::env::var("LANDAU_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
