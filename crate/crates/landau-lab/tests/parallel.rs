use landau_core::ensemble::{run_mc, CouplingDensity, McStudy, Statistic};
use landau_core::PhaseSymbol;
use landau_lab::commands::band_edge_exact;
use landau_lab::config::{parse_symbol, resolve, CommonArgs, McArgs};
use landau_lab::parallel::run_study;

fn study(statistic: Statistic) -> McStudy {
    McStudy {
        v0: PhaseSymbol::Gaussian { z: 3.0 },
        n: 0,
        h: 0.2,
        sides: vec![1, 2],
        deltas: vec![0.05, 0.1],
        mu0: 0.5,
        trials: 100,
        seed: 3,
        statistic,
        density: CouplingDensity::CosineBump,
    }
}

#[test]
fn parallel_equals_sequential() {
    for s in [Statistic::Wegner, Statistic::BandEdge] {
        let st = study(s);
        let seq = run_mc(&st).unwrap();
        assert_eq!(seq, run_study(&st, Some(1)).unwrap());
        assert_eq!(seq, run_study(&st, Some(3)).unwrap());
    }
}

#[test]
fn band_edge_closed_form_for_cosine_bump() {
    let st = study(Statistic::BandEdge);
    // P(|ω| ≥ 1 − ε) = ε − sin(πε)/π under (1 + cos πω)/2.
    let eps: f64 = 0.1;
    let tail = eps - (std::f64::consts::PI * eps).sin() / std::f64::consts::PI;
    let want = 1.0 - (1.0 - tail).powi(4);
    assert!((band_edge_exact(&st, 4, eps) - want).abs() < 1e-14);
}

#[test]
fn flags_override_config_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("c.json");
    std::fs::write(&cfg, r#"{"h": 0.2, "L": [1, 2], "delta": [0.1], "seed": 9, "out": "x"}"#).unwrap();
    let common = CommonArgs { config: Some(cfg), seed: Some(4), ..Default::default() };
    let flags = McArgs { h: Some(0.1), ..Default::default() };
    let (p, run) = resolve(&flags, &common).unwrap();
    assert_eq!(p.h, Some(0.1));
    assert_eq!(p.sides, Some(vec![1, 2]));
    assert_eq!(run.seed, 4);
    assert_eq!(run.out, std::path::PathBuf::from("x"));
}

#[test]
fn symbol_specs() {
    assert_eq!(parse_symbol("gaussian:3").unwrap(), PhaseSymbol::Gaussian { z: 3.0 });
    assert!(parse_symbol("gaussian:-1").is_err());
    assert!(parse_symbol("cutoff-gaussian:1:5:2").is_err());
}
