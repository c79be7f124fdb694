//! One function per subcommand. Each resolves its config, runs the study and
//! writes its artifacts plus a manifest into the output directory.

use std::path::PathBuf;

use landau_core::ensemble::{fit_scaling, FitAxis, McStudy, ScalingFit, ScalingStudyResult, Statistic};
use landau_core::grushin::{bellissard_check, residual_scaling, TensorBasisSpec};
use landau_core::mehler::{mehler_gaussian_eig, radial_eig_fourier, radial_eig_laguerre, FourierWindow};
use landau_core::singlesite::{check_gap_assumption, gaussian_envelope};
use landau_core::weyl::{default_quad_order, quantize_hermite, spectrum};
use landau_core::PhaseSymbol;
use serde::Serialize;
use serde_json::json;

use crate::config::{
    parse_density, parse_symbol, require, resolve, CommonArgs, GapArgs, GrushinArgs, McArgs, MehlerArgs, QuantizeArgs,
};
use crate::error::LabError;
use crate::output::{loglog_svg, OutDir, Series};
use crate::parallel::run_study;

/// Defaults of the Monte Carlo commands.
pub mod defaults {
    /// Base potential: narrow enough that neighbouring sites barely overlap.
    pub const MC_POTENTIAL: &str = "gaussian:3";
    /// Interval centre.
    pub const MU0: f64 = 0.6;
    /// Trials per cell.
    pub const TRIALS: usize = 500;
    /// Envelope window `(2k+1)h ≤ WINDOW`.
    pub const ENVELOPE_WINDOW: f64 = 1.0;
}

/// Paths written by a command.
pub type Artifacts = Vec<PathBuf>;

#[derive(Serialize)]
struct MatrixRow {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct SpectrumRow {
    k: usize,
    eigenvalue: f64,
}

/// `quantize`: Hermite-basis matrix and spectrum of one symbol.
pub fn cmd_quantize(args: &QuantizeArgs, common: &CommonArgs) -> Result<Artifacts, LabError> {
    let (p, run) = resolve(args, common)?;
    let symbol = parse_symbol(&require(&p.symbol, "symbol")?)?;
    let h = require(&p.h, "h")?;
    let n = require(&p.basis, "basis")?;
    let op = quantize_hermite(&symbol, h, n, p.quad_order.unwrap_or(default_quad_order(n)))?;
    let report = spectrum(&op)?;
    let out = OutDir::create(&run.out)?;
    let rows: Vec<MatrixRow> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| MatrixRow { row: i, col: j, re: op.matrix[(i, j)].re, im: op.matrix[(i, j)].im })
        .collect();
    let spec: Vec<SpectrumRow> =
        report.eigenvalues.iter().enumerate().map(|(k, &e)| SpectrumRow { k, eigenvalue: e }).collect();
    Ok(vec![
        out.csv("matrix.csv", &rows)?,
        out.csv("spectrum.csv", &spec)?,
        out.json("spectrum.json", &report)?,
        out.manifest("quantize", &p, &run)?,
    ])
}

#[derive(Serialize)]
struct MehlerRow {
    h: f64,
    k: usize,
    closed_form: Option<f64>,
    laguerre: f64,
    fourier: Option<f64>,
}

/// `mehler`: radial eigenvalues by the closed form, the Laguerre route and the Fourier route.
pub fn cmd_mehler(args: &MehlerArgs, common: &CommonArgs) -> Result<Artifacts, LabError> {
    let (p, run) = resolve(args, common)?;
    let symbol = parse_symbol(p.symbol.as_deref().unwrap_or("gaussian"))?;
    let profile = symbol.as_radial().ok_or_else(|| LabError::Config("field `symbol` must be radial".into()))?;
    let hs = require(&p.h, "h")?;
    let kmax = p.kmax.unwrap_or(30);
    let window = FourierWindow::default();
    let mut rows = Vec::new();
    let (mut dl, mut df) = (0.0_f64, 0.0_f64);
    for &h in &hs {
        for k in 0..=kmax {
            let closed = match symbol {
                PhaseSymbol::Gaussian { z } => Some(mehler_gaussian_eig(h, k, z)),
                _ => None,
            };
            let lag = radial_eig_laguerre(&profile, h, k)?;
            let four = radial_eig_fourier(&profile, h, k, &window).ok().map(|f| f.value);
            if let Some(c) = closed {
                dl = dl.max((lag - c).abs());
                if let Some(f) = four {
                    df = df.max((f - c).abs());
                }
            }
            rows.push(MehlerRow { h, k, closed_form: closed, laguerre: lag, fourier: four });
        }
    }
    let out = OutDir::create(&run.out)?;
    let summary = json!({ "max_laguerre_error": dl, "max_fourier_error": df, "rows": rows.len() });
    Ok(vec![out.csv("mehler.csv", &rows)?, out.json("summary.json", &summary)?, out.manifest("mehler", &p, &run)?])
}

/// `gapcheck`: gap assumption per `h`, plus the envelope for the Gaussian.
pub fn cmd_gapcheck(args: &GapArgs, common: &CommonArgs) -> Result<Artifacts, LabError> {
    let (p, run) = resolve(args, common)?;
    let family = require(&p.family, "family")?;
    let v0 = parse_symbol(&family)?;
    let hs = require(&p.h, "h")?;
    let n = p.n.unwrap_or(0);
    let b0 = p.b0.unwrap_or(0.3);
    let kappa = p.kappa.unwrap_or(0.5);
    let reports = check_gap_assumption(&v0, n, b0, kappa, &hs)?;
    let envelope = match v0 {
        PhaseSymbol::Gaussian { z } if z == 1.0 => Some(gaussian_envelope(n, &hs, defaults::ENVELOPE_WINDOW)?),
        _ => None,
    };
    let pass = reports.iter().all(|r| r.pass);
    let out = OutDir::create(&run.out)?;
    let doc = json!({ "family": family, "n": n, "b0": b0, "kappa": kappa, "pass": pass, "reports": reports, "envelope": envelope });
    Ok(vec![out.json("gapcheck.json", &doc)?, out.manifest("gapcheck", &p, &run)?])
}

#[derive(Serialize)]
struct RootRow {
    omega: f64,
    kind: &'static str,
    mu: f64,
}

/// `grushin`: residual scaling of the expansion, and optionally the equivalence check.
pub fn cmd_grushin(args: &GrushinArgs, common: &CommonArgs) -> Result<Artifacts, LabError> {
    let (p, run) = resolve(args, common)?;
    let v = parse_symbol(&require(&p.potential, "potential")?)?;
    let hs = require(&p.h, "h")?;
    let basis = TensorBasisSpec::new(p.nx.unwrap_or(8), p.ny.unwrap_or(32), p.n.unwrap_or(0))?;
    let mu = p.mu.unwrap_or(0.5);
    let jmax = p.jmax.unwrap_or(8);
    let res = residual_scaling(&v, basis, mu, &hs, jmax)?;
    let out = OutDir::create(&run.out)?;
    let mut paths = vec![out.json("residual.json", &res)?];
    if let Some(slope) = res.slope {
        let xs: Vec<f64> = res.points.iter().map(|q| q.0.ln()).collect();
        let ys: Vec<f64> = res.points.iter().map(|q| q.1.ln()).collect();
        let a = ys.iter().sum::<f64>() / ys.len() as f64 - slope * xs.iter().sum::<f64>() / xs.len() as f64;
        let series = Series {
            label: "residual".into(),
            points: res.points.iter().map(|q| (q.0, q.1, 0.0, 0.0)).collect(),
            fit: Some((a, slope)),
        };
        let svg = loglog_svg("Expansion residual", "h", "|Q_series - Q_expansion|", &[series], &[format!("slope {slope:.3}")]);
        paths.push(out.text("residual.svg", &svg)?);
    }
    let omegas = p.omega.clone().unwrap_or_default();
    if !omegas.is_empty() {
        let h = p.bellissard_h.unwrap_or(0.1);
        let mut reports = Vec::new();
        let mut rows = Vec::new();
        for &w in &omegas {
            let r = bellissard_check(&v.clone().scaled(w), h, basis, 12)?;
            rows.extend(r.band.iter().map(|&m| RootRow { omega: w, kind: "band", mu: m }));
            rows.extend(r.roots.iter().map(|&m| RootRow { omega: w, kind: "root", mu: m }));
            reports.push(json!({ "omega": w, "h": h, "distance": r.distance, "leakage": r.leakage }));
        }
        paths.push(out.json("bellissard.json", &reports)?);
        paths.push(out.csv("roots.csv", &rows)?);
    }
    paths.push(out.manifest("grushin", &p, &run)?);
    Ok(paths)
}

#[derive(Serialize)]
struct CellRow {
    volume: usize,
    delta: f64,
    trials: usize,
    successes: usize,
    p_hat: f64,
    wilson_lo: f64,
    wilson_hi: f64,
    unstable: usize,
    degenerate: bool,
    exact: Option<f64>,
    histogram: String,
}

/// Builds the study a Monte Carlo command describes.
pub fn study_from_args(p: &McArgs, seed: u64, statistic: Statistic) -> Result<McStudy, LabError> {
    let v0 = parse_symbol(p.potential.as_deref().unwrap_or(defaults::MC_POTENTIAL))?;
    let h = match statistic {
        Statistic::BandEdge => p.h.unwrap_or(0.1),
        _ => require(&p.h, "h")?,
    };
    Ok(McStudy {
        v0,
        n: p.n.unwrap_or(0),
        h,
        sides: require(&p.sides, "L")?,
        deltas: require(&p.delta, "delta")?,
        mu0: p.mu0.unwrap_or(defaults::MU0),
        trials: p.trials.unwrap_or(defaults::TRIALS),
        seed,
        statistic,
        density: parse_density(p.density.as_deref().unwrap_or("uniform"))?,
    })
}

/// `1 − (1 − P(|ω| ≥ 1−ε))^{|Λ|}`.
pub fn band_edge_exact(study: &McStudy, volume: usize, eps: f64) -> f64 {
    let d = study.density;
    let tail = d.cdf(-1.0 + eps) + (1.0 - d.cdf(1.0 - eps));
    1.0 - (1.0 - tail).powi(volume as i32)
}

fn fits(result: &ScalingStudyResult) -> serde_json::Value {
    let one = |axis| match fit_scaling(result, axis) {
        Ok(f) => serde_json::to_value::<ScalingFit>(f).unwrap_or_default(),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({ "both": one(FitAxis::Both), "volume": one(FitAxis::Volume), "interval": one(FitAxis::Interval) })
}

/// `wegner`, `minami` and `bandedge`.
pub fn cmd_mc(args: &McArgs, common: &CommonArgs, statistic: Statistic) -> Result<Artifacts, LabError> {
    let (p, run) = resolve(args, common)?;
    let study = study_from_args(&p, run.seed, statistic)?;
    let result = run_study(&study, common.workers)?;
    let rows: Vec<CellRow> = result
        .cells
        .iter()
        .map(|c| CellRow {
            volume: c.volume,
            delta: c.delta,
            trials: c.trials,
            successes: c.successes,
            p_hat: c.p_hat,
            wilson_lo: c.wilson.0,
            wilson_hi: c.wilson.1,
            unstable: c.unstable,
            degenerate: c.degenerate,
            exact: (statistic == Statistic::BandEdge).then(|| band_edge_exact(&study, c.volume, c.delta)),
            histogram: c.histogram.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"),
        })
        .collect();
    let name = match statistic {
        Statistic::Wegner => "wegner",
        Statistic::Minami => "minami",
        Statistic::BandEdge => "bandedge",
    };
    let fit = fits(&result);
    let out = OutDir::create(&run.out)?;
    let mut volumes: Vec<usize> = result.cells.iter().map(|c| c.volume).collect();
    volumes.dedup();
    let series: Vec<Series> = volumes
        .iter()
        .map(|&v| Series {
            label: format!("|L| = {v}"),
            points: result
                .cells
                .iter()
                .filter(|c| c.volume == v && !c.degenerate)
                .map(|c| (c.delta, c.p_hat, c.wilson.0, c.wilson.1))
                .collect(),
            fit: None,
        })
        .collect();
    let caption = ["volume", "interval"]
        .iter()
        .filter_map(|k| {
            let e = fit["both"][k].as_array()?;
            Some(format!("{k} exponent {:.3} +- {:.3}", e[0].as_f64()?, e[1].as_f64()?))
        })
        .collect::<Vec<_>>();
    let svg = loglog_svg(&format!("{name} probability"), "delta", "p", &series, &caption);
    let summary = json!({ "statistic": name, "fits": fit, "cells": result.cells });
    Ok(vec![
        out.csv("cells.csv", &rows)?,
        out.json("summary.json", &summary)?,
        out.text("scaling.svg", &svg)?,
        out.manifest(name, &p, &run)?,
    ])
}
