//! Random lattice operator `A_ω = Σ_j â_j(ω_j)` and its Monte Carlo statistics.
//!
//! Sites sit on `ℤ²`; site `j` carries the corrected symbols of the family
//! translated by `j`. Every site matrix is a re-indexed, phase-twisted copy of
//! one base kernel, so a trial costs one assembly and one eigensolve.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{eigvals, hausdorff, spectral_norm, CMat, RMat};
use crate::math::{ceil, cos, floor, sin, PI};
use crate::singlesite::SiteSymbolFamily;
use crate::stats::{log_weight, trial_seed, weighted_least_squares, wilson_interval, LinearFit, Z95};
use crate::symbol::PhaseSymbol;
use crate::weyl::{kernel_matrix, GridSpec, SpectrumReport};
use crate::{Error, Result};

/// Largest grid the lattice operator may use.
pub const GRID_CAP: usize = 1200;

/// Interval padding used for the count-stability report.
pub const PADDING: f64 = 1e-6;

/// Eigenvalues closer than this count as a degenerate pair.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Finite set of lattice sites.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeSpec {
    /// Site coordinates, pairwise distinct.
    pub sites: Vec<[i32; 2]>,
}

impl LatticeSpec {
    /// `L × L` block `{0..L−1}² − ⌊(L−1)/2⌋`, so `|Λ| = L²` for every `L`.
    pub fn square(side: usize) -> Result<Self> {
        if side == 0 {
            return Err(Error::invalid("lattice side must be positive"));
        }
        let off = ((side - 1) / 2) as i32;
        let mut sites = Vec::with_capacity(side * side);
        for a in 0..side as i32 {
            for b in 0..side as i32 {
                sites.push([a - off, b - off]);
            }
        }
        Ok(LatticeSpec { sites })
    }

    /// `n` sites along the `y` axis, centred.
    pub fn line(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("lattice needs a site"));
        }
        let off = ((n - 1) / 2) as i32;
        Ok(LatticeSpec { sites: (0..n as i32).map(|a| [a - off, 0]).collect() })
    }

    /// `|Λ|`.
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    /// True without sites.
    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    fn y_range(&self) -> (i32, i32) {
        let lo = self.sites.iter().map(|s| s[0]).min().unwrap_or(0);
        let hi = self.sites.iter().map(|s| s[0]).max().unwrap_or(0);
        (lo, hi)
    }
}

/// Density `g` of a single coupling on `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CouplingDensity {
    /// `g = ½`.
    #[default]
    Uniform,
    /// `g(ω) = (1 + cos πω)/2`.
    CosineBump,
}

impl CouplingDensity {
    /// `g(ω)`.
    pub fn pdf(&self, w: f64) -> f64 {
        if !(-1.0..=1.0).contains(&w) {
            return 0.0;
        }
        match self {
            CouplingDensity::Uniform => 0.5,
            CouplingDensity::CosineBump => 0.5 * (1.0 + cos(PI * w)),
        }
    }

    /// `∫_{−1}^{w} g`.
    pub fn cdf(&self, w: f64) -> f64 {
        let w = w.clamp(-1.0, 1.0);
        match self {
            CouplingDensity::Uniform => 0.5 * (w + 1.0),
            CouplingDensity::CosineBump => 0.5 * (w + 1.0) + sin(PI * w) / (2.0 * PI),
        }
    }

    /// One draw.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            CouplingDensity::Uniform => 2.0 * rng.random::<f64>() - 1.0,
            CouplingDensity::CosineBump => loop {
                // Uniform proposal; acceptance g/max g with max g = 1.
                let w = 2.0 * rng.random::<f64>() - 1.0;
                if rng.random::<f64>() < self.pdf(w) {
                    break w;
                }
            },
        }
    }
}

/// Grid controls for the lattice operator.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeGrid {
    /// Grid points per unit length; integral so sites land on nodes.
    pub points_per_unit: usize,
    /// Half-width kept around the outermost sites.
    pub margin: f64,
}

impl LatticeGrid {
    /// `⌈2.5/h⌉` points per unit and margin 4.5.
    pub fn for_h(h: f64) -> Self {
        LatticeGrid { points_per_unit: ceil(2.5 / h) as usize, margin: 4.5 }
    }
}

/// Precomputed site kernels for one family, lattice and grid.
#[derive(Debug, Clone)]
pub struct LatticeOperator {
    /// Site family.
    pub family: SiteSymbolFamily,
    /// Sites.
    pub lattice: LatticeSpec,
    /// Grid controls.
    pub grid: LatticeGrid,
    points: Vec<f64>,
    first: i64,
    base_first: i64,
    p_base: RMat,
    q_base: RMat,
}

impl LatticeOperator {
    /// Builds the base kernels of `p₀` and `q₀` on a grid wide enough for every site.
    pub fn new(family: SiteSymbolFamily, lattice: LatticeSpec, grid: LatticeGrid) -> Result<Self> {
        if lattice.is_empty() || grid.points_per_unit == 0 || !(grid.margin > 0.0) {
            return Err(Error::invalid("lattice operator needs sites, a positive resolution and margin"));
        }
        if !family.p0.even_in_eta() || !family.q0.even_in_eta() {
            return Err(Error::invalid("lattice sites must be even in eta"));
        }
        let m = grid.points_per_unit as i64;
        let (jlo, jhi) = lattice.y_range();
        let first = floor((jlo as f64 - grid.margin) * m as f64) as i64;
        let last = ceil((jhi as f64 + grid.margin) * m as f64) as i64;
        let n = (last - first + 1) as usize;
        if n > GRID_CAP {
            return Err(Error::CapExceeded { what: "lattice grid points", requested: n, cap: GRID_CAP });
        }
        let step = 1.0 / m as f64;
        let points: Vec<f64> = (first..=last).map(|i| i as f64 * step).collect();
        let base_first = first - jhi as i64 * m;
        let base_last = last - jlo as i64 * m;
        let base = GridSpec::new(base_first as f64 * step, base_last as f64 * step, (base_last - base_first + 1) as usize)?;
        let h = family.h;
        let p_base = kernel_matrix(&family.p0, h, &base)?.map(|z| z.re);
        let q_base = if family.q0.is_zero() {
            RMat::zeros(base.n, base.n)
        } else {
            kernel_matrix(&family.q0, h, &base)?.map(|z| z.re)
        };
        Ok(LatticeOperator { family, lattice, grid, points, first, base_first, p_base, q_base })
    }

    /// Grid size.
    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Grid nodes.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// `Σ_j (ω_j p_j + ω_j² q_j)` restricted to `sites`, quantized on the grid.
    fn assemble_sites(&self, omega: &[f64], sites: &[usize]) -> CMat {
        let n = self.dim();
        let m = self.grid.points_per_unit as i64;
        let h = self.family.h;
        let step = 1.0 / m as f64;
        // Sum real parts per distinct η-offset, then twist once per offset.
        let mut by_j2: Vec<(i32, RMat)> = Vec::new();
        for &s in sites {
            let w = omega[s];
            if w == 0.0 {
                continue;
            }
            let [j1, j2] = self.lattice.sites[s];
            let idx = match by_j2.iter().position(|e| e.0 == j2) {
                Some(i) => i,
                None => {
                    by_j2.push((j2, RMat::zeros(n, n)));
                    by_j2.len() - 1
                }
            };
            let acc = &mut by_j2[idx].1;
            let off = (self.first - j1 as i64 * m - self.base_first) as usize;
            for q in 0..n {
                for p in 0..n {
                    acc[(p, q)] += w * self.p_base[(p + off, q + off)] + w * w * self.q_base[(p + off, q + off)];
                }
            }
        }
        let mut out = CMat::zeros(n, n);
        for (j2, acc) in &by_j2 {
            for q in 0..n {
                for p in 0..n {
                    let ph = (p as f64 - q as f64) * step * *j2 as f64 / h;
                    out[(p, q)] += Complex64::new(cos(ph), sin(ph)) * acc[(p, q)];
                }
            }
        }
        out
    }

    /// `A_ω` on the grid.
    pub fn assemble(&self, omega: &[f64]) -> Result<CMat> {
        if omega.len() != self.lattice.len() {
            return Err(Error::invalid("one coupling per site required"));
        }
        if omega.iter().any(|w| !(w.abs() <= 1.0)) {
            return Err(Error::invalid("couplings must lie in [-1, 1]"));
        }
        let all: Vec<usize> = (0..omega.len()).collect();
        Ok(self.assemble_sites(omega, &all))
    }

    /// `â_j(ω_j)` alone on the lattice grid.
    pub fn site_matrix(&self, omega: &[f64], site: usize) -> CMat {
        self.assemble_sites(omega, &[site])
    }

    /// Spectrum of `A_ω`, descending.
    pub fn spectrum(&self, omega: &[f64]) -> Result<SpectrumReport> {
        let m = self.assemble(omega)?;
        Ok(SpectrumReport::from_sorted(eigvals(&m)?, self.family.h))
    }
}

/// Number of eigenvalues in the closed interval `[lo, hi]`.
pub fn count_in_interval(eigenvalues: &[f64], lo: f64, hi: f64) -> usize {
    eigenvalues.iter().filter(|&&e| e >= lo && e <= hi).count()
}

/// Outcome of [`interlacing_check`].
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InterlacingReport {
    /// Eigenvalues of `A`, descending.
    pub original: Vec<f64>,
    /// Eigenvalues of `A − μ φφ*`, descending.
    pub perturbed: Vec<f64>,
    /// Largest violation of `λ'_k ≤ λ_k ≤ λ'_{k−1}`; nonpositive when it holds.
    pub worst_violation: f64,
    /// `worst_violation ≤ 1e−9`.
    pub holds: bool,
}

/// Checks interlacing between `A` and `A − μ φφ*`.
pub fn interlacing_check(a: &CMat, phi: &[Complex64], mu: f64) -> Result<InterlacingReport> {
    let n = a.nrows();
    if phi.len() != n {
        return Err(Error::invalid("vector length must match the matrix"));
    }
    let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if (norm - 1.0).abs() > 1e-10 || mu < 0.0 {
        return Err(Error::invalid("need a unit vector and mu >= 0"));
    }
    let mut b = a.clone();
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] -= phi[i] * phi[j].conj() * mu;
        }
    }
    let original = eigvals(a)?;
    let perturbed = eigvals(&b)?;
    let mut worst = f64::NEG_INFINITY;
    for k in 0..n {
        worst = worst.max(perturbed[k] - original[k]);
        if k > 0 {
            worst = worst.max(original[k] - perturbed[k - 1]);
        }
    }
    if n == 0 {
        worst = 0.0;
    }
    Ok(InterlacingReport { original, perturbed, worst_violation: worst, holds: worst <= 1e-9 })
}

/// Magnitudes of the site-separation properties at one `h`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LocalizationReport {
    /// Semiclassical parameter.
    pub h: f64,
    /// `(i, j, ‖â_i â_j‖)` for `i < j`.
    pub products: Vec<(usize, usize, f64)>,
    /// `(j, ‖P_j A − â_j‖)` with `P_j` the quantized cell cutoff.
    pub localizer_defects: Vec<(usize, f64)>,
    /// Hausdorff distance between `σ(A) ∩ [b₀, 1]` and the union of site spectra there.
    pub spectral_distance: f64,
    /// Largest of `products`.
    pub max_product: f64,
}

/// Cell cutoff `χ₀`: 1 for `q ≤ 0.16`, 0 from `q = 0.2499` on.
pub fn cell_cutoff() -> PhaseSymbol {
    PhaseSymbol::CutoffGaussian { z: 0.0, start: 0.16, end: 0.2499 }
}

/// Site-separation magnitudes for one coupling vector.
pub fn localization_suite(op: &LatticeOperator, omega: &[f64], b0: f64) -> Result<LocalizationReport> {
    let n_sites = op.lattice.len();
    if n_sites > 9 {
        return Err(Error::CapExceeded { what: "localization sites", requested: n_sites, cap: 9 });
    }
    let a = op.assemble(omega)?;
    let singles: Vec<CMat> = (0..n_sites).map(|j| op.site_matrix(omega, j)).collect();
    let mut products = Vec::new();
    for i in 0..n_sites {
        for j in i + 1..n_sites {
            products.push((i, j, spectral_norm(&(&singles[i] * &singles[j]))?));
        }
    }
    let h = op.family.h;
    let pts = op.points();
    let grid = GridSpec::new(pts[0], pts[pts.len() - 1], pts.len())?;
    let mut localizer_defects = Vec::new();
    for (j, site) in op.lattice.sites.iter().enumerate() {
        let pj = kernel_matrix(&cell_cutoff().shifted(*site), h, &grid)?;
        localizer_defects.push((j, spectral_norm(&(&pj * &a - &singles[j]))?));
    }
    let full: Vec<f64> = eigvals(&a)?.into_iter().filter(|&e| e >= b0 && e <= 1.0).collect();
    let mut union = Vec::new();
    for s in &singles {
        union.extend(eigvals(s)?.into_iter().filter(|&e| e >= b0 && e <= 1.0));
    }
    let spectral_distance = hausdorff(&full, &union);
    let max_product = products.iter().fold(0.0_f64, |m, p| m.max(p.2));
    Ok(LocalizationReport { h, products, localizer_defects, spectral_distance, max_product })
}

/// Event counted in a Monte Carlo cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Statistic {
    /// At least one eigenvalue in the interval.
    Wegner,
    /// At least two eigenvalues in the interval.
    Minami,
    /// `max_j |ω_j| ≥ 1 − ε`.
    BandEdge,
}

impl Statistic {
    fn threshold(self) -> usize {
        match self {
            Statistic::Minami => 2,
            _ => 1,
        }
    }
}

/// Configuration of one scaling study.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McStudy {
    /// Base potential.
    pub v0: PhaseSymbol,
    /// Landau index.
    pub n: usize,
    /// Semiclassical parameter.
    pub h: f64,
    /// Lattice sides; `|Λ| = L²`.
    pub sides: Vec<usize>,
    /// Interval half-widths, or `ε` values for the band-edge statistic.
    pub deltas: Vec<f64>,
    /// Interval centre.
    pub mu0: f64,
    /// Trials per volume.
    pub trials: usize,
    /// Master seed.
    pub seed: u64,
    /// Statistic.
    pub statistic: Statistic,
    /// Coupling density.
    pub density: CouplingDensity,
}

/// Result of one trial: per-δ counts plus padding instability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Per-δ eigenvalue counts, or 0/1 band-edge indicators.
    pub counts: Vec<usize>,
    /// Per-δ flag: the count changes under `±PADDING`.
    pub unstable: Vec<bool>,
}

/// One Monte Carlo cell.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellResult {
    /// `|Λ|`.
    pub volume: usize,
    /// Half-width (or `ε`).
    pub delta: f64,
    /// Trials.
    pub trials: usize,
    /// Trials where the event occurred.
    pub successes: usize,
    /// `successes / trials`.
    pub p_hat: f64,
    /// Wilson 95% interval.
    pub wilson: (f64, f64),
    /// `histogram[c]` = trials with count `c` (last bin open).
    pub histogram: Vec<u64>,
    /// Trials whose count moved under padding.
    pub unstable: usize,
    /// `p̂ ∈ {0, 1}`.
    pub degenerate: bool,
}

/// All cells of one study.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalingStudyResult {
    /// Statistic.
    pub statistic: Statistic,
    /// Cells, volume-major.
    pub cells: Vec<CellResult>,
}

/// Histogram width; counts above land in the last bin.
const HIST_BINS: usize = 8;

/// Couplings for one trial.
pub fn trial_couplings(density: CouplingDensity, sites: usize, master: u64, cell: u64, trial: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(master, cell, trial));
    (0..sites).map(|_| density.sample(&mut rng)).collect()
}

/// Evaluates one trial. `op` is required except for the band-edge statistic.
pub fn run_trial(
    study: &McStudy,
    op: Option<&LatticeOperator>,
    sites: usize,
    cell: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let omega = trial_couplings(study.density, sites, study.seed, cell, trial);
    if study.statistic == Statistic::BandEdge {
        let top = omega.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
        let counts = study.deltas.iter().map(|e| usize::from(top >= 1.0 - e)).collect();
        return Ok(TrialOutcome { counts, unstable: vec![false; study.deltas.len()] });
    }
    let op = op.ok_or_else(|| Error::invalid("spectral statistics need a lattice operator"))?;
    let ev = op.spectrum(&omega)?.eigenvalues;
    let mut counts = Vec::with_capacity(study.deltas.len());
    let mut unstable = Vec::with_capacity(study.deltas.len());
    for &d in &study.deltas {
        let c = count_in_interval(&ev, study.mu0 - d, study.mu0 + d);
        let wide = count_in_interval(&ev, study.mu0 - d - PADDING, study.mu0 + d + PADDING);
        let narrow = count_in_interval(&ev, study.mu0 - d + PADDING, study.mu0 + d - PADDING);
        counts.push(c);
        unstable.push(wide != narrow);
    }
    Ok(TrialOutcome { counts, unstable })
}

/// Validates a study and builds the lattice operator for one side.
pub fn study_operator(study: &McStudy, side: usize) -> Result<Option<LatticeOperator>> {
    if study.trials < 100 {
        return Err(Error::invalid("studies need at least 100 trials per cell"));
    }
    if study.deltas.iter().any(|d| !(*d > 0.0)) || study.sides.is_empty() || study.deltas.is_empty() {
        return Err(Error::invalid("need sides and positive deltas"));
    }
    if study.statistic == Statistic::BandEdge {
        return Ok(None);
    }
    let family = SiteSymbolFamily::new(study.v0.clone(), study.n, study.h)?;
    let lattice = LatticeSpec::square(side)?;
    Ok(Some(LatticeOperator::new(family, lattice, LatticeGrid::for_h(study.h))?))
}

/// Folds per-trial outcomes for one volume into cells.
pub fn aggregate(study: &McStudy, volume: usize, outcomes: &[TrialOutcome]) -> Vec<CellResult> {
    let thr = study.statistic.threshold();
    study
        .deltas
        .iter()
        .enumerate()
        .map(|(i, &delta)| {
            let mut histogram = vec![0u64; HIST_BINS];
            let mut successes = 0;
            let mut unstable = 0;
            for o in outcomes {
                let c = o.counts[i];
                histogram[c.min(HIST_BINS - 1)] += 1;
                if c >= thr {
                    successes += 1;
                }
                if o.unstable[i] {
                    unstable += 1;
                }
            }
            let trials = outcomes.len();
            let p_hat = successes as f64 / trials as f64;
            CellResult {
                volume,
                delta,
                trials,
                successes,
                p_hat,
                wilson: wilson_interval(successes as u64, trials as u64, Z95),
                histogram,
                unstable,
                degenerate: successes == 0 || successes == trials,
            }
        })
        .collect()
}

/// Sequential study. Trials of one volume share couplings across all `δ`.
pub fn run_mc(study: &McStudy) -> Result<ScalingStudyResult> {
    let mut cells = Vec::new();
    for (ci, &side) in study.sides.iter().enumerate() {
        let op = study_operator(study, side)?;
        let sites = side * side;
        let outcomes = (0..study.trials)
            .map(|t| run_trial(study, op.as_ref(), sites, ci as u64, t as u64))
            .collect::<Result<Vec<_>>>()?;
        cells.extend(aggregate(study, sites, &outcomes));
    }
    Ok(ScalingStudyResult { statistic: study.statistic, cells })
}

/// Which exponents a fit reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FitAxis {
    /// Slope in `δ`, one intercept per volume.
    Interval,
    /// Slope in `|Λ|`, one intercept per `δ`.
    Volume,
    /// Joint `ln p = c + a ln|Λ| + b ln δ`.
    Both,
}

/// Fitted exponents with standard errors.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalingFit {
    /// Axis.
    pub axis: FitAxis,
    /// Volume exponent and its standard error.
    pub volume: Option<(f64, f64)>,
    /// Interval exponent and its standard error.
    pub interval: Option<(f64, f64)>,
    /// Cells used.
    pub cells_used: usize,
}

/// Weighted log-log fit over the non-degenerate cells.
pub fn fit_scaling(result: &ScalingStudyResult, axis: FitAxis) -> Result<ScalingFit> {
    let cells: Vec<&CellResult> = result.cells.iter().filter(|c| !c.degenerate).collect();
    if cells.len() < 3 {
        return Err(Error::InsufficientCells { found: cells.len() });
    }
    let mut volumes: Vec<usize> = cells.iter().map(|c| c.volume).collect();
    volumes.sort_unstable();
    volumes.dedup();
    let mut deltas: Vec<f64> = cells.iter().map(|c| c.delta).collect();
    deltas.sort_by(|a, b| a.total_cmp(b));
    deltas.dedup();
    let rows: Vec<(Vec<f64>, f64, f64)> = cells
        .iter()
        .map(|c| {
            let lv = crate::math::ln(c.volume as f64);
            let ld = crate::math::ln(c.delta);
            let mut x = Vec::new();
            match axis {
                FitAxis::Both => x.extend([lv, ld]),
                FitAxis::Interval => {
                    x.push(ld);
                    x.extend(volumes.iter().skip(1).map(|&v| f64::from(u8::from(c.volume == v))));
                }
                FitAxis::Volume => {
                    x.push(lv);
                    x.extend(deltas.iter().skip(1).map(|&d| f64::from(u8::from(c.delta == d))));
                }
            }
            (x, crate::math::ln(c.p_hat), log_weight(c.wilson.0, c.wilson.1))
        })
        .collect();
    let fit: LinearFit = weighted_least_squares(&rows)?;
    let coef = |i: usize| (fit.coefficients[i], fit.std_errors[i]);
    let (volume, interval) = match axis {
        FitAxis::Both => (Some(coef(1)), Some(coef(2))),
        FitAxis::Interval => (None, Some(coef(1))),
        FitAxis::Volume => (Some(coef(1)), None),
    };
    Ok(ScalingFit { axis, volume, interval, cells_used: cells.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_lattice_sizes() {
        for l in 1..5 {
            let s = LatticeSpec::square(l).unwrap();
            assert_eq!(s.len(), l * l);
            let mut v = s.sites.clone();
            v.sort();
            v.dedup();
            assert_eq!(v.len(), l * l);
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_in_interval(&[], 0.0, 1.0), 0);
        assert_eq!(count_in_interval(&[0.9, 0.5, 0.4], 0.35, 0.55), 2);
    }

    #[test]
    fn cosine_bump_cdf_closes() {
        let d = CouplingDensity::CosineBump;
        assert!((d.cdf(1.0) - 1.0).abs() < 1e-12 && d.cdf(-1.0).abs() < 1e-12);
    }
}
