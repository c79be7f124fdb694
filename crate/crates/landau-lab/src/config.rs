//! Command parameters: JSON config files overlaid with command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use landau_core::ensemble::CouplingDensity;
use landau_core::PhaseSymbol;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::LabError;

/// Flags shared by every command.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Master seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, env = "LANDAU_OUT")]
    pub out: Option<PathBuf>,
    /// JSON config file, or a manifest from an earlier run.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Concurrent trials.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

/// Fields every resolved config carries besides the command's own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    /// Master seed.
    pub seed: u64,
    /// Output directory.
    pub out: PathBuf,
}

/// Default master seed.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Reads `path` as a config object; a manifest contributes its `config` member.
pub fn load_config(path: &Path) -> Result<Map<String, Value>, LabError> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| LabError::Config(format!("{}: {e}", path.display())))?;
    let Value::Object(mut map) = value else {
        return Err(LabError::Config(format!("{}: expected a JSON object", path.display())));
    };
    if let Some(Value::Object(inner)) = map.remove("config") {
        return Ok(inner);
    }
    Ok(map)
}

/// Overlays `flags` on the config file and splits off seed and output directory.
///
/// Flags win over the file; absent flags serialize as `null` and are skipped.
pub fn resolve<T>(flags: &T, common: &CommonArgs) -> Result<(T, RunSettings), LabError>
where
    T: Serialize + DeserializeOwned,
{
    let mut map = match &common.config {
        Some(p) => load_config(p)?,
        None => Map::new(),
    };
    let Value::Object(over) = serde_json::to_value(flags).map_err(|e| LabError::Config(e.to_string()))? else {
        return Err(LabError::Config("flags did not serialize to an object".into()));
    };
    for (k, v) in over {
        if !v.is_null() {
            map.insert(k, v);
        }
    }
    let seed = match (common.seed, map.remove("seed")) {
        (Some(s), _) => s,
        (None, Some(v)) => v.as_u64().ok_or_else(|| LabError::Config("field `seed` must be an unsigned integer".into()))?,
        (None, None) => DEFAULT_SEED,
    };
    let file_out = map.remove("out");
    let out = match (&common.out, file_out) {
        (Some(p), _) => p.clone(),
        (None, Some(Value::String(s))) => PathBuf::from(s),
        (None, Some(_)) => return Err(LabError::Config("field `out` must be a path".into())),
        (None, None) => PathBuf::from("landau-out"),
    };
    let params = serde_json::from_value(Value::Object(map)).map_err(|e| LabError::Config(e.to_string()))?;
    Ok((params, RunSettings { seed, out }))
}

/// Unwraps a required field, naming it on failure.
pub fn require<T: Clone>(value: &Option<T>, name: &str) -> Result<T, LabError> {
    value.clone().ok_or_else(|| LabError::Config(format!("missing required field `{name}`")))
}

/// Parses `gaussian[:z]`, `constant:c`, `cutoff-gaussian[:z:start:end]`.
pub fn parse_symbol(spec: &str) -> Result<PhaseSymbol, LabError> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums: Vec<f64> = parts
        .map(|p| p.parse::<f64>().map_err(|_| LabError::Config(format!("bad number `{p}` in symbol `{spec}`"))))
        .collect::<Result<_, _>>()?;
    match (kind, nums.as_slice()) {
        ("gaussian", []) => Ok(PhaseSymbol::Gaussian { z: 1.0 }),
        ("gaussian", [z]) if *z > 0.0 => Ok(PhaseSymbol::Gaussian { z: *z }),
        ("constant", [c]) => Ok(PhaseSymbol::Constant(*c)),
        ("cutoff-gaussian", []) => Ok(PhaseSymbol::CutoffGaussian { z: 1.0, start: 2.0, end: 5.0 }),
        ("cutoff-gaussian", [z, s, e]) if *s >= 0.0 && e > s => {
            Ok(PhaseSymbol::CutoffGaussian { z: *z, start: *s, end: *e })
        }
        _ => Err(LabError::Config(format!("unknown symbol `{spec}`"))),
    }
}

/// Parses `uniform` or `cosine-bump`.
pub fn parse_density(spec: &str) -> Result<CouplingDensity, LabError> {
    match spec {
        "uniform" => Ok(CouplingDensity::Uniform),
        "cosine-bump" => Ok(CouplingDensity::CosineBump),
        _ => Err(LabError::Config(format!("unknown density `{spec}`"))),
    }
}

/// `quantize` parameters.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizeArgs {
    /// Symbol, e.g. `gaussian`, `gaussian:2`, `constant:0.5`, `cutoff-gaussian:1:2:5`.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Semiclassical parameter.
    #[arg(long)]
    pub h: Option<f64>,
    /// Hermite levels.
    #[arg(long)]
    pub basis: Option<usize>,
    /// Gauss–Hermite order; defaults to `basis + 60`.
    #[arg(long)]
    pub quad_order: Option<usize>,
}

/// `mehler` parameters.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MehlerArgs {
    /// Radial symbol.
    #[arg(long)]
    pub symbol: Option<String>,
    /// Values of `h`.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
    /// Highest level.
    #[arg(long)]
    pub kmax: Option<usize>,
}

/// `gapcheck` parameters.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapArgs {
    /// Base potential.
    #[arg(long)]
    pub family: Option<String>,
    /// Landau index.
    #[arg(long)]
    pub n: Option<usize>,
    /// Spectral threshold.
    #[arg(long)]
    pub b0: Option<f64>,
    /// Required gap in units of `h`.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Values of `h`.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
}

/// `grushin` parameters.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrushinArgs {
    /// Potential.
    #[arg(long)]
    pub potential: Option<String>,
    /// Values of `h` for the residual fit.
    #[arg(long, value_delimiter = ',')]
    pub h: Option<Vec<f64>>,
    /// Spectral parameter for the residual.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Landau index.
    #[arg(long)]
    pub n: Option<usize>,
    /// Oscillator levels.
    #[arg(long)]
    pub nx: Option<usize>,
    /// `y` levels.
    #[arg(long)]
    pub ny: Option<usize>,
    /// Series order.
    #[arg(long)]
    pub jmax: Option<usize>,
    /// Couplings for the equivalence check; empty skips it.
    #[arg(long, value_delimiter = ',')]
    pub omega: Option<Vec<f64>>,
    /// `h` of the equivalence check.
    #[arg(long)]
    pub bellissard_h: Option<f64>,
}

/// Parameters of the three Monte Carlo commands.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McArgs {
    /// Base potential.
    #[arg(long)]
    pub potential: Option<String>,
    /// Landau index.
    #[arg(long)]
    pub n: Option<usize>,
    /// Semiclassical parameter.
    #[arg(long)]
    pub h: Option<f64>,
    /// Lattice sides.
    #[arg(long = "L", value_delimiter = ',')]
    #[serde(rename = "L")]
    pub sides: Option<Vec<usize>>,
    /// Interval half-widths, or `ε` for `bandedge`.
    #[arg(long, value_delimiter = ',')]
    pub delta: Option<Vec<f64>>,
    /// Interval centre.
    #[arg(long)]
    pub mu0: Option<f64>,
    /// Trials per cell.
    #[arg(long)]
    pub trials: Option<usize>,
    /// `uniform` or `cosine-bump`.
    #[arg(long)]
    pub density: Option<String>,
}
