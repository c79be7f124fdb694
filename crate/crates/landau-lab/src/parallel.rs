//! Trial-parallel Monte Carlo driver.
//!
//! Each trial seeds itself from its coordinates, so the result is independent
//! of the worker count and equals the sequential `run_mc`.

use landau_core::ensemble::{aggregate, run_trial, study_operator, McStudy, ScalingStudyResult};
use rayon::prelude::*;

use crate::error::LabError;

/// Runs `study` on `workers` threads (all cores when `None`).
pub fn run_study(study: &McStudy, workers: Option<usize>) -> Result<ScalingStudyResult, LabError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Io(e.to_string()))?;
    pool.install(|| {
        let mut cells = Vec::new();
        for (ci, &side) in study.sides.iter().enumerate() {
            let op = study_operator(study, side)?;
            let sites = side * side;
            let outcomes = (0..study.trials)
                .into_par_iter()
                .map(|t| run_trial(study, op.as_ref(), sites, ci as u64, t as u64))
                .collect::<Result<Vec<_>, _>>()?;
            cells.extend(aggregate(study, sites, &outcomes));
        }
        Ok(ScalingStudyResult { statistic: study.statistic, cells })
    })
}
