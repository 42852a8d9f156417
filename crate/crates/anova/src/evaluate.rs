//! Repeated-split evaluation reduced to median and quartiles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub metric: String,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub repetitions: usize,
    /// Repetitions that errored, with their messages.
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub repetition: usize,
    pub message: String,
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Runs `run(rep)` for every repetition in parallel. Failed repetitions are
/// recorded, not fatal, unless all of them fail.
pub fn median_evaluate<F>(metric: &str, repetitions: usize, run: F) -> AppResult<(Summary, Vec<f64>)>
where
    F: Fn(usize) -> AppResult<f64> + Sync,
{
    if repetitions == 0 {
        return Err(AppError::Config("at least one repetition is required".into()));
    }
    let results: Vec<AppResult<f64>> = (0..repetitions).into_par_iter().map(&run).collect();
    let mut values = Vec::with_capacity(repetitions);
    let mut failures = Vec::new();
    for (rep, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => failures.push(Failure { repetition: rep, message: format!("non-finite {metric} {v}") }),
            Err(e) => failures.push(Failure { repetition: rep, message: e.to_string() }),
        }
    }
    for f in &failures {
        log::warn!("repetition {} excluded from the {metric} summary: {}", f.repetition, f.message);
    }
    if values.is_empty() {
        let first = failures.first().map(|f| f.message.clone()).unwrap_or_default();
        return Err(AppError::Numerical(format!("all {repetitions} repetitions failed; first: {first}")));
    }
    let per_rep = values.clone();
    values.sort_by(f64::total_cmp);
    let summary = Summary {
        metric: metric.to_string(),
        median: quantile(&values, 0.5),
        q1: quantile(&values, 0.25),
        q3: quantile(&values, 0.75),
        repetitions,
        failures,
    };
    Ok((summary, per_rep))
}
