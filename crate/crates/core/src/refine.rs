//! Active-set detection: thresholding, variable removal, incremental expansion.
//!
//! These are pure set transformations; re-fitting on the refined set is up
//! to the caller.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sensitivity::SensitivityReport;
use crate::terms::{subsets_of_size, Term, TermSet};

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementConfig {
    /// `eps_l` for orders `l = 1..=d_s`.
    pub thresholds: Vec<f64>,
    /// Ranking threshold `theta`.
    pub theta: f64,
    /// Expansion order `n_v`, `d_s < n_v < d`.
    pub expansion_order: usize,
}

/// `U(eps) = {u : rho(u) > eps_|u|}` plus the empty term.
///
/// The result need not be downward closed; absent subsets are zero terms.
pub fn threshold_active_set(report: &SensitivityReport, terms: &TermSet, thresholds: &[f64]) -> Result<TermSet> {
    if let Some(e) = thresholds.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        return Err(Error::InvalidConfig(alloc::format!("threshold {e} outside [0, 1]")));
    }
    let mut keep = Vec::new();
    for t in terms.iter().filter(|t| !t.is_empty()) {
        let eps = *thresholds.get(t.order() - 1).ok_or(Error::MissingThreshold(t.order()))?;
        let rho = report.rho(t).ok_or_else(|| Error::UnknownTerm(alloc::format!("{t}")))?;
        if rho > eps {
            keep.push(t.clone());
        }
    }
    let set = TermSet::new(terms.dimension(), keep)?;
    set.with_superposition_threshold(terms.superposition_threshold().max(1))
}

/// Keeps only terms whose variables all lie in `keep` (zero-based).
pub fn drop_variables(terms: &TermSet, keep: &[usize]) -> Result<TermSet> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let d = terms.dimension();
    if let Some(&v) = keep.iter().find(|&&v| v >= d) {
        return Err(Error::VariableOutOfRange { index: v + 1, dimension: d });
    }
    let kept = terms.iter().filter(|t| t.vars().iter().all(|v| keep.contains(v))).cloned();
    let set = TermSet::new(d, kept)?;
    set.with_superposition_threshold(terms.superposition_threshold().max(1))
}

/// Variables with `r(i) > theta`.
pub fn variables_above(ranking: &[f64], theta: f64) -> Vec<usize> {
    ranking.iter().enumerate().filter(|(_, &r)| r > theta).map(|(i, _)| i).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub terms: TermSet,
    /// Terms that were not in the input set.
    pub added: Vec<Term>,
    /// `v = {i : r(i) > theta}`.
    pub important: Vec<usize>,
}

/// `U ∪ {u ⊆ v : d_s < |u| <= n_v}` with `v = {i : r(i) > theta}`.
pub fn incremental_expand(report: &SensitivityReport, terms: &TermSet, cfg: &RefinementConfig) -> Result<Expansion> {
    let d = terms.dimension();
    let ds = terms.superposition_threshold();
    let nv = cfg.expansion_order;
    if !(ds < nv && nv < d) {
        return Err(Error::InvalidConfig(alloc::format!(
            "expansion order must satisfy d_s < n_v < d, got d_s = {ds}, n_v = {nv}, d = {d}"
        )));
    }
    if !(cfg.theta > 0.0 && cfg.theta < 1.0) {
        return Err(Error::InvalidConfig(alloc::format!("theta must lie in (0, 1), got {}", cfg.theta)));
    }
    if report.ranking.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: report.ranking.len() });
    }
    let important = variables_above(&report.ranking, cfg.theta);
    if important.is_empty() {
        log::info!("no variable ranks above theta = {}; term set unchanged", cfg.theta);
        return Ok(Expansion { terms: terms.clone(), added: Vec::new(), important });
    }
    let mut added = Vec::new();
    for order in (ds + 1)..=nv {
        for t in subsets_of_size(&important, order) {
            if !terms.contains(&t) {
                added.push(t);
            }
        }
    }
    let all = terms.iter().cloned().chain(added.iter().cloned());
    let set = TermSet::new(d, all)?.with_superposition_threshold(nv)?;
    Ok(Expansion { terms: set, added, important })
}
