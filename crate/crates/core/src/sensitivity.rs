//! Global sensitivity indices and attribute ranking of a fitted model.
//!
//! For a term `u`, `rho(u) = sigma^2(f_u) / sigma^2(f)` with both variances
//! read off the coefficients by Parseval. The ranking score of variable `i`
//! spreads every `rho(u)` with `i in u` over the variables of `u`, weighting
//! it by `1 / |{v in U : |v| = |u|, i in v}|`, and normalizes the scores to
//! sum to one.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::scalar::Scalar;
use crate::terms::{Term, TermSet};

#[derive(Debug, Clone, PartialEq)]
pub struct TermSensitivity {
    pub term: Term,
    pub rho: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub variance: f64,
    /// One entry per nonempty term, in term-set order.
    pub gsi: Vec<TermSensitivity>,
    /// `r(i)` for every variable `i`, zero-based.
    pub ranking: Vec<f64>,
}

/// `rho(u)` for every nonempty term of the model.
///
/// A variance at rounding level relative to the constant term counts as zero:
/// the indices would only distribute noise.
pub fn gsi<T: Scalar>(model: &Model<T>) -> Result<Vec<TermSensitivity>> {
    let variance = model.variance();
    let mean2: f64 = model.coefficients().iter().map(|c| c.abs2()).sum::<f64>() - variance;
    let floor = 64.0 * f64::EPSILON;
    if !(variance > floor * floor * mean2.max(0.0)) {
        return Err(Error::DegenerateModel);
    }
    model
        .terms()
        .iter()
        .filter(|t| !t.is_empty())
        .map(|t| Ok(TermSensitivity { term: t.clone(), rho: model.term_variance(t)? / variance }))
        .collect()
}

/// Ranking score `r(i)` for `i = 0..d`.
///
/// Variables that occur in no term of `terms` score zero.
pub fn attribute_ranking(gsi: &[TermSensitivity], terms: &TermSet) -> Result<Vec<f64>> {
    let d = terms.dimension();
    // occurrences[order][i] = |{v in U : |v| = order, i in v}|
    let max_order = terms.max_order();
    let mut occurrences = vec![vec![0usize; d]; max_order + 1];
    for t in terms {
        for &v in t.vars() {
            occurrences[t.order()][v] += 1;
        }
    }

    let mut scores = vec![0.0; d];
    for s in gsi {
        if s.term.is_empty() {
            continue;
        }
        if !terms.contains(&s.term) {
            return Err(Error::UnknownTerm(alloc::format!("{}", s.term)));
        }
        for &v in s.term.vars() {
            scores[v] += s.rho / occurrences[s.term.order()][v] as f64;
        }
    }
    let total: f64 = scores.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateModel);
    }
    for r in &mut scores {
        *r /= total;
    }
    Ok(scores)
}

impl SensitivityReport {
    pub fn new<T: Scalar>(model: &Model<T>) -> Result<Self> {
        let gsi = gsi(model)?;
        let ranking = attribute_ranking(&gsi, model.terms())?;
        Ok(SensitivityReport { variance: model.variance(), gsi, ranking })
    }

    pub fn rho(&self, term: &Term) -> Option<f64> {
        self.gsi.iter().find(|s| &s.term == term).map(|s| s.rho)
    }

    /// Terms by decreasing `rho`; ties keep term-set order.
    pub fn sorted_by_rho(&self) -> Vec<&TermSensitivity> {
        let mut v: Vec<&TermSensitivity> = self.gsi.iter().collect();
        v.sort_by(|a, b| b.rho.partial_cmp(&a.rho).unwrap_or(Ordering::Equal).then_with(|| a.term.cmp(&b.term)));
        v
    }

    /// Variables by decreasing score; ties by index.
    pub fn variables_by_rank(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.ranking.len()).collect();
        idx.sort_by(|&a, &b| self.ranking[b].partial_cmp(&self.ranking[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
        idx
    }
}
