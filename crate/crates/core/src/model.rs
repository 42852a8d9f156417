//! Fitted ANOVA approximations `S(X, I(U)) f = sum_{k in I(U)} fhat_k phi_k`.

use alloc::vec::Vec;

use crate::basis::BasisKind;
use crate::error::{Error, Result};
use crate::nodes::Nodes;
use crate::operator::DesignOperator;
use crate::scalar::Scalar;
use crate::solver::{lsqr_solve, SolverConfig, StopReason};
use crate::terms::{BandwidthProfile, FrequencyIndexUnion, Term, TermSet};

#[derive(Debug, Clone, PartialEq)]
pub struct FitDiagnostics {
    pub iterations: usize,
    pub relative_residual: f64,
    pub stop: StopReason,
    /// `M / |I(U)|` of the training system.
    pub oversampling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Model<T: Scalar> {
    terms: TermSet,
    bandwidths: BandwidthProfile,
    index: FrequencyIndexUnion,
    coefficients: Vec<T>,
    lambda: f64,
    diagnostics: Option<FitDiagnostics>,
}

impl<T: Scalar> Model<T> {
    /// Solves the damped least-squares problem for the coefficients on `I(U)`.
    pub fn fit(
        nodes: &Nodes,
        values: &[f64],
        terms: &TermSet,
        bandwidths: &BandwidthProfile,
        kind: BasisKind,
        cfg: &SolverConfig,
    ) -> Result<Self> {
        if nodes.is_empty() || values.is_empty() {
            return Err(Error::EmptyData);
        }
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch { expected: nodes.len(), found: values.len() });
        }
        if nodes.dimension() != terms.dimension() {
            return Err(Error::DimensionMismatch { expected: terms.dimension(), found: nodes.dimension() });
        }
        let index = FrequencyIndexUnion::build(terms, bandwidths, kind)?;
        let op = DesignOperator::<T>::new(&index, nodes)?;
        let oversampling = op.oversampling();
        if oversampling <= 1.0 {
            log::warn!(
                "oversampling M/|I(U)| = {}/{} <= 1; the least-squares system is likely rank deficient",
                nodes.len(),
                index.len()
            );
        }
        let rhs: Vec<T> = values.iter().map(|&v| T::from_real(v)).collect();
        let sol = lsqr_solve(&op, &rhs, cfg)?;
        if !sol.stop.converged() {
            log::warn!("LSQR stopped after {} iterations without reaching the tolerance", sol.iterations);
        }
        let diagnostics = FitDiagnostics {
            iterations: sol.iterations,
            relative_residual: sol.relative_residual,
            stop: sol.stop,
            oversampling,
        };
        Ok(Model {
            terms: terms.clone(),
            bandwidths: bandwidths.clone(),
            index,
            coefficients: sol.coefficients,
            lambda: cfg.lambda,
            diagnostics: Some(diagnostics),
        })
    }

    /// Assembles a model from stored coefficients.
    pub fn from_parts(
        kind: BasisKind,
        terms: TermSet,
        bandwidths: BandwidthProfile,
        coefficients: Vec<T>,
        lambda: f64,
    ) -> Result<Self> {
        if kind.is_complex() && !T::IS_COMPLEX {
            return Err(Error::ComplexBasisOnRealField);
        }
        let index = FrequencyIndexUnion::build(&terms, &bandwidths, kind)?;
        if coefficients.len() != index.len() {
            return Err(Error::LengthMismatch { expected: index.len(), found: coefficients.len() });
        }
        Ok(Model { terms, bandwidths, index, coefficients, lambda, diagnostics: None })
    }

    pub fn kind(&self) -> BasisKind {
        self.index.kind()
    }

    pub fn dimension(&self) -> usize {
        self.terms.dimension()
    }

    pub fn terms(&self) -> &TermSet {
        &self.terms
    }

    pub fn bandwidths(&self) -> &BandwidthProfile {
        &self.bandwidths
    }

    pub fn index(&self) -> &FrequencyIndexUnion {
        &self.index
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn diagnostics(&self) -> Option<&FitDiagnostics> {
        self.diagnostics.as_ref()
    }

    /// Coefficients of a single term, `(fhat_k)_{k in P_u I_u}`.
    pub fn term_coefficients(&self, term: &Term) -> Result<&[T]> {
        let b = self.index.block(term).ok_or_else(|| Error::UnknownTerm(alloc::format!("{term}")))?;
        Ok(&self.coefficients[b.range()])
    }

    pub fn predict(&self, nodes: &Nodes) -> Result<Vec<T>> {
        DesignOperator::new(&self.index, nodes)?.matvec(&self.coefficients)
    }

    /// Real part of [`Model::predict`], for real-valued targets.
    pub fn predict_real(&self, nodes: &Nodes) -> Result<Vec<f64>> {
        Ok(self.predict(nodes)?.into_iter().map(Scalar::re).collect())
    }

    /// Evaluates the single ANOVA term `f_u`.
    pub fn predict_term(&self, term: &Term, nodes: &Nodes) -> Result<Vec<T>> {
        let b = self.index.block(term).ok_or_else(|| Error::UnknownTerm(alloc::format!("{term}")))?;
        DesignOperator::new(&self.index, nodes)?.matvec_block(b, &self.coefficients)
    }

    /// `sigma^2 = sum_{k != 0} |fhat_k|^2`.
    pub fn variance(&self) -> f64 {
        self.index
            .blocks()
            .iter()
            .filter(|b| !b.term().is_empty())
            .flat_map(|b| self.coefficients[b.range()].iter())
            .map(|c| c.abs2())
            .sum()
    }

    /// `sigma^2(f_u)`; zero for the empty term.
    pub fn term_variance(&self, term: &Term) -> Result<f64> {
        if term.is_empty() {
            return if self.terms.contains(term) { Ok(0.0) } else { Err(Error::UnknownTerm("{}".into())) };
        }
        Ok(self.term_coefficients(term)?.iter().map(|c| c.abs2()).sum())
    }

    /// Same model with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut m = self.clone();
        for c in &mut m.coefficients {
            *c = c.scale(factor);
        }
        m
    }
}
