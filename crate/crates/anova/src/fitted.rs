//! A fitted model over whichever scalar field its basis requires.

use anova_core::{
    BandwidthProfile, BasisKind, Complex64, Model, Nodes, Result as CoreResult, SensitivityReport, SolverConfig, TermSet,
};

#[derive(Clone, Debug)]
pub enum AnyModel {
    Real(Model<f64>),
    Complex(Model<Complex64>),
}

macro_rules! each {
    ($self:expr, $m:ident => $body:expr) => {
        match $self {
            AnyModel::Real($m) => $body,
            AnyModel::Complex($m) => $body,
        }
    };
}

impl AnyModel {
    pub fn fit(
        nodes: &Nodes,
        values: &[f64],
        terms: &TermSet,
        bandwidths: &BandwidthProfile,
        kind: BasisKind,
        cfg: &SolverConfig,
    ) -> CoreResult<Self> {
        Ok(if kind.is_complex() {
            AnyModel::Complex(Model::fit(nodes, values, terms, bandwidths, kind, cfg)?)
        } else {
            AnyModel::Real(Model::fit(nodes, values, terms, bandwidths, kind, cfg)?)
        })
    }

    pub fn kind(&self) -> BasisKind {
        each!(self, m => m.kind())
    }

    pub fn dimension(&self) -> usize {
        each!(self, m => m.dimension())
    }

    pub fn terms(&self) -> &TermSet {
        each!(self, m => m.terms())
    }

    pub fn bandwidths(&self) -> &BandwidthProfile {
        each!(self, m => m.bandwidths())
    }

    pub fn lambda(&self) -> f64 {
        each!(self, m => m.lambda())
    }

    pub fn len(&self) -> usize {
        each!(self, m => m.coefficients().len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn predict(&self, nodes: &Nodes) -> CoreResult<Vec<f64>> {
        each!(self, m => m.predict_real(nodes))
    }

    pub fn report(&self) -> CoreResult<SensitivityReport> {
        each!(self, m => SensitivityReport::new(m))
    }

    pub fn diagnostics(&self) -> Option<&anova_core::FitDiagnostics> {
        each!(self, m => m.diagnostics())
    }
}
