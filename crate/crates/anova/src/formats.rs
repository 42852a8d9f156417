//! JSON file formats for models, sensitivity reports and term sets.
//!
//! Variables are one-based on disk and zero-based in memory. All maps are
//! ordered so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;
use std::path::Path;

use anova_core::{BandwidthProfile, BasisKind, Complex64, Model, SensitivityReport, Term, TermSet};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dataset::Normalization;
use crate::error::{AppError, AppResult};
use crate::fitted::AnyModel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Real(Vec<f64>),
    /// `[re, im]` pairs.
    Complex(Vec<[f64; 2]>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub basis: String,
    pub dimension: usize,
    pub terms: Vec<Vec<usize>>,
    pub bandwidths: BTreeMap<String, usize>,
    pub lambda: f64,
    pub coefficients: Coefficients,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<Normalization>,
}

pub fn terms_to_json(terms: &TermSet) -> Vec<Vec<usize>> {
    terms.iter().map(Term::to_one_based).collect()
}

pub fn terms_from_json(dimension: usize, terms: &[Vec<usize>]) -> AppResult<TermSet> {
    let parsed = terms.iter().map(|t| Term::from_one_based(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(TermSet::new(dimension, parsed)?)
}

impl ModelFile {
    pub fn from_model(model: &AnyModel) -> Self {
        let coefficients = match model {
            AnyModel::Real(m) => Coefficients::Real(m.coefficients().to_vec()),
            AnyModel::Complex(m) => Coefficients::Complex(m.coefficients().iter().map(|c| [c.re, c.im]).collect()),
        };
        ModelFile {
            basis: model.kind().token().to_string(),
            dimension: model.dimension(),
            terms: terms_to_json(model.terms()),
            bandwidths: model.bandwidths().iter().map(|(o, n)| (o.to_string(), n)).collect(),
            lambda: model.lambda(),
            coefficients,
            columns: None,
            normalization: None,
        }
    }

    pub fn to_model(&self) -> AppResult<AnyModel> {
        let kind: BasisKind = self.basis.parse()?;
        let terms = terms_from_json(self.dimension, &self.terms)?;
        let mut bw = BandwidthProfile::default();
        for (order, &n) in &self.bandwidths {
            let order: usize =
                order.parse().map_err(|_| AppError::Data(format!("bandwidth key '{order}' is not an order")))?;
            bw.set(order, n)?;
        }
        Ok(match (&self.coefficients, kind.is_complex()) {
            (Coefficients::Real(c), false) => AnyModel::Real(Model::from_parts(kind, terms, bw, c.clone(), self.lambda)?),
            (Coefficients::Complex(c), true) => {
                let c = c.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                AnyModel::Complex(Model::from_parts(kind, terms, bw, c, self.lambda)?)
            }
            // a real expansion may be stored for the complex basis, but not the reverse
            (Coefficients::Real(c), true) => {
                let c = c.iter().map(|&re| Complex64::new(re, 0.0)).collect();
                AnyModel::Complex(Model::from_parts(kind, terms, bw, c, self.lambda)?)
            }
            (Coefficients::Complex(_), false) => {
                return Err(AppError::Data(format!("basis '{}' needs real coefficients", self.basis)))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GsiEntry {
    pub term: Vec<usize>,
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub variance: f64,
    /// Sorted by `rho`, largest first.
    pub gsi: Vec<GsiEntry>,
    /// `r(i)` for variables `1..=d`.
    pub ranking: Vec<f64>,
}

impl ReportFile {
    pub fn from_report(report: &SensitivityReport) -> Self {
        ReportFile {
            variance: report.variance,
            gsi: report
                .sorted_by_rho()
                .into_iter()
                .map(|t| GsiEntry { term: t.term.to_one_based(), rho: t.rho })
                .collect(),
            ranking: report.ranking.clone(),
        }
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let mut out = format!("total variance {:.6e}\n\nterm              rho\n", self.variance);
        for e in &self.gsi {
            out.push_str(&format!("{:<14} {:>10.6}\n", format_term(&e.term), e.rho));
        }
        out.push_str("\nvariable          r(i)\n");
        for (i, r) in self.ranking.iter().enumerate() {
            out.push_str(&format!("{:<14} {:>10.6}\n", format!("x{}", i + 1), r));
        }
        out
    }
}

pub fn format_term(one_based: &[usize]) -> String {
    let inner: Vec<String> = one_based.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> AppResult<()> {
    std::fs::write(path, to_json(value)).map_err(|e| AppError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> AppResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| AppError::Data(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use anova_core::{BasisKind, Nodes, SolverConfig};

    #[test]
    fn model_round_trip_is_exact() {
        let nodes = Nodes::from_rows(2, (0..30).map(|m| [m as f64 / 30.0, ((m * 7) % 30) as f64 / 30.0])).unwrap();
        let y: Vec<f64> = nodes.rows().map(|x| x[0] * x[1] + x[0]).collect();
        let terms = TermSet::superposition(2, 2).unwrap();
        let bw = BandwidthProfile::from_orders(&[4, 2]).unwrap();
        for kind in BasisKind::ALL {
            let nodes = if kind.is_periodic() {
                Nodes::from_flat(2, nodes.as_flat().iter().map(|v| v - 0.5).collect()).unwrap()
            } else {
                nodes.clone()
            };
            let m = AnyModel::fit(&nodes, &y, &terms, &bw, kind, &SolverConfig::with_lambda(0.1)).unwrap();
            let file = ModelFile::from_model(&m);
            let json = to_json(&file);
            let back: ModelFile = serde_json::from_str(&json).unwrap();
            assert_eq!(back, file);
            let restored = back.to_model().unwrap();
            assert_eq!(restored.predict(&nodes).unwrap(), m.predict(&nodes).unwrap());
            assert_eq!(to_json(&ModelFile::from_model(&restored)), json);
        }
    }

    #[test]
    fn bandwidth_keys_are_orders() {
        let terms = TermSet::superposition(3, 2).unwrap();
        let bw = BandwidthProfile::from_orders(&[4, 2]).unwrap();
        let n = anova_core::FrequencyIndexUnion::build(&terms, &bw, BasisKind::Cosine).unwrap().len();
        let m = AnyModel::Real(Model::from_parts(BasisKind::Cosine, terms, bw, vec![0.5; n], 1.0).unwrap());
        let json = to_json(&ModelFile::from_model(&m));
        assert!(json.contains("\"1\": 4") && json.contains("\"2\": 2"), "{json}");
        assert!(json.contains("\"basis\": \"cos\""));
    }
}
