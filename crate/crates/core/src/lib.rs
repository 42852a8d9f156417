//! Interpretable ANOVA approximation of high-dimensional scattered data.
//!
//! A function on `[0, 1]^d` (or the torus) is approximated by a truncated
//! ANOVA expansion: a sum of terms `f_u` over a small collection `U` of
//! variable subsets, each expanded in a tensor-product orthonormal basis on
//! a full frequency grid. The coefficients come from a damped least-squares
//! fit solved by LSQR against a matrix-free design operator. Because the
//! basis is orthonormal, the variance of each term, and with it the global
//! sensitivity indices and an attribute ranking, can be read directly off
//! the coefficients. Those scores drive refinement of the active term set.
//!
//! ```
//! use anova_core::{BandwidthProfile, BasisKind, Model, Nodes, SensitivityReport, SolverConfig, TermSet};
//!
//! let nodes = Nodes::from_rows(2, (0..50).map(|m| {
//!     let t = m as f64 / 49.0;
//!     [t, (7.0 * t).fract()]
//! })).unwrap();
//! let values: Vec<f64> = nodes.rows().map(|x| 3.0 * x[0] + 0.1 * x[1]).collect();
//!
//! let terms = TermSet::superposition(2, 1).unwrap();
//! let bandwidths = BandwidthProfile::from_orders(&[6]).unwrap();
//! let model = Model::<f64>::fit(&nodes, &values, &terms, &bandwidths, BasisKind::Cosine, &SolverConfig::default()).unwrap();
//!
//! let report = SensitivityReport::new(&model).unwrap();
//! assert!(report.ranking[0] > report.ranking[1]);
//! ```
#![no_std]

extern crate alloc;

pub mod basis;
mod error;
pub mod metrics;
pub mod model;
pub mod nodes;
pub mod operator;
pub mod refine;
pub mod scalar;
pub mod sensitivity;
pub mod solver;
pub mod terms;

pub use basis::{eval_1d, eval_tensor, BasisKind};
pub use error::{Error, Result};
pub use model::{FitDiagnostics, Model};
pub use nodes::Nodes;
pub use operator::{DesignOperator, LinearOperator};
pub use refine::{drop_variables, incremental_expand, threshold_active_set, Expansion, RefinementConfig};
pub use scalar::{Complex64, Scalar};
pub use sensitivity::{attribute_ranking, gsi, SensitivityReport, TermSensitivity};
pub use solver::{lsqr_solve, Solution, SolverConfig, StopReason};
pub use terms::{full_grid_1d, BandwidthProfile, FrequencyIndexUnion, Term, TermBlock, TermSet};
