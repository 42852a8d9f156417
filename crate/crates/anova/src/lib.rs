//! Std companion to `anova-core`: datasets, file formats, benchmark
//! pipelines and the `anova` command-line interface.

pub mod bench;
pub mod cli;
pub mod dataset;
mod error;
pub mod evaluate;
pub mod fitted;
pub mod formats;
pub mod friedman;
pub mod plot;
pub mod rng;

pub use dataset::{load_csv, normalize, read_csv, split, Dataset, Normalization, SplitMode, SplitPlan, TargetColumn};
pub use error::{AppError, AppResult};
pub use evaluate::{median_evaluate, Summary};
pub use fitted::AnyModel;
pub use friedman::{friedman_eval, friedman_sample, FriedmanSpec};
