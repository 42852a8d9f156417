//! In-memory datasets, CSV ingestion, min-max normalization and splitting.

use std::io::Read;
use std::path::{Path, PathBuf};

use anova_core::Nodes;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{AppError, AppResult};
use crate::rng::{stream, Purpose};

/// Row-major features plus one real target per row.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    dimension: usize,
    features: Vec<f64>,
    targets: Vec<f64>,
    columns: Vec<String>,
    normalization: Option<Normalization>,
}

impl Dataset {
    pub fn new(dimension: usize, features: Vec<f64>, targets: Vec<f64>, columns: Vec<String>) -> AppResult<Self> {
        if dimension == 0 {
            return Err(AppError::Data("dataset needs at least one feature column".into()));
        }
        if targets.is_empty() {
            return Err(AppError::Data("dataset has no rows".into()));
        }
        if features.len() != dimension * targets.len() || columns.len() != dimension {
            return Err(AppError::Data(format!(
                "inconsistent dataset shape: {} values for {} rows, {} columns, {} names",
                features.len(),
                targets.len(),
                dimension,
                columns.len()
            )));
        }
        if let Some(i) = targets.iter().position(|v| !v.is_finite()) {
            return Err(AppError::Data(format!("target in row {} is not finite", i + 1)));
        }
        Ok(Dataset { dimension, features, targets, columns, normalization: None })
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.features[m * self.dimension..(m + 1) * self.dimension]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.features.chunks_exact(self.dimension)
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn normalization(&self) -> Option<&Normalization> {
        self.normalization.as_ref()
    }

    pub fn nodes(&self) -> AppResult<Nodes> {
        Ok(Nodes::from_flat(self.dimension, self.features.clone())?)
    }

    /// Rows at the given positions, in that order.
    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        let mut features = Vec::with_capacity(rows.len() * self.dimension);
        for &m in rows {
            features.extend_from_slice(self.row(m));
        }
        Dataset {
            dimension: self.dimension,
            features,
            targets: rows.iter().map(|&m| self.targets[m]).collect(),
            columns: self.columns.clone(),
            normalization: self.normalization.clone(),
        }
    }

    /// Keeps the given zero-based feature columns, in that order.
    pub fn project(&self, columns: &[usize]) -> AppResult<Dataset> {
        if columns.is_empty() {
            return Err(AppError::Config("column projection keeps no columns".into()));
        }
        if let Some(&c) = columns.iter().find(|&&c| c >= self.dimension) {
            return Err(AppError::Config(format!("column {} out of range for {} features", c + 1, self.dimension)));
        }
        let features = self.rows().flat_map(|r| columns.iter().map(move |&c| r[c])).collect();
        let normalization = self.normalization.as_ref().map(|n| Normalization {
            min: columns.iter().map(|&c| n.min[c]).collect(),
            max: columns.iter().map(|&c| n.max[c]).collect(),
            target: n.target,
        });
        Ok(Dataset {
            dimension: columns.len(),
            features,
            targets: self.targets.clone(),
            columns: columns.iter().map(|&c| self.columns[c].clone()).collect(),
            normalization,
        })
    }

    pub fn with_targets(&self, targets: Vec<f64>) -> AppResult<Dataset> {
        let mut ds = Dataset::new(self.dimension, self.features.clone(), targets, self.columns.clone())?;
        ds.normalization = self.normalization.clone();
        Ok(ds)
    }
}

/// Per-column extrema of a training set, optionally also of the target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<(f64, f64)>,
}

impl Normalization {
    pub fn fit(ds: &Dataset, normalize_target: bool) -> Normalization {
        let d = ds.dimension;
        let mut min = vec![f64::INFINITY; d];
        let mut max = vec![f64::NEG_INFINITY; d];
        for r in ds.rows() {
            for i in 0..d {
                min[i] = min[i].min(r[i]);
                max[i] = max[i].max(r[i]);
            }
        }
        let target = normalize_target.then(|| {
            ds.targets.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
        });
        Normalization { min, max, target }
    }

    /// Maps a value into `[0, 1]`; constant columns go to the midpoint.
    fn scale(v: f64, lo: f64, hi: f64) -> f64 {
        if hi > lo {
            ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.5
        }
    }

    pub fn apply(&self, ds: &Dataset) -> AppResult<Dataset> {
        if self.min.len() != ds.dimension {
            return Err(AppError::Data(format!(
                "normalization has {} columns, dataset has {}",
                self.min.len(),
                ds.dimension
            )));
        }
        let d = ds.dimension;
        let features =
            ds.features.iter().enumerate().map(|(j, &v)| Self::scale(v, self.min[j % d], self.max[j % d])).collect();
        let targets = match self.target {
            Some((lo, hi)) => ds.targets.iter().map(|&v| Self::scale(v, lo, hi)).collect(),
            None => ds.targets.clone(),
        };
        Ok(Dataset {
            dimension: d,
            features,
            targets,
            columns: ds.columns.clone(),
            normalization: Some(self.clone()),
        })
    }

    /// Maps normalized targets back to the original scale.
    pub fn denormalize_target(&self, values: &[f64]) -> Vec<f64> {
        match self.target {
            Some((lo, hi)) if hi > lo => values.iter().map(|v| lo + v * (hi - lo)).collect(),
            Some((lo, _)) => values.iter().map(|_| lo).collect(),
            None => values.to_vec(),
        }
    }
}

/// Min-max normalizes `ds` with statistics from `reference` (or from `ds`
/// itself). A dataset already normalized with the same statistics is
/// returned unchanged.
pub fn normalize(ds: &Dataset, reference: Option<&Dataset>, normalize_target: bool) -> AppResult<Dataset> {
    let stats = match reference {
        Some(r) => r.normalization.clone().unwrap_or_else(|| Normalization::fit(r, normalize_target)),
        None => Normalization::fit(ds, normalize_target),
    };
    if ds.normalization.as_ref() == Some(&stats) {
        return Ok(ds.clone());
    }
    stats.apply(ds)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetColumn {
    Name(String),
    /// Zero-based position.
    Index(usize),
    Last,
}

impl std::str::FromStr for TargetColumn {
    type Err = std::convert::Infallible;

    /// A 1-based integer selects by position, anything else by header name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) if i >= 1 => TargetColumn::Index(i - 1),
            _ if s == "last" => TargetColumn::Last,
            _ => TargetColumn::Name(s.to_string()),
        })
    }
}

pub fn load_csv(path: &Path, target: &TargetColumn) -> AppResult<Dataset> {
    let file = std::fs::File::open(path).map_err(|e| AppError::io(path, e))?;
    read_csv(file, target).map_err(|e| match e {
        AppError::Data(msg) => AppError::Data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn read_csv<R: Read>(reader: R, target: &TargetColumn) -> AppResult<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> =
        rdr.headers().map_err(|e| AppError::Data(format!("unreadable header: {e}")))?.iter().map(String::from).collect();
    if header.is_empty() || header.iter().all(|h| h.is_empty()) {
        return Err(AppError::Data("empty file".into()));
    }
    if header.len() < 2 {
        return Err(AppError::Data("need at least one feature column and a target column".into()));
    }
    let t = match target {
        TargetColumn::Name(name) => header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| AppError::Data(format!("target column '{name}' not in header {header:?}")))?,
        TargetColumn::Index(i) if *i < header.len() => *i,
        TargetColumn::Index(i) => {
            return Err(AppError::Data(format!("target column {} out of range for {} columns", i + 1, header.len())))
        }
        TargetColumn::Last => header.len() - 1,
    };
    let columns: Vec<String> = header.iter().enumerate().filter(|&(j, _)| j != t).map(|(_, h)| h.clone()).collect();
    let mut features = Vec::new();
    let mut targets = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let row = r + 1;
        let record = record.map_err(|e| AppError::Data(format!("row {row}: {e}")))?;
        if record.len() != header.len() {
            return Err(AppError::Data(format!("row {row}: expected {} fields, found {}", header.len(), record.len())));
        }
        for (j, cell) in record.iter().enumerate() {
            let v: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| AppError::Data(format!("row {row}, column '{}': '{cell}' is not a finite number", header[j])))?;
            if j == t {
                targets.push(v);
            } else {
                features.push(v);
            }
        }
    }
    if targets.is_empty() {
        return Err(AppError::Data("empty file: header but no rows".into()));
    }
    Dataset::new(columns.len(), features, targets, columns)
}

/// Resolves a dataset file name against `ANOVA_DATA_DIR`.
pub fn data_path(file: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("ANOVA_DATA_DIR")?;
    let p = PathBuf::from(dir).join(file);
    p.is_file().then_some(p)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SplitMode {
    /// Share of rows used for training.
    Fraction(f64),
    /// Fresh training and test sets of the given sizes (synthetic data only).
    Generated { train: usize, test: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitPlan {
    pub mode: SplitMode,
    pub repetitions: usize,
    pub seed: u64,
}

impl SplitPlan {
    pub fn validate(&self) -> AppResult<()> {
        if self.repetitions == 0 {
            return Err(AppError::Config("at least one repetition is required".into()));
        }
        match self.mode {
            SplitMode::Fraction(p) if !(p > 0.0 && p < 1.0) => {
                Err(AppError::Config(format!("split fraction must lie in (0, 1), got {p}")))
            }
            SplitMode::Generated { train, test } if train == 0 || test == 0 => {
                Err(AppError::Config("generated split sizes must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Random train/test partition for repetition `rep`; the training side gets
/// `round(p * M)` rows.
pub fn split(ds: &Dataset, plan: &SplitPlan, rep: usize) -> AppResult<(Dataset, Dataset)> {
    plan.validate()?;
    let SplitMode::Fraction(p) = plan.mode else {
        return Err(AppError::Config("a generated split plan cannot partition an existing dataset".into()));
    };
    if rep >= plan.repetitions {
        return Err(AppError::Config(format!("repetition {rep} out of range for {} repetitions", plan.repetitions)));
    }
    let m = ds.len();
    let n_train = (p * m as f64).round() as usize;
    if n_train == 0 || n_train == m {
        return Err(AppError::Config(format!("split fraction {p} leaves one side empty for {m} rows")));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(&mut stream(plan.seed, rep, Purpose::Split));
    let (train, test) = perm.split_at(n_train);
    let (mut train, mut test) = (train.to_vec(), test.to_vec());
    train.sort_unstable();
    test.sort_unstable();
    Ok((ds.select_rows(&train), ds.select_rows(&test)))
}
