//! `anova` subcommands.

use std::path::{Path, PathBuf};

use anova_core::{
    drop_variables, incremental_expand, metrics, threshold_active_set, BandwidthProfile, BasisKind, RefinementConfig,
    SolverConfig, Term, TermSet,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bench::{bench_friedman, bench_real, load_real, real_data_file, real_spec};
use crate::dataset::{load_csv, normalize, split, Dataset, SplitMode, SplitPlan, TargetColumn};
use crate::error::{AppError, AppResult};
use crate::fitted::AnyModel;
use crate::formats::{format_term, read_json, terms_from_json, terms_to_json, to_json, write_json, ModelFile, ReportFile};
use crate::friedman::{friedman_sample, FriedmanSpec};
use crate::plot::bar_chart;

#[derive(Debug, Parser)]
#[command(name = "anova", version, about = "Interpretable ANOVA approximation of scattered data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model and report test metrics.
    Fit(FitArgs),
    /// Evaluate a stored model on new nodes.
    Predict(PredictArgs),
    /// Global sensitivity indices and attribute ranking of a stored model.
    Rank(RankArgs),
    /// Derive a refined active set from a stored model.
    Refine(RefineArgs),
    /// Scripted Friedman benchmark over seeded repetitions.
    BenchFriedman(BenchFriedmanArgs),
    /// Scripted real-data benchmark over random splits.
    BenchReal(BenchRealArgs),
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Basis: per, cos or cheb.
    #[arg(long, default_value = "cos")]
    pub basis: String,
    /// Superposition threshold d_s; ignored with --terms.
    #[arg(long, default_value_t = 2)]
    pub ds: usize,
    /// Bandwidths per order, "N1,N2,...".
    #[arg(long, default_value = "4,2")]
    pub bandwidths: String,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long, default_value_t = anova_core::solver::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV file with a header row.
    #[arg(long, conflicts_with = "friedman", required_unless_present = "friedman")]
    pub data: Option<PathBuf>,
    /// Target column: header name, 1-based position or "last".
    #[arg(long, default_value = "last")]
    pub target: String,
    /// Generate Friedman data (1, 2 or 3) instead of reading a file.
    #[arg(long)]
    pub friedman: Option<u8>,
    /// Term-set JSON file (array of one-based variable arrays).
    #[arg(long)]
    pub terms: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Training share for CSV data; 1 trains on everything.
    #[arg(long, default_value_t = 0.8)]
    pub split: f64,
    /// Training and test sizes for generated data.
    #[arg(long, default_value_t = crate::bench::TRAIN_SIZE)]
    pub train_size: usize,
    #[arg(long, default_value_t = crate::bench::TEST_SIZE)]
    pub test_size: usize,
    /// Also min-max normalize the target.
    #[arg(long)]
    pub normalize_target: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Model JSON output.
    #[arg(long, default_value = "model.json")]
    pub out: PathBuf,
    /// Metrics JSON output; printed to stdout when absent.
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// CSV with the model's feature columns (by header name).
    #[arg(long)]
    pub data: PathBuf,
    /// Column with reference values; enables error metrics.
    #[arg(long)]
    pub target: Option<String>,
    /// Predictions CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Report JSON output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write `<prefix>ranking.svg` and `<prefix>gsi.svg`.
    #[arg(long)]
    pub svg: Option<String>,
    /// Threshold line drawn on the charts.
    #[arg(long)]
    pub line: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Keep terms with rho(u) > eps; one value or one per order, "e1,e2,...".
    #[arg(long)]
    pub gsi_threshold: Option<String>,
    /// Remove variables with r(i) below this value.
    #[arg(long)]
    pub drop_below: Option<f64>,
    /// Add interactions among variables with r(i) above this value.
    #[arg(long)]
    pub expand: Option<f64>,
    /// Largest interaction order added by --expand.
    #[arg(long, requires = "expand")]
    pub expand_order: Option<usize>,
    /// Term-set JSON output.
    #[arg(long, default_value = "terms.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchFriedmanArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchRealArgs {
    /// enc, enh, asn, ch or ailerons.
    #[arg(long)]
    pub dataset: String,
    /// Data file; defaults to the standard name under ANOVA_DATA_DIR.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the recipe's "N1,N2".
    #[arg(long)]
    pub bandwidths: Option<String>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> AppResult<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| AppError::Config(format!("{what}: cannot parse '{p}' in \"{s}\""))))
        .collect()
}

impl SolverArgs {
    fn kind(&self) -> AppResult<BasisKind> {
        Ok(self.basis.parse()?)
    }

    fn bandwidths(&self) -> AppResult<BandwidthProfile> {
        Ok(BandwidthProfile::from_orders(&parse_list::<usize>(&self.bandwidths, "--bandwidths")?)?)
    }

    fn config(&self) -> AppResult<SolverConfig> {
        let cfg = SolverConfig { lambda: self.lambda, max_iterations: self.max_iter, tolerance: self.tol };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Serialize)]
struct FitReport {
    coefficients: usize,
    terms: usize,
    train_size: usize,
    test_size: usize,
    oversampling: f64,
    iterations: usize,
    relative_residual: f64,
    converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rmse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_error: Option<f64>,
}

/// Periodic bases live on `[-1/2, 1/2)`; shift normalized data onto the torus.
fn to_domain(ds: &Dataset, kind: BasisKind) -> AppResult<anova_core::Nodes> {
    let nodes = ds.nodes()?;
    if kind.is_periodic() {
        Ok(anova_core::Nodes::from_flat(nodes.dimension(), nodes.as_flat().iter().map(|v| v - 0.5).collect())?)
    } else {
        Ok(nodes)
    }
}

fn cmd_fit(a: &FitArgs) -> AppResult<()> {
    let kind = a.solver.kind()?;
    let bw = a.solver.bandwidths()?;
    let cfg = a.solver.config()?;
    let (train, test) = match (&a.data, a.friedman) {
        (_, Some(which)) => {
            let spec = FriedmanSpec::new(which)?;
            let train = friedman_sample(&spec, a.train_size, a.seed, 0, false)?;
            let test = friedman_sample(&spec, a.test_size, a.seed, 0, true)?;
            (train, Some(test))
        }
        (Some(path), None) => {
            let raw = load_csv(path, &a.target.parse::<TargetColumn>().expect("infallible"))?;
            if a.split == 1.0 {
                (normalize(&raw, None, a.normalize_target)?, None)
            } else {
                let plan = SplitPlan { mode: SplitMode::Fraction(a.split), repetitions: 1, seed: a.seed };
                let (train, test) = split(&raw, &plan, 0)?;
                let train = normalize(&train, None, a.normalize_target)?;
                let test = normalize(&test, Some(&train), a.normalize_target)?;
                (train, Some(test))
            }
        }
        (None, None) => return Err(AppError::Config("either --data or --friedman is required".into())),
    };
    let d = train.dimension();
    let terms = match &a.terms {
        Some(path) => terms_from_json(d, &read_json::<Vec<Vec<usize>>>(path)?)?,
        None => TermSet::superposition(d, a.solver.ds)?,
    };
    let model = AnyModel::fit(&to_domain(&train, kind)?, train.targets(), &terms, &bw, kind, &cfg)?;
    let diag = model.diagnostics().expect("fitted model").clone();
    let mut report = FitReport {
        coefficients: model.len(),
        terms: terms.len(),
        train_size: train.len(),
        test_size: test.as_ref().map_or(0, Dataset::len),
        oversampling: diag.oversampling,
        iterations: diag.iterations,
        relative_residual: diag.relative_residual,
        converged: diag.stop.converged(),
        mse: None,
        rmse: None,
        relative_error: None,
    };
    if let Some(test) = &test {
        let pred = model.predict(&to_domain(test, kind)?)?;
        report.mse = Some(metrics::mse(test.targets(), &pred)?);
        report.rmse = Some(metrics::rmse(test.targets(), &pred)?);
        report.relative_error = metrics::relative_error(test.targets(), &pred).ok();
    }
    let mut file = ModelFile::from_model(&model);
    file.columns = Some(train.columns().to_vec());
    file.normalization = train.normalization().cloned();
    write_json(&a.out, &file)?;
    emit(a.metrics.as_deref(), &report)
}

fn emit<T: Serialize>(path: Option<&Path>, value: &T) -> AppResult<()> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            print!("{}", to_json(value));
            Ok(())
        }
    }
}

fn load_model(path: &Path) -> AppResult<(ModelFile, AnyModel)> {
    let file: ModelFile = read_json(path)?;
    let model = file.to_model()?;
    Ok((file, model))
}

fn cmd_predict(a: &PredictArgs) -> AppResult<()> {
    let (file, model) = load_model(&a.model)?;
    let target = a.target.as_deref().map(|t| t.parse::<TargetColumn>().expect("infallible"));
    let raw = match &target {
        Some(t) => load_csv(&a.data, t)?,
        None => {
            // all columns are features; read with a placeholder target and restore it
            let text = std::fs::read_to_string(&a.data).map_err(|e| AppError::io(&a.data, e))?;
            let mut lines = text.lines();
            let header = lines.next().ok_or_else(|| AppError::Data("empty file".into()))?;
            let mut with_target = format!("{header},__target\n");
            for l in lines.filter(|l| !l.trim().is_empty()) {
                with_target.push_str(l);
                with_target.push_str(",0\n");
            }
            crate::dataset::read_csv(with_target.as_bytes(), &TargetColumn::Last)?
        }
    };
    let ds = match &file.columns {
        Some(cols) => {
            let idx = cols
                .iter()
                .map(|c| {
                    raw.columns()
                        .iter()
                        .position(|h| h == c)
                        .ok_or_else(|| AppError::Data(format!("column '{c}' required by the model is missing")))
                })
                .collect::<AppResult<Vec<_>>>()?;
            raw.project(&idx)?
        }
        None => raw,
    };
    if ds.dimension() != model.dimension() {
        return Err(AppError::Data(format!("model expects {} features, data has {}", model.dimension(), ds.dimension())));
    }
    let ds = match &file.normalization {
        Some(n) => n.apply(&ds)?,
        None => ds,
    };
    let pred = model.predict(&to_domain(&ds, model.kind())?)?;
    let mut out = String::from("prediction\n");
    for p in &pred {
        out.push_str(&format!("{p}\n"));
    }
    match &a.out {
        Some(p) => std::fs::write(p, out).map_err(|e| AppError::io(p, e))?,
        None => print!("{out}"),
    }
    if target.is_some() {
        let rmse = metrics::rmse(ds.targets(), &pred)?;
        eprintln!("rmse {rmse}");
    }
    Ok(())
}

fn cmd_rank(a: &RankArgs) -> AppResult<()> {
    let (_, model) = load_model(&a.model)?;
    let report = ReportFile::from_report(&model.report()?);
    print!("{}", report.to_table());
    if let Some(p) = &a.out {
        write_json(p, &report)?;
    }
    if let Some(prefix) = &a.svg {
        let ranking: Vec<(String, f64)> =
            report.ranking.iter().enumerate().map(|(i, &r)| (format!("x{}", i + 1), r)).collect();
        let gsi: Vec<(String, f64)> = report.gsi.iter().map(|e| (format_term(&e.term), e.rho)).collect();
        for (name, title, bars) in [("ranking", "attribute ranking r(i)", ranking), ("gsi", "global sensitivity indices", gsi)]
        {
            let path = PathBuf::from(format!("{prefix}{name}.svg"));
            std::fs::write(&path, bar_chart(title, &bars, a.line)).map_err(|e| AppError::io(&path, e))?;
        }
    }
    Ok(())
}

fn cmd_refine(a: &RefineArgs) -> AppResult<()> {
    if a.gsi_threshold.is_none() && a.drop_below.is_none() && a.expand.is_none() {
        return Err(AppError::Config("refine needs at least one of --gsi-threshold, --drop-below, --expand".into()));
    }
    if let (Some(drop), Some(expand)) = (a.drop_below, a.expand) {
        if expand < drop {
            return Err(AppError::Config(format!(
                "contradictory flags: --expand {expand} would add interactions among variables that --drop-below {drop} removes"
            )));
        }
    }
    let (_, model) = load_model(&a.model)?;
    let report = model.report()?;
    let before = model.terms().clone();
    let mut terms = before.clone();
    if let Some(eps) = &a.gsi_threshold {
        let mut eps = parse_list::<f64>(eps, "--gsi-threshold")?;
        if eps.len() == 1 {
            eps = vec![eps[0]; terms.max_order().max(1)];
        }
        terms = threshold_active_set(&report, &terms, &eps)?;
    }
    if let Some(theta) = a.drop_below {
        let keep: Vec<usize> = (0..report.ranking.len()).filter(|&i| report.ranking[i] >= theta).collect();
        if keep.is_empty() {
            return Err(AppError::Config(format!("--drop-below {theta} removes every variable")));
        }
        terms = drop_variables(&terms, &keep)?;
    }
    if let Some(theta) = a.expand {
        let order = a.expand_order.ok_or_else(|| AppError::Config("--expand needs --expand-order".into()))?;
        let cfg = RefinementConfig { thresholds: Vec::new(), theta, expansion_order: order };
        terms = incremental_expand(&report, &terms, &cfg)?.terms;
    }
    let added: Vec<&Term> = terms.iter().filter(|t| !before.contains(t)).collect();
    let removed: Vec<&Term> = before.iter().filter(|t| !terms.contains(t)).collect();
    if added.is_empty() && removed.is_empty() {
        println!("no term crossed a threshold; term set unchanged ({} terms)", terms.len());
    } else {
        let show = |v: &[&Term]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ");
        println!("removed {}: {}", removed.len(), show(&removed));
        println!("added {}: {}", added.len(), show(&added));
    }
    println!("refined set ({} terms): {terms}", terms.len());
    write_json(&a.out, &terms_to_json(&terms))
}

fn cmd_bench_friedman(a: &BenchFriedmanArgs) -> AppResult<()> {
    let bench = bench_friedman(a.which, a.reps, a.seed)?;
    print!("{}", bench.to_text());
    if let Some(p) = &a.out {
        write_json(p, &bench)?;
    }
    Ok(())
}

fn cmd_bench_real(a: &BenchRealArgs) -> AppResult<()> {
    let spec = real_spec(&a.dataset)?;
    let path = match &a.data {
        Some(p) => p.clone(),
        None => real_data_file(spec).ok_or_else(|| {
            AppError::Data(format!("{} not found; pass --data or set ANOVA_DATA_DIR", spec.file))
        })?,
    };
    let ds = load_real(spec, &path)?;
    let bw = match &a.bandwidths {
        Some(s) => parse_list::<usize>(s, "--bandwidths")?,
        None => spec.bandwidths.to_vec(),
    };
    let bench = bench_real(spec, &ds, a.reps, a.seed, &bw, a.lambda.unwrap_or(spec.lambda))?;
    println!(
        "{}: median {} {:.5} [q1 {:.5}, q3 {:.5}], {} terms; reference {} with {} terms",
        spec.name,
        bench.summary.metric,
        bench.summary.median,
        bench.summary.q1,
        bench.summary.q3,
        bench.terms.len(),
        bench.reference,
        bench.reference_terms
    );
    if let Some(p) = &a.out {
        write_json(p, &bench)?;
    }
    Ok(())
}

pub fn run(cli: &Cli) -> AppResult<()> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Predict(a) => cmd_predict(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Refine(a) => cmd_refine(a),
        Command::BenchFriedman(a) => cmd_bench_friedman(a),
        Command::BenchReal(a) => cmd_bench_real(a),
    }
}
