//! Command-line front end: argument model, task dispatch and reports.
//!
//! Reports are deterministic for a fixed configuration. Wall-clock timings are
//! only recorded with `--timings`, and the worker-thread count is not echoed,
//! so JSON output is byte-identical across thread counts.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use hcyc_core::algebra::dsl::parse_algebra;
use hcyc_core::algebra::presets::preset;
use hcyc_core::excision::{
    graded_piece_f_check, h_unitality_check, named_extension, wodzicki_verify, ExcisionError, Extension, FiltrationKind,
};
use hcyc_core::hochschild::{connes_check, hc_complex, hh_complex, HochError};
use hcyc_core::lie::{ce_complex, gl, h2_vs_hc1, lqt_verify, sl, trace_chain_check, LieAlgebra, LieError, DEFAULT_SIZE_LIMIT};
use hcyc_core::tangent::{chern1, k1_rel_probe, tangent_table, ArtinianBase, TangentError, ARTINIAN_CATALOG, DEFAULT_SAMPLES, DEFAULT_SEED};
use hcyc_core::{Algebra, AlgebraError, ChainError, DegreeRange, HomologyReport, Rational};

pub mod table;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("range not certified: {0}")]
    RangeNotCertified(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Parse { .. } | CliError::Io { .. } => 3,
            CliError::SizeLimit(_) => 4,
            CliError::RangeNotCertified(_) => 5,
            CliError::Compute(_) => 1,
        }
    }
}

fn algebra_error(source_name: &str, e: AlgebraError) -> CliError {
    match e {
        AlgebraError::Parse { line, message } => CliError::Parse {
            source_name: source_name.to_string(),
            line,
            message,
        },
        AlgebraError::UnknownPreset(p) => CliError::Config(format!("unknown preset `{p}`")),
        other => CliError::Compute(format!("{source_name}: {other}")),
    }
}

impl From<HochError> for CliError {
    fn from(e: HochError) -> Self {
        match e {
            HochError::DegreeBound { found, min } => {
                CliError::RangeNotCertified(format!("degree bound {found} certifies nothing here; use at least {min}"))
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::SizeLimit { .. } => CliError::SizeLimit(e.to_string()),
            LieError::Hoch(h) => h.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<ExcisionError> for CliError {
    fn from(e: ExcisionError) -> Self {
        match e {
            ExcisionError::UnknownExtension(n) => CliError::Config(format!("unknown extension `{n}`")),
            ExcisionError::Algebra(a) => algebra_error("extension", a),
            ExcisionError::Hoch(h) => h.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<TangentError> for CliError {
    fn from(e: TangentError) -> Self {
        match e {
            TangentError::Algebra(a) => algebra_error("base", a),
            TangentError::Hoch(h) => h.into(),
            TangentError::Excision(x) => x.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

#[derive(Parser, Debug, Clone)]
#[command(name = "hcyc", version, about = "Exact Hochschild, cyclic and Lie homology of finite-dimensional algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub task: Task,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// Hochschild homology.
    Hh,
    /// Cyclic homology.
    Hc,
    /// Rank bookkeeping for the Connes exact sequence.
    Connes,
    /// Acyclicity of the bar complex.
    Hunital,
    /// Graded pieces of the bar and Hochschild filtrations of an extension.
    Filtration,
    /// Excision for an extension.
    Wodzicki,
    /// Chevalley–Eilenberg homology of gl_r(A) or sl_r(A).
    Ce,
    /// The generalized trace as a chain map.
    Trace,
    /// CE homology of gl_r(A) against the free model on cyclic homology.
    Lqt,
    /// H_2 of gl_r(A) and sl_r(A) against HC_1(A).
    H2hc1,
    /// The log-trace map on unipotent matrices.
    Chern1,
    /// Relative cyclic homology over Artinian bases.
    Tangent,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LieChoice {
    Gl,
    Sl,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Options {
    /// Preset algebra, `name` or `name:params` (e.g. `truncated_poly:3`).
    #[arg(long, global = true, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Algebra in the structure-constant text format.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Named extension for filtration, wodzicki and chern1.
    #[arg(long, global = true)]
    pub ext: Option<String>,
    /// Degree bound D; homology is certified below it.
    #[arg(short = 'D', long = "degree-bound", global = true, default_value_t = 4)]
    pub degree_bound: usize,
    /// Matrix size r.
    #[arg(short = 'r', long = "rank", global = true, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest admissible exterior power dimension.
    #[arg(long = "size-limit", global = true, default_value_t = DEFAULT_SIZE_LIMIT)]
    pub size_limit: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Emit homology representatives.
    #[arg(long, global = true)]
    pub reps: bool,
    /// Filtration stage n.
    #[arg(long, global = true, default_value_t = 0)]
    pub level: usize,
    /// Random samples for chern1.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Artinian base for tangent; repeatable. Defaults to the built-in catalog.
    #[arg(long = "base", global = true)]
    pub bases: Vec<String>,
    /// Lie algebra for ce.
    #[arg(long, global = true, value_enum, default_value_t = LieChoice::Gl)]
    pub lie: LieChoice,
    /// Worker threads (defaults to all cores). Does not affect results.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            preset: None,
            file: None,
            ext: None,
            degree_bound: 4,
            rank: 2,
            seed: DEFAULT_SEED,
            size_limit: DEFAULT_SIZE_LIMIT,
            format: Format::Table,
            reps: false,
            level: 0,
            samples: DEFAULT_SAMPLES,
            bases: Vec::new(),
            lie: LieChoice::Gl,
            threads: None,
            timings: false,
        }
    }
}

/// A task together with its options.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub task: Task,
    #[serde(flatten)]
    pub options: Options,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            task: cli.task,
            options: cli.options,
        }
    }
}

impl RunConfig {
    pub fn new(task: Task) -> Self {
        RunConfig {
            task,
            options: Options::default(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let o = &self.options;
        if o.degree_bound < 2 {
            return Err(CliError::Config(format!("degree bound must be at least 2 (got {})", o.degree_bound)));
        }
        if o.rank < 1 {
            return Err(CliError::Config("rank must be at least 1".into()));
        }
        if o.size_limit == 0 {
            return Err(CliError::Config("size limit must be positive".into()));
        }
        if o.threads == Some(0) {
            return Err(CliError::Config("thread count must be positive".into()));
        }
        Ok(())
    }
}

/// One computed result. Every Betti table carries its certified range.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TaskResult {
    pub task: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_range: Option<DegreeRange>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<BTreeMap<i64, Vec<Vec<(usize, String)>>>>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub timings_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

impl TaskResult {
    fn new(task: &str, inputs: BTreeMap<String, Value>) -> Self {
        TaskResult {
            task: task.to_string(),
            inputs,
            betti: None,
            certified_range: None,
            verdict: None,
            failing_degree: None,
            dims: None,
            representatives: None,
            details: Value::Null,
            timings_ms: None,
        }
    }

    fn homology(mut self, rep: &HomologyReport<Rational>) -> Self {
        self.betti = Some(rep.betti_vec());
        self.certified_range = Some(rep.certified_range);
        if let Some(reps) = &rep.representatives {
            self.representatives = Some(
                reps.iter()
                    .map(|(n, vs)| (*n, vs.iter().map(|v| v.iter().map(|(i, c)| (*i, c.to_string())).collect()).collect()))
                    .collect(),
            );
        }
        self
    }

    fn verdict(mut self, ok: bool, failing: Option<i64>) -> Self {
        self.verdict = Some(Verdict::from_bool(ok));
        self.failing_degree = failing;
        self
    }

    fn details(mut self, v: impl Serialize) -> Self {
        self.details = serde_json::to_value(v).expect("reports serialize");
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config: RunConfig,
    pub results: Vec<TaskResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn load_algebra(o: &Options) -> Result<(Arc<Algebra<Rational>>, String), CliError> {
    match (&o.preset, &o.file) {
        (Some(p), None) => {
            let a = preset::<Rational>(p).map_err(|e| algebra_error(&format!("--preset {p}"), e))?;
            Ok((Arc::new(a), p.clone()))
        }
        (None, Some(path)) => {
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: shown.clone(),
                message: e.to_string(),
            })?;
            let a = parse_algebra::<Rational>(&text).map_err(|e| algebra_error(&shown, e))?;
            Ok((Arc::new(a), shown))
        }
        (None, None) => Err(CliError::Config("an algebra is required (--preset or --file)".into())),
        (Some(_), Some(_)) => Err(CliError::Config("--preset and --file are mutually exclusive".into())),
    }
}

fn load_extension(o: &Options) -> Result<Extension<Rational>, CliError> {
    let name = o
        .ext
        .as_deref()
        .ok_or_else(|| CliError::Config("an extension is required (--ext)".into()))?;
    Ok(named_extension(name)?)
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn lie_algebra(a: &Algebra<Rational>, r: usize, choice: LieChoice) -> Result<LieAlgebra<Rational>, CliError> {
    Ok(match choice {
        LieChoice::Gl => gl(a, r),
        LieChoice::Sl => sl(a, r)?,
    })
}

fn dispatch(config: &RunConfig) -> Result<Vec<TaskResult>, CliError> {
    let o = &config.options;
    let d = o.degree_bound;
    Ok(match config.task {
        Task::Hh | Task::Hc => {
            let (a, name) = load_algebra(o)?;
            let (task, c) = if config.task == Task::Hh { ("hh", hh_complex(&a, d)?) } else { ("hc", hc_complex(&a, d)?) };
            let rep = c.homology(c.certified_range(), o.reps)?;
            vec![TaskResult::new(task, inputs(&[("algebra", json!(name)), ("D", json!(d))])).homology(&rep)]
        }
        Task::Connes => {
            let (a, name) = load_algebra(o)?;
            let rep = connes_check(&a, d)?;
            let mut res = TaskResult::new("connes", inputs(&[("algebra", json!(name)), ("D", json!(d))])).verdict(rep.exact, rep.failing_degree);
            res.certified_range = Some(rep.range);
            vec![res.details(rep)]
        }
        Task::Hunital => {
            let (a, name) = load_algebra(o)?;
            let v = h_unitality_check(&a, d)?;
            let mut res = TaskResult::new("hunital", inputs(&[("algebra", json!(name)), ("D", json!(d))])).verdict(v.pass, v.failing_degree);
            res.betti = Some(v.betti.clone());
            res.certified_range = Some(v.certified_range);
            vec![res]
        }
        Task::Filtration => {
            let ext = load_extension(o)?;
            let bimodule = hcyc_core::Bimodule::regular(ext.algebra().clone());
            [FiltrationKind::Bar, FiltrationKind::Hoch]
                .into_iter()
                .map(|kind| {
                    let rep = graded_piece_f_check(&ext, &bimodule, kind, o.level, d)?;
                    let mut res = TaskResult::new(
                        "filtration",
                        inputs(&[("extension", json!(ext.name())), ("kind", json!(kind)), ("n", json!(o.level)), ("D", json!(d))]),
                    )
                    .verdict(rep.pass, rep.failing_degree);
                    res.dims = Some(rep.dims.clone());
                    res.certified_range = Some(rep.degrees);
                    Ok(res)
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
        Task::Wodzicki => {
            let ext = load_extension(o)?;
            let rep = wodzicki_verify(&ext, d)?;
            let failing = [rep.hh.failing_degree, rep.hc.failing_degree].into_iter().flatten().min();
            let mut res = TaskResult::new("wodzicki", inputs(&[("extension", json!(ext.name())), ("D", json!(d))])).verdict(rep.pass, failing);
            res.certified_range = Some(rep.hc.range);
            vec![res.details(rep)]
        }
        Task::Ce => {
            let (a, name) = load_algebra(o)?;
            let g = lie_algebra(&a, o.rank, o.lie)?;
            let c = ce_complex(&g, d, o.size_limit)?;
            let rep = c.homology(c.certified_range(), o.reps)?;
            let mut res = TaskResult::new(
                "ce",
                inputs(&[("algebra", json!(name)), ("lie", json!(o.lie)), ("r", json!(o.rank)), ("D", json!(d))]),
            )
            .homology(&rep);
            res.dims = Some(c.dims().to_vec());
            vec![res]
        }
        Task::Trace => {
            let (a, name) = load_algebra(o)?;
            let checks = trace_chain_check(&a, o.rank, d - 2, o.size_limit)?;
            let failing = checks.iter().find(|c| !c.holds).map(|c| c.n as i64);
            let mut res = TaskResult::new("trace", inputs(&[("algebra", json!(name)), ("r", json!(o.rank)), ("D", json!(d))]))
                .verdict(failing.is_none(), failing);
            res.certified_range = Some(DegreeRange::new(0, d as i64 - 2));
            vec![res.details(checks)]
        }
        Task::Lqt => {
            let (a, name) = load_algebra(o)?;
            let rep = lqt_verify(&a, o.rank, d, o.size_limit)?;
            let mut res = TaskResult::new("lqt", inputs(&[("algebra", json!(name)), ("r", json!(o.rank)), ("D", json!(d))]))
                .verdict(rep.agree, rep.first_mismatch);
            res.betti = Some(rep.ce_betti.clone());
            res.certified_range = Some(rep.range);
            vec![res.details(rep)]
        }
        Task::H2hc1 => {
            let (a, name) = load_algebra(o)?;
            let rep = h2_vs_hc1(&a, o.rank, o.size_limit)?;
            let res = TaskResult::new("h2hc1", inputs(&[("algebra", json!(name)), ("r", json!(o.rank))])).verdict(rep.gl_equal, None);
            vec![res.details(rep)]
        }
        Task::Chern1 => {
            let ext = load_extension(o)?;
            let rep = chern1(&ext, o.rank, o.samples, o.seed)?;
            let probe = k1_rel_probe(&ext, o.rank, o.samples, o.seed)?;
            let keys = inputs(&[
                ("extension", json!(ext.name())),
                ("r", json!(o.rank)),
                ("samples", json!(o.samples)),
                ("seed", json!(o.seed)),
            ]);
            vec![
                TaskResult::new("chern1", keys.clone()).verdict(rep.pass, None).details(rep),
                TaskResult::new("k1_rel_probe", keys).verdict(probe.equal && probe.embeds, None).details(probe),
            ]
        }
        Task::Tangent => {
            let (c, name) = load_algebra(o)?;
            let names: Vec<String> = if o.bases.is_empty() {
                ARTINIAN_CATALOG.iter().map(|s| s.to_string()).collect()
            } else {
                o.bases.clone()
            };
            let bases = names
                .iter()
                .map(|b| ArtinianBase::from_preset(b))
                .collect::<Result<Vec<_>, _>>()?;
            let table = tangent_table(&c, &bases, d)?;
            table
                .rows
                .into_iter()
                .map(|row| {
                    let mut res = TaskResult::new("tangent", inputs(&[("algebra", json!(name)), ("base", json!(row.base)), ("D", json!(d))]))
                        .verdict(row.comparison_iso, row.comparison_failing_degree);
                    res.betti = Some(row.relative_hc.clone());
                    res.certified_range = Some(row.range);
                    res.details(row)
                })
                .collect()
        }
    })
}

/// Validates the configuration and runs the task.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let start = Instant::now();
    let mut results = dispatch(config)?;
    if config.options.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut results {
            r.timings_ms = Some(ms);
        }
    }
    Ok(Report {
        version: VERSION,
        config: config.clone(),
        results,
    })
}

/// Runs the task on a dedicated pool when `--threads` is given.
pub fn run_with_threads(config: &RunConfig) -> Result<Report, CliError> {
    match config.options.threads {
        Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(|| run(config)),
        _ => run(config),
    }
}

/// Renders a report in the requested format.
pub fn render(report: &Report) -> String {
    match report.config.options.format {
        Format::Json => report.to_json(),
        Format::Table => table::render(report),
    }
}
