//! Command-line front end: argument parsing, table assembly and output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::measure::{build_measure, m_function, m_limit_check};
use crate::solutions::{eval_u_theta_with, eval_u_with, eval_v_with, eval_w_with, ExtensionParams, WForm};
use crate::special::SeriesConfig;
use crate::transform::{
    forward, forward_grid, inverse, parseval_defect, Bump, GridFunction, TAIL_TOLERANCE,
};
use crate::verify::{self, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Environment variable holding the worker count.
pub const THREADS_VAR: &str = "ISQ_SPECTRAL_THREADS";

#[derive(Debug, Parser)]
#[command(name = "isq-spectral", version, about = "Spectral data of the inverse-square Schrödinger operator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,
}

#[derive(Debug, Subcommand)]
pub enum CommandKind {
    /// Tabulate u, w, u_theta and v over an (E, r) grid.
    Eval(CommonArgs),
    /// Density samples, the atom, and Im M(E + i eta) traces.
    Measure(CommonArgs),
    /// Forward and inverse transform of a bump or of a grid function read from JSON.
    Transform(TransformArgs),
    /// Run the acceptance criteria.
    Verify(CommonArgs),
    /// Regenerate or check golden regression files.
    Table(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThetaMode {
    Absolute,
    OffsetFromThetaKappa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = ThetaMode::Absolute)]
    pub theta_mode: ThetaMode,
    /// `min:max:n[:log]`
    #[arg(long, default_value = "0.1:5:8", allow_hyphen_values = true)]
    pub r_grid: GridSpec,
    /// `min:max:n[:log]`
    #[arg(long, default_value = "0.5:10:8", allow_hyphen_values = true)]
    pub e_grid: GridSpec,
    /// Comma-separated decreasing imaginary offsets.
    #[arg(long, default_value = "1e-2,1e-3,1e-4")]
    pub eta_list: EtaList,
    #[arg(long, default_value_t = 400.0)]
    pub e_max: f64,
    /// `name=value`; names: series, tail.
    #[arg(long = "tol")]
    pub tol: Vec<TolOverride>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// With `table`: write the goldens instead of comparing against them.
    #[arg(long)]
    pub seed_goldens: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Built-in bump `a:b:p`, i.e. `((r-a)(b-r))^p` normalized.
    #[arg(long, default_value = "1:2:3")]
    pub bump: String,
    /// JSON grid function `{support, nodes, weights, values}` used instead of the bump.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// Grid specification `min:max:n[:log]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub log: bool,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(format!("expected min:max:n[:log], got `{s}`"));
        }
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
        let (min, max) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].trim().parse().map_err(|e| format!("`{}`: {e}", parts[2]))?;
        let log = match parts.get(3).map(|x| x.trim()) {
            None | Some("linear") | Some("lin") => false,
            Some("log") => true,
            Some(other) => return Err(format!("unknown spacing `{other}`")),
        };
        let spec = GridSpec { min, max, count, log };
        spec.check().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

impl GridSpec {
    fn check(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.count == 0 {
            return Err(Error::Validation("grid bounds must be finite and the count positive".into()));
        }
        if self.count > 1 && !(self.max > self.min) {
            return Err(Error::Validation("grid max must exceed min".into()));
        }
        if self.log && !(self.min > 0.0) {
            return Err(Error::Validation("log spacing needs min > 0".into()));
        }
        Ok(())
    }

    fn require_positive(&self, what: &str) -> Result<()> {
        if self.min > 0.0 {
            Ok(())
        } else {
            Err(Error::Validation(format!("{what} grid needs min > 0, got {}", self.min)))
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / n;
                if self.log {
                    (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + t * (self.max - self.min)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EtaList(pub Vec<f64>);

impl FromStr for EtaList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v = s
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if v.is_empty() || v.iter().any(|&h| !(h > 0.0)) {
            return Err("eta values must be positive".into());
        }
        Ok(EtaList(v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TolOverride(pub String, pub f64);

impl FromStr for TolOverride {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
        let value: f64 = value.trim().parse().map_err(|e| format!("`{value}`: {e}"))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(format!("tolerance `{name}` must be positive"));
        }
        Ok(TolOverride(name.trim().to_string(), value))
    }
}

const TOL_NAMES: [&str; 2] = ["series", "tail"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Measure,
    Transform,
    Verify,
    Table,
}

/// Validated run configuration, echoed into every JSON payload.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub kappa: f64,
    pub theta: f64,
    pub theta_mode: ThetaMode,
    pub r_grid: GridSpec,
    pub e_grid: GridSpec,
    pub eta_list: Vec<f64>,
    pub e_max: f64,
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed_goldens: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bump: Option<(f64, f64, i32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(command: Command, a: &CommonArgs) -> Result<Self> {
        let mut tolerances = BTreeMap::new();
        for TolOverride(name, v) in &a.tol {
            if !TOL_NAMES.contains(&name.as_str()) {
                return Err(Error::Validation(format!("unknown tolerance `{name}`; known: {TOL_NAMES:?}")));
            }
            tolerances.insert(name.clone(), *v);
        }
        if !(a.e_max > 0.0 && a.e_max.is_finite()) {
            return Err(Error::Validation(format!("e-max must be positive, got {}", a.e_max)));
        }
        let cfg = RunConfig {
            command,
            kappa: a.kappa,
            theta: a.theta,
            theta_mode: a.theta_mode,
            r_grid: a.r_grid,
            e_grid: a.e_grid,
            eta_list: a.eta_list.0.clone(),
            e_max: a.e_max,
            tolerances,
            out: a.out.clone(),
            format: a.format,
            seed_goldens: a.seed_goldens,
            bump: None,
            input: None,
        };
        cfg.params()?;
        cfg.r_grid.require_positive("r")?;
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ExtensionParams> {
        let theta = match self.theta_mode {
            ThetaMode::Absolute => self.theta,
            ThetaMode::OffsetFromThetaKappa => self.theta + crate::solutions::theta_kappa(self.kappa),
        };
        ExtensionParams::new(self.kappa, theta)
    }

    fn series(&self) -> Result<SeriesConfig> {
        let mut s = SeriesConfig::default();
        if let Some(&t) = self.tolerances.get("series") {
            s.rel_tol = t;
        }
        s.validate()?;
        Ok(s)
    }
}

/// One output column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub description: String,
    pub values: Vec<f64>,
}

impl Column {
    fn new(name: impl Into<String>, description: impl Into<String>, values: Vec<f64>) -> Self {
        Column { name: name.into(), description: description.into(), values }
    }
}

/// Columnar output with extra structured fields for JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub config: RunConfig,
    pub columns: Vec<Column>,
    pub extra: Map<String, Value>,
    pub exit: i32,
}

impl Document {
    pub fn to_json(&self) -> Value {
        let mut descr = Map::new();
        let mut data = Map::new();
        for c in &self.columns {
            descr.insert(c.name.clone(), Value::String(c.description.clone()));
            data.insert(c.name.clone(), json!(c.values));
        }
        for (k, v) in &self.extra {
            data.insert(k.clone(), v.clone());
        }
        json!({
            "meta": {
                "version": env!("CARGO_PKG_VERSION"),
                "config": self.config,
                "columns": descr,
            },
            "data": data,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        let rows = self.columns.iter().map(|c| c.values.len()).max().unwrap_or(0);
        for i in 0..rows {
            let cells: Vec<String> =
                self.columns.iter().map(|c| c.values.get(i).map(|v| format!("{v:?}")).unwrap_or_default()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable document");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
        }
    }
}

fn eval_table(cfg: &RunConfig) -> Result<Document> {
    let p = cfg.params()?;
    let series = cfg.series()?;
    let es = cfg.e_grid.points();
    let rs = cfg.r_grid.points();
    let rows: Vec<Vec<[f64; 7]>> = es
        .par_iter()
        .map(|&e| {
            let z = Complex64::new(e, 0.0);
            rs.iter()
                .map(|&r| {
                    let u = eval_u_with(p.kappa, z, r, &series)?.value.re;
                    let w = eval_w_with(p.kappa, z, r, WForm::Auto, &series)?.value.re;
                    let ut = eval_u_theta_with(p, z, r, &series)?.value.re;
                    let v = if e == 0.0 { Complex64::new(f64::NAN, f64::NAN) } else { eval_v_with(p.kappa, z, r, &series)?.value };
                    Ok([e, r, u, w, ut, v.re, v.im])
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let flat: Vec<[f64; 7]> = rows.concat();
    let col = |i: usize| flat.iter().map(|row| row[i]).collect::<Vec<_>>();
    Ok(Document {
        config: cfg.clone(),
        columns: vec![
            Column::new("E", "spectral parameter", col(0)),
            Column::new("r", "radius", col(1)),
            Column::new("u", "regular solution u^kappa(E|r)", col(2)),
            Column::new("w", "logarithmic companion w^kappa(E|r), W(u, w) = 2/pi", col(3)),
            Column::new("u_theta", "u cos(theta - theta_kappa) + w sin(theta - theta_kappa)", col(4)),
            Column::new("v_re", "Re v^kappa(E|r) = Re sqrt(r) K_kappa(-i r E^(1/2))", col(5)),
            Column::new("v_im", "Im v^kappa(E|r)", col(6)),
        ],
        extra: Map::new(),
        exit: EXIT_OK,
    })
}

fn atom_json(p: ExtensionParams) -> Result<Value> {
    let m = build_measure(p)?;
    Ok(match m.atom {
        Some(a) => json!({"energy": a.energy, "weight": a.weight}),
        None => Value::Null,
    })
}

fn measure_table(cfg: &RunConfig) -> Result<Document> {
    let p = cfg.params()?;
    cfg.e_grid.require_positive("E")?;
    let m = build_measure(p)?;
    let es = cfg.e_grid.points();
    let mut columns = vec![
        Column::new("E", "energy", es.clone()),
        Column::new("density", "spectral density 1/t_{kappa,theta}(E)", es.iter().map(|&e| m.density(e)).collect()),
    ];
    for (j, &eta) in cfg.eta_list.iter().enumerate() {
        let vals = es
            .par_iter()
            .map(|&e| m_function(p, Complex64::new(e, eta)).map(|v| v.im))
            .collect::<Result<Vec<_>>>()?;
        columns.push(Column::new(format!("im_m_{j}"), format!("Im M(E + i*{eta:e})"), vals));
    }
    let limits = es.par_iter().map(|&e| m_limit_check(p, e, &cfg.eta_list)).collect::<Result<Vec<_>>>()?;
    columns.push(Column::new("im_m_limit", "extrapolated Im M(E + i0)", limits.iter().map(|l| l.limit).collect()));
    columns.push(Column::new("im_m_limit_err", "extrapolation error estimate", limits.iter().map(|l| l.error).collect()));
    let mut extra = Map::new();
    extra.insert("atom".into(), atom_json(p)?);
    Ok(Document { config: cfg.clone(), columns, extra, exit: EXIT_OK })
}

fn parse_bump(s: &str) -> Result<Bump> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Validation(format!("bump must be a:b:p, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let p: i32 = parts[2].trim().parse().map_err(|_| bad())?;
    Bump::new(a, b, p)
}

#[derive(serde::Deserialize)]
struct GridFile {
    support: (f64, f64),
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

fn read_grid(path: &Path) -> Result<GridFunction> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    let g: GridFile = serde_json::from_str(&text)
        .map_err(|e| Error::Validation(format!("cannot parse {}: {e}", path.display())))?;
    GridFunction::new(g.support, g.nodes, g.weights, g.values)
}

fn transform_table(cfg: &RunConfig) -> Result<Document> {
    let p = cfg.params()?;
    cfg.e_grid.require_positive("E")?;
    let psi = match &cfg.input {
        Some(path) => read_grid(path)?,
        None => {
            let (a, b, k) = cfg.bump.expect("bump is set when no input is given");
            GridFunction::from_smooth(&Bump::new(a, b, k)?, cfg.e_max)?
        }
    };
    let es = cfg.e_grid.points();
    let fwd = forward(p, &psi, &es)?;
    let phi = forward_grid(p, &psi, cfg.e_max)?;
    let back = inverse(p, &phi, &psi.nodes)?;
    let rep = parseval_defect(p, &psi, cfg.e_max)?;
    let tail_tol = cfg.tolerances.get("tail").copied().unwrap_or(TAIL_TOLERANCE);
    let inconclusive = rep.tail > tail_tol;
    let mut extra = Map::new();
    extra.insert("atom".into(), atom_json(p)?);
    extra.insert("atom_coeff".into(), json!(fwd.atom_coeff));
    extra.insert(
        "parseval".into(),
        json!({"defect": rep.defect, "tail": rep.tail, "tail_tolerance": tail_tol, "inconclusive": inconclusive}),
    );
    Ok(Document {
        config: cfg.clone(),
        columns: vec![
            Column::new("E", "energy", es),
            Column::new("forward", "(U psi)(E) = int u_theta(E|r) psi(r) dr", fwd.values),
            Column::new("r", "quadrature node of psi", psi.nodes.clone()),
            Column::new("psi", "input function", psi.values.clone()),
            Column::new("round_trip", "U^-1 U psi with the spectral integral cut at e_max", back),
        ],
        extra,
        exit: if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK },
    })
}

fn verify_table(cfg: &RunConfig) -> Result<Document> {
    let results = verify::run_all();
    let exit = if results.iter().any(|r| r.status == Status::Fail) {
        EXIT_NUMERICAL
    } else if results.iter().any(|r| r.status == Status::Inconclusive) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    let mut extra = Map::new();
    extra.insert("criteria".into(), serde_json::to_value(&results).expect("serializable report"));
    let status = |s: Status| match s {
        Status::Pass => 1.0,
        Status::Fail => 0.0,
        Status::Inconclusive => 0.5,
    };
    Ok(Document {
        config: cfg.clone(),
        columns: vec![
            Column::new("id", "criterion number", results.iter().map(|r| r.id as f64).collect()),
            Column::new("measured", "worst measured defect", results.iter().map(|r| r.measured).collect()),
            Column::new("tolerance", "pinned tolerance", results.iter().map(|r| r.tolerance).collect()),
            Column::new("pass", "1 pass, 0 fail, 0.5 inconclusive", results.iter().map(|r| status(r.status)).collect()),
        ],
        extra,
        exit,
    })
}

fn base_config(command: Command, kappa: f64, theta: f64, mode: ThetaMode) -> RunConfig {
    RunConfig {
        command,
        kappa,
        theta,
        theta_mode: mode,
        r_grid: GridSpec { min: 0.1, max: 5.0, count: 6, log: true },
        e_grid: GridSpec { min: 0.1, max: 20.0, count: 6, log: true },
        eta_list: crate::measure::DEFAULT_ETAS.to_vec(),
        e_max: 400.0,
        tolerances: BTreeMap::new(),
        out: None,
        format: Format::Json,
        seed_goldens: false,
        bump: None,
        input: None,
    }
}

/// The fixed configurations behind the golden files.
pub fn golden_cases() -> Vec<(&'static str, RunConfig)> {
    use std::f64::consts::FRAC_PI_2;
    let mut neg = base_config(Command::Eval, 0.0, FRAC_PI_2, ThetaMode::Absolute);
    neg.e_grid = GridSpec { min: -4.0, max: 6.0, count: 6, log: false };
    let mut tr = base_config(Command::Transform, 0.5, 0.0, ThetaMode::OffsetFromThetaKappa);
    tr.e_grid = GridSpec { min: 0.5, max: 50.0, count: 5, log: true };
    tr.e_max = 100.0;
    tr.bump = Some((1.0, 2.0, 3));
    vec![
        ("eval_hankel_half", base_config(Command::Eval, 0.5, 0.0, ThetaMode::OffsetFromThetaKappa)),
        ("eval_zero_kappa", neg),
        ("eval_blend_band", base_config(Command::Eval, 3e-3, 1.1, ThetaMode::Absolute)),
        ("measure_zero_kappa", base_config(Command::Measure, 0.0, FRAC_PI_2, ThetaMode::Absolute)),
        ("measure_negative_kappa", base_config(Command::Measure, -0.3, 1.2, ThetaMode::Absolute)),
        ("transform_half", tr),
    ]
}

/// Builds the output document for any non-table command.
pub fn document(cfg: &RunConfig) -> Result<Document> {
    match cfg.command {
        Command::Eval => eval_table(cfg),
        Command::Measure => measure_table(cfg),
        Command::Transform => transform_table(cfg),
        Command::Verify => verify_table(cfg),
        Command::Table => Err(Error::Validation("table is not a single document".into())),
    }
}

/// Relative comparison of two JSON trees; returns the first mismatch.
pub fn json_diff(path: &str, a: &Value, b: &Value, rel: f64) -> Option<String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap_or(f64::NAN), y.as_f64().unwrap_or(f64::NAN));
            if (x - y).abs() <= rel * x.abs().max(y.abs()) || x == y {
                None
            } else {
                Some(format!("{path}: {x} vs {y}"))
            }
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Some(format!("{path}: length {} vs {}", x.len(), y.len()));
            }
            x.iter().zip(y).enumerate().find_map(|(i, (p, q))| json_diff(&format!("{path}[{i}]"), p, q, rel))
        }
        (Value::Object(x), Value::Object(y)) => {
            if x.len() != y.len() || x.keys().any(|k| !y.contains_key(k)) {
                return Some(format!("{path}: keys differ"));
            }
            x.iter().find_map(|(k, v)| json_diff(&format!("{path}.{k}"), v, &y[k], rel))
        }
        _ if a == b => None,
        _ => Some(format!("{path}: {a} vs {b}")),
    }
}

/// Relative tolerance for golden comparisons.
pub const GOLDEN_REL_TOL: f64 = 1e-12;

/// Writes (`seed`) or checks the golden files in `dir`; returns mismatch descriptions.
pub fn table(dir: &Path, seed: bool) -> Result<Vec<String>> {
    if seed {
        std::fs::create_dir_all(dir).map_err(|e| Error::Validation(format!("{}: {e}", dir.display())))?;
    }
    let mut mismatches = Vec::new();
    for (name, cfg) in golden_cases() {
        let text = document(&cfg)?.render(Format::Json);
        let path = dir.join(format!("{name}.json"));
        if seed {
            std::fs::write(&path, text).map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
            continue;
        }
        let Ok(old) = std::fs::read_to_string(&path) else {
            mismatches.push(format!("{name}: missing {}", path.display()));
            continue;
        };
        let old: Value = serde_json::from_str(&old).map_err(|e| Error::Validation(format!("{name}: {e}")))?;
        let new: Value = serde_json::from_str(&text).expect("rendered JSON parses");
        if let Some(d) = json_diff(name, &old["data"], &new["data"], GOLDEN_REL_TOL) {
            mismatches.push(d);
        }
    }
    Ok(mismatches)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Branch { .. } | Error::AtomBoundary { .. } | Error::Pole { .. } => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::SeriesFailure { .. } => "series-failure",
        Error::Branch { .. } => "branch",
        Error::Domain(_) => "domain",
        Error::Pole { .. } => "pole",
        Error::AtomBoundary { .. } => "atom-boundary",
        Error::Accuracy { .. } => "accuracy",
        Error::Convergence(_) => "convergence",
        Error::Validation(_) => "validation",
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("{}", json!({"error": {"kind": kind(e), "message": e.to_string()}}));
    exit_code(e)
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Validation(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Validation(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    configure_threads()?;
    let (command, common, transform) = match &cli.command {
        CommandKind::Eval(a) => (Command::Eval, a, None),
        CommandKind::Measure(a) => (Command::Measure, a, None),
        CommandKind::Transform(t) => (Command::Transform, &t.common, Some(t)),
        CommandKind::Verify(a) => (Command::Verify, a, None),
        CommandKind::Table(a) => (Command::Table, a, None),
    };
    let mut cfg = RunConfig::from_args(command, common)?;
    if let Some(t) = transform {
        match &t.input {
            Some(path) => cfg.input = Some(path.clone()),
            None => {
                let b = parse_bump(&t.bump)?;
                cfg.bump = Some((b.a, b.b, b.power));
            }
        }
    }
    if command == Command::Table {
        let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("goldens"));
        let mismatches = table(&dir, cfg.seed_goldens)?;
        if cfg.seed_goldens {
            eprintln!("wrote {} golden files to {}", golden_cases().len(), dir.display());
            return Ok(EXIT_OK);
        }
        for m in &mismatches {
            eprintln!("mismatch: {m}");
        }
        return Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_NUMERICAL });
    }
    let doc = document(&cfg)?;
    if command == Command::Verify {
        let mut summary = String::new();
        if let Some(Value::Array(items)) = doc.extra.get("criteria") {
            for item in items {
                let r: &Value = item;
                let _ = writeln!(summary, "{} {} {}", r["status"], r["id"], r["name"]);
            }
        }
        eprint!("{summary}");
    }
    emit(&doc.render(cfg.format), cfg.out.as_deref())?;
    Ok(doc.exit)
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => report_error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        let g: GridSpec = "0.1:10:3:log".parse().unwrap();
        let p = g.points();
        assert!((p[1] - 1.0).abs() < 1e-15 && (p[2] - 10.0).abs() < 1e-14);
        let g: GridSpec = "-2:2:5".parse().unwrap();
        assert_eq!(g.points(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!("1:2".parse::<GridSpec>().is_err());
        assert!("-1:2:3:log".parse::<GridSpec>().is_err());
        assert!("2:1:3".parse::<GridSpec>().is_err());
    }

    #[test]
    fn tolerance_overrides() {
        assert!("tail=1e-3".parse::<TolOverride>().is_ok());
        assert!("tail=-1".parse::<TolOverride>().is_err());
        assert!("tail".parse::<TolOverride>().is_err());
    }

    #[test]
    fn theta_mode_offsets() {
        let mut cfg = base_config(Command::Eval, 0.5, 0.0, ThetaMode::OffsetFromThetaKappa);
        assert!((cfg.params().unwrap().theta - std::f64::consts::FRAC_PI_4).abs() < 1e-16);
        cfg.theta_mode = ThetaMode::Absolute;
        assert_eq!(cfg.params().unwrap().theta, 0.0);
    }

    #[test]
    fn csv_pads_short_columns() {
        let doc = Document {
            config: base_config(Command::Eval, 0.0, 0.0, ThetaMode::Absolute),
            columns: vec![Column::new("a", "", vec![1.0, 2.5]), Column::new("b", "", vec![0.1])],
            extra: Map::new(),
            exit: 0,
        };
        assert_eq!(doc.to_csv(), "a,b\n1.0,0.1\n2.5,\n");
    }

    #[test]
    fn json_diff_is_relative() {
        let a = json!({"x": [1.0, 2.0]});
        let b = json!({"x": [1.0, 2.0 + 1e-15]});
        assert!(json_diff("", &a, &b, 1e-12).is_none());
        let c = json!({"x": [1.0, 2.1]});
        assert!(json_diff("", &a, &c, 1e-12).is_some());
    }
}
