//! Run configuration, the versioned JSON report, and the files a run
//! writes: `report.json`, `trace_table.csv`, `counts.csv`, `timings.json`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::fiber::Mode;
use crate::trace::TraceRow;

mod commands;

pub use commands::{chart_fuzz, dim_estimate, generic_roundtrip_cmd, trace_table_cmd, verify_components};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_MAX_SUBSPACES: u128 = 100_000_000;
pub const DEFAULT_MAX_TUPLES: u128 = 1_000_000_000;
pub const BUDGET_ENV: &str = "LOCMOD_BUDGET";
pub const WORKERS_ENV: &str = "LOCMOD_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyComponents,
    TraceTable,
    DimEstimate,
    ChartFuzz,
    GenericRoundtrip,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyComponents => "verify-components",
            Command::TraceTable => "trace-table",
            Command::DimEstimate => "dim-estimate",
            Command::ChartFuzz => "chart-fuzz",
            Command::GenericRoundtrip => "generic-roundtrip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Naive,
    Stratified,
    Both,
}

impl ModeChoice {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeChoice::Naive => vec![Mode::Naive],
            ModeChoice::Stratified => vec![Mode::Stratified],
            ModeChoice::Both => vec![Mode::Naive, Mode::Stratified],
        }
    }
}

impl std::str::FromStr for ModeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(ModeChoice::Naive),
            "stratified" => Ok(ModeChoice::Stratified),
            "both" => Ok(ModeChoice::Both),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

/// Everything a run depends on. `out` and `workers` are not echoed into the
/// report, so reports do not depend on them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    /// One value, except for `trace-table` which takes a list.
    pub n: Vec<usize>,
    /// Signature; `(n−1, 1)` when absent.
    pub rs: Option<(usize, usize)>,
    pub q: Vec<u64>,
    /// Residue characteristic for `chart-fuzz` and `generic-roundtrip`.
    pub p: u64,
    /// Truncation order `N` of `k[t]/(t^N)`.
    pub truncation: usize,
    pub mode: ModeChoice,
    pub max_subspaces: u128,
    pub max_tuples: u128,
    pub seed: u64,
    pub trials: usize,
    /// Off-`y` points sampled per trace-table row.
    pub samples: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl RunConfig {
    /// Defaults for `command`, as used by the examples in the docs.
    pub fn defaults(command: Command) -> Self {
        let (n, q, mode, trials) = match command {
            Command::VerifyComponents => (vec![3], vec![3], ModeChoice::Naive, 0),
            Command::TraceTable => ((3..=8).collect(), vec![3, 5, 7, 9, 11, 13], ModeChoice::Stratified, 0),
            Command::DimEstimate => (vec![4], vec![3, 5, 7], ModeChoice::Stratified, 0),
            Command::ChartFuzz => (vec![3], vec![], ModeChoice::Stratified, 1000),
            Command::GenericRoundtrip => (vec![3], vec![], ModeChoice::Stratified, 100),
        };
        RunConfig {
            command,
            n,
            rs: None,
            q,
            p: 3,
            truncation: 8,
            mode,
            max_subspaces: DEFAULT_MAX_SUBSPACES,
            max_tuples: DEFAULT_MAX_TUPLES,
            seed: 42,
            trials,
            samples: 4,
            out: None,
            workers: None,
        }
    }

    /// Applies `LOCMOD_BUDGET` and `LOCMOD_WORKERS` if set.
    pub fn apply_env(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            self.max_subspaces = parse_env(BUDGET_ENV, &v)?;
        }
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            self.workers = Some(parse_env(WORKERS_ENV, &v)?);
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.n.iter().any(|&n| n < 3) {
            return Err(Error::Config(format!("n must be at least 3, got {:?}", self.n)));
        }
        if self.command != Command::TraceTable && self.n.len() != 1 {
            return Err(Error::Config(format!("{} takes a single n", self.command.name())));
        }
        if let Some((r, s)) = self.rs {
            if self.n.iter().any(|&n| r + s != n) {
                return Err(Error::Config(format!("signature ({r}, {s}) does not sum to n")));
            }
        }
        for &q in &self.q {
            if q % 2 == 0 {
                return Err(Error::Config(format!("q = {q} must be odd")));
            }
            FieldSpec::of_order(q).map_err(|e| Error::Config(format!("q = {q}: {e}")))?;
        }
        let needs_q = matches!(
            self.command,
            Command::VerifyComponents | Command::TraceTable | Command::DimEstimate
        );
        if needs_q && self.q.is_empty() {
            return Err(Error::Config("at least one q is required".into()));
        }
        if matches!(self.command, Command::ChartFuzz | Command::GenericRoundtrip) {
            FieldSpec::new(self.p, 1).map_err(|e| Error::Config(format!("p = {}: {e}", self.p)))?;
            if self.trials == 0 {
                return Err(Error::Config("trials must be at least 1".into()));
            }
        }
        if self.truncation == 0 {
            return Err(Error::Config("truncation N must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }

    /// The single `n` of the non-table commands.
    pub fn single_n(&self) -> usize {
        self.n[0]
    }

    pub fn signature(&self, n: usize) -> (usize, usize) {
        self.rs.unwrap_or((n - 1, 1))
    }
}

fn parse_env<T: std::str::FromStr>(name: &str, v: &str) -> Result<T> {
    v.trim()
        .replace('_', "")
        .parse()
        .map_err(|_| Error::Config(format!("{name}={v:?} is not a number")))
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A closed-form formula evaluated at the run's parameters.
    ClosedForm,
    /// Holds by the definitions (a round trip, an identity).
    Definition,
    /// Obtained by an independent enumeration in this crate.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub computed: Value,
    pub expected: Expected,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn named(id: impl Into<String>, anchor: impl Into<String>) -> CheckBuilder {
        CheckBuilder {
            id: id.into(),
            anchor: anchor.into(),
        }
    }
}

pub struct CheckBuilder {
    id: String,
    anchor: String,
}

impl CheckBuilder {
    /// Passes iff `computed == expected`.
    pub fn equal<T: Serialize + PartialEq>(self, computed: T, expected: T, provenance: Provenance) -> Check {
        let pass = computed == expected;
        self.with(to_value(&computed), to_value(&expected), provenance, pass)
    }

    pub fn with(self, computed: Value, expected: Value, provenance: Provenance, pass: bool) -> Check {
        Check {
            id: self.id,
            anchor: self.anchor,
            computed,
            expected: Expected {
                value: expected,
                provenance,
            },
            pass,
            witness: None,
        }
    }
}

impl Check {
    pub fn witness(mut self, w: Option<Value>) -> Self {
        if !self.pass {
            self.witness = w;
        }
        self
    }
}

pub(crate) fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub schema_version: u32,
    pub command: Command,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Command-specific results.
    pub details: Value,
}

impl Report {
    pub fn new(config: &RunConfig, checks: Vec<Check>, details: Value) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema_version: SCHEMA_VERSION,
            command: config.command,
            config: config.clone(),
            passed: checks.iter().all(|c| c.pass),
            checks,
            details,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// One row of `counts.csv`; columns a command does not compute stay empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub q: u64,
    pub mode: String,
    pub ms: u64,
    pub mloc: Option<u64>,
    pub mres: Option<u64>,
    pub z1: Option<u64>,
    pub z2: Option<u64>,
    pub z1_cap_z2: Option<u64>,
    pub z: Option<u64>,
}

/// Wall-clock seconds per phase.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timings {
    pub phases: Vec<(String, f64)>,
}

impl Timings {
    pub fn time<T>(&mut self, phase: impl Into<String>, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases.push((phase.into(), start.elapsed().as_secs_f64()));
        out
    }
}

/// A finished run: the report plus the tables it produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub trace_rows: Option<Vec<TraceRow>>,
    pub counts: Option<Vec<CountRow>>,
    pub timings: Timings,
}

impl Outcome {
    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.report.passed {
            0
        } else {
            1
        }
    }

    /// Writes `report.json`, `timings.json` and the command's CSV tables.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let report = dir.join("report.json");
        fs::write(&report, self.report.to_json())?;
        written.push(report);
        if let Some(rows) = &self.trace_rows {
            let path = dir.join("trace_table.csv");
            write_csv(&path, rows)?;
            written.push(path);
        }
        if let Some(rows) = &self.counts {
            let path = dir.join("counts.csv");
            write_csv(&path, rows)?;
            written.push(path);
        }
        let timings = dir.join("timings.json");
        fs::write(&timings, serde_json::to_string_pretty(&self.timings)? + "\n")?;
        written.push(timings);
        Ok(written)
    }
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Validates `config` and runs its command, on a dedicated pool when a
/// worker count is set.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    config.validate()?;
    let go = || match config.command {
        Command::VerifyComponents => verify_components(config),
        Command::TraceTable => trace_table_cmd(config),
        Command::DimEstimate => dim_estimate(config),
        Command::ChartFuzz => chart_fuzz(config),
        Command::GenericRoundtrip => generic_roundtrip_cmd(config),
    };
    match config.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?
            .install(go),
        None => go(),
    }
}
