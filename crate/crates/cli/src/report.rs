use std::io::Write;
use std::path::PathBuf;

use rankone::actions::ActionError;
use rankone::bounds::BoundsError;
use rankone::field::FieldError;
use rankone::geometry::GeometryError;
use rankone::perm::PermError;
use rankone::report::Check;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Format, GlobalArgs};

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Everything that determines a report. The output path is deliberately left
/// out so the same run written to two places gives identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub options: Map<String, Value>,
    pub format: Format,
    pub seed: u64,
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_elements: Option<u64>,
}

impl RunConfig {
    pub fn new(command: &str, g: &GlobalArgs) -> Self {
        RunConfig {
            command: command.into(),
            family: g.family.map(|f| rankone::actions::Family::from(f).name().to_string()),
            q: g.q,
            modulus: g.modulus.clone(),
            options: Map::new(),
            format: g.format,
            seed: g.seed,
            workers: g.workers,
            max_elements: g.max_elements,
        }
    }

    pub fn option(mut self, key: &str, value: impl Serialize) -> Self {
        self.options.insert(key.into(), serde_json::to_value(value).expect("plain option value"));
        self
    }
}

/// What a subcommand produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Dump written instead of the JSON report under `--format csv`.
    pub csv: Option<String>,
    /// Suite items that could not run under the current limits.
    pub skipped: Vec<String>,
}

impl Outcome {
    pub fn put(&mut self, key: &str, value: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(value).expect("serializable result"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            EXIT_CHECK_FAILED
        } else if !self.skipped.is_empty() {
            EXIT_INFEASIBLE
        } else {
            EXIT_PASS
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema: u32,
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    results: &'a Map<String, Value>,
    checks: &'a [Check],
    pass: bool,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    skipped: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

pub fn render(config: &RunConfig, outcome: &Outcome, elapsed_ms: Option<u64>) -> String {
    match (config.format, &outcome.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => {
            let mut out = String::from("id,claimed,computed,pass\n");
            for c in &outcome.checks {
                out.push_str(&format!("{},{},{},{}\n", csv_field(&c.id), csv_field(&c.claimed), csv_field(&c.computed), c.pass));
            }
            out
        }
        (Format::Json, _) => {
            let report = Report {
                schema: SCHEMA,
                tool: "rankone",
                version: env!("CARGO_PKG_VERSION"),
                config,
                results: &outcome.results,
                checks: &outcome.checks,
                pass: outcome.passed(),
                skipped: &outcome.skipped,
                elapsed_ms,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure::usage(e.to_string()))
        }
    }
}

/// A run that ended without a report, with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INFEASIBLE, message: message.into() }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure { code: EXIT_CHECK_FAILED, message: message.into() }
    }
}

fn perm_code(e: &PermError) -> i32 {
    match e {
        PermError::MemoryPolicy { .. }
        | PermError::DegreeTooLarge { .. }
        | PermError::BudgetExhausted(_)
        | PermError::Unmaterialized
        | PermError::MissingPairStabilizer => EXIT_INFEASIBLE,
        PermError::DomainMismatch { .. } | PermError::NotBijection(_) | PermError::NoGenerators => EXIT_USAGE,
        PermError::CapExceeded(_) => EXIT_CHECK_FAILED,
    }
}

fn action_code(e: &ActionError) -> i32 {
    match e {
        ActionError::InvalidParameter(_) | ActionError::Field(_) | ActionError::GeneratorFile(_) => EXIT_USAGE,
        ActionError::Infeasible(_) => EXIT_INFEASIBLE,
        ActionError::Perm(p) => perm_code(p),
        ActionError::LeavesDomain { .. } | ActionError::OrderMismatch { .. } | ActionError::NotTransitive(_) => {
            EXIT_CHECK_FAILED
        }
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        Failure { code: perm_code(&e), message: e.to_string() }
    }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Self {
        Failure { code: action_code(&e), message: e.to_string() }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        let code = match &e {
            BoundsError::InvalidParameter(_) | BoundsError::Field(_) => EXIT_USAGE,
            BoundsError::Action(a) => action_code(a),
            BoundsError::Perm(p) => perm_code(p),
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match &e {
            GeometryError::Infeasible(_) => Failure::infeasible(e.to_string()),
            GeometryError::Precondition(_) | GeometryError::AmbientMismatch { .. } | GeometryError::MissingArgument(_) => {
                Failure::usage(e.to_string())
            }
            GeometryError::Action(a) => Failure { code: action_code(a), message: e.to_string() },
            GeometryError::Perm(p) => Failure { code: perm_code(p), message: e.to_string() },
            _ => Failure::check(e.to_string()),
        }
    }
}
