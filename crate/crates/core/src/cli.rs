//! Command-line front end.
//!
//! Exit codes: 0 when every requested property holds, 1 when one was
//! falsified (a witness is printed), 2 for usage errors, 3 for input/output
//! failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::coloring::ColoringRule;
use crate::construct::S2Entry;
use crate::io::{read_graph, to_json, write_atomic, write_graph, DocumentError, GraphBundle};
use crate::model::{Dim, VariantConfig};
use crate::render::{diagonal_label_audit, Figure, Format};
use crate::verify::sweep::Certificate;
use crate::verify::{
    diff_variants, rule_exploration, sweep, verify_graph, DRange, Execution, SweepError,
};
use crate::{SCHEMA_VERSION, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable read when `--workers` is not given.
pub const WORKERS_ENV: &str = "GAMMA3_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "gamma3",
    version,
    about = "Build, verify and render the corrected S2 / Gamma3 / omega3 structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the graph interchange document for one d.
    Build(BuildArgs),
    /// Check coverage and monochromatic forests for one d or a graph document.
    Verify(VerifyArgs),
    /// Verify every d in a range and write a certificate.
    Sweep(SweepArgs),
    /// Show S2 entries added and removed between two variants.
    Diff(DiffArgs),
    /// Sweep a range under every built-in coloring rule.
    ExploreRules(ExploreArgs),
    /// Emit the labelled diagram as DOT, TikZ or SVG.
    Render(RenderArgs),
    /// List green and blue labels on the diagonal.
    AuditDiagonal(AuditArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// original, corrected-s1, alternative-s2 or alternative-s2-keep-floor
    #[arg(long, default_value = "corrected-s1")]
    pub variant: VariantConfig,
    /// Built-in rule name (target-diff, shared-support, endpoint-diff) or a
    /// path to a JSON rule table.
    #[arg(long)]
    pub rule: Option<String>,
    /// Output file, written atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    pub d: Option<u32>,
    /// Graph interchange document to check instead of building one.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Workers {
    /// Worker threads for the sweep (0 or unset: one per core).
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Run the sweep on the calling thread only.
    #[arg(long, conflicts_with = "workers")]
    pub sequential: bool,
}

impl Workers {
    fn execution(&self) -> Execution {
        match (self.sequential, self.workers) {
            (true, _) => Execution::Sequential,
            (false, None | Some(0)) => Execution::Parallel,
            (false, Some(n)) => Execution::ParallelWith(n),
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Inclusive range, e.g. `1..200`.
    #[arg(long, value_parser = parse_range)]
    pub d_range: DRange,
    #[command(flatten)]
    pub workers: Workers,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value = "original")]
    pub from: VariantConfig,
    #[arg(long, default_value = "corrected-s1")]
    pub to: VariantConfig,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long, value_parser = parse_range)]
    pub d_range: DRange,
    #[arg(long, default_value = "corrected-s1")]
    pub variant: VariantConfig,
    #[command(flatten)]
    pub workers: Workers,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub d: u32,
    /// dot, tikz or svg
    #[arg(long)]
    pub format: Format,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long, default_value = "corrected-s1")]
    pub variant: VariantConfig,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse `A..B` or `A..=B` (both inclusive) or a single `A`.
pub fn parse_range(s: &str) -> Result<DRange, String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("`{t}` is not a dimension: {e}"))
    };
    DRange::new(num(lo)?, num(hi)?).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document { path: String, source: DocumentError },
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Document { .. } | CliError::Resource(_) => EXIT_IO,
        }
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn dim(d: u32) -> Result<Dim, CliError> {
    Dim::new(d).map_err(|e| CliError::Usage(e.to_string()))
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Resolve `--rule`: a built-in name, otherwise a JSON rule file.
pub fn load_rule(spec: Option<&str>) -> Result<ColoringRule, CliError> {
    let Some(spec) = spec else {
        return Ok(ColoringRule::default());
    };
    if let Ok(rule) = spec.parse::<ColoringRule>() {
        return Ok(rule);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "unknown coloring rule `{spec}` (not a built-in name or an existing file)"
        )));
    }
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::Document {
        path: spec.to_string(),
        source: e.into(),
    })
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), CliError> {
        match out {
            Some(path) => write_atomic(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            }),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                }),
        }
    }

    fn note(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.stderr, "{}", line.as_ref());
    }
}

fn report_certificate(io: &mut Io<'_>, cert: &Certificate) -> i32 {
    let failing = cert.failing_d();
    if cert.overall_pass {
        io.note(format!(
            "pass: d {} variant {} rule {}",
            cert.d_range,
            cert.variant,
            cert.rule.name()
        ));
        EXIT_OK
    } else {
        io.note(format!(
            "FAIL: {} of {} d values failed (variant {}, rule {})",
            failing.len(),
            cert.per_d.len(),
            cert.variant,
            cert.rule.name()
        ));
        if let Some(w) = &cert.first_failure {
            io.note(format!("witness: {w}"));
        }
        EXIT_FALSIFIED
    }
}

#[derive(Serialize)]
struct DiffDocument {
    schema_version: u32,
    tool_version: &'static str,
    d: u32,
    from: VariantConfig,
    to: VariantConfig,
    added: Vec<S2Entry>,
    removed: Vec<S2Entry>,
}

fn execute(cli: Cli, io: &mut Io<'_>) -> Result<i32, CliError> {
    match cli.command {
        Command::Build(a) => {
            let rule = load_rule(a.common.rule.as_deref())?;
            let bundle = GraphBundle::build(dim(a.d)?, a.common.variant, rule);
            io.emit(a.common.out.as_deref(), &write_graph(&bundle))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let (bundle, rule) = match (&a.graph, a.d) {
                (Some(path), _) => {
                    let text = read_file(path)?;
                    let bundle = read_graph(&text).map_err(|source| CliError::Document {
                        path: path.display().to_string(),
                        source,
                    })?;
                    let rule = match a.common.rule.as_deref() {
                        Some(spec) => load_rule(Some(spec))?,
                        None => bundle.rule.clone(),
                    };
                    (bundle, rule)
                }
                (None, Some(d)) => {
                    let rule = load_rule(a.common.rule.as_deref())?;
                    (
                        GraphBundle::build(dim(d)?, a.common.variant, rule.clone()),
                        rule,
                    )
                }
                (None, None) => return Err(CliError::Usage("verify needs --d or --graph".into())),
            };
            let report = verify_graph(
                bundle.d,
                bundle.variant,
                &rule,
                &bundle.graph,
                &bundle.uncovered,
                &bundle.weights,
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let cert = Certificate::from_reports(
                DRange::single(bundle.d),
                bundle.variant,
                &rule,
                vec![report],
            );
            io.emit(a.common.out.as_deref(), &to_json(&cert))?;
            Ok(report_certificate(io, &cert))
        }
        Command::Sweep(a) => {
            let rule = load_rule(a.common.rule.as_deref())?;
            let exec = a.workers.execution();
            let cert = sweep(a.d_range, a.common.variant, &rule, exec)?;
            io.emit(a.common.out.as_deref(), &to_json(&cert))?;
            let code = report_certificate(io, &cert);
            if code != EXIT_OK {
                let x = rule_exploration(a.d_range, a.common.variant, exec)?;
                for s in &x.rules {
                    let status = if s.pass { "pass" } else { "fail" };
                    let witness = s
                        .first_failure
                        .as_ref()
                        .map(|w| format!(" ({w})"))
                        .unwrap_or_default();
                    io.note(format!("rule {}: {status}{witness}", s.rule));
                }
                if let Some(out) = &a.common.out {
                    let mut path = out.clone().into_os_string();
                    path.push(".rules.json");
                    io.emit(Some(Path::new(&path)), &to_json(&x))?;
                }
            }
            Ok(code)
        }
        Command::Diff(a) => {
            let d = dim(a.d)?;
            let diff = diff_variants(d, a.from, a.to);
            for e in &diff.added {
                io.note(format!("+ {e}"));
            }
            for e in &diff.removed {
                io.note(format!("- {e}"));
            }
            let doc = DiffDocument {
                schema_version: SCHEMA_VERSION,
                tool_version: TOOL_VERSION,
                d: d.get(),
                from: a.from,
                to: a.to,
                added: diff.added,
                removed: diff.removed,
            };
            io.emit(a.out.as_deref(), &to_json(&doc))?;
            Ok(EXIT_OK)
        }
        Command::ExploreRules(a) => {
            let x = rule_exploration(a.d_range, a.variant, a.workers.execution())?;
            for s in &x.rules {
                io.note(format!(
                    "rule {}: {}",
                    s.rule,
                    if s.pass { "pass" } else { "fail" }
                ));
            }
            io.emit(a.out.as_deref(), &to_json(&x))?;
            Ok(EXIT_OK)
        }
        Command::Render(a) => {
            let rule = load_rule(a.common.rule.as_deref())?;
            let fig = Figure::build(dim(a.d)?, a.common.variant, &rule)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            io.emit(a.common.out.as_deref(), &fig.emit(a.format))?;
            Ok(EXIT_OK)
        }
        Command::AuditDiagonal(a) => {
            let rows = diagonal_label_audit(dim(a.d)?, a.variant);
            io.emit(a.out.as_deref(), &to_json(&rows))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { stdout, stderr };
    match execute(cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            io.note(format!("error: {e}"));
            e.exit_code()
        }
    }
}
