//! Range sweeps producing versioned certificates.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{verify_construction, VerificationReport, Witness};
use crate::coloring::{ColoringError, ColoringRule};
use crate::model::{Dim, VariantConfig};
use crate::{SCHEMA_VERSION, TOOL_VERSION};

/// Largest `d` a sweep will build; `Γ₃` has `d² - 1` vertices.
pub const MAX_SWEEP_D: u32 = 4096;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("empty range {lo}..={hi}")]
    EmptyRange { lo: u32, hi: u32 },
    #[error("d range lower bound must be at least 1")]
    ZeroLowerBound,
    #[error("d = {d} exceeds the sweep limit of {limit}")]
    ResourceLimit { d: u32, limit: u32 },
    #[error("could not start worker pool: {0}")]
    WorkerPool(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl SweepError {
    /// Resource problems, as opposed to bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            SweepError::ResourceLimit { .. } | SweepError::WorkerPool(_)
        )
    }
}

/// Inclusive range of dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", try_from = "[u32; 2]")]
pub struct DRange {
    lo: Dim,
    hi: Dim,
}

impl DRange {
    pub fn new(lo: u32, hi: u32) -> Result<Self, SweepError> {
        if lo == 0 {
            return Err(SweepError::ZeroLowerBound);
        }
        if lo > hi {
            return Err(SweepError::EmptyRange { lo, hi });
        }
        Ok(DRange {
            lo: Dim::new(lo).expect("lo >= 1"),
            hi: Dim::new(hi).expect("hi >= lo >= 1"),
        })
    }

    pub fn single(d: Dim) -> Self {
        DRange { lo: d, hi: d }
    }

    pub fn lo(self) -> u32 {
        self.lo.get()
    }

    pub fn hi(self) -> u32 {
        self.hi.get()
    }

    pub fn len(self) -> usize {
        (self.hi() - self.lo() + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn dims(self) -> impl Iterator<Item = Dim> + Clone {
        (self.lo()..=self.hi()).map(|d| Dim::new(d).expect("range starts at 1"))
    }
}

impl From<DRange> for [u32; 2] {
    fn from(r: DRange) -> Self {
        [r.lo(), r.hi()]
    }
}

impl TryFrom<[u32; 2]> for DRange {
    type Error = SweepError;
    fn try_from([lo, hi]: [u32; 2]) -> Result<Self, Self::Error> {
        DRange::new(lo, hi)
    }
}

impl fmt::Display for DRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..={}", self.lo(), self.hi())
    }
}

/// How per-`d` checks are scheduled. Results are always merged in ascending
/// `d`, so the choice never changes the output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Global rayon pool. Falls back to sequential when built without the
    /// `parallel` feature.
    #[default]
    Parallel,
    /// Dedicated pool with this many workers.
    ParallelWith(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool_version: String,
    pub d_range: DRange,
    pub variant: VariantConfig,
    pub rule: ColoringRule,
    pub per_d: Vec<VerificationReport>,
    pub overall_pass: bool,
    pub first_failure: Option<Witness>,
}

impl Certificate {
    /// Aggregate reports already in ascending `d` order.
    pub fn from_reports(
        range: DRange,
        variant: VariantConfig,
        rule: &ColoringRule,
        per_d: Vec<VerificationReport>,
    ) -> Self {
        let overall_pass = per_d.iter().all(|r| r.pass);
        let first_failure = per_d.iter().find_map(VerificationReport::first_witness);
        Certificate {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            d_range: range,
            variant,
            rule: rule.clone(),
            per_d,
            overall_pass,
            first_failure,
        }
    }

    pub fn failing_d(&self) -> Vec<u32> {
        self.per_d
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.d.get())
            .collect()
    }
}

fn run_range(
    range: DRange,
    variant: VariantConfig,
    rule: &ColoringRule,
    exec: Execution,
) -> Result<Vec<VerificationReport>, SweepError> {
    if range.hi() > MAX_SWEEP_D {
        return Err(SweepError::ResourceLimit {
            d: range.hi(),
            limit: MAX_SWEEP_D,
        });
    }
    let one = |d: Dim| verify_construction(d, variant, rule);
    match exec {
        Execution::Sequential => Ok(range.dims().map(one).collect::<Result<_, _>>()?),
        Execution::Parallel => par_map(range, one, None),
        Execution::ParallelWith(workers) => par_map(range, one, Some(workers)),
    }
}

#[cfg(feature = "parallel")]
fn par_map<F>(
    range: DRange,
    f: F,
    workers: Option<usize>,
) -> Result<Vec<VerificationReport>, SweepError>
where
    F: Fn(Dim) -> Result<VerificationReport, ColoringError> + Sync,
{
    use rayon::prelude::*;

    // par_iter collect preserves input order.
    let run = || -> Result<Vec<VerificationReport>, ColoringError> {
        let dims: Vec<Dim> = range.dims().collect();
        dims.par_iter().map(|&d| f(d)).collect()
    };
    let out = match workers {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SweepError::WorkerPool(e.to_string()))?
            .install(run),
    };
    Ok(out?)
}

#[cfg(not(feature = "parallel"))]
fn par_map<F>(
    range: DRange,
    f: F,
    _workers: Option<usize>,
) -> Result<Vec<VerificationReport>, SweepError>
where
    F: Fn(Dim) -> Result<VerificationReport, ColoringError>,
{
    Ok(range.dims().map(f).collect::<Result<_, _>>()?)
}

/// Verify every `d` in the range and aggregate into a certificate.
pub fn sweep(
    range: DRange,
    variant: VariantConfig,
    rule: &ColoringRule,
    exec: Execution,
) -> Result<Certificate, SweepError> {
    let per_d = run_range(range, variant, rule, exec)?;
    Ok(Certificate::from_reports(range, variant, rule, per_d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSummary {
    pub rule: String,
    pub pass: bool,
    pub failing_d: Vec<u32>,
    pub first_failure: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleExploration {
    pub schema_version: u32,
    pub tool_version: String,
    pub d_range: DRange,
    pub variant: VariantConfig,
    pub rules: Vec<RuleSummary>,
}

impl RuleExploration {
    pub fn summary(&self, rule: &str) -> Option<&RuleSummary> {
        self.rules.iter().find(|r| r.rule == rule)
    }

    pub fn passing_rules(&self) -> Vec<&str> {
        self.rules
            .iter()
            .filter(|r| r.pass)
            .map(|r| r.rule.as_str())
            .collect()
    }
}

/// Sweep the range under every built-in coloring rule.
pub fn rule_exploration(
    range: DRange,
    variant: VariantConfig,
    exec: Execution,
) -> Result<RuleExploration, SweepError> {
    let rules = ColoringRule::BUILTIN
        .iter()
        .map(|rule| {
            let cert = sweep(range, variant, rule, exec)?;
            Ok(RuleSummary {
                rule: rule.name().to_string(),
                pass: cert.overall_pass,
                failing_d: cert.failing_d(),
                first_failure: cert.first_failure,
            })
        })
        .collect::<Result<_, SweepError>>()?;
    Ok(RuleExploration {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        d_range: range,
        variant,
        rules,
    })
}
