//! Edge-coloring rules for `Γ₃`.
//!
//! The weight labels carry fixed colors (red `m = 0`, green `m = 2`, blue
//! `m = 1`); which color an *edge* carries is a configurable rule.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{GraphEdge, WeightTable};
use crate::model::{Color, ColorSet, Node};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("edge {0} has no target; target-based rules need one")]
    NoTargets(crate::construct::Edge),
    #[error("no weight recorded for node {0}")]
    MissingWeight(Node),
    #[error("unknown coloring rule `{0}` (expected target-diff, shared-support or endpoint-diff)")]
    UnknownRule(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColoringRule {
    /// `(i - l) mod 3` of the edge's target(s).
    #[default]
    TargetDiff,
    /// Residues where both endpoint weights are nonzero.
    SharedSupport,
    /// `(i - j) mod 3` of the smaller endpoint.
    EndpointDiff,
    /// User table keyed on the target residue, with per-target overrides.
    Custom(CustomRule),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomRule {
    pub name: String,
    /// Colors for targets with `(i - l) mod 3 = 0, 1, 2` respectively.
    pub residue_map: [Vec<Color>; 3],
    #[serde(default)]
    pub overrides: Vec<TargetOverride>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetOverride {
    pub target: Node,
    pub colors: Vec<Color>,
}

impl CustomRule {
    fn colors_for_target(&self, target: Node) -> ColorSet {
        match self.overrides.iter().find(|o| o.target == target) {
            Some(o) => o.colors.iter().copied().collect(),
            None => {
                let r = Color::from_residue(target.diff());
                self.residue_map[usize::from(r.m())]
                    .iter()
                    .copied()
                    .collect()
            }
        }
    }
}

impl ColoringRule {
    pub const BUILTIN: [ColoringRule; 3] = [
        ColoringRule::TargetDiff,
        ColoringRule::SharedSupport,
        ColoringRule::EndpointDiff,
    ];

    pub fn name(&self) -> &str {
        match self {
            ColoringRule::TargetDiff => "target-diff",
            ColoringRule::SharedSupport => "shared-support",
            ColoringRule::EndpointDiff => "endpoint-diff",
            ColoringRule::Custom(c) => &c.name,
        }
    }

    pub fn needs_weights(&self) -> bool {
        matches!(self, ColoringRule::SharedSupport)
    }
}

impl fmt::Display for ColoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ColoringRule {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::BUILTIN
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| ColoringError::UnknownRule(s.to_string()))
    }
}

pub fn color_of_edge(
    edge: &GraphEdge,
    rule: &ColoringRule,
    weights: &WeightTable,
) -> Result<ColorSet, ColoringError> {
    let by_targets = |f: &dyn Fn(Node) -> ColorSet| {
        if edge.targets.is_empty() {
            return Err(ColoringError::NoTargets(edge.endpoints));
        }
        Ok(edge
            .targets
            .iter()
            .fold(ColorSet::EMPTY, |acc, &t| acc.union(f(t))))
    };
    match rule {
        ColoringRule::TargetDiff => {
            by_targets(&|t| ColorSet::single(Color::from_residue(t.diff())))
        }
        ColoringRule::Custom(c) => by_targets(&|t| c.colors_for_target(t)),
        ColoringRule::EndpointDiff => Ok(ColorSet::single(Color::from_residue(
            edge.endpoints.lo().diff(),
        ))),
        ColoringRule::SharedSupport => {
            let [a, b] = edge.endpoints.endpoints();
            let support = |n: Node| {
                weights
                    .get(n)
                    .map(|w| w.support())
                    .ok_or(ColoringError::MissingWeight(n))
            };
            Ok(support(a)?.intersection(support(b)?))
        }
    }
}
