//! Dimensions, index sets, nodes, variants, colors and exact weights.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dimension must be at least 1, got {0}")]
    ZeroDim(u32),
    #[error("node ({i},{j}) outside 1..={d}")]
    NodeOutOfRange { i: u32, j: u32, d: u32 },
    #[error("unknown variant `{0}` (expected original, corrected-s1, alternative-s2 or alternative-s2-keep-floor)")]
    UnknownVariant(String),
    #[error("residue {0} is not in 0..3")]
    BadResidue(u32),
}

/// Side length `d` of the square index grid `L × L`, `L = {1, …, d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dim(u32);

impl Dim {
    pub fn new(d: u32) -> Result<Self, ModelError> {
        if d == 0 {
            Err(ModelError::ZeroDim(d))
        } else {
            Ok(Dim(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Build a node, checking both coordinates lie in `1..=d`.
    pub fn node(self, i: u32, j: u32) -> Result<Node, ModelError> {
        if self.contains(Node { i, j }) {
            Ok(Node { i, j })
        } else {
            Err(ModelError::NodeOutOfRange { i, j, d: self.0 })
        }
    }

    pub fn contains(self, n: Node) -> bool {
        (1..=self.0).contains(&n.i) && (1..=self.0).contains(&n.j)
    }

    /// All of `L × L` in lexicographic order.
    pub fn grid(self) -> impl Iterator<Item = Node> {
        let d = self.0;
        (1..=d).flat_map(move |i| (1..=d).map(move |j| Node { i, j }))
    }
}

impl TryFrom<u32> for Dim {
    type Error = ModelError;
    fn try_from(d: u32) -> Result<Self, Self::Error> {
        Dim::new(d)
    }
}

impl From<Dim> for u32 {
    fn from(d: Dim) -> u32 {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A grid point `(i, j)`. Ordering is lexicographic on `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(u32, u32)", into = "(u32, u32)")]
pub struct Node {
    pub i: u32,
    pub j: u32,
}

impl Node {
    /// Unchecked constructor; range checks happen against a [`Dim`].
    pub const fn new(i: u32, j: u32) -> Self {
        Node { i, j }
    }

    /// `i - j` as a signed integer.
    pub fn diff(self) -> i64 {
        i64::from(self.i) - i64::from(self.j)
    }

    pub fn is_diagonal(self) -> bool {
        self.i == self.j
    }
}

impl From<(u32, u32)> for Node {
    fn from((i, j): (u32, u32)) -> Self {
        Node { i, j }
    }
}

impl From<Node> for (u32, u32) {
    fn from(n: Node) -> Self {
        (n.i, n.j)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VariantKind {
    /// Ceil midpoint rule everywhere; entries leaving `I` are dropped.
    OriginalErroneous,
    /// Floor midpoint for `{i, l} = {d-1, d}` plus three weight overrides.
    CorrectedS1,
    /// Vertex set `L × L ∖ {(1,1)}`, unmodified weights.
    AlternativeS2,
}

/// Midpoint rule used by [`VariantKind::AlternativeS2`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum MidRule {
    #[default]
    UniformCeil,
    KeepFloorException,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VariantConfig {
    pub kind: VariantKind,
    pub alt_mid_rule: MidRule,
}

impl VariantConfig {
    pub const ORIGINAL: Self = Self {
        kind: VariantKind::OriginalErroneous,
        alt_mid_rule: MidRule::UniformCeil,
    };
    pub const CORRECTED: Self = Self {
        kind: VariantKind::CorrectedS1,
        alt_mid_rule: MidRule::UniformCeil,
    };
    pub const ALTERNATIVE: Self = Self {
        kind: VariantKind::AlternativeS2,
        alt_mid_rule: MidRule::UniformCeil,
    };
    pub const ALTERNATIVE_KEEP_FLOOR: Self = Self {
        kind: VariantKind::AlternativeS2,
        alt_mid_rule: MidRule::KeepFloorException,
    };

    pub const ALL: [Self; 4] = [
        Self::ORIGINAL,
        Self::CORRECTED,
        Self::ALTERNATIVE,
        Self::ALTERNATIVE_KEEP_FLOOR,
    ];

    /// The corner of `L × L` left out of the vertex set `I`.
    pub fn excluded_vertex(self, d: Dim) -> Node {
        match self.kind {
            VariantKind::OriginalErroneous | VariantKind::CorrectedS1 => {
                Node::new(d.get(), d.get())
            }
            VariantKind::AlternativeS2 => Node::new(1, 1),
        }
    }

    /// Whether targets with `{i, l} = {d-1, d}` use the floor midpoint.
    pub fn uses_floor_exception(self) -> bool {
        match self.kind {
            VariantKind::OriginalErroneous => false,
            VariantKind::CorrectedS1 => true,
            VariantKind::AlternativeS2 => self.alt_mid_rule == MidRule::KeepFloorException,
        }
    }

    pub fn has_weight_overrides(self) -> bool {
        self.kind == VariantKind::CorrectedS1
    }

    pub fn name(self) -> &'static str {
        match (self.kind, self.alt_mid_rule) {
            (VariantKind::OriginalErroneous, _) => "original",
            (VariantKind::CorrectedS1, _) => "corrected-s1",
            (VariantKind::AlternativeS2, MidRule::UniformCeil) => "alternative-s2",
            (VariantKind::AlternativeS2, MidRule::KeepFloorException) => {
                "alternative-s2-keep-floor"
            }
        }
    }
}

impl Default for VariantConfig {
    fn default() -> Self {
        Self::CORRECTED
    }
}

impl fmt::Display for VariantConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariantConfig {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| ModelError::UnknownVariant(s.to_string()))
    }
}

impl TryFrom<String> for VariantConfig {
    type Error = ModelError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<VariantConfig> for String {
    fn from(v: VariantConfig) -> String {
        v.name().to_string()
    }
}

/// A residue `m ∈ ℤ/3`. Display colors: 0 red, 2 green, 1 blue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Color(u8);

impl Color {
    pub const RED: Color = Color(0);
    pub const BLUE: Color = Color(1);
    pub const GREEN: Color = Color(2);

    /// Residue order 0, 1, 2.
    pub const ALL: [Color; 3] = [Color(0), Color(1), Color(2)];

    /// Label order used in figures: red, green, blue.
    pub const LABEL_ORDER: [Color; 3] = [Color::RED, Color::GREEN, Color::BLUE];

    pub fn from_residue(x: i64) -> Color {
        Color(x.rem_euclid(3) as u8)
    }

    pub fn m(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            0 => "red",
            1 => "blue",
            _ => "green",
        }
    }
}

impl TryFrom<u32> for Color {
    type Error = ModelError;
    fn try_from(m: u32) -> Result<Self, Self::Error> {
        if m < 3 {
            Ok(Color(m as u8))
        } else {
            Err(ModelError::BadResidue(m))
        }
    }
}

impl From<Color> for u32 {
    fn from(c: Color) -> u32 {
        u32::from(c.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact nonnegative weight value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub BigUint);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigUint::default())
    }

    /// `coeff · 5^exp`.
    pub fn scaled_power_of_five(coeff: u32, exp: u32) -> Self {
        Weight(BigUint::from(coeff) * BigUint::from(5u32).pow(exp))
    }

    pub fn is_zero(&self) -> bool {
        self.0.bits() == 0
    }
}

impl From<u64> for Weight {
    fn from(v: u64) -> Self {
        Weight(BigUint::from(v))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Weight {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Weight)
    }
}

/// The three values `ω₃(node)(m)` for `m = 0, 1, 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightTriple(pub [Weight; 3]);

impl WeightTriple {
    /// Build from values given in label order (red, green, blue).
    pub fn from_rgb(red: u64, green: u64, blue: u64) -> Self {
        WeightTriple([red.into(), blue.into(), green.into()])
    }

    /// Residues where the weight is nonzero.
    pub fn support(&self) -> ColorSet {
        Color::ALL
            .into_iter()
            .filter(|&c| !self[c].is_zero())
            .collect()
    }

    pub fn scaled(&self, factor: &BigUint) -> Self {
        WeightTriple(self.0.clone().map(|w| Weight(w.0 * factor)))
    }
}

impl Index<Color> for WeightTriple {
    type Output = Weight;
    fn index(&self, c: Color) -> &Weight {
        &self.0[usize::from(c.0)]
    }
}

impl IndexMut<Color> for WeightTriple {
    fn index_mut(&mut self, c: Color) -> &mut Weight {
        &mut self.0[usize::from(c.0)]
    }
}

/// A subset of `ℤ/3`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: Color) -> Self {
        ColorSet(1 << c.0)
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c.0;
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c.0) != 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in residue order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<T: IntoIterator<Item = Color>>(iter: T) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// The vertex set `I` and target set `J`, both canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    pub vertices: BTreeSet<Node>,
    pub targets: BTreeSet<Node>,
}

pub fn index_sets(d: Dim, variant: VariantConfig) -> IndexSets {
    let corner = Node::new(d.get(), d.get());
    let excluded = variant.excluded_vertex(d);
    IndexSets {
        vertices: d.grid().filter(|&n| n != excluded).collect(),
        targets: d.grid().filter(|&n| n != corner).collect(),
    }
}

/// Sign of `x + 1/2`, which is never zero.
pub fn sign_half(x: i64) -> i64 {
    if x >= 0 {
        1
    } else {
        -1
    }
}
