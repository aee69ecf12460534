//! Construction, verification and rendering of the corrected `S₂`, `Γ₃` and
//! `ω₃` structures over the grid `L × L`, `L = {1, …, d}`.
//!
//! * [`model`]: dimensions, nodes, variants, colors, exact weights.
//! * [`construct`]: `S₂` entries, the graph `Γ₃` and the weight table.
//! * [`coloring`]: rules assigning colors to edges.
//! * [`verify`]: coverage, variant diffs, monochromatic forest checks, sweeps.
//! * [`render`]: DOT / TikZ / SVG figures.
//! * [`io`]: versioned JSON interchange.
//! * [`cli`]: the `gamma3` command-line tool.

pub mod cli;
pub mod coloring;
pub mod construct;
pub mod io;
pub mod model;
pub mod render;
pub mod verify;

/// Version of the graph and certificate document schemas.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub use coloring::ColoringRule;
pub use construct::{
    build_gamma3, build_s2, weights, Construction, Edge, Gamma3, S2Entry, WeightTable,
};
pub use model::{Color, Dim, Node, VariantConfig, WeightTriple};
pub use verify::{verify_construction, VerificationReport};
