//! Compare-exchange networks with fused non-interfering elements: a text
//! format, evaluation, exact exhaustive statistics, rewrites and diagrams.

pub mod catalog;
pub mod dsl;
pub mod engine;
pub mod eval;
pub mod network;
pub mod render;
pub mod schedule;
pub mod transforms;

pub use engine::{Engine, EngineError, Limits, Rational, StatsReport};
pub use network::{Element, ElementKind, Network, Wire};
