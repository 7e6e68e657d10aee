//! ASCII and SVG diagrams.
//!
//! Both emitters share [`Layout`]: elements are placed by schedule stage, and
//! a stage is split into several drawing columns when the vertical spans of
//! its elements would overlap.

mod ascii;
mod svg;

pub use ascii::{render_ascii, render_ascii_with, AsciiOptions};
pub use svg::render_svg;

use crate::dsl::MAX_ORDER;
use crate::engine::rational::label;
use crate::engine::StatsReport;
use crate::network::{InvalidNetwork, Network};
use crate::schedule::schedule;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("order {0} exceeds the drawable maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("statistics cover {got} elements but the network has {expected}")]
    StatsMismatch { expected: usize, got: usize },
    #[error("diagram is {width} columns wide, limit is {limit}")]
    TooWide { width: usize, limit: usize },
    #[error(transparent)]
    Invalid(#[from] InvalidNetwork),
}

/// Column assignment shared by the emitters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Element indices per drawing column, left to right.
    pub columns: Vec<Vec<usize>>,
    /// Drawing column of each element.
    pub column_of: Vec<usize>,
    /// Schedule stage of each drawing column.
    pub stage_of_column: Vec<usize>,
}

impl Layout {
    pub fn new(network: &Network) -> Layout {
        let sched = schedule(network);
        let elements = network.elements();
        let mut columns = Vec::new();
        let mut stage_of_column = Vec::new();
        let mut column_of = vec![0; network.len()];
        for (stage, members) in sched.stages().iter().enumerate() {
            let first = columns.len();
            for &idx in members {
                let (lo, hi) = (elements[idx].min_wire(), elements[idx].max_wire());
                let fits = |col: &Vec<usize>| {
                    col.iter().all(|&o| {
                        let (olo, ohi) = (elements[o].min_wire(), elements[o].max_wire());
                        hi < olo || ohi < lo
                    })
                };
                let slot = (first..columns.len()).find(|&c| fits(&columns[c]));
                let c = slot.unwrap_or_else(|| {
                    columns.push(Vec::new());
                    stage_of_column.push(stage);
                    columns.len() - 1
                });
                columns[c].push(idx);
                column_of[idx] = c;
            }
        }
        Layout {
            columns,
            column_of,
            stage_of_column,
        }
    }
}

fn check(network: &Network, stats: Option<&StatsReport>) -> Result<(), RenderError> {
    if network.order() > MAX_ORDER {
        return Err(RenderError::OrderTooLarge(network.order()));
    }
    network.validate().map_err(InvalidNetwork)?;
    if let Some(s) = stats {
        if s.elements.len() != network.len() {
            return Err(RenderError::StatsMismatch {
                expected: network.len(),
                got: s.elements.len(),
            });
        }
    }
    Ok(())
}

/// Per-element slot labels, one per slot.
fn slot_labels(stats: &StatsReport) -> Vec<Vec<String>> {
    stats
        .elements
        .iter()
        .map(|e| e.slots.iter().map(label).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Element::*;

    #[test]
    fn overlapping_spans_get_separate_columns() {
        let net = Network::from_links(4, &[(1, 3), (2, 4), (1, 2), (3, 4)]);
        let l = Layout::new(&net);
        assert_eq!(l.columns, vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(l.stage_of_column, vec![0, 0, 1]);
        assert_eq!(l.column_of, vec![0, 1, 2, 2]);
    }

    #[test]
    fn fig3_layout() {
        let net = Network::new(3, vec![Link(1, 3), Fused2(1, 2, 3)]);
        assert_eq!(Layout::new(&net).columns, vec![vec![0], vec![1]]);
    }
}
