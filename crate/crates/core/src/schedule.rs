//! Partitioning a network into parallel stages.

use crate::eval::{apply_unchecked, EvalError};
use crate::network::Network;

/// Stages of element indices (0-based). Elements within a stage touch
/// pairwise-disjoint wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    stages: Vec<Vec<usize>>,
    stage_of: Vec<usize>,
}

impl Schedule {
    pub fn stages(&self) -> &[Vec<usize>] {
        &self.stages
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// 0-based stage index of each element.
    pub fn stage_of(&self) -> &[usize] {
        &self.stage_of
    }
}

/// Greedy earliest-fit list scheduling: each element goes into the stage
/// right after the latest stage of any earlier element sharing one of its
/// wires. The stage count equals the longest chain of wire-sharing elements,
/// so it is minimal.
pub fn schedule(network: &Network) -> Schedule {
    let mut last = vec![0usize; network.order() + 1];
    let mut stage_of = Vec::with_capacity(network.len());
    let mut stages: Vec<Vec<usize>> = Vec::new();
    for (idx, e) in network.elements().iter().enumerate() {
        let w = e.wires();
        let s = w
            .as_slice()
            .iter()
            .map(|&x| last.get(x).copied().unwrap_or(0))
            .max()
            .unwrap_or(0);
        for &x in w.as_slice() {
            if x < last.len() {
                last[x] = s + 1;
            }
        }
        if stages.len() <= s {
            stages.push(Vec::new());
        }
        stages[s].push(idx);
        stage_of.push(s);
    }
    Schedule { stages, stage_of }
}

/// Executes a network stage by stage. Within each stage the elements run in
/// reverse sequence order, which must not matter for a valid schedule.
pub fn run_staged<T: Ord + Clone>(
    network: &Network,
    schedule: &Schedule,
    input: &[T],
) -> Result<Vec<T>, EvalError> {
    if input.len() != network.order() {
        return Err(EvalError::LengthMismatch {
            expected: network.order(),
            got: input.len(),
        });
    }
    let mut state = input.to_vec();
    for stage in schedule.stages() {
        for &idx in stage.iter().rev() {
            let e = &network.elements()[idx];
            if let Some(&w) = e
                .wires()
                .as_slice()
                .iter()
                .find(|&&w| w == 0 || w > state.len())
            {
                return Err(EvalError::EndpointOutOfRange {
                    element: idx,
                    wire: w,
                    len: state.len(),
                });
            }
            apply_unchecked(e, &mut state);
        }
    }
    Ok(state)
}
