//! Deterministic evaluation of elements and networks.
//!
//! All compare-exchanges are ascending (minimum on the lower-numbered wire)
//! and strict: equal values never swap.

use crate::network::{Element, Network};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("input has {got} values but the network has order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {element}: endpoint {wire} beyond state length {len}")]
    EndpointOutOfRange {
        element: usize,
        wire: usize,
        len: usize,
    },
}

/// What a single element did to the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    swapped: [bool; 3],
    slots: usize,
    pub comparisons: u32,
}

impl Outcome {
    /// Per-slot swap flags in slot order (`(a,b)`, `(b,c)`, `(c,d)`).
    pub fn swapped(&self) -> &[bool] {
        &self.swapped[..self.slots]
    }

    pub fn swaps(&self) -> u32 {
        self.swapped().iter().filter(|&&s| s).count() as u32
    }

    pub fn activated(&self) -> bool {
        self.swapped().iter().any(|&s| s)
    }
}

#[inline]
fn ce<T: Ord>(state: &mut [T], i: usize, j: usize) -> bool {
    if state[i - 1] > state[j - 1] {
        state.swap(i - 1, j - 1);
        true
    } else {
        false
    }
}

/// Applies one element without bounds checking beyond the slice's own.
///
/// Callers must ensure every endpoint is within `1..=state.len()`.
#[inline]
pub fn apply_unchecked<T: Ord>(element: &Element, state: &mut [T]) -> Outcome {
    match *element {
        Element::Link(i, j) => Outcome {
            swapped: [ce(state, i, j), false, false],
            slots: 1,
            comparisons: 1,
        },
        Element::Fused2(a, b, c) => {
            if ce(state, a, b) {
                Outcome {
                    swapped: [true, false, false],
                    slots: 2,
                    comparisons: 1,
                }
            } else {
                Outcome {
                    swapped: [false, ce(state, b, c), false],
                    slots: 2,
                    comparisons: 2,
                }
            }
        }
        Element::Fused3(a, b, c, d) => {
            if ce(state, b, c) {
                Outcome {
                    swapped: [false, true, false],
                    slots: 3,
                    comparisons: 1,
                }
            } else {
                let left = ce(state, a, b);
                let right = ce(state, c, d);
                Outcome {
                    swapped: [left, false, right],
                    slots: 3,
                    comparisons: 3,
                }
            }
        }
    }
}

/// Applies one element to `state` in place.
pub fn apply_element<T: Ord>(element: &Element, state: &mut [T]) -> Result<Outcome, EvalError> {
    apply_checked(0, element, state)
}

fn apply_checked<T: Ord>(
    index: usize,
    element: &Element,
    state: &mut [T],
) -> Result<Outcome, EvalError> {
    for &w in element.wires().as_slice() {
        if w == 0 || w > state.len() {
            return Err(EvalError::EndpointOutOfRange {
                element: index,
                wire: w,
                len: state.len(),
            });
        }
    }
    Ok(apply_unchecked(element, state))
}

/// One row of an evaluation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord<T> {
    pub swapped: Vec<bool>,
    pub comparisons: u32,
    /// State after the element ran.
    pub state: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalTrace<T> {
    pub output: Vec<T>,
    pub steps: Vec<StepRecord<T>>,
    pub total_swaps: u32,
    pub total_comparisons: u32,
}

/// Runs the network on `input`, recording every step.
pub fn run<T: Ord + Clone>(network: &Network, input: &[T]) -> Result<EvalTrace<T>, EvalError> {
    if input.len() != network.order() {
        return Err(EvalError::LengthMismatch {
            expected: network.order(),
            got: input.len(),
        });
    }
    let mut state = input.to_vec();
    let mut steps = Vec::with_capacity(network.len());
    let mut total_swaps = 0;
    let mut total_comparisons = 0;
    for (idx, e) in network.elements().iter().enumerate() {
        let out = apply_checked(idx, e, &mut state)?;
        total_swaps += out.swaps();
        total_comparisons += out.comparisons;
        steps.push(StepRecord {
            swapped: out.swapped().to_vec(),
            comparisons: out.comparisons,
            state: state.clone(),
        });
    }
    Ok(EvalTrace {
        output: state,
        steps,
        total_swaps,
        total_comparisons,
    })
}

/// Runs the network and returns only the output.
pub fn output<T: Ord + Clone>(network: &Network, input: &[T]) -> Result<Vec<T>, EvalError> {
    if input.len() != network.order() {
        return Err(EvalError::LengthMismatch {
            expected: network.order(),
            got: input.len(),
        });
    }
    let mut state = input.to_vec();
    for (idx, e) in network.elements().iter().enumerate() {
        apply_checked(idx, e, &mut state)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Element::*;

    #[test]
    fn link_on_sorted_pair() {
        let mut s = [1, 2];
        let o = apply_element(&Link(1, 2), &mut s).unwrap();
        assert_eq!(s, [1, 2]);
        assert_eq!(o.swaps(), 0);
        assert_eq!(o.comparisons, 1);
    }

    #[test]
    fn ties_do_not_swap() {
        let mut s = [5, 5];
        let o = apply_element(&Link(1, 2), &mut s).unwrap();
        assert!(!o.activated());
    }

    #[test]
    fn fused2_after_guard_on_312() {
        // Guard (1,3) turns (3,1,2) into (2,1,3); the 2-op then swaps (1,2)
        // and elides (2,3).
        let mut s = [3, 1, 2];
        let g = apply_element(&Link(1, 3), &mut s).unwrap();
        assert_eq!(s, [2, 1, 3]);
        let o = apply_element(&Fused2(1, 2, 3), &mut s).unwrap();
        assert_eq!(s, [1, 2, 3]);
        assert_eq!(o.swapped(), &[true, false]);
        assert_eq!(o.comparisons, 1);
        assert_eq!(g.swaps() + o.swaps(), 2);
    }

    #[test]
    fn fused2_without_swap_runs_second_ce() {
        let mut s = [1, 3, 2];
        let o = apply_element(&Fused2(1, 2, 3), &mut s).unwrap();
        assert_eq!(s, [1, 2, 3]);
        assert_eq!(o.swapped(), &[false, true]);
        assert_eq!(o.comparisons, 2);
    }

    #[test]
    fn fused3_central_transposition() {
        let mut s = [1, 3, 2, 4];
        let o = apply_element(&Fused3(1, 2, 3, 4), &mut s).unwrap();
        assert_eq!(s, [1, 2, 3, 4]);
        assert_eq!(o.swapped(), &[false, true, false]);
        assert_eq!(o.comparisons, 1);
    }

    #[test]
    fn fused3_wings() {
        let mut s = [2, 1, 4, 3];
        let o = apply_element(&Fused3(1, 2, 3, 4), &mut s).unwrap();
        assert_eq!(s, [1, 2, 3, 4]);
        assert_eq!(o.swapped(), &[true, false, true]);
        assert_eq!(o.comparisons, 3);
    }

    #[test]
    fn endpoint_beyond_state() {
        let mut s = [1, 2];
        assert_eq!(
            apply_element(&Link(1, 3), &mut s),
            Err(EvalError::EndpointOutOfRange {
                element: 0,
                wire: 3,
                len: 2
            })
        );
    }

    #[test]
    fn run_fig1a_on_reverse() {
        let n = Network::from_links(3, &[(2, 3), (1, 2), (2, 3)]);
        let t = run(&n, &[3, 2, 1]).unwrap();
        assert_eq!(t.output, vec![1, 2, 3]);
        assert_eq!(t.total_swaps, 3);
        assert_eq!(t.total_comparisons, 3);
        assert_eq!(t.steps[0].state, vec![3, 1, 2]);
        assert_eq!(t.steps[1].state, vec![1, 3, 2]);
    }

    #[test]
    fn run_fig12_worst_case() {
        let n = Network::from_links(4, &[(2, 3), (1, 4), (1, 2), (3, 4), (2, 3)]);
        let t = run(&n, &[3, 4, 1, 2]).unwrap();
        assert_eq!(t.output, vec![1, 2, 3, 4]);
        assert_eq!(t.total_swaps, 4);
        assert!(!t.steps[4].swapped[0]);
    }

    #[test]
    fn run_sorted_input_compares_everywhere() {
        let n = Network::new(
            4,
            vec![Link(1, 3), Link(2, 4), Fused3(1, 2, 3, 4), Link(2, 3)],
        );
        let t = run(&n, &[1, 2, 3, 4]).unwrap();
        assert_eq!(t.total_swaps, 0);
        assert_eq!(t.total_comparisons, 1 + 1 + 3 + 1);
    }

    #[test]
    fn run_length_mismatch() {
        let n = Network::from_links(3, &[(1, 2)]);
        assert_eq!(
            run(&n, &[1, 2]),
            Err(EvalError::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn unguarded_fused2_differs_from_decomposition() {
        let fused = Network::new(3, vec![Fused2(1, 2, 3)]);
        assert_eq!(output(&fused, &[3, 1, 2]).unwrap(), vec![1, 3, 2]);
        assert_eq!(
            output(&fused.decompose(), &[3, 1, 2]).unwrap(),
            vec![1, 2, 3]
        );
    }
}
