use std::collections::BTreeMap;

use serde::Serialize;

use super::enumerate::{factorial, fold_permutations};
use super::rational::{serde_fraction, Rational};
use super::{Engine, EngineError};
use crate::eval::apply_unchecked;
use crate::network::{Network, Wire};
use crate::schedule::schedule;

/// How many worst-case inputs a report keeps (lexicographically smallest first).
pub const WORST_INPUTS_KEPT: usize = 64;

/// Swap statistics of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementStats {
    /// Swap probability of each constituent compare-exchange, in slot order.
    pub slots: Vec<Rational>,
    /// Probability that the element swapped at all.
    pub activation: Rational,
}

/// Exact statistics of a network over all permutations of `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsReport {
    pub order: usize,
    pub links: usize,
    pub elements: Vec<ElementStats>,
    pub avg_swaps: Rational,
    pub max_swaps: u32,
    /// Inputs attaining `max_swaps`, at most [`WORST_INPUTS_KEPT`] of them.
    pub worst_inputs: Vec<Vec<u8>>,
    /// Total number of inputs attaining `max_swaps`.
    pub worst_count: u64,
    pub avg_comparisons: Rational,
    pub max_comparisons: u32,
    pub histogram: BTreeMap<u32, u64>,
    /// Wires that hold their sorted-rank value for every input.
    pub settled: Vec<Wire>,
    pub disorder: usize,
    pub stage_count: usize,
    pub cost_weight: Rational,
    /// `avg_comparisons + cost_weight * avg_swaps`.
    pub weighted_cost: Rational,
    pub inputs: u64,
}

impl StatsReport {
    /// Flat per-link probabilities (one per constituent compare-exchange).
    pub fn slot_probs(&self) -> Vec<Rational> {
        self.elements
            .iter()
            .flat_map(|e| e.slots.iter().copied())
            .collect()
    }

    pub fn disorder_fraction(&self) -> Rational {
        if self.order == 0 {
            Rational::from_integer(0)
        } else {
            Rational::new(self.disorder as i64, self.order as i64)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let activation: Vec<Rational> = self.elements.iter().map(|e| e.activation).collect();
        let doc = StatsJson {
            order: self.order,
            links: self.links,
            element_probs: &self.slot_probs(),
            element_activation: &activation,
            avg_swaps: &self.avg_swaps,
            max_swaps: self.max_swaps,
            worst_inputs: &self.worst_inputs,
            worst_count: self.worst_count,
            avg_comparisons: &self.avg_comparisons,
            max_comparisons: self.max_comparisons,
            histogram: &self.histogram,
            settled: &self.settled,
            disorder: self.disorder,
            disorder_fraction: &self.disorder_fraction(),
            stages: self.stage_count,
            weighted_cost: &self.weighted_cost,
        };
        serde_json::to_value(doc).expect("stats serialize")
    }
}

#[derive(Serialize)]
struct StatsJson<'a> {
    order: usize,
    links: usize,
    #[serde(serialize_with = "serde_fraction::serialize_vec")]
    element_probs: &'a [Rational],
    #[serde(serialize_with = "serde_fraction::serialize_vec")]
    element_activation: &'a [Rational],
    #[serde(serialize_with = "serde_fraction::serialize")]
    avg_swaps: &'a Rational,
    max_swaps: u32,
    worst_inputs: &'a [Vec<u8>],
    worst_count: u64,
    #[serde(serialize_with = "serde_fraction::serialize")]
    avg_comparisons: &'a Rational,
    max_comparisons: u32,
    histogram: &'a BTreeMap<u32, u64>,
    settled: &'a [Wire],
    disorder: usize,
    #[serde(serialize_with = "serde_fraction::serialize")]
    disorder_fraction: &'a Rational,
    stages: usize,
    #[serde(serialize_with = "serde_fraction::serialize")]
    weighted_cost: &'a Rational,
}

struct Acc {
    slots: Vec<u64>,
    activations: Vec<u64>,
    hist: Vec<u64>,
    comparisons: u64,
    max_comparisons: u32,
    settled: Vec<bool>,
    max_swaps: u32,
    worst_count: u64,
    worst: Vec<Vec<u8>>,
}

impl Acc {
    fn new(network: &Network) -> Acc {
        Acc {
            slots: vec![0; network.link_count()],
            activations: vec![0; network.len()],
            hist: vec![0; network.link_count() + 1],
            comparisons: 0,
            max_comparisons: 0,
            settled: vec![true; network.order()],
            max_swaps: 0,
            worst_count: 0,
            worst: Vec::new(),
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (a, b) in self.slots.iter_mut().zip(&other.slots) {
            *a += b;
        }
        for (a, b) in self.activations.iter_mut().zip(&other.activations) {
            *a += b;
        }
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        self.comparisons += other.comparisons;
        self.max_comparisons = self.max_comparisons.max(other.max_comparisons);
        for (a, b) in self.settled.iter_mut().zip(&other.settled) {
            *a &= b;
        }
        if other.worst_count > 0 {
            if self.worst_count == 0 || other.max_swaps > self.max_swaps {
                self.max_swaps = other.max_swaps;
                self.worst_count = other.worst_count;
                self.worst = other.worst;
            } else if other.max_swaps == self.max_swaps {
                self.worst_count += other.worst_count;
                let room = WORST_INPUTS_KEPT.saturating_sub(self.worst.len());
                self.worst.extend(other.worst.into_iter().take(room));
            }
        }
        self
    }
}

impl Engine {
    /// Exact swap and comparison statistics over all `N!` inputs.
    pub fn exhaustive_stats(
        &self,
        network: &Network,
        cost_weight: Rational,
    ) -> Result<StatsReport, EngineError> {
        self.check_permutation(network)?;
        let n = network.order();
        let elements = network.elements();
        let acc = self.install(|| {
            fold_permutations(
                n,
                || Acc::new(network),
                |acc, perm| {
                    let mut state = [0u8; 32];
                    let state = &mut state[..n];
                    state.copy_from_slice(perm);
                    let mut offset = 0;
                    let mut swaps = 0u32;
                    let mut comparisons = 0u32;
                    for (idx, e) in elements.iter().enumerate() {
                        let out = apply_unchecked(e, state);
                        let mut any = false;
                        for (k, &s) in out.swapped().iter().enumerate() {
                            if s {
                                acc.slots[offset + k] += 1;
                                swaps += 1;
                                any = true;
                            }
                        }
                        if any {
                            acc.activations[idx] += 1;
                        }
                        offset += out.swapped().len();
                        comparisons += out.comparisons;
                    }
                    acc.hist[swaps as usize] += 1;
                    acc.comparisons += comparisons as u64;
                    acc.max_comparisons = acc.max_comparisons.max(comparisons);
                    for (w, s) in acc.settled.iter_mut().enumerate() {
                        if state[w] as usize != w + 1 {
                            *s = false;
                        }
                    }
                    if acc.worst_count == 0 || swaps > acc.max_swaps {
                        acc.max_swaps = swaps;
                        acc.worst_count = 1;
                        acc.worst.clear();
                        acc.worst.push(perm.to_vec());
                    } else if swaps == acc.max_swaps {
                        acc.worst_count += 1;
                        if acc.worst.len() < WORST_INPUTS_KEPT {
                            acc.worst.push(perm.to_vec());
                        }
                    }
                },
                Acc::merge,
            )
        });

        let total = factorial(n) as i64;
        let frac = |c: u64| Rational::new(c as i64, total);
        let mut element_stats = Vec::with_capacity(elements.len());
        let mut offset = 0;
        for (idx, e) in elements.iter().enumerate() {
            let k = e.slot_count();
            element_stats.push(ElementStats {
                slots: acc.slots[offset..offset + k]
                    .iter()
                    .map(|&c| frac(c))
                    .collect(),
                activation: frac(acc.activations[idx]),
            });
            offset += k;
        }
        let histogram: BTreeMap<u32, u64> = acc
            .hist
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (k as u32, c))
            .collect();
        let swap_total: u64 = acc.slots.iter().sum();
        let avg_swaps = frac(swap_total);
        let avg_comparisons = frac(acc.comparisons);
        let settled: Vec<Wire> = if n == 0 {
            Vec::new()
        } else {
            acc.settled
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .map(|(w, _)| w + 1)
                .collect()
        };
        Ok(StatsReport {
            order: n,
            links: network.link_count(),
            elements: element_stats,
            avg_swaps,
            max_swaps: acc.max_swaps,
            worst_inputs: acc.worst,
            worst_count: acc.worst_count,
            avg_comparisons,
            max_comparisons: acc.max_comparisons,
            histogram,
            disorder: n - settled.len(),
            settled,
            stage_count: schedule(network).stage_count(),
            cost_weight,
            weighted_cost: avg_comparisons + cost_weight * avg_swaps,
            inputs: total as u64,
        })
    }

    /// Distribution of total swaps over all `N!` inputs.
    pub fn histogram(&self, network: &Network) -> Result<BTreeMap<u32, u64>, EngineError> {
        Ok(self
            .exhaustive_stats(network, Rational::from_integer(2))?
            .histogram)
    }
}
