//! Network rewrites: pre-exchange (wire transposition), de-offending,
//! fusion into 2-ops, and a bounded search lowering the worst-case swap count.

use std::collections::{HashSet, VecDeque};

use crate::engine::{Engine, EngineError, Rational, StatsReport};
use crate::network::{Element, Network};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("target {target} out of range (network has {len} elements)")]
    TargetOutOfRange { target: usize, len: usize },
    #[error("target {0} is not a plain link")]
    TargetNotALink(usize),
    #[error("element {0} is fused; decompose the network first")]
    FusedElement(usize),
    #[error("transposition would reverse upstream link {index}")]
    InvertsLink { index: usize },
    #[error("order {order} exceeds the search cap of {cap}")]
    SearchLimit { order: usize, cap: usize },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Largest order accepted by [`minimize_max_swaps`].
pub const SEARCH_MAX_ORDER: usize = 8;

fn require_links(network: &Network) -> Result<(), TransformError> {
    match network.elements().iter().position(|e| !e.is_link()) {
        Some(idx) => Err(TransformError::FusedElement(idx)),
        None => Ok(()),
    }
}

fn weight() -> Rational {
    Rational::from_integer(2)
}

/// Relabels every link before `target` by the transposition of the target's
/// two wires.
///
/// The result computes the original network on an input with those two
/// positions exchanged, so sorting ability is preserved and the target's swap
/// probability `p` becomes `1 - p`. The rewrite is exact only when no upstream
/// link has its orientation reversed by the relabeling (a link sharing one
/// endpoint with the target whose other endpoint lies strictly between the
/// target's wires, or a copy of the target); such targets are rejected with
/// [`TransformError::InvertsLink`].
pub fn pre_exchange(network: &Network, target: usize) -> Result<Network, TransformError> {
    require_links(network)?;
    let (i, j) = match network.elements().get(target) {
        None => {
            return Err(TransformError::TargetOutOfRange {
                target,
                len: network.len(),
            })
        }
        Some(Element::Link(i, j)) => (*i, *j),
        Some(_) => return Err(TransformError::TargetNotALink(target)),
    };
    let tau = |w: usize| {
        if w == i {
            j
        } else if w == j {
            i
        } else {
            w
        }
    };
    let mut elements = Vec::with_capacity(network.len());
    for (index, e) in network.elements()[..target].iter().enumerate() {
        let Element::Link(a, b) = *e else {
            unreachable!("checked above")
        };
        let (a, b) = (tau(a), tau(b));
        if a > b {
            return Err(TransformError::InvertsLink { index });
        }
        elements.push(Element::Link(a, b));
    }
    elements.extend_from_slice(&network.elements()[target..]);
    Ok(network.with_elements(elements))
}

/// Repeatedly pre-exchanges the earliest link that swaps more often than not,
/// until none is left. Links whose transposition would reverse an upstream
/// link are skipped. After `len²` rounds the best-average network seen is
/// returned instead.
pub fn deoffend(engine: &Engine, network: &Network) -> Result<Network, TransformError> {
    require_links(network)?;
    let half = Rational::new(1, 2);
    let cap = network.len() * network.len();
    let mut current = network.clone();
    let mut stats = engine.exhaustive_stats(&current, weight())?;
    let mut best = (stats.avg_swaps, current.clone());
    for _ in 0..cap {
        let probs = stats.slot_probs();
        let next = probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > half)
            .find_map(|(t, _)| pre_exchange(&current, t).ok());
        let Some(next) = next else {
            return Ok(current);
        };
        current = next;
        stats = engine.exhaustive_stats(&current, weight())?;
        if stats.avg_swaps < best.0 {
            best = (stats.avg_swaps, current.clone());
        }
    }
    let no_offender = stats
        .slot_probs()
        .iter()
        .enumerate()
        .all(|(t, p)| *p <= half || pre_exchange(&current, t).is_err());
    Ok(if no_offender { current } else { best.1 })
}

/// Fuses guarded link pairs `(a,b),(b,c)` into 2-ops `(a,b,c)`.
///
/// A pair qualifies when the two links share exactly the middle wire `b` and
/// never both swap on any input. The second link may be separated from the
/// first by elements that touch neither `b` nor `c`; it is moved up next to
/// the first before fusing.
pub fn fuse(engine: &Engine, network: &Network) -> Result<Network, TransformError> {
    let mut elements = network.elements().to_vec();
    let mut i = 0;
    while i < elements.len() {
        if let Element::Link(a, b) = elements[i] {
            let mut k = i + 1;
            while k < elements.len() {
                let e = elements[k];
                if let Element::Link(lo, c) = e {
                    let clear =
                        lo == b && c > b && elements[i + 1..k].iter().all(|x| !x.touches(c));
                    if clear {
                        let mut trial = elements.clone();
                        let moved = trial.remove(k);
                        trial.insert(i + 1, moved);
                        let trial_net = network.with_elements(trial.clone());
                        if engine.noninterference_check(&trial_net, i, i + 1)? {
                            trial[i] = Element::Fused2(a, b, c);
                            trial.remove(i + 1);
                            elements = trial;
                            break;
                        }
                    }
                }
                if e.touches(b) || e.touches(a) && !e.is_link() {
                    break;
                }
                k += 1;
            }
        }
        i += 1;
    }
    Ok(network.with_elements(elements))
}

/// Result of [`minimize_max_swaps`].
#[derive(Debug, Clone)]
pub struct Minimized {
    pub network: Network,
    pub stats: StatsReport,
    pub original: StatsReport,
    /// Candidate networks generated during the search.
    pub explored: usize,
    /// True if the budget ran out before the search space was exhausted.
    pub budget_exhausted: bool,
}

impl Minimized {
    pub fn avg_preserved(&self) -> bool {
        self.stats.avg_swaps == self.original.avg_swaps
    }
}

/// Breadth-first search over sequences of pre-exchanges applied to links
/// whose swap probability is exactly 1/2. Returns the reachable network with
/// the smallest maximum swap count, ties broken by smaller average, then by
/// discovery order.
pub fn minimize_max_swaps(
    engine: &Engine,
    network: &Network,
    budget: usize,
) -> Result<Minimized, TransformError> {
    require_links(network)?;
    if network.order() > SEARCH_MAX_ORDER {
        return Err(TransformError::SearchLimit {
            order: network.order(),
            cap: SEARCH_MAX_ORDER,
        });
    }
    let half = Rational::new(1, 2);
    let original = engine.exhaustive_stats(network, weight())?;
    let mut seen: HashSet<Vec<Element>> = HashSet::new();
    seen.insert(network.elements().to_vec());
    let mut queue: VecDeque<(Network, StatsReport)> = VecDeque::new();
    queue.push_back((network.clone(), original.clone()));
    let mut best = (network.clone(), original.clone());
    let mut explored = 0;
    let mut budget_exhausted = false;

    'search: while let Some((net, stats)) = queue.pop_front() {
        for (t, p) in stats.slot_probs().iter().enumerate() {
            if *p != half {
                continue;
            }
            let Ok(next) = pre_exchange(&net, t) else {
                continue;
            };
            if !seen.insert(next.elements().to_vec()) {
                continue;
            }
            if explored == budget {
                budget_exhausted = true;
                break 'search;
            }
            explored += 1;
            let s = engine.exhaustive_stats(&next, weight())?;
            if (s.max_swaps, s.avg_swaps) < (best.1.max_swaps, best.1.avg_swaps) {
                best = (next.clone(), s.clone());
            }
            queue.push_back((next, s));
        }
    }
    Ok(Minimized {
        network: best.0,
        stats: best.1,
        original,
        explored,
        budget_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::rational::ratio;
    use crate::eval::output;
    use Element::*;

    fn links(order: usize, l: &[(usize, usize)]) -> Network {
        Network::from_links(order, l)
    }

    #[test]
    fn pre_exchange_fig1a_to_fig2a() {
        let fig1a = links(3, &[(2, 3), (1, 2), (2, 3)]);
        assert_eq!(
            pre_exchange(&fig1a, 1).unwrap(),
            links(3, &[(1, 3), (1, 2), (2, 3)])
        );
    }

    #[test]
    fn pre_exchange_fig1b_to_fig2b() {
        let fig1b = links(3, &[(2, 3), (1, 3), (1, 2)]);
        assert_eq!(
            pre_exchange(&fig1b, 2).unwrap(),
            links(3, &[(1, 3), (2, 3), (1, 2)])
        );
    }

    #[test]
    fn pre_exchange_knuth44_to_fig11a() {
        let k44 = links(4, &[(1, 2), (3, 4), (1, 3), (2, 4), (2, 3)]);
        let out = pre_exchange(&k44, 4).unwrap();
        assert_eq!(out, links(4, &[(1, 3), (2, 4), (1, 2), (3, 4), (2, 3)]));
        let e = Engine::new();
        assert_eq!(
            e.exhaustive_stats(&k44, weight()).unwrap().slot_probs()[4],
            ratio(2, 3)
        );
        assert_eq!(
            e.exhaustive_stats(&out, weight()).unwrap().slot_probs()[4],
            ratio(1, 3)
        );
    }

    #[test]
    fn pre_exchange_errors() {
        let fig1a = links(3, &[(2, 3), (1, 2), (2, 3)]);
        assert_eq!(
            pre_exchange(&fig1a, 3),
            Err(TransformError::TargetOutOfRange { target: 3, len: 3 })
        );
        // a copy of the target upstream would be reversed
        assert_eq!(
            pre_exchange(&fig1a, 2),
            Err(TransformError::InvertsLink { index: 0 })
        );
        let fused = Network::new(3, vec![Link(1, 3), Fused2(1, 2, 3)]);
        assert_eq!(
            pre_exchange(&fused, 0),
            Err(TransformError::FusedElement(1))
        );
    }

    #[test]
    fn deoffend_examples() {
        let e = Engine::new();
        let fig1a = links(3, &[(2, 3), (1, 2), (2, 3)]);
        let fig2a = links(3, &[(1, 3), (1, 2), (2, 3)]);
        assert_eq!(deoffend(&e, &fig1a).unwrap(), fig2a);
        assert_eq!(deoffend(&e, &fig2a).unwrap(), fig2a);
        let empty = Network::new(3, vec![]);
        assert_eq!(deoffend(&e, &empty).unwrap(), empty);
    }

    #[test]
    fn fuse_examples() {
        let e = Engine::new();
        let fig2a = links(3, &[(1, 3), (1, 2), (2, 3)]);
        assert_eq!(
            fuse(&e, &fig2a).unwrap(),
            Network::new(3, vec![Link(1, 3), Fused2(1, 2, 3)])
        );
        let unguarded = links(3, &[(1, 2), (2, 3)]);
        assert_eq!(fuse(&e, &unguarded).unwrap(), unguarded);
        let apart = links(4, &[(1, 2), (3, 4)]);
        assert_eq!(fuse(&e, &apart).unwrap(), apart);
    }

    #[test]
    fn fuse_moves_past_disjoint_elements() {
        let e = Engine::new();
        let net = links(5, &[(1, 3), (1, 2), (4, 5), (2, 3)]);
        let fused = fuse(&e, &net).unwrap();
        assert_eq!(fused.elements(), &[Link(1, 3), Fused2(1, 2, 3), Link(4, 5)]);
        for input in [[5, 4, 3, 2, 1], [2, 3, 1, 5, 4], [3, 1, 2, 4, 5]] {
            assert_eq!(output(&net, &input), output(&fused, &input));
        }
    }

    #[test]
    fn minimize_fig11a_finds_fig12() {
        let e = Engine::new();
        let fig11a = links(4, &[(1, 3), (2, 4), (1, 2), (3, 4), (2, 3)]);
        let m = minimize_max_swaps(&e, &fig11a, 1000).unwrap();
        assert_eq!(
            m.network,
            links(4, &[(2, 3), (1, 4), (1, 2), (3, 4), (2, 3)])
        );
        assert_eq!(m.stats.max_swaps, 4);
        assert!(m.avg_preserved());
        assert!(!m.budget_exhausted);
        // fixed point
        let again = minimize_max_swaps(&e, &m.network, 1000).unwrap();
        assert_eq!(again.network, m.network);
    }

    #[test]
    fn minimize_budget_flag() {
        let e = Engine::new();
        let fig11a = links(4, &[(1, 3), (2, 4), (1, 2), (3, 4), (2, 3)]);
        let m = minimize_max_swaps(&e, &fig11a, 0).unwrap();
        assert!(m.budget_exhausted);
        assert_eq!(m.network, fig11a);
    }

    #[test]
    fn minimize_rejects_large_orders() {
        let e = Engine::new();
        assert_eq!(
            minimize_max_swaps(&e, &Network::new(9, vec![]), 10).unwrap_err(),
            TransformError::SearchLimit { order: 9, cap: 8 }
        );
    }
}
