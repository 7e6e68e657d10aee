use super::enumerate::{fold_binary, fold_permutations};
use super::{Engine, EngineError};
use crate::eval::apply_unchecked;
use crate::network::{Element, Network, Wire};

fn run_in_place(network: &Network, state: &mut [u8]) {
    for e in network.elements() {
        apply_unchecked(e, state);
    }
}

/// True if a fused element would elide a compare-exchange that swaps.
fn interferes(element: &Element, s: &[u8]) -> bool {
    match *element {
        Element::Link(..) => false,
        Element::Fused2(a, b, c) => s[a - 1] > s[b - 1] && s[a - 1] > s[c - 1],
        Element::Fused3(a, b, c, d) => {
            s[b - 1] > s[c - 1] && (s[a - 1] > s[c - 1] || s[b - 1] > s[d - 1])
        }
    }
}

fn is_sorted(v: &[u8]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

impl Engine {
    /// True iff no fused element ever elides a swapping compare-exchange,
    /// decided on 0-1 vectors. Interference on some permutation implies
    /// interference on one of its threshold images and vice versa, so when
    /// this holds the network behaves like its decomposition and the 0-1
    /// principle applies.
    pub fn interference_free(&self, network: &Network) -> Result<bool, EngineError> {
        self.check_binary(network)?;
        if network.is_all_links() {
            return Ok(true);
        }
        let n = network.order();
        Ok(self.install(|| {
            fold_binary(
                n,
                || true,
                |ok, v| {
                    if *ok {
                        let mut s = v.to_vec();
                        for e in network.elements() {
                            if interferes(e, &s) {
                                *ok = false;
                                return;
                            }
                            apply_unchecked(e, &mut s);
                        }
                    }
                },
                |a, b| a && b,
            )
        }))
    }

    /// True iff the network sorts every input. Decided on all 0-1 vectors,
    /// or on all permutations if some fused element interferes.
    pub fn verify_sorts(&self, network: &Network) -> Result<bool, EngineError> {
        if !self.interference_free(network)? {
            return Ok(self.unsorted_permutations(network)? == 0);
        }
        let n = network.order();
        Ok(self.install(|| {
            fold_binary(
                n,
                || true,
                |ok, v| {
                    if *ok {
                        let mut s = v.to_vec();
                        run_in_place(network, &mut s);
                        *ok = is_sorted(&s);
                    }
                },
                |a, b| a && b,
            )
        }))
    }

    /// Number of permutations of `1..=N` the network leaves unsorted.
    pub fn unsorted_permutations(&self, network: &Network) -> Result<u64, EngineError> {
        self.check_permutation(network)?;
        let n = network.order();
        Ok(self.install(|| {
            fold_permutations(
                n,
                || 0u64,
                |count, p| {
                    let mut s = p.to_vec();
                    run_in_place(network, &mut s);
                    if !is_sorted(&s) {
                        *count += 1;
                    }
                },
                |a, b| a + b,
            )
        }))
    }

    /// True iff output wire `position` always holds the `rank`-th smallest value.
    pub fn verify_selection(
        &self,
        network: &Network,
        rank: usize,
        position: Wire,
    ) -> Result<bool, EngineError> {
        let n = network.order();
        for (what, value) in [("rank", rank), ("position", position)] {
            if value == 0 || value > n {
                return Err(EngineError::RankOutOfRange {
                    what,
                    value,
                    order: n,
                });
            }
        }
        self.check_permutation(network)?;
        Ok(self.install(|| {
            fold_permutations(
                n,
                || true,
                |ok, p| {
                    if *ok {
                        let mut s = p.to_vec();
                        run_in_place(network, &mut s);
                        *ok = s[position - 1] as usize == rank;
                    }
                },
                |a, b| a && b,
            )
        }))
    }

    /// Output wires that always hold their sorted-rank value. Decided on 0-1
    /// vectors, or on all permutations if some fused element interferes.
    pub fn settled_positions(&self, network: &Network) -> Result<Vec<Wire>, EngineError> {
        if !self.interference_free(network)? {
            self.check_permutation(network)?;
            return Ok(self.install(|| settled_by_permutations(network)));
        }
        let n = network.order();
        let mask = self.install(|| {
            fold_binary(
                n,
                || vec![true; n],
                |settled, v| {
                    let ones = v.iter().filter(|&&b| b == 1).count();
                    let mut s = v.to_vec();
                    run_in_place(network, &mut s);
                    for (w, ok) in settled.iter_mut().enumerate() {
                        let want = u8::from(w >= n - ones);
                        if s[w] != want {
                            *ok = false;
                        }
                    }
                },
                |a, b| a.iter().zip(&b).map(|(x, y)| *x && *y).collect(),
            )
        });
        Ok(mask
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(w, _)| w + 1)
            .collect())
    }

    /// True iff the two links never both swap on any permutation input when
    /// the whole network runs in sequence. Indices are 0-based.
    pub fn noninterference_check(
        &self,
        network: &Network,
        first: usize,
        second: usize,
    ) -> Result<bool, EngineError> {
        let len = network.len();
        for index in [first, second] {
            if index >= len {
                return Err(EngineError::IndexOutOfRange { index, len });
            }
        }
        if first >= second {
            return Err(EngineError::NotOrdered { first, second });
        }
        let (a, b) = (network.elements()[first], network.elements()[second]);
        for (idx, e) in [(first, a), (second, b)] {
            if !e.is_link() {
                return Err(EngineError::NotALink(idx));
            }
        }
        let shared = a
            .wires()
            .as_slice()
            .iter()
            .filter(|&&w| b.touches(w))
            .count();
        match shared {
            0 => return Err(EngineError::NoSharedWire { first, second }),
            1 => {}
            _ => return Err(EngineError::SharesBothWires { first, second }),
        }
        self.check_permutation(network)?;
        let n = network.order();
        let elements = network.elements();
        Ok(self.install(|| {
            fold_permutations(
                n,
                || true,
                |ok, p| {
                    if !*ok {
                        return;
                    }
                    let mut s = p.to_vec();
                    let mut first_swapped = false;
                    for (idx, e) in elements[..=second].iter().enumerate() {
                        let out = apply_unchecked(e, &mut s);
                        if idx == first {
                            first_swapped = out.activated();
                        }
                        if idx == second && first_swapped && out.activated() {
                            *ok = false;
                        }
                    }
                },
                |a, b| a && b,
            )
        }))
    }
}

/// Settled wires by the permutation definition: `output[w] == w` for every
/// permutation input. Used to cross-check the 0-1 route.
pub fn settled_by_permutations(network: &Network) -> Vec<Wire> {
    let n = network.order();
    let mask = fold_permutations(
        n,
        || vec![true; n],
        |settled, p| {
            let mut s = p.to_vec();
            run_in_place(network, &mut s);
            for (w, ok) in settled.iter_mut().enumerate() {
                if s[w] as usize != w + 1 {
                    *ok = false;
                }
            }
        },
        |a, b| a.iter().zip(&b).map(|(x, y)| *x && *y).collect(),
    );
    mask.iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(w, _)| w + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Element::*;

    fn fig10a() -> Network {
        Network::new(4, vec![Link(1, 3), Link(2, 4), Fused3(1, 2, 3, 4)])
    }

    #[test]
    fn unguarded_two_op_falls_back_to_permutations() {
        // on 0-1 inputs this sorts, but (3,1,2) comes out as (1,3,2)
        let net = Network::new(3, vec![Link(2, 3), Fused2(1, 2, 3)]);
        let e = Engine::new();
        assert!(!e.interference_free(&net).unwrap());
        assert!(!e.verify_sorts(&net).unwrap());
        assert_eq!(
            e.settled_positions(&net).unwrap(),
            settled_by_permutations(&net)
        );
        assert!(e.interference_free(&fig10a()).unwrap());
    }

    #[test]
    fn sorts() {
        let e = Engine::new();
        assert!(e
            .verify_sorts(&Network::from_links(3, &[(1, 3), (1, 2), (2, 3)]))
            .unwrap());
        assert!(!e.verify_sorts(&fig10a()).unwrap());
        assert!(e.verify_sorts(&Network::new(1, vec![])).unwrap());
    }

    #[test]
    fn fig10a_leaves_one_sixth_unsorted() {
        assert_eq!(Engine::new().unsorted_permutations(&fig10a()).unwrap(), 4);
    }

    #[test]
    fn selection() {
        let e = Engine::new();
        assert!(e.verify_selection(&fig10a(), 1, 1).unwrap());
        assert!(e.verify_selection(&fig10a(), 4, 4).unwrap());
        assert!(!e.verify_selection(&fig10a(), 2, 2).unwrap());
        assert!(matches!(
            e.verify_selection(&fig10a(), 5, 1),
            Err(EngineError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn settled() {
        let e = Engine::new();
        let fig1a = Network::from_links(3, &[(2, 3), (1, 2), (2, 3)]);
        assert_eq!(e.settled_positions(&fig1a).unwrap(), vec![1, 2, 3]);
        assert!(e
            .settled_positions(&Network::new(2, vec![]))
            .unwrap()
            .is_empty());
        assert_eq!(e.settled_positions(&fig10a()).unwrap(), vec![1, 4]);
        assert_eq!(settled_by_permutations(&fig10a()), vec![1, 4]);
    }

    #[test]
    fn noninterference() {
        let e = Engine::new();
        let fig2a = Network::from_links(3, &[(1, 3), (1, 2), (2, 3)]);
        assert!(e.noninterference_check(&fig2a, 1, 2).unwrap());
        let bare = Network::from_links(3, &[(1, 2), (2, 3)]);
        assert!(!e.noninterference_check(&bare, 0, 1).unwrap());
        let disjoint = Network::from_links(4, &[(1, 2), (3, 4)]);
        assert_eq!(
            e.noninterference_check(&disjoint, 0, 1),
            Err(EngineError::NoSharedWire {
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            e.noninterference_check(&fig2a, 2, 1),
            Err(EngineError::NotOrdered {
                first: 2,
                second: 1
            })
        );
        let same = Network::from_links(3, &[(1, 2), (1, 2)]);
        assert!(matches!(
            e.noninterference_check(&same, 0, 1),
            Err(EngineError::SharesBothWires { .. })
        ));
        assert_eq!(
            e.noninterference_check(&fig10a(), 1, 2),
            Err(EngineError::NotALink(2))
        );
    }
}
