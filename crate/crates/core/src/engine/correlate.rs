use super::enumerate::fold_permutations;
use super::rational::Rational;
use super::{Engine, EngineError};
use crate::eval::apply_unchecked;
use crate::network::Network;

/// Joint swap outcomes of two elements over all `N!` inputs.
///
/// `counts[a][b]` counts inputs where the first element swapped (`a == 1`)
/// or not (`a == 0`), and likewise `b` for the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointTable {
    pub counts: [[u64; 2]; 2],
    pub total: u64,
}

impl JointTable {
    fn frac(&self, c: u64) -> Rational {
        Rational::new(c as i64, self.total as i64)
    }

    pub fn marginal_first(&self) -> Rational {
        self.frac(self.counts[1][0] + self.counts[1][1])
    }

    pub fn marginal_second(&self) -> Rational {
        self.frac(self.counts[0][1] + self.counts[1][1])
    }

    pub fn both(&self) -> Rational {
        self.frac(self.counts[1][1])
    }

    /// P(second swaps | first swaps); `None` if the first never swaps.
    pub fn second_given_first(&self) -> Option<Rational> {
        let given = self.counts[1][0] + self.counts[1][1];
        (given > 0).then(|| Rational::new(self.counts[1][1] as i64, given as i64))
    }

    /// P(first swaps | second swaps); `None` if the second never swaps.
    pub fn first_given_second(&self) -> Option<Rational> {
        let given = self.counts[0][1] + self.counts[1][1];
        (given > 0).then(|| Rational::new(self.counts[1][1] as i64, given as i64))
    }
}

impl Engine {
    /// Cross-tabulates whether elements `i` and `j` (0-based) swap. For a
    /// fused element "swaps" means any of its slots swapped.
    pub fn joint_swap_table(
        &self,
        network: &Network,
        i: usize,
        j: usize,
    ) -> Result<JointTable, EngineError> {
        let len = network.len();
        for index in [i, j] {
            if index >= len {
                return Err(EngineError::IndexOutOfRange { index, len });
            }
        }
        self.check_permutation(network)?;
        let n = network.order();
        let last = i.max(j);
        let elements = &network.elements()[..=last];
        let counts = self.install(|| {
            fold_permutations(
                n,
                || [[0u64; 2]; 2],
                |acc, p| {
                    let mut s = p.to_vec();
                    let (mut si, mut sj) = (false, false);
                    for (idx, e) in elements.iter().enumerate() {
                        let fired = apply_unchecked(e, &mut s).activated();
                        if idx == i {
                            si = fired;
                        }
                        if idx == j {
                            sj = fired;
                        }
                    }
                    acc[si as usize][sj as usize] += 1;
                },
                |mut a, b| {
                    for x in 0..2 {
                        for y in 0..2 {
                            a[x][y] += b[x][y];
                        }
                    }
                    a
                },
            )
        });
        let total = counts.iter().flatten().sum();
        Ok(JointTable { counts, total })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::rational::ratio;

    fn fig12() -> Network {
        Network::from_links(4, &[(2, 3), (1, 4), (1, 2), (3, 4), (2, 3)])
    }

    #[test]
    fn fig12_links_three_and_four() {
        let t = Engine::new().joint_swap_table(&fig12(), 2, 3).unwrap();
        assert_eq!(t.total, 24);
        assert_eq!(t.marginal_first(), ratio(1, 2));
        assert_eq!(t.marginal_second(), ratio(1, 2));
        assert_eq!(t.second_given_first(), Some(ratio(1, 3)));
        assert_eq!(t.first_given_second(), Some(ratio(1, 3)));
    }

    #[test]
    fn same_index_is_diagonal() {
        let t = Engine::new().joint_swap_table(&fig12(), 1, 1).unwrap();
        assert_eq!(t.counts[0][1], 0);
        assert_eq!(t.counts[1][0], 0);
        assert_eq!(t.counts[1][1], 12);
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            Engine::new().joint_swap_table(&fig12(), 0, 5),
            Err(EngineError::IndexOutOfRange { index: 5, len: 5 })
        );
    }
}
