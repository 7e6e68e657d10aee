//! Named networks with their published statistics attached as fixtures.

use std::collections::BTreeMap;

use crate::dsl;
use crate::engine::rational::{label, ratio, to_f64};
use crate::engine::{Rational, StatsReport};
use crate::network::{Element, Network, Wire};

/// A published quantity: exact where a fraction is given, otherwise a decimal
/// with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Exact(Rational),
    Decimal { value: f64, tolerance: f64 },
}

impl Quantity {
    pub fn matches(&self, actual: Rational) -> bool {
        match *self {
            Quantity::Exact(r) => r == actual,
            Quantity::Decimal { value, tolerance } => (to_f64(&actual) - value).abs() <= tolerance,
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Exact(r) => write!(f, "{r}"),
            Quantity::Decimal { value, tolerance } => write!(f, "{value}±{tolerance}"),
        }
    }
}

/// Expected statistics; `None` means no published value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Expected {
    pub links: Option<usize>,
    pub avg_swaps: Option<Quantity>,
    pub max_swaps: Option<u32>,
    pub stages: Option<usize>,
    /// One entry per constituent link, in element/slot order.
    pub slot_probs: Option<Vec<Rational>>,
    pub histogram: Option<BTreeMap<u32, u64>>,
    pub settled: Option<Vec<Wire>>,
    /// An input known to attain the maximum swap count.
    pub worst_input: Option<Vec<u8>>,
    pub sorts: Option<bool>,
}

/// What the network is supposed to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Sorter,
    /// Median selection; with `extremes` also min and max.
    Median {
        extremes: bool,
    },
    /// Places the minimum and maximum only.
    MinMax,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub network: Network,
    pub expected: Expected,
    pub source: &'static str,
    pub role: Role,
}

/// One expected field that disagrees with the computed statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: expected {}, got {}",
            self.field, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    Unknown(String),
    #[error("batcher size {0} must be a power of two in 2..=16")]
    BatcherSize(usize),
}

impl CatalogEntry {
    /// Compares every expected field against `stats` (and `sorts`, if given).
    pub fn mismatches(&self, stats: &StatsReport, sorts: Option<bool>) -> Vec<Mismatch> {
        let mut out = Vec::new();
        let mut diff = |field: &str, expected: String, actual: String| {
            if expected != actual {
                out.push(Mismatch {
                    field: field.to_string(),
                    expected,
                    actual,
                });
            }
        };
        let e = &self.expected;
        if let Some(l) = e.links {
            diff("links", l.to_string(), stats.links.to_string());
        }
        if let Some(avg) = e.avg_swaps {
            let actual = stats.avg_swaps;
            let shown = match avg {
                Quantity::Exact(_) => actual.to_string(),
                Quantity::Decimal { .. } => format!("{} ({:.4})", actual, to_f64(&actual)),
            };
            if !avg.matches(actual) {
                diff("avg_swaps", avg.to_string(), shown);
            }
        }
        if let Some(m) = e.max_swaps {
            diff("max_swaps", m.to_string(), stats.max_swaps.to_string());
        }
        if let Some(s) = e.stages {
            diff("stages", s.to_string(), stats.stage_count.to_string());
        }
        if let Some(p) = &e.slot_probs {
            let actual = stats.slot_probs();
            if p.len() != actual.len() {
                diff(
                    "slot_probs.len",
                    p.len().to_string(),
                    actual.len().to_string(),
                );
            } else {
                for (i, (want, got)) in p.iter().zip(&actual).enumerate() {
                    diff(&format!("slot_probs[{}]", i + 1), label(want), label(got));
                }
            }
        }
        if let Some(h) = &e.histogram {
            // the published histogram may list trailing zero buckets
            let trimmed: BTreeMap<u32, u64> = h
                .iter()
                .filter(|(_, &c)| c > 0)
                .map(|(&k, &c)| (k, c))
                .collect();
            diff(
                "histogram",
                format!("{trimmed:?}"),
                format!("{:?}", stats.histogram),
            );
        }
        if let Some(s) = &e.settled {
            diff("settled", format!("{s:?}"), format!("{:?}", stats.settled));
        }
        if let Some(w) = &e.worst_input {
            // only the first WORST_INPUTS_KEPT worst inputs are stored
            let attained = stats.worst_inputs.contains(w);
            if !attained {
                diff(
                    "worst_input",
                    format!("{w:?}"),
                    format!("{:?}", stats.worst_inputs),
                );
            }
        }
        if let (Some(want), Some(got)) = (e.sorts, sorts) {
            diff("sorts", want.to_string(), got.to_string());
        }
        out
    }
}

/// Names accepted by [`get`], in listing order.
pub const NAMES: &[&str] = &[
    "fig1a",
    "fig1b",
    "fig2a",
    "fig2b",
    "fig3",
    "median9-old-mmm",
    "median9-old-full",
    "median9-old-bare",
    "median9-new-mmm",
    "median9-new-full",
    "median9-new-bare",
    "fig10a",
    "fig10b",
    "fig11a",
    "fig11b",
    "fig12",
    "knuth44",
    "sort5-fig14",
    "sort6-fig15",
    "sort8-fig26",
    "batcher",
];

/// A row of [`list`].
#[derive(Debug, Clone)]
pub struct Listing {
    pub name: &'static str,
    pub source: &'static str,
    pub summary: String,
    /// Parameterized by size (`batcher-<n>`).
    pub generator: bool,
}

pub fn list() -> Vec<Listing> {
    NAMES
        .iter()
        .map(|&name| {
            let entry = get(name).expect("listed names resolve");
            Listing {
                name,
                source: entry.source,
                summary: summary(&entry),
                generator: name == "batcher",
            }
        })
        .collect()
}

fn summary(entry: &CatalogEntry) -> String {
    let e = &entry.expected;
    let mut parts = vec![format!("N={}", entry.network.order())];
    parts.push(format!("links {}", entry.network.link_count()));
    if let Some(a) = e.avg_swaps {
        parts.push(format!("avg {a}"));
    }
    if let Some(m) = e.max_swaps {
        parts.push(format!("max {m}"));
    }
    if let Some(s) = e.stages {
        parts.push(format!("stages {s}"));
    }
    parts.join(", ")
}

fn links(order: usize, l: &[(usize, usize)]) -> Network {
    Network::from_links(order, l)
}

fn probs(p: &[(i64, i64)]) -> Vec<Rational> {
    p.iter().map(|&(n, d)| ratio(n, d)).collect()
}

fn decimal(value: f64, tolerance: f64) -> Option<Quantity> {
    Some(Quantity::Decimal { value, tolerance })
}

fn exact(n: i64, d: i64) -> Option<Quantity> {
    Some(Quantity::Exact(ratio(n, d)))
}

const MEDIAN_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 4, 7),
    (2, 5, 8),
    (3, 6, 9),
    (1, 2, 3),
    (4, 5, 6),
    (7, 8, 9),
    (3, 5, 7),
];

const FULL_TAIL: [(usize, usize); 4] = [(2, 4), (3, 4), (6, 8), (6, 7)];

/// Three-sort by bubbling: (a,b),(b,c),(a,b).
pub fn s3_old(a: Wire, b: Wire, c: Wire) -> [Element; 3] {
    [
        Element::Link(a, b),
        Element::Link(b, c),
        Element::Link(a, b),
    ]
}

/// Three-sort with a guard and a 2-op: (a,c) then (a,b,c).
pub fn s3_new(a: Wire, b: Wire, c: Wire) -> [Element; 2] {
    [Element::Link(a, c), Element::Fused2(a, b, c)]
}

fn median_old() -> Vec<Element> {
    MEDIAN_TRIPLES
        .iter()
        .flat_map(|&(a, b, c)| s3_old(a, b, c))
        .collect()
}

fn median_new() -> Vec<Element> {
    MEDIAN_TRIPLES
        .iter()
        .flat_map(|&(a, b, c)| s3_new(a, b, c))
        .collect()
}

fn with_tail(mut elements: Vec<Element>) -> Vec<Element> {
    elements.extend(FULL_TAIL.iter().map(|&(a, b)| Element::Link(a, b)));
    elements
}

/// Batcher's odd-even mergesort on `n` wires (`n` a power of two).
pub fn batcher(n: usize) -> Result<Network, CatalogError> {
    if !(2..=16).contains(&n) || !n.is_power_of_two() {
        return Err(CatalogError::BatcherSize(n));
    }
    let mut out = Vec::new();
    let mut p = 1;
    while p < n {
        let mut k = p;
        while k >= 1 {
            let mut j = k % p;
            while j + k < n {
                for i in 0..k.min(n - j - k) {
                    if (i + j) / (2 * p) == (i + j + k) / (2 * p) {
                        out.push(Element::Link(i + j + 1, i + j + k + 1));
                    }
                }
                j += 2 * k;
            }
            k /= 2;
        }
        p *= 2;
    }
    Ok(Network::new(n, out))
}

/// The verbatim 8-sorter description.
pub const SORT8_DSL: &str = "18-27-36-45-24=13=12=34=24=234=45-";

pub fn get(name: &str) -> Result<CatalogEntry, CatalogError> {
    use Element::*;
    let sorter = |name: &str, network: Network, expected: Expected, source| CatalogEntry {
        name: name.to_string(),
        network,
        expected,
        source,
        role: Role::Sorter,
    };
    let half4 = probs(&[(1, 2), (1, 2), (1, 2), (1, 2)]);
    let entry = match name {
        "fig1a" => sorter(
            name,
            links(3, &[(2, 3), (1, 2), (2, 3)]),
            Expected {
                links: Some(3),
                avg_swaps: exact(3, 2),
                max_swaps: Some(3),
                stages: Some(3),
                slot_probs: Some(probs(&[(1, 2), (2, 3), (1, 3)])),
                settled: Some(vec![1, 2, 3]),
                sorts: Some(true),
                ..Expected::default()
            },
            "3-sorter by bubbling",
        ),
        "fig1b" => sorter(
            name,
            links(3, &[(2, 3), (1, 3), (1, 2)]),
            Expected {
                links: Some(3),
                avg_swaps: exact(3, 2),
                max_swaps: Some(3),
                stages: Some(3),
                slot_probs: Some(probs(&[(1, 2), (1, 3), (2, 3)])),
                sorts: Some(true),
                ..Expected::default()
            },
            "3-sorter by even-odd construction",
        ),
        "fig2a" => sorter(
            name,
            links(3, &[(1, 3), (1, 2), (2, 3)]),
            Expected {
                links: Some(3),
                avg_swaps: exact(7, 6),
                max_swaps: Some(2),
                stages: Some(3),
                slot_probs: Some(probs(&[(1, 2), (1, 3), (1, 3)])),
                sorts: Some(true),
                ..Expected::default()
            },
            "fig1a with its 2/3 link pre-exchanged",
        ),
        "fig2b" => sorter(
            name,
            links(3, &[(1, 3), (2, 3), (1, 2)]),
            Expected {
                links: Some(3),
                avg_swaps: exact(7, 6),
                max_swaps: Some(2),
                stages: Some(3),
                sorts: Some(true),
                ..Expected::default()
            },
            "fig1b with its 2/3 link pre-exchanged",
        ),
        "fig3" => sorter(
            name,
            Network::new(3, vec![Link(1, 3), Fused2(1, 2, 3)]),
            Expected {
                links: Some(3),
                avg_swaps: exact(7, 6),
                max_swaps: Some(2),
                stages: Some(2),
                sorts: Some(true),
                ..Expected::default()
            },
            "guard link followed by a 2-op",
        ),
        "median9-old-mmm" => CatalogEntry {
            name: name.into(),
            network: Network::new(9, median_old()),
            expected: Expected {
                links: Some(21),
                avg_swaps: exact(342, 35),
                max_swaps: Some(21),
                stages: Some(9),
                slot_probs: Some({
                    let mut p = Vec::new();
                    for _ in 0..6 {
                        p.extend(probs(&[(1, 2), (2, 3), (1, 3)]));
                    }
                    p.extend(probs(&[(19, 70), (5, 14), (1, 7)]));
                    p
                }),
                settled: Some(vec![1, 5, 9]),
                ..Expected::default()
            },
            source: "3x3 min/median/max from bubbling 3-sorts",
            role: Role::Median { extremes: true },
        },
        "median9-old-full" => sorter(
            name,
            Network::new(9, with_tail(median_old())),
            Expected {
                links: Some(25),
                avg_swaps: decimal(11.56, 0.005),
                max_swaps: Some(25),
                stages: Some(11),
                sorts: Some(true),
                ..Expected::default()
            },
            "old min/median/max completed to a full sort",
        ),
        "median9-old-bare" => {
            let mut e = median_old();
            // last (1,2) of s3(1,2,3), then first (7,8) of s3(7,8,9)
            e.remove(15);
            e.remove(11);
            CatalogEntry {
                name: name.into(),
                network: Network::new(9, e),
                expected: Expected {
                    links: Some(19),
                    avg_swaps: decimal(9.105, 0.005),
                    max_swaps: Some(19),
                    stages: Some(9),
                    ..Expected::default()
                },
                source: "old median with two redundant links removed",
                role: Role::Median { extremes: false },
            }
        }
        "median9-new-mmm" => CatalogEntry {
            name: name.into(),
            network: Network::new(9, median_new()),
            expected: Expected {
                links: Some(21),
                avg_swaps: decimal(7.657, 0.005),
                max_swaps: Some(14),
                stages: Some(6),
                settled: Some(vec![1, 5, 9]),
                ..Expected::default()
            },
            source: "3x3 min/median/max from guarded 2-op 3-sorts",
            role: Role::Median { extremes: true },
        },
        "median9-new-full" => sorter(
            name,
            Network::new(9, with_tail(median_new())),
            Expected {
                links: Some(25),
                avg_swaps: decimal(9.443, 0.005),
                max_swaps: Some(18),
                stages: Some(8),
                sorts: Some(true),
                ..Expected::default()
            },
            "new min/median/max completed to a full sort",
        ),
        "median9-new-bare" => {
            let mut e = median_new();
            e[7] = Link(2, 3);
            e[11] = Link(7, 8);
            CatalogEntry {
                name: name.into(),
                network: Network::new(9, e),
                expected: Expected {
                    links: Some(19),
                    avg_swaps: decimal(6.99, 0.005),
                    max_swaps: Some(13),
                    stages: Some(6),
                    ..Expected::default()
                },
                source: "new median with two 2-ops reduced to links",
                role: Role::Median { extremes: false },
            }
        }
        "fig10a" => CatalogEntry {
            name: name.into(),
            network: Network::new(4, vec![Link(1, 3), Link(2, 4), Fused3(1, 2, 3, 4)]),
            expected: Expected {
                links: Some(5),
                max_swaps: Some(4),
                settled: Some(vec![1, 4]),
                sorts: Some(false),
                ..Expected::default()
            },
            source: "two overlapping 3-sorts sharing a 3-op; min and max only",
            role: Role::MinMax,
        },
        "fig10b" => sorter(
            name,
            Network::new(
                4,
                vec![Link(1, 3), Link(2, 4), Fused3(1, 2, 3, 4), Link(2, 3)],
            ),
            Expected {
                links: Some(6),
                sorts: Some(true),
                ..Expected::default()
            },
            "fig10a with a trailing centre link",
        ),
        "fig11a" => sorter(
            name,
            links(4, &[(1, 3), (2, 4), (1, 2), (3, 4), (2, 3)]),
            Expected {
                links: Some(5),
                max_swaps: Some(5),
                slot_probs: Some([half4.clone(), probs(&[(1, 3)])].concat()),
                histogram: Some(BTreeMap::from([
                    (0, 1),
                    (1, 5),
                    (2, 8),
                    (3, 6),
                    (4, 3),
                    (5, 1),
                    (6, 0),
                ])),
                worst_input: Some(vec![4, 2, 3, 1]),
                sorts: Some(true),
                ..Expected::default()
            },
            "fig10b with the 3-op split into links",
        ),
        "fig11b" => sorter(
            name,
            Network::new(
                4,
                vec![Link(1, 4), Link(1, 3), Link(2, 4), Fused3(1, 2, 3, 4)],
            ),
            Expected {
                links: Some(6),
                avg_swaps: exact(2, 1),
                stages: Some(3),
                slot_probs: Some(probs(&[(1, 2), (1, 3), (1, 3), (1, 4), (1, 2), (1, 4)])),
                sorts: Some(true),
                ..Expected::default()
            },
            "all-pairs 4-sorter ending in a guarded 3-op",
        ),
        "fig12" => sorter(
            name,
            // frozen output of minimize_max_swaps on fig11a
            links(4, &[(2, 3), (1, 4), (1, 2), (3, 4), (2, 3)]),
            Expected {
                links: Some(5),
                max_swaps: Some(4),
                slot_probs: Some([half4.clone(), probs(&[(1, 3)])].concat()),
                histogram: Some(BTreeMap::from([
                    (0, 1),
                    (1, 4),
                    (2, 8),
                    (3, 8),
                    (4, 3),
                    (5, 0),
                    (6, 0),
                ])),
                worst_input: Some(vec![3, 4, 1, 2]),
                sorts: Some(true),
                ..Expected::default()
            },
            "max-swap-minimized fig11a; histogram fixture",
        ),
        "knuth44" => sorter(
            name,
            links(4, &[(1, 2), (3, 4), (1, 3), (2, 4), (2, 3)]),
            Expected {
                links: Some(5),
                max_swaps: Some(5),
                slot_probs: Some([half4, probs(&[(2, 3)])].concat()),
                sorts: Some(true),
                ..Expected::default()
            },
            "classic 5-link 4-sorter",
        ),
        "sort5-fig14" => sorter(
            name,
            links(
                5,
                &[
                    (1, 5),
                    (2, 5),
                    (3, 5),
                    (4, 5),
                    (1, 3),
                    (2, 4),
                    (1, 2),
                    (3, 4),
                    (2, 3),
                ],
            ),
            Expected {
                links: Some(9),
                avg_swaps: exact(47, 15),
                slot_probs: Some(probs(&[
                    (1, 2),
                    (1, 3),
                    (1, 4),
                    (1, 5),
                    (1, 3),
                    (5, 12),
                    (2, 5),
                    (2, 5),
                    (3, 10),
                ])),
                sorts: Some(true),
                ..Expected::default()
            },
            "maximum elimination followed by a 4-sorter",
        ),
        "sort6-fig15" => sorter(
            name,
            Network::new(
                6,
                vec![
                    Link(1, 5),
                    Link(2, 6),
                    Fused2(1, 3, 5),
                    Fused2(2, 4, 6),
                    Fused2(1, 4, 5),
                    Fused2(2, 3, 6),
                    Link(1, 2),
                    Link(3, 4),
                    Link(5, 6),
                ],
            ),
            Expected {
                stages: Some(4),
                sorts: Some(true),
                ..Expected::default()
            },
            "6-sorter from two guarded 3-sorts and crossing 2-ops",
        ),
        "sort8-fig26" => sorter(
            name,
            dsl::parse(SORT8_DSL, 8).expect("fixed DSL parses"),
            Expected {
                links: Some(19),
                max_swaps: Some(14),
                sorts: Some(true),
                ..Expected::default()
            },
            "19-link 8-sorter with low worst case, from its DSL string",
        ),
        "batcher" => batcher_entry(8)?,
        _ => match name.strip_prefix("batcher-").map(str::parse::<usize>) {
            Some(Ok(n)) => batcher_entry(n)?,
            _ => return Err(CatalogError::Unknown(name.to_string())),
        },
    };
    Ok(entry.with_network_name())
}

fn batcher_entry(n: usize) -> Result<CatalogEntry, CatalogError> {
    let network = batcher(n)?;
    let mut expected = Expected {
        links: match n {
            2 => Some(1),
            4 => Some(5),
            8 => Some(19),
            _ => None,
        },
        sorts: Some(true),
        ..Expected::default()
    };
    if n == 8 {
        expected.avg_swaps = decimal(10.65, 0.01);
        expected.max_swaps = Some(19);
    }
    Ok(CatalogEntry {
        name: if n == 8 {
            "batcher".into()
        } else {
            format!("batcher-{n}")
        },
        network,
        expected,
        source: "odd-even mergesort generator (batcher-<n>, default n=8)",
        role: Role::Sorter,
    })
}

impl CatalogEntry {
    fn with_network_name(mut self) -> Self {
        self.network = self.network.with_name(self.name.clone());
        self
    }
}
