#![allow(dead_code)]

use cenet::catalog::{self, CatalogEntry};
use cenet::network::{Element, Network};
use rand::seq::index::sample;
use rand::Rng;

/// A valid network with `len` elements: mostly links, some 2-ops and 3-ops.
pub fn random_network<R: Rng>(rng: &mut R, order: usize, len: usize) -> Network {
    let elements = (0..len)
        .map(|_| {
            let arity = match rng.gen_range(0..10) {
                0..=6 => 2,
                7..=8 => 3,
                _ => 4,
            }
            .min(order);
            let mut wires: Vec<usize> = sample(rng, order, arity)
                .into_iter()
                .map(|w| w + 1)
                .collect();
            wires.sort_unstable();
            Element::from_wires(&wires).expect("2 to 4 wires")
        })
        .collect();
    Network::new(order, elements)
}

pub fn random_links<R: Rng>(rng: &mut R, order: usize, len: usize) -> Network {
    let links: Vec<(usize, usize)> = (0..len)
        .map(|_| {
            let mut w: Vec<usize> = sample(rng, order, 2).into_iter().map(|w| w + 1).collect();
            w.sort_unstable();
            (w[0], w[1])
        })
        .collect();
    Network::from_links(order, &links)
}

pub fn entries() -> Vec<CatalogEntry> {
    catalog::NAMES
        .iter()
        .map(|n| catalog::get(n).unwrap())
        .collect()
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}
