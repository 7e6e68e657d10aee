mod common;

use cenet::catalog;
use cenet::engine::{Engine, Rational};
use cenet::transforms::minimize_max_swaps;
use common::entries;

#[test]
fn every_expected_field_matches() {
    let eng = Engine::new();
    let mut report = Vec::new();
    for e in entries() {
        let stats = eng
            .exhaustive_stats(&e.network, Rational::from_integer(2))
            .unwrap();
        let sorts = eng.verify_sorts(&e.network).unwrap();
        for m in e.mismatches(&stats, Some(sorts)) {
            report.push(format!("{}: {m}", e.name));
        }
    }
    assert!(
        report.is_empty(),
        "fixture mismatches:\n{}",
        report.join("\n")
    );
}

#[test]
fn frozen_fig12_is_reproducible() {
    let eng = Engine::new();
    let fig11a = catalog::get("fig11a").unwrap().network;
    let found = minimize_max_swaps(&eng, &fig11a, 10_000).unwrap();
    assert_eq!(found.network, catalog::get("fig12").unwrap().network);
}

#[test]
fn batcher_sizes_sort() {
    let eng = Engine::new();
    for (n, links) in [(2, 1), (4, 5), (8, 19), (16, 63)] {
        let net = catalog::batcher(n).unwrap();
        assert_eq!(net.link_count(), links);
        assert!(eng.verify_sorts(&net).unwrap(), "batcher({n})");
    }
}

#[test]
fn listing_round_trips() {
    for l in catalog::list() {
        assert_eq!(catalog::get(l.name).unwrap().name, l.name);
    }
}
