mod common;

use cenet::catalog::Role;
use cenet::dsl;
use cenet::engine::{settled_by_permutations, Engine, Rational};
use cenet::eval::output;
use cenet::network::{Element, Network};
use cenet::schedule::{run_staged, schedule};
use cenet::transforms::{fuse, pre_exchange};
use common::{entries, permutations, random_links, random_network};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn two() -> Rational {
    Rational::from_integer(2)
}

fn one_minus(p: Rational) -> Rational {
    Rational::from_integer(1) - p
}

/// Smallest stage count by trying every stage assignment.
fn brute_force_stages(net: &Network) -> usize {
    let e = net.elements();
    let len = e.len();
    if len == 0 {
        return 0;
    }
    for k in 1..=len {
        let mut stage = vec![0usize; len];
        loop {
            let ok =
                (0..len).all(|j| (0..j).all(|i| !e[i].shares_wire(&e[j]) || stage[i] < stage[j]));
            if ok {
                return k;
            }
            // next assignment in base k
            let mut pos = 0;
            while pos < len && stage[pos] == k - 1 {
                stage[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
            stage[pos] += 1;
        }
    }
    unreachable!("one element per stage always works")
}

fn arb_network(max_order: usize, max_len: usize) -> impl Strategy<Value = Network> {
    (3..=max_order, 0..=max_len, any::<u64>())
        .prop_map(|(n, len, seed)| random_network(&mut ChaCha8Rng::seed_from_u64(seed), n, len))
}

fn arb_links(max_order: usize, max_len: usize) -> impl Strategy<Value = Network> {
    (3..=max_order, 0..=max_len, any::<u64>())
        .prop_map(|(n, len, seed)| random_links(&mut ChaCha8Rng::seed_from_u64(seed), n, len))
}

proptest! {
    #[test]
    fn mirror_is_an_involution(net in arb_network(16, 12)) {
        let n = net.order();
        for e in net.elements() {
            let m = e.mirror(n);
            prop_assert_eq!(m.mirror(n), *e);
            prop_assert_eq!(m.kind(), e.kind());
        }
    }

    #[test]
    fn schedule_is_valid_and_minimal(net in arb_network(5, 7)) {
        let s = schedule(&net);
        let e = net.elements();
        for stage in s.stages() {
            for (a, &i) in stage.iter().enumerate() {
                for &j in &stage[a + 1..] {
                    prop_assert!(!e[i].shares_wire(&e[j]));
                }
            }
        }
        for j in 0..e.len() {
            for i in 0..j {
                if e[i].shares_wire(&e[j]) {
                    prop_assert!(s.stage_of()[i] < s.stage_of()[j]);
                }
            }
        }
        prop_assert_eq!(s.stage_count(), brute_force_stages(&net));
    }

    #[test]
    fn staged_run_matches_sequential(net in arb_network(9, 20), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut input: Vec<u32> = (1..=net.order() as u32).collect();
        input.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let s = schedule(&net);
        prop_assert_eq!(run_staged(&net, &s, &input).unwrap(), output(&net, &input).unwrap());
    }

    #[test]
    fn dsl_round_trip(net in arb_network(16, 25)) {
        let text = dsl::serialize(&net);
        prop_assert_eq!(dsl::parse(&text, net.order()).unwrap(), net);
    }

    #[test]
    fn mirror_terminator_expands((n, a, b) in (3usize..=16)
        .prop_flat_map(|n| (Just(n), 1..n))
        .prop_flat_map(|(n, a)| (Just(n), Just(a), a + 1..=n)))
    {
        let e = Element::Link(a, b);
        let text = format!("{}=", dsl::wirelist(&e, n).trim_end_matches('-'));
        let parsed = dsl::parse(&text, n).unwrap();
        let m = e.mirror(n);
        if m == e {
            prop_assert_eq!(parsed.elements(), &[e]);
        } else {
            prop_assert_eq!(parsed.elements(), &[e, m]);
        }
    }

    #[test]
    fn binary_and_permutation_routes_agree(net in arb_network(6, 12)) {
        let eng = Engine::new();
        let sorts = eng.verify_sorts(&net).unwrap();
        prop_assert_eq!(sorts, eng.unsorted_permutations(&net).unwrap() == 0);
        prop_assert_eq!(eng.settled_positions(&net).unwrap(), settled_by_permutations(&net));
    }

    #[test]
    fn average_is_sum_of_slot_probabilities(net in arb_network(6, 12)) {
        let s = Engine::new().exhaustive_stats(&net, two()).unwrap();
        let sum: Rational = s.slot_probs().iter().sum();
        prop_assert_eq!(sum, s.avg_swaps);
        let hist_total: u64 = s.histogram.values().sum();
        prop_assert_eq!(hist_total, s.inputs);
    }

    #[test]
    fn pre_exchange_laws_on_random_links(net in arb_links(6, 10), t in 0usize..10) {
        prop_assume!(t < net.len());
        let eng = Engine::new();
        if let Ok(x) = pre_exchange(&net, t) {
            prop_assert_eq!(pre_exchange(&x, t).unwrap(), net.clone());
            let p = eng.exhaustive_stats(&net, two()).unwrap().slot_probs()[t];
            let q = eng.exhaustive_stats(&x, two()).unwrap().slot_probs()[t];
            prop_assert_eq!(q, one_minus(p));
            prop_assert_eq!(eng.verify_sorts(&x).unwrap(), eng.verify_sorts(&net).unwrap());
        }
    }

    #[test]
    fn fuse_preserves_function_on_random_links(net in arb_links(6, 12)) {
        let fused = fuse(&Engine::new(), &net).unwrap();
        prop_assert_eq!(fused.link_count(), net.link_count());
        for p in permutations(net.order()) {
            prop_assert_eq!(output(&fused, &p).unwrap(), output(&net, &p).unwrap());
        }
    }
}

#[test]
fn catalog_binary_and_permutation_routes_agree() {
    let eng = Engine::new();
    for e in entries().iter().filter(|e| e.network.order() <= 6) {
        let net = &e.network;
        assert_eq!(
            eng.verify_sorts(net).unwrap(),
            eng.unsorted_permutations(net).unwrap() == 0,
            "{}",
            e.name
        );
        assert_eq!(
            eng.settled_positions(net).unwrap(),
            settled_by_permutations(net),
            "{}",
            e.name
        );
    }
}

#[test]
fn catalog_fuse_preserves_function() {
    let eng = Engine::new();
    for e in entries().iter().filter(|e| e.network.order() <= 8) {
        for net in [e.network.clone(), e.network.decompose()] {
            let fused = fuse(&eng, &net).unwrap();
            for p in permutations(net.order()) {
                assert_eq!(
                    output(&fused, &p).unwrap(),
                    output(&net, &p).unwrap(),
                    "{} on {p:?}",
                    e.name
                );
            }
        }
    }
}

#[test]
fn fuse_recovers_two_ops() {
    let eng = Engine::new();
    for name in ["fig3", "median9-new-mmm", "sort6-fig15"] {
        let net = cenet::catalog::get(name).unwrap().network;
        assert_eq!(fuse(&eng, &net.decompose()).unwrap(), net, "{name}");
    }
}

#[test]
fn catalog_pre_exchange_laws() {
    let eng = Engine::new();
    for e in entries() {
        let net = e.network.decompose();
        let stats = eng.exhaustive_stats(&net, two()).unwrap();
        let sorts = eng.verify_sorts(&net).unwrap();
        let mut applied = 0;
        for (t, p) in stats.slot_probs().into_iter().enumerate() {
            let Ok(x) = pre_exchange(&net, t) else {
                continue;
            };
            applied += 1;
            assert_eq!(pre_exchange(&x, t).unwrap(), net, "{} target {t}", e.name);
            let xs = eng.exhaustive_stats(&x, two()).unwrap();
            assert_eq!(xs.slot_probs()[t], one_minus(p), "{} target {t}", e.name);
            assert_eq!(
                eng.verify_sorts(&x).unwrap(),
                sorts,
                "{} target {t}",
                e.name
            );
        }
        assert!(applied > 0, "{}", e.name);
    }
}

#[test]
fn catalog_half_links_keep_the_average() {
    let eng = Engine::new();
    let half = Rational::new(1, 2);
    for e in entries().iter().filter(|e| e.network.order() <= 8) {
        let net = e.network.decompose();
        let stats = eng.exhaustive_stats(&net, two()).unwrap();
        for (t, p) in stats.slot_probs().into_iter().enumerate() {
            if p != half {
                continue;
            }
            let Ok(x) = pre_exchange(&net, t) else {
                continue;
            };
            let xs = eng.exhaustive_stats(&x, two()).unwrap();
            assert_eq!(xs.avg_swaps, stats.avg_swaps, "{} target {t}", e.name);
        }
    }
}

#[test]
fn catalog_roles_hold() {
    let eng = Engine::new();
    for e in entries() {
        let net = &e.network;
        let n = net.order();
        let m = n.div_ceil(2);
        match e.role {
            Role::Sorter => {
                assert!(eng.verify_sorts(net).unwrap(), "{}", e.name);
            }
            Role::Median { extremes } => {
                assert!(eng.verify_selection(net, m, m).unwrap(), "{}", e.name);
                if extremes {
                    assert!(eng.verify_selection(net, 1, 1).unwrap(), "{}", e.name);
                    assert!(eng.verify_selection(net, n, n).unwrap(), "{}", e.name);
                }
            }
            Role::MinMax => {
                assert!(eng.verify_selection(net, 1, 1).unwrap(), "{}", e.name);
                assert!(eng.verify_selection(net, n, n).unwrap(), "{}", e.name);
            }
        }
    }
}

#[test]
fn catalog_linearity() {
    let eng = Engine::new();
    for e in entries() {
        let s = eng.exhaustive_stats(&e.network, two()).unwrap();
        let sum: Rational = s.slot_probs().iter().sum();
        assert_eq!(sum, s.avg_swaps, "{}", e.name);
    }
}

#[test]
fn catalog_staged_run_matches_sequential() {
    for e in entries().iter().filter(|e| e.network.order() <= 8) {
        let s = schedule(&e.network);
        for p in permutations(e.network.order()) {
            assert_eq!(
                run_staged(&e.network, &s, &p).unwrap(),
                output(&e.network, &p).unwrap(),
                "{}",
                e.name
            );
        }
    }
}
