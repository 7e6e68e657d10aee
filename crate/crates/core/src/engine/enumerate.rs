//! Input-space enumeration with deterministic parallel partitioning.
//!
//! Permutations of `1..=n` are split by their first one or two values into
//! independent chunks. Chunks are processed in parallel and their partial
//! results are combined in lexicographic chunk order, so the combined result
//! is the same for any thread count.

use rayon::prelude::*;

/// Advances `v` to the next lexicographic permutation. Returns false after the last.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn prefixes(n: usize) -> Vec<Vec<u8>> {
    let n8 = n as u8;
    match n {
        0 => vec![vec![]],
        1 | 2 => (1..=n8).map(|a| vec![a]).collect(),
        _ => {
            let mut out = Vec::with_capacity(n * (n - 1));
            for a in 1..=n8 {
                for b in 1..=n8 {
                    if a != b {
                        out.push(vec![a, b]);
                    }
                }
            }
            out
        }
    }
}

/// Folds over every permutation of `1..=n` (values as `u8`, in lexicographic
/// order within each chunk). `visit` receives the permutation.
pub fn fold_permutations<A, I, V, M>(n: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u8]) + Sync,
    M: Fn(A, A) -> A,
{
    let partials: Vec<A> = prefixes(n)
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut perm = prefix.clone();
            let mut rest: Vec<u8> = (1..=n as u8).filter(|v| !prefix.contains(v)).collect();
            perm.extend_from_slice(&rest);
            loop {
                visit(&mut acc, &perm);
                if !next_permutation(&mut rest) {
                    break;
                }
                perm[prefix.len()..].copy_from_slice(&rest);
            }
            acc
        })
        .collect();
    let mut it = partials.into_iter();
    let first = it.next().unwrap_or_else(&init);
    it.fold(first, merge)
}

/// Folds over all `2^n` 0-1 vectors, chunked by the top bits.
pub fn fold_binary<A, I, V, M>(n: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[u8]) + Sync,
    M: Fn(A, A) -> A,
{
    let chunk_bits = n.min(6);
    let low_bits = n - chunk_bits;
    let partials: Vec<A> = (0u64..(1u64 << chunk_bits))
        .into_par_iter()
        .map(|hi| {
            let mut acc = init();
            let mut v = vec![0u8; n];
            for lo in 0u64..(1u64 << low_bits) {
                let word = (hi << low_bits) | lo;
                for (k, slot) in v.iter_mut().enumerate() {
                    *slot = ((word >> (n - 1 - k)) & 1) as u8;
                }
                visit(&mut acc, &v);
            }
            acc
        })
        .collect();
    let mut it = partials.into_iter();
    let first = it.next().unwrap_or_else(&init);
    it.fold(first, merge)
}
