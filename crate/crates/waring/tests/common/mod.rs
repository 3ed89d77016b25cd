#![allow(dead_code)]

use std::collections::BTreeSet;

use waring::{Elem, MatrixR, Ring};

/// Additive closure by repeated pairwise sums until nothing new appears.
pub fn closure(r: &Ring, gens: impl IntoIterator<Item = Elem>) -> BTreeSet<Elem> {
    let gens: Vec<Elem> = gens.into_iter().collect();
    let mut set: BTreeSet<Elem> = [r.zero()].into();
    loop {
        let next: BTreeSet<Elem> =
            set.iter().flat_map(|a| gens.iter().map(move |g| r.add(*a, *g))).chain(set.iter().copied()).collect();
        if next == set {
            return set;
        }
        set = next;
    }
}

/// `S^k` from the traces of `k`-th powers of every 2x2 matrix, by repeated
/// multiplication.
pub fn brute_subgroup(r: &Ring, k: u32) -> BTreeSet<Elem> {
    let traces: BTreeSet<Elem> = MatrixR::all(r, 2)
        .map(|m| {
            let mut p = m.clone();
            for _ in 1..k {
                p = p.mul(&m).unwrap();
            }
            p.trace()
        })
        .collect();
    closure(r, traces)
}

pub const F4: &str = "Z/2[x]/(x^2+x+1)";
pub const DUAL3: &str = "Z/3[e]/(e^2)";

/// Theorem statements that fail, as (family, ring, statement id).
pub const THEOREM_COUNTEREXAMPLES: [(&str, &str, &str); 4] =
    [("deg12", DUAL3, "5.n2"), ("deg12", DUAL3, "5.n3"), ("deg15", F4, "2"), ("deg15", F4, "3.n2")];

/// Chain entries whose values leave `S^k`, as (family, entry, ring, x, value).
pub const CHAIN_COUNTEREXAMPLES: [(&str, &str, &str, &str, &str); 8] = [
    ("deg12", "W2", DUAL3, "e+1", "2e+1"),
    ("deg12", "W3", DUAL3, "e+1", "e+1"),
    ("deg12", "W5", DUAL3, "e+1", "2e+1"),
    ("deg12", "W6", DUAL3, "e+1", "e+1"),
    ("deg15", "p19", DUAL3, "e+1", "2e+2"),
    ("deg15", "hx", F4, "x", "x+1"),
    ("deg15", "F15", F4, "x", "x"),
    ("deg15", "F3", F4, "x", "x+1"),
];
