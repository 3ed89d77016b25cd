//! The trace subgroup `S^k`: the additive subgroup generated by traces of
//! `k`-th powers of `n x n` matrices, and the decision procedure built on it.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::matrix::MatrixR;
use crate::ring::{quotient_by_integer, Elem, Quotient, Ring};
use crate::trace_power::TracePolynomial;

/// A seed trace value and the data that produced it: `a` for `n = 1`,
/// `(t, δ)` for `n = 2`, companion coefficients for `n ≥ 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub value: Elem,
    pub provenance: Vec<Elem>,
}

#[derive(Debug, Clone)]
pub struct SubgroupSet {
    pub source: Ring,
    pub quotient: Quotient,
    pub k: u32,
    pub n: usize,
    /// Dimension of the companion matrices that seeded the set.
    pub seed_dim: usize,
    pub generators: Vec<Generator>,
    members: Vec<bool>,
    count: u64,
    pub exact: bool,
    pub caveat: Option<String>,
}

impl SubgroupSet {
    pub fn ambient(&self) -> &Ring {
        &self.quotient.target
    }

    pub fn contains(&self, v: Elem) -> bool {
        self.members.get(v.0 as usize).copied().unwrap_or(false)
    }

    /// Membership of an element of the source ring.
    pub fn contains_source(&self, v: Elem) -> bool {
        self.contains(self.quotient.project(v))
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_whole_ring(&self) -> bool {
        self.count == self.ambient().card()
    }

    /// Members in enumeration order of the ambient ring.
    pub fn elements(&self) -> Vec<Elem> {
        self.ambient().elements().filter(|v| self.contains(*v)).collect()
    }

    pub fn as_set(&self) -> HashSet<Elem> {
        self.elements().into_iter().collect()
    }
}

fn factorial(k: u32) -> Result<u64> {
    (1..=k as u64)
        .try_fold(1u64, |acc, i| acc.checked_mul(i))
        .ok_or_else(|| Error::TooLarge(format!("{k}! does not fit in 64 bits")))
}

fn tuple_at(ring: &Ring, mut idx: u64, len: usize) -> Vec<Elem> {
    let card = ring.card();
    let mut out = vec![Elem(0); len];
    for slot in out.iter_mut().rev() {
        *slot = ring.element_at(idx % card);
        idx /= card;
    }
    out
}

/// Distinct seed values with their first provenance in enumeration order.
fn seeds(ring: &Ring, k: u32, dim: usize) -> Result<Vec<Generator>> {
    let card = ring.card();
    let total = card.pow(dim as u32);
    let values: Vec<(Elem, Vec<Elem>)> = match dim {
        1 => ring.elements().map(|a| (ring.pow(a, k as u64), vec![a])).collect(),
        2 => {
            let bound = TracePolynomial::new(k)?.bind(ring);
            crate::par::map_range(total, |i| {
                let td = tuple_at(ring, i, 2);
                (bound.eval(td[0], td[1]), td)
            })
        }
        _ => crate::par::map_range(total, |i| {
            let c = tuple_at(ring, i, dim);
            let m = MatrixR::general_companion(ring, &c).expect("non-empty coefficients");
            (m.pow_unchecked(k as u64).trace(), c)
        }),
    };
    let mut seen = HashSet::new();
    Ok(values
        .into_iter()
        .filter(|(v, _)| seen.insert(*v))
        .map(|(value, provenance)| Generator { value, provenance })
        .collect())
}

/// Additive closure of `generators` inside `ring`.
pub fn additive_closure(ring: &Ring, generators: &[Elem]) -> Vec<bool> {
    let mut members = vec![false; ring.card() as usize];
    members[0] = true;
    let mut frontier = vec![ring.zero()];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let s = ring.add(x, *g);
            if !members[s.0 as usize] {
                members[s.0 as usize] = true;
                frontier.push(s);
            }
        }
    }
    members
}

/// Computes `S^k` for `n x n` matrices over `ring`, or over `R/k!R` when
/// `use_quotient` is set.
pub fn compute_trace_subgroup(ring: &Ring, k: u32, n: usize, use_quotient: bool, budget: Budget) -> Result<SubgroupSet> {
    if k < 2 {
        return Err(Error::Invalid(format!("k must be at least 2, got {k}")));
    }
    if n == 0 {
        return Err(Error::Invalid("matrix dimension must be at least 1".into()));
    }
    let quotient = if use_quotient {
        quotient_by_integer(ring, factorial(k)?)?
    } else {
        Quotient::identity(ring)
    };
    let ambient = quotient.target.clone();
    let card = ambient.card() as u128;
    budget.check(card)?;
    let full = card.saturating_pow(n as u32);
    let (seed_dim, exact, caveat) = if n <= 3 || full <= budget.limit as u128 {
        (n, true, None)
    } else {
        (
            3,
            false,
            Some(format!(
                "seeded from dimension 3 only ({}^{n} companion tuples exceed the budget); NO is relative to generator dimension <= 3",
                ambient.card()
            )),
        )
    };
    let work = card.saturating_pow(seed_dim as u32);
    budget.check(work)?;
    let generators = seeds(&ambient, k, seed_dim)?;
    let gen_values: Vec<Elem> = generators.iter().map(|g| g.value).collect();
    let members = additive_closure(&ambient, &gen_values);
    let count = members.iter().filter(|b| **b).count() as u64;
    Ok(SubgroupSet { source: ring.clone(), quotient, k, n, seed_dim, generators, members, count, exact, caveat })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub trace: String,
    pub k: u32,
    pub n: usize,
    pub exact: bool,
    pub caveat: Option<String>,
}

/// Decides whether `m` is a sum of `k`-th powers via membership of its trace
/// in `S^k` at the dimension of `m`.
pub fn decide_sum_of_kth_powers(m: &MatrixR, k: u32, budget: Budget) -> Result<Decision> {
    let s = compute_trace_subgroup(m.ring(), k, m.dim(), false, budget)?;
    Ok(decide_with(&s, m))
}

/// Decision against a precomputed subgroup of matching dimension.
pub fn decide_with(s: &SubgroupSet, m: &MatrixR) -> Decision {
    let tr = m.trace();
    let yes = s.contains_source(tr);
    Decision {
        verdict: if yes { Verdict::Yes } else { Verdict::No },
        trace: m.ring().format_elem(tr),
        k: s.k,
        n: m.dim(),
        exact: s.exact || yes,
        caveat: if yes { None } else { s.caveat.clone() },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteForce {
    Found(Vec<MatrixR>),
    Inconclusive,
}

/// `k`-th powers of all 2x2 matrices over a tiny ring, with one- and two-term
/// sum tables and a three-term table built on first use.
pub struct KthPowerTable {
    ring: Ring,
    k: u32,
    roots: Vec<Option<u64>>,
    powers: Vec<u64>,
    two: HashMap<u64, (u64, u64)>,
    three: OnceLock<HashMap<u64, (u64, u64, u64)>>,
}

impl KthPowerTable {
    pub const MAX_CARD: u64 = 9;
    /// Largest ring that supports three-term searches.
    pub const MAX_CARD_THREE: u64 = 5;
    pub const MAX_TERMS: usize = 3;

    pub fn new(ring: &Ring, k: u32) -> Result<KthPowerTable> {
        if ring.card() > Self::MAX_CARD {
            return Err(Error::Invalid(format!(
                "brute-force search needs |R| <= {}, got {}",
                Self::MAX_CARD,
                ring.card()
            )));
        }
        if k == 0 {
            return Err(Error::Invalid("k must be positive".into()));
        }
        let total = ring.card().pow(4);
        let mut roots = vec![None; total as usize];
        let mut powers = Vec::new();
        for x in 0..total {
            let m = decode(ring, x);
            let p = encode(&m.pow_unchecked(k as u64));
            if roots[p as usize].is_none() {
                roots[p as usize] = Some(x);
                powers.push(p);
            }
        }
        let mut two = HashMap::new();
        for &a in &powers {
            for &b in &powers {
                two.entry(add(ring, a, b)).or_insert((a, b));
            }
        }
        Ok(KthPowerTable { ring: ring.clone(), k, roots, powers, two, three: OnceLock::new() })
    }

    fn three(&self) -> &HashMap<u64, (u64, u64, u64)> {
        self.three.get_or_init(|| {
            let mut three = HashMap::new();
            let mut pairs: Vec<(&u64, &(u64, u64))> = self.two.iter().collect();
            pairs.sort();
            for (&s, &(a, b)) in pairs {
                for &c in &self.powers {
                    three.entry(add(&self.ring, s, c)).or_insert((a, b, c));
                }
            }
            three
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn distinct_powers(&self) -> usize {
        self.powers.len()
    }

    fn root(&self, p: u64) -> MatrixR {
        decode(&self.ring, self.roots[p as usize].expect("tabulated power"))
    }

    /// Shortest decomposition with at most `max_terms` summands.
    pub fn witness(&self, m: &MatrixR, max_terms: usize) -> Result<BruteForce> {
        if m.ring() != &self.ring || m.dim() != 2 {
            return Err(Error::Invalid("brute-force search needs a 2x2 matrix over the table's ring".into()));
        }
        if max_terms > Self::MAX_TERMS {
            return Err(Error::Invalid(format!("max_terms must be <= {}", Self::MAX_TERMS)));
        }
        if max_terms == 3 && self.ring.card() > Self::MAX_CARD_THREE {
            return Err(Error::Invalid(format!("three-term search needs |R| <= {}", Self::MAX_CARD_THREE)));
        }
        let key = encode(m);
        if max_terms >= 1 && self.roots[key as usize].is_some() {
            return Ok(BruteForce::Found(vec![self.root(key)]));
        }
        if max_terms >= 2 {
            if let Some(&(a, b)) = self.two.get(&key) {
                return Ok(BruteForce::Found(vec![self.root(a), self.root(b)]));
            }
        }
        if max_terms >= 3 {
            if let Some(&(a, b, c)) = self.three().get(&key) {
                return Ok(BruteForce::Found(vec![self.root(a), self.root(b), self.root(c)]));
            }
        }
        Ok(BruteForce::Inconclusive)
    }
}

fn add(ring: &Ring, a: u64, b: u64) -> u64 {
    encode(&decode(ring, a).add_unchecked(&decode(ring, b)))
}

fn encode(m: &MatrixR) -> u64 {
    let card = m.ring().card();
    m.entries().iter().fold(0u64, |acc, e| acc * card + e.0)
}

fn decode(ring: &Ring, mut x: u64) -> MatrixR {
    let card = ring.card();
    let mut entries = vec![Elem(0); 4];
    for slot in entries.iter_mut().rev() {
        *slot = Elem(x % card);
        x /= card;
    }
    MatrixR::new(ring, 2, entries).expect("decoded entries are in range")
}

/// Searches for `M = Σ M_i^k` with at most `max_terms` summands.
pub fn brute_force_witness(m: &MatrixR, k: u32, max_terms: usize) -> Result<BruteForce> {
    if m.dim() != 2 {
        return Err(Error::Invalid("brute-force search is limited to 2x2 matrices".into()));
    }
    KthPowerTable::new(m.ring(), k)?.witness(m, max_terms)
}
