//! Trace-condition sets: Witt sets `W(p,s,R)`, `W*(2,4,R)`, `S_10`, `S_12`,
//! `S*_12`, `S_14`, `S_15`, the degree-9 set `{a_0^9 + 3a_1^3 mod 9R}` and the
//! `p`-th powers modulo `pR`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::ring::{quotient_by_integer, Elem, Quotient, Ring};
use crate::trace_power::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetKind {
    Witt { p: u64, s: u32 },
    WittStar24,
    WittBar24,
    S10,
    S12,
    S12Bar,
    S12Prime,
    S12Star,
    S14,
    S15,
    Deg9Set,
    PthPowerModP(u64),
}

/// One summand of a set's defining expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// `coef · x^exp`.
    Power { coef: i64, exp: u64 },
    /// `4x^{2m+1} + 6x^2 + 12x`, `m ≥ 1`.
    Joint12,
    /// `4a^4 + 16a + 16a^{2m+1}`, `m ≥ 1`.
    JointW24,
}

fn witt_slots(p: u64, s: u32) -> Vec<Slot> {
    (0..=s).map(|i| Slot::Power { coef: (p as i64).pow(i), exp: p.pow(s - i) }).collect()
}

fn pw(coef: i64, exp: u64) -> Slot {
    Slot::Power { coef, exp }
}

impl SetKind {
    /// Modulus `m` such that the set lives in `R/mR`; `None` means `R` itself.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            SetKind::S10 => Some(10),
            SetKind::S12 => Some(12),
            SetKind::S14 => Some(14),
            SetKind::S15 => Some(15),
            SetKind::Deg9Set => Some(9),
            SetKind::PthPowerModP(p) => Some(*p),
            _ => None,
        }
    }

    /// Defining expressions; unions have several components.
    fn components(&self) -> Vec<Vec<Slot>> {
        match *self {
            SetKind::Witt { p, s } => vec![witt_slots(p, s)],
            SetKind::WittBar24 => vec![vec![pw(1, 16), pw(2, 8), Slot::JointW24]],
            SetKind::WittStar24 => vec![vec![pw(1, 16), pw(2, 8), Slot::JointW24], witt_slots(2, 5)],
            SetKind::S10 => vec![vec![pw(1, 10), pw(-2, 5), pw(5, 2)]],
            SetKind::S12 => vec![vec![pw(1, 12), pw(2, 6), pw(-3, 4), pw(-4, 3), pw(6, 2)]],
            SetKind::S12Bar => vec![s12_bar()],
            SetKind::S12Prime => vec![s12_prime()],
            SetKind::S12Star => vec![s12_bar(), s12_prime()],
            SetKind::S14 => vec![vec![pw(1, 14), pw(-2, 7), pw(7, 2)]],
            SetKind::S15 => vec![vec![pw(1, 15), pw(-3, 5), pw(5, 3)]],
            SetKind::Deg9Set => vec![vec![pw(1, 9), pw(3, 3)]],
            SetKind::PthPowerModP(p) => vec![vec![pw(1, p)]],
        }
    }

    pub fn formula(&self) -> String {
        match *self {
            SetKind::Witt { p, s } => {
                let terms: Vec<String> = (0..=s)
                    .map(|i| {
                        let c = p.pow(i);
                        let e = p.pow(s - i);
                        match (c, e) {
                            (1, _) => format!("a{i}^{e}"),
                            (_, 1) => format!("{c}a{i}"),
                            _ => format!("{c}a{i}^{e}"),
                        }
                    })
                    .collect();
                terms.join(" + ")
            }
            SetKind::WittBar24 => "a0^16 + 2a1^8 + 4a^4 + 16a + 16a^(2m+1)".into(),
            SetKind::WittStar24 => {
                "(a0^16 + 2a1^8 + 4a^4 + 16a + 16a^(2m+1)) or (b0^32 + 2b1^16 + 4b2^8 + 8b3^4 + 16b4^2 + 32b5)".into()
            }
            SetKind::S10 => "x0^10 - 2x1^5 + 5x2^2 mod 10R".into(),
            SetKind::S12 => "x0^12 + 2x1^6 - 3x2^4 - 4x3^3 + 6x4^2 mod 12R".into(),
            SetKind::S12Bar => "x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 12x4^2 + 24x5".into(),
            SetKind::S12Prime => "x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 4x4^(2m+1) + 6x4^2 + 12x4".into(),
            SetKind::S12Star => "(x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 12x4^2 + 24x5) or (x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 4x4^(2m+1) + 6x4^2 + 12x4)".into(),
            SetKind::S14 => "x0^14 - 2x1^7 + 7x2^2 mod 14R".into(),
            SetKind::S15 => "x0^15 - 3x1^5 + 5x2^3 mod 15R".into(),
            SetKind::Deg9Set => "a0^9 + 3a1^3 mod 9R".into(),
            SetKind::PthPowerModP(p) => format!("a^{p} mod {p}R"),
        }
    }
}

fn s12_bar() -> Vec<Slot> {
    vec![pw(1, 12), pw(2, 6), pw(3, 4), pw(8, 3), pw(12, 2), pw(24, 1)]
}

fn s12_prime() -> Vec<Slot> {
    vec![pw(1, 12), pw(2, 6), pw(3, 4), pw(8, 3), Slot::Joint12]
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Witt { p, s } => write!(f, "witt:{p}:{s}"),
            SetKind::WittStar24 => f.write_str("wittstar24"),
            SetKind::WittBar24 => f.write_str("wittbar24"),
            SetKind::S10 => f.write_str("s10"),
            SetKind::S12 => f.write_str("s12"),
            SetKind::S12Bar => f.write_str("s12bar"),
            SetKind::S12Prime => f.write_str("s12prime"),
            SetKind::S12Star => f.write_str("s12star"),
            SetKind::S14 => f.write_str("s14"),
            SetKind::S15 => f.write_str("s15"),
            SetKind::Deg9Set => f.write_str("deg9"),
            SetKind::PthPowerModP(p) => write!(f, "pth:{p}"),
        }
    }
}

impl FromStr for SetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SetKind> {
        let lower = s.trim().to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let prime = |t: &str| -> Result<u64> {
            let p: u64 = t.parse().map_err(|_| Error::Parse(format!("bad prime {t:?}")))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(Error::Invalid(format!("{p} is not prime")))
            }
        };
        Ok(match parts.as_slice() {
            ["s10"] => SetKind::S10,
            ["s12"] => SetKind::S12,
            ["s12bar"] => SetKind::S12Bar,
            ["s12prime"] => SetKind::S12Prime,
            ["s12star"] => SetKind::S12Star,
            ["s14"] => SetKind::S14,
            ["s15"] => SetKind::S15,
            ["deg9"] => SetKind::Deg9Set,
            ["wittstar24"] => SetKind::WittStar24,
            ["wittbar24"] => SetKind::WittBar24,
            ["witt", p, s] => {
                let s: u32 = s.parse().map_err(|_| Error::Parse(format!("bad level {s:?}")))?;
                if s == 0 {
                    return Err(Error::Invalid("Witt level must be at least 1".into()));
                }
                SetKind::Witt { p: prime(p)?, s }
            }
            ["pth", p] => SetKind::PthPowerModP(prime(p)?),
            _ => return Err(Error::Parse(format!("unknown set kind {s:?}"))),
        })
    }
}

/// A generating tuple for a member: one value per slot, the exponent
/// parameter `m` for sets that carry one, and the union component used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub values: Vec<Elem>,
    pub m: Option<u64>,
    pub component: usize,
}

/// Candidate contributions of one slot: distinct values with their first
/// `(x, m)` in enumeration order.
fn slot_options(ring: &Ring, slot: Slot) -> Vec<(Elem, Elem, Option<u64>)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |v: Elem, x: Elem, m: Option<u64>| {
        if seen.insert(v) {
            out.push((v, x, m));
        }
    };
    match slot {
        Slot::Power { coef, exp } => {
            for x in ring.elements() {
                push(ring.int_scale(ring.pow(x, exp), coef as i128), x, None);
            }
        }
        Slot::Joint12 | Slot::JointW24 => {
            for x in ring.elements() {
                let base = match slot {
                    Slot::Joint12 => ring.add(
                        ring.int_scale(ring.mul(x, x), 6),
                        ring.int_scale(x, 12),
                    ),
                    _ => ring.add(ring.int_scale(ring.pow(x, 4), 4), ring.int_scale(x, 16)),
                };
                let c = if slot == Slot::Joint12 { 4 } else { 16 };
                let x2 = ring.mul(x, x);
                let mut odd = ring.mul(x2, x);
                let mut seen_pow = HashSet::new();
                let mut m = 1u64;
                while seen_pow.insert(odd) {
                    push(ring.add(base, ring.int_scale(odd, c)), x, Some(m));
                    odd = ring.mul(odd, x2);
                    m += 1;
                }
            }
        }
    }
    out
}

fn slot_value(ring: &Ring, slot: Slot, x: Elem, m: Option<u64>) -> Result<Elem> {
    Ok(match slot {
        Slot::Power { coef, exp } => ring.int_scale(ring.pow(x, exp), coef as i128),
        Slot::Joint12 | Slot::JointW24 => {
            let m = m.ok_or_else(|| Error::Invalid("witness lacks the exponent parameter m".into()))?;
            let odd = ring.pow(x, 2 * m + 1);
            if slot == Slot::Joint12 {
                ring.sum([ring.int_scale(odd, 4), ring.int_scale(ring.mul(x, x), 6), ring.int_scale(x, 12)])
            } else {
                ring.sum([ring.int_scale(ring.pow(x, 4), 4), ring.int_scale(x, 16), ring.int_scale(odd, 16)])
            }
        }
    })
}

/// Reachable sums of one union component with lex-first witnesses.
fn component_witnesses(ring: &Ring, slots: &[Slot], component: usize) -> HashMap<Elem, Witness> {
    let options: Vec<_> = slots.iter().map(|s| slot_options(ring, *s)).collect();
    let k = slots.len();
    // suffix[j] = values of Σ_{i ≥ j} slot_i
    let mut suffix: Vec<HashSet<Elem>> = vec![HashSet::new(); k + 1];
    suffix[k].insert(ring.zero());
    for j in (0..k).rev() {
        let mut acc = HashSet::new();
        for &t in &suffix[j + 1] {
            for (v, _, _) in &options[j] {
                acc.insert(ring.add(*v, t));
            }
        }
        suffix[j] = acc;
    }
    let targets: Vec<Elem> = ring.elements().filter(|v| suffix[0].contains(v)).collect();
    let found = crate::par::map(&targets, |&v| {
        let mut rest = v;
        let mut values = Vec::with_capacity(k);
        let mut m = None;
        for j in 0..k {
            let (val, x, mm) = options[j]
                .iter()
                .find(|(val, _, _)| suffix[j + 1].contains(&ring.sub(rest, *val)))
                .copied()
                .expect("suffix sets are consistent");
            rest = ring.sub(rest, val);
            values.push(x);
            if mm.is_some() {
                m = mm;
            }
        }
        (v, Witness { values, m, component })
    });
    found.into_iter().collect()
}

/// A trace-condition set over the ambient ring `R` or `R/mR`.
#[derive(Debug, Clone)]
pub struct ConditionSet {
    pub kind: SetKind,
    pub source: Ring,
    pub quotient: Quotient,
    members: BTreeMap<Elem, Witness>,
}

impl ConditionSet {
    pub fn ambient(&self) -> &Ring {
        &self.quotient.target
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Elem) -> bool {
        self.members.contains_key(&v)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.keys().copied()
    }

    /// Members in enumeration order of the ambient ring.
    pub fn elements_in_order(&self) -> Vec<Elem> {
        self.ambient().elements().filter(|v| self.contains(*v)).collect()
    }

    pub fn witness(&self, v: Elem) -> Option<&Witness> {
        self.members.get(&v)
    }

    pub fn is_whole_ring(&self) -> bool {
        self.members.len() as u64 == self.ambient().card()
    }

    pub fn as_set(&self) -> HashSet<Elem> {
        self.members.keys().copied().collect()
    }
}

pub fn build_condition_set(kind: SetKind, ring: &Ring, budget: Budget) -> Result<ConditionSet> {
    let quotient = match kind.modulus() {
        Some(m) => quotient_by_integer(ring, m)?,
        None => Quotient::identity(ring),
    };
    let ambient = quotient.target.clone();
    let comps = kind.components();
    let card = ambient.card() as u128;
    let slots: u128 = comps.iter().map(|c| c.len() as u128).sum();
    budget.check(card.saturating_mul(card).saturating_mul(slots.max(1)))?;
    let mut members = BTreeMap::new();
    for (idx, slots) in comps.iter().enumerate() {
        for (v, w) in component_witnesses(&ambient, slots, idx) {
            members.entry(v).or_insert(w);
        }
    }
    Ok(ConditionSet { kind, source: ring.clone(), quotient, members })
}

/// Element set of `W(p, s, R)`.
pub fn witt_value_set(ring: &Ring, p: u64, s: u32, budget: Budget) -> Result<HashSet<Elem>> {
    Ok(build_condition_set(SetKind::Witt { p, s }, ring, budget)?.as_set())
}

/// Membership of an ambient element, with its witness.
pub fn is_member(set: &ConditionSet, v: Elem) -> Option<&Witness> {
    set.witness(v)
}

/// Membership of an element of the source ring after projection.
pub fn is_member_source(set: &ConditionSet, v: Elem) -> Option<&Witness> {
    set.witness(set.quotient.project(v))
}

/// Re-evaluates a witness in the ambient ring.
pub fn evaluate_witness(kind: SetKind, ambient: &Ring, w: &Witness) -> Result<Elem> {
    let comps = kind.components();
    let slots = comps.get(w.component).ok_or_else(|| Error::Invalid(format!("no component {}", w.component)))?;
    if slots.len() != w.values.len() {
        return Err(Error::Invalid(format!("witness has {} values, expected {}", w.values.len(), slots.len())));
    }
    let mut acc = ambient.zero();
    for (slot, x) in slots.iter().zip(&w.values) {
        ambient.check_elem(*x)?;
        acc = ambient.add(acc, slot_value(ambient, *slot, *x, w.m)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureViolation {
    MissingZero,
    Negation { element: Elem },
    Sum { a: Elem, b: Elem },
}

/// Checks `0 ∈ S`, `-S ⊆ S` and `S + S ⊆ S`; returns the first violation in
/// enumeration order.
pub fn verify_group_closure(set: &ConditionSet) -> Option<ClosureViolation> {
    let ring = set.ambient();
    if !set.contains(ring.zero()) {
        return Some(ClosureViolation::MissingZero);
    }
    let elems = set.elements_in_order();
    if let Some(&a) = elems.iter().find(|a| !set.contains(ring.neg(**a))) {
        return Some(ClosureViolation::Negation { element: a });
    }
    let hits = crate::par::filter_map(&elems, |&a| {
        elems.iter().find(|&&b| !set.contains(ring.add(a, b))).map(|&b| ClosureViolation::Sum { a, b })
    });
    hits.into_iter().next()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerCheck {
    pub holds: bool,
    /// First element of `R` (enumeration order) that is not a `p`-th power mod `pR`.
    pub counterexample: Option<Elem>,
}

/// Whether every element of `R` is a `p`-th power modulo `pR`.
pub fn pth_power_mod_p(ring: &Ring, p: u64) -> Result<PowerCheck> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let q = quotient_by_integer(ring, p)?;
    let powers: HashSet<Elem> = q.target.elements().map(|a| q.target.pow(a, p)).collect();
    let counterexample = ring.elements().find(|a| !powers.contains(&q.project(*a)));
    Ok(PowerCheck { holds: counterexample.is_none(), counterexample })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub p: u64,
    pub k_power: u64,
    /// `α_1, ..., α_m`.
    pub terms: Vec<Elem>,
    /// `α'_m`.
    pub remainder: Elem,
}

impl Expansion {
    /// `Σ p^{i-1} α_i^{k_power} + p^m α'_m`.
    pub fn evaluate(&self, ring: &Ring) -> Elem {
        let mut acc = ring.zero();
        let mut scale = ring.one();
        let p = ring.from_int(self.p as i128);
        for a in &self.terms {
            acc = ring.add(acc, ring.mul(scale, ring.pow(*a, self.k_power)));
            scale = ring.mul(scale, p);
        }
        ring.add(acc, ring.mul(scale, self.remainder))
    }
}

/// Writes `α = α_1^K + p α_2^K + ... + p^{m-1} α_m^K + p^m α'_m`, choosing at
/// each level the first `a` (enumeration order) with `β - a^K ∈ pR`.
pub fn iterated_p_power_expansion(ring: &Ring, alpha: Elem, p: u64, k_power: u64, depth: usize) -> Result<Expansion> {
    ring.check_elem(alpha)?;
    let check = pth_power_mod_p(ring, p)?;
    if !check.holds {
        let c = check.counterexample.map(|c| ring.format_elem(c)).unwrap_or_default();
        return Err(Error::Hypothesis(format!(
            "{c} is not a {} power modulo {p}R in {}",
            crate::theorem::ordinal(p),
            ring.spec()
        )));
    }
    let mut multiples: HashMap<Elem, Elem> = HashMap::new();
    for g in ring.elements() {
        multiples.entry(ring.int_scale(g, p as i128)).or_insert(g);
    }
    let powers: Vec<(Elem, Elem)> = ring.elements().map(|a| (a, ring.pow(a, k_power))).collect();
    let mut beta = alpha;
    let mut terms = Vec::with_capacity(depth);
    for level in 0..depth {
        let (a, gamma) = powers
            .iter()
            .find_map(|(a, ak)| multiples.get(&ring.sub(beta, *ak)).map(|g| (*a, *g)))
            .ok_or_else(|| {
                Error::Hypothesis(format!(
                    "{} is not a {} power modulo {p}R at level {}",
                    ring.format_elem(beta),
                    crate::theorem::ordinal(k_power),
                    level + 1
                ))
            })?;
        terms.push(a);
        beta = gamma;
    }
    Ok(Expansion { p, k_power, terms, remainder: beta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn kind_names_round_trip() {
        for k in [
            SetKind::S10,
            SetKind::S12,
            SetKind::S12Bar,
            SetKind::S12Prime,
            SetKind::S12Star,
            SetKind::S14,
            SetKind::S15,
            SetKind::Deg9Set,
            SetKind::WittStar24,
            SetKind::WittBar24,
            SetKind::Witt { p: 3, s: 2 },
            SetKind::PthPowerModP(5),
        ] {
            assert_eq!(k.to_string().parse::<SetKind>().unwrap(), k);
        }
        assert!("witt:4:1".parse::<SetKind>().is_err());
        assert!("s11".parse::<SetKind>().is_err());
    }

    #[test]
    fn joint_slot_records_exponent() {
        let r = make_ring("Z/16").unwrap();
        let set = build_condition_set(SetKind::S12Prime, &r, Budget::default()).unwrap();
        for v in set.elements() {
            let w = set.witness(v).unwrap();
            assert!(w.m.unwrap() >= 1);
            assert_eq!(evaluate_witness(set.kind, set.ambient(), w).unwrap(), v);
        }
    }
}
