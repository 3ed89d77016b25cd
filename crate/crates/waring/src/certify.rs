//! Certificates for the polynomial identities behind the trace subgroups:
//! binomial closure congruences checked symbolically, and proof-chain
//! families checked semantically on finite rings.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::expr::{self, split_top_level};
use crate::poly::{eval_with_functions, MultiPoly};
use crate::ring::{Elem, Ring};
use crate::subgroup::{additive_closure, compute_trace_subgroup, SubgroupSet};
use crate::trace_power::coefficient;

const IDENTITY_TABLE: &str = include_str!("../data/identities.txt");
const CHAIN_TABLE: &str = include_str!("../data/chains.txt");

/// `tr(A(t, d)^k)` as a polynomial in `t` and `d`.
pub fn trace_multipoly(k: u32) -> MultiPoly {
    (0..=k / 2).fold(MultiPoly::zero(), |acc, r| {
        acc.add(&MultiPoly::monomial(coefficient(k, r), &[("t", k - 2 * r), ("d", r)]))
    })
}

fn data_lines(table: &str) -> impl Iterator<Item = &str> {
    table.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Splits on single `|`; `||` stays inside a column.
fn columns(line: &str) -> Vec<String> {
    line.replace("||", "\u{1}").split('|').map(|c| c.trim().replace('\u{1}', "||")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub id: String,
    pub k: u32,
    pub reading: String,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

/// The curated closure identities.
pub fn identities() -> Vec<Identity> {
    data_lines(IDENTITY_TABLE)
        .map(|line| {
            let c = columns(line);
            Identity {
                id: c[0].clone(),
                k: c[1].parse().expect("identity table: k"),
                reading: c[2].clone(),
                lhs: c[3].clone(),
                rhs: c[4].clone(),
                note: c.get(5).cloned().unwrap_or_default(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReading {
    pub reading: String,
    pub holds: bool,
    /// `lhs - rhs` with coefficients reduced into `[0, k)`.
    pub residual: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub k: u32,
    pub readings: Vec<IdentityReading>,
    /// First reading that holds, printed before corrected.
    pub holding_reading: Option<String>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.holding_reading.is_some()
    }
}

fn check_identity(entry: &Identity) -> Result<IdentityReading> {
    let diff = MultiPoly::parse(&entry.lhs)?.sub(&MultiPoly::parse(&entry.rhs)?);
    let residual = diff.reduce_mod(&BigInt::from(entry.k));
    Ok(IdentityReading {
        reading: entry.reading.clone(),
        holds: residual.is_zero(),
        residual: residual.to_string(),
        note: entry.note.clone(),
    })
}

/// Expands both sides over `Z` and compares them modulo `k`.
pub fn verify_closure_identity(k: u32, id: &str) -> Result<IdentityReport> {
    let rows: Vec<Identity> = identities().into_iter().filter(|e| e.k == k && e.id == id).collect();
    if rows.is_empty() {
        return Err(Error::Invalid(format!("unknown identity {id} for k = {k}")));
    }
    let readings = rows.iter().map(check_identity).collect::<Result<Vec<_>>>()?;
    let holding_reading = readings.iter().find(|r| r.holds).map(|r| r.reading.clone());
    Ok(IdentityReport { id: id.to_string(), k, readings, holding_reading })
}

/// Identity ids for `k` (or all `k`) in table order.
pub fn identity_ids(k: Option<u32>) -> Vec<(u32, String)> {
    let mut seen = HashSet::new();
    identities()
        .into_iter()
        .filter(|e| k.is_none_or(|k| e.k == k))
        .filter(|e| seen.insert((e.k, e.id.clone())))
        .map(|e| (e.k, e.id))
        .collect()
}

pub fn verify_all_identities(k: Option<u32>) -> Result<Vec<IdentityReport>> {
    identity_ids(k).into_iter().map(|(k, id)| verify_closure_identity(k, &id)).collect()
}

/// A reduction set: the integers (optionally) and polynomial families in `y`
/// evaluated at every ring element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSet {
    pub name: String,
    pub integers: bool,
    pub families: Vec<MultiPoly>,
}

impl KSet {
    fn parse(name: &str, src: &str) -> Result<KSet> {
        let mut integers = false;
        let mut families = Vec::new();
        for item in src.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "Z" {
                integers = true;
            } else {
                let p = MultiPoly::parse(item)?;
                if p.used_vars().iter().any(|v| *v != "y") {
                    return Err(Error::Parse(format!("reduction family {item:?} must be a polynomial in y")));
                }
                families.push(p);
            }
        }
        Ok(KSet { name: name.to_string(), integers, families })
    }

    /// Additive subgroup of `ring` generated by the set.
    pub fn group(&self, ring: &Ring) -> Result<Vec<bool>> {
        let mut gens: Vec<Elem> = Vec::new();
        if self.integers {
            gens.push(ring.one());
        }
        for fam in &self.families {
            let bound = fam.bind(ring, &["y"])?;
            gens.extend(ring.elements().map(|y| bound.eval(&[y])));
        }
        gens.sort_by_key(|e| e.0);
        gens.dedup();
        Ok(additive_closure(ring, &gens))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    pub id: String,
    pub reading: String,
    pub vars: Vec<String>,
    pub source: String,
    pub polynomial: MultiPoly,
    pub recipes: Vec<String>,
    pub kset: String,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct Chain {
    pub family: String,
    pub k: u32,
    pub ksets: Vec<KSet>,
    pub entries: Vec<ChainEntry>,
}

/// All chains of the curated table, in order.
pub fn chains() -> Result<Vec<Chain>> {
    let mut out: Vec<Chain> = Vec::new();
    for line in data_lines(CHAIN_TABLE) {
        if let Some(header) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let mut parts = header.split_whitespace();
            let family = parts.next().ok_or_else(|| Error::Parse("empty chain header".into()))?;
            let k = parts
                .next()
                .and_then(|s| s.strip_prefix("k="))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("chain header {header:?} needs k=K")))?;
            out.push(Chain { family: family.to_string(), k, ksets: Vec::new(), entries: Vec::new() });
            continue;
        }
        let chain = out.last_mut().ok_or_else(|| Error::Parse("entry before any chain header".into()))?;
        if let Some(rest) = line.strip_prefix("kset ") {
            let (name, body) = rest.split_once('=').ok_or_else(|| Error::Parse(format!("bad kset line {line:?}")))?;
            chain.ksets.push(KSet::parse(name.trim(), body)?);
            continue;
        }
        let c = columns(line);
        if c.len() < 6 {
            return Err(Error::Parse(format!("chain entry needs 6 columns: {line:?}")));
        }
        if !chain.ksets.iter().any(|s| s.name == c[5]) {
            return Err(Error::Parse(format!("unknown kset {} in {line:?}", c[5])));
        }
        chain.entries.push(ChainEntry {
            id: c[0].clone(),
            reading: c[1].clone(),
            vars: c[2].split(',').map(|v| v.trim().to_string()).collect(),
            source: c[3].clone(),
            polynomial: MultiPoly::parse(&c[3])?,
            recipes: c[4].split("||").map(|r| r.trim().to_string()).collect(),
            kset: c[5].clone(),
            note: c.get(6).cloned().unwrap_or_default(),
        });
    }
    Ok(out)
}

pub fn chain(family: &str) -> Result<Chain> {
    chains()?
        .into_iter()
        .find(|c| c.family == family)
        .ok_or_else(|| Error::Invalid(format!("unknown chain family {family}")))
}

pub fn chain_for_k(k: u32) -> Result<Chain> {
    chains()?.into_iter().find(|c| c.k == k).ok_or_else(|| Error::Invalid(format!("no chain for k = {k}")))
}

impl Chain {
    /// Named readings; a chain without reading-specific entries has the
    /// single reading "printed".
    pub fn readings(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in &self.entries {
            if e.reading != "*" && !out.contains(&e.reading) {
                out.push(e.reading.clone());
            }
        }
        if out.is_empty() {
            out.push("printed".to_string());
        }
        out
    }

    pub fn kset(&self, name: &str) -> &KSet {
        self.ksets.iter().find(|s| s.name == name).expect("validated at load")
    }

    /// Entries of one reading with their derivations expanded over `Z`.
    pub fn derive(&self, reading: &str) -> Result<Vec<DerivedEntry>> {
        let mut defs: HashMap<String, (Vec<String>, MultiPoly)> = HashMap::new();
        defs.insert("tr".into(), (vec!["t".into(), "d".into()], trace_multipoly(self.k)));
        let mut out = Vec::new();
        for e in self.entries.iter().filter(|e| e.reading == "*" || e.reading == reading) {
            let lookup = |name: &str| defs.get(name).cloned();
            let mut recipes = Vec::new();
            for r in &e.recipes {
                let value = eval_with_functions(&expr::parse(r)?, &lookup)?;
                let residual = value.sub(&e.polynomial);
                let leftover = kreduce(&residual, self.kset(&e.kset));
                recipes.push(DerivedRecipe { recipe: r.clone(), residual, leftover });
            }
            defs.insert(e.id.clone(), (e.vars.clone(), e.polynomial.clone()));
            out.push(DerivedEntry { entry: e.clone(), recipes });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct DerivedRecipe {
    pub recipe: String,
    /// Derivation minus the printed polynomial.
    pub residual: MultiPoly,
    /// What remains after symbolic reduction by the entry's set.
    pub leftover: MultiPoly,
}

#[derive(Debug, Clone)]
pub struct DerivedEntry {
    pub entry: ChainEntry,
    pub recipes: Vec<DerivedRecipe>,
}

impl DerivedEntry {
    /// Index of the first derivation that reduces to the printed polynomial.
    pub fn cleared_by(&self) -> Option<usize> {
        self.recipes.iter().position(|r| r.leftover.is_zero())
    }
}

fn symmetric_mod(c: &BigInt, g: &BigInt) -> BigInt {
    let r = c.mod_floor(g);
    if r > g / 2 {
        r - g
    } else {
        r
    }
}

/// Heuristic reduction of `res` modulo the additive group generated by the
/// set's families at monomial arguments: coefficients are reduced by the gcd
/// of the single-term families applicable to each monomial, and multi-term
/// families are used as rewrite rules on their leading term.
pub fn kreduce(res: &MultiPoly, kset: &KSet) -> MultiPoly {
    let mut mono: Vec<(BigInt, u32)> = Vec::new();
    let mut rew: Vec<(u32, BigInt, MultiPoly)> = Vec::new();
    for fam in &kset.families {
        let (_, coeffs) = fam.univariate().expect("families are univariate in y");
        let nonzero: Vec<(u32, &BigInt)> =
            coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as u32, c)).collect();
        match nonzero.as_slice() {
            [(j, c)] => mono.push(((*c).clone(), *j)),
            [.., (jt, ct)] => rew.push((*jt, (*ct).clone(), fam.clone())),
            [] => {}
        }
    }
    let vars: Vec<String> = res.vars().to_vec();
    let mut terms: BTreeMap<Vec<u32>, BigInt> = res.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect();
    let gcd_for = |e: &[u32]| -> BigInt {
        if e.iter().all(|v| *v == 0) && kset.integers {
            return BigInt::from(1);
        }
        mono.iter()
            .filter(|(_, j)| *j > 0 && e.iter().all(|v| v % j == 0) || *j == 0 && e.iter().all(|v| *v == 0))
            .fold(BigInt::zero(), |g, (c, _)| g.gcd(c))
    };
    let monomial = |base: &[u32]| -> MultiPoly {
        let powers: Vec<(&str, u32)> = vars.iter().map(String::as_str).zip(base.iter().copied()).collect();
        MultiPoly::monomial(1, &powers)
    };
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 10_000 {
        rounds += 1;
        changed = false;
        let keys: Vec<Vec<u32>> = terms.keys().cloned().collect();
        for e in keys {
            let g = gcd_for(&e);
            if g.is_zero() {
                continue;
            }
            let c = terms[&e].clone();
            let r = symmetric_mod(&c, &g);
            if r != c {
                changed = true;
                if r.is_zero() {
                    terms.remove(&e);
                } else {
                    terms.insert(e, r);
                }
            }
        }
        let mut order: Vec<Vec<u32>> = terms.keys().cloned().collect();
        order.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        'terms: for e in order {
            let c = terms[&e].clone();
            let g = gcd_for(&e);
            for (jt, ct, fam) in &rew {
                if *jt == 0 || !e.iter().all(|v| v % jt == 0) {
                    continue;
                }
                let gg = if g.is_zero() { ct.abs() } else { ct.gcd(&g) };
                if !(&c % &gg).is_zero() {
                    continue;
                }
                let a = if g.is_zero() || (&c % ct).is_zero() {
                    &c / ct
                } else {
                    let bound = g.to_i64().unwrap_or(i64::MAX);
                    match (-bound..=bound).map(BigInt::from).find(|a| (&c - a * ct).mod_floor(&g).is_zero()) {
                        Some(a) => a,
                        None => continue,
                    }
                };
                let base: Vec<u32> = e.iter().map(|v| v / jt).collect();
                let sub = fam.substitute(&[("y", monomial(&base))]).scale(&a);
                let aligned = sub.terms_in(&vars);
                for (ee, cc) in aligned {
                    let slot = terms.entry(ee.clone()).or_default();
                    *slot -= cc;
                    if slot.is_zero() {
                        terms.remove(&ee);
                    }
                }
                changed = true;
                break 'terms;
            }
        }
    }
    terms.into_iter().fold(MultiPoly::zero(), |acc, (e, c)| {
        let powers: Vec<(&str, u32)> = vars.iter().map(String::as_str).zip(e.iter().copied()).collect();
        acc.add(&MultiPoly::monomial(c, &powers))
    })
}

/// Per-ring outcome of a chain entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRingResult {
    pub ring: String,
    /// Every value of the printed polynomial lies in `S^k`.
    pub member: bool,
    /// First derivation whose residual takes values in `S^k` only.
    pub residual_recipe: Option<usize>,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub reading: String,
    pub polynomial: String,
    pub recipes: Vec<String>,
    /// Derivation that clears symbolically, if any.
    pub cleared_by: Option<usize>,
    /// Leftover of the displayed derivation after symbolic reduction.
    pub leftover: String,
    pub rings: Vec<EntryRingResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingReport {
    pub reading: String,
    pub semantic_pass: bool,
    pub symbolically_cleared: usize,
    pub entries: Vec<EntryReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub family: String,
    pub k: u32,
    pub rings: Vec<String>,
    pub readings: Vec<ReadingReport>,
    /// Readings that pass semantically and whose reading-specific entries
    /// also clear symbolically.
    pub validating_readings: Vec<String>,
    pub passed: bool,
}

fn assignments(ring: &Ring, arity: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let card = ring.card();
    (0..card.pow(arity as u32)).map(move |mut idx| {
        let mut out = vec![Elem(0); arity];
        for slot in out.iter_mut().rev() {
            *slot = ring.element_at(idx % card);
            idx /= card;
        }
        out
    })
}

fn check_entry_on_ring(d: &DerivedEntry, ring: &Ring, s: &SubgroupSet) -> Result<EntryRingResult> {
    let args: Vec<&str> = d.entry.vars.iter().map(String::as_str).collect();
    let printed = d.entry.polynomial.bind(ring, &args)?;
    let mut counterexample = None;
    for a in assignments(ring, args.len()) {
        let v = printed.eval(&a);
        if !s.contains(v) {
            let bind: Vec<String> =
                args.iter().zip(&a).map(|(n, x)| format!("{n}={}", ring.format_elem(*x))).collect();
            counterexample = Some(format!("{} -> {}", bind.join(", "), ring.format_elem(v)));
            break;
        }
    }
    let mut residual_recipe = None;
    for (i, r) in d.recipes.iter().enumerate() {
        let bound = r.residual.bind(ring, &args)?;
        if assignments(ring, args.len()).all(|a| s.contains(bound.eval(&a))) {
            residual_recipe = Some(i);
            break;
        }
    }
    Ok(EntryRingResult { ring: ring.spec().to_string(), member: counterexample.is_none(), residual_recipe, counterexample })
}

/// Checks every entry of `chain` on every ring: printed values must lie in
/// `S^k` (2x2 seeds) and some derivation's residual must as well.
pub fn verify_chain_semantically(chain: &Chain, rings: &[Ring], entry: Option<&str>, budget: Budget) -> Result<ChainReport> {
    let subgroups: Vec<SubgroupSet> = crate::par::map(rings, |r| compute_trace_subgroup(r, chain.k, 2, false, budget))
        .into_iter()
        .collect::<Result<_>>()?;
    if let Some(id) = entry {
        if !chain.entries.iter().any(|e| e.id == id) {
            return Err(Error::Invalid(format!("unknown entry {id} in {}", chain.family)));
        }
    }
    let mut readings = Vec::new();
    for reading in chain.readings() {
        let derived: Vec<DerivedEntry> =
            chain.derive(&reading)?.into_iter().filter(|d| entry.is_none_or(|id| d.entry.id == id)).collect();
        let entries: Vec<EntryReport> = crate::par::map(&derived, |d| -> Result<EntryReport> {
            let ring_results = rings
                .iter()
                .zip(&subgroups)
                .map(|(r, s)| check_entry_on_ring(d, r, s))
                .collect::<Result<Vec<_>>>()?;
            let passed = ring_results.iter().all(|r| r.member && r.residual_recipe.is_some());
            Ok(EntryReport {
                id: d.entry.id.clone(),
                reading: d.entry.reading.clone(),
                polynomial: d.entry.polynomial.to_string(),
                recipes: d.entry.recipes.clone(),
                cleared_by: d.cleared_by(),
                leftover: d.recipes[0].leftover.to_string(),
                rings: ring_results,
                passed,
            })
        })
        .into_iter()
        .collect::<Result<_>>()?;
        readings.push(ReadingReport {
            reading: reading.clone(),
            semantic_pass: entries.iter().all(|e| e.passed),
            symbolically_cleared: entries.iter().filter(|e| e.cleared_by.is_some()).count(),
            entries,
        });
    }
    let validating_readings = readings
        .iter()
        .filter(|r| r.semantic_pass && r.entries.iter().filter(|e| e.reading != "*").all(|e| e.cleared_by.is_some()))
        .map(|r| r.reading.clone())
        .collect();
    let passed = readings.iter().any(|r| r.semantic_pass);
    Ok(ChainReport {
        family: chain.family.clone(),
        k: chain.k,
        rings: rings.iter().map(|r| r.spec().to_string()).collect(),
        readings,
        validating_readings,
        passed,
    })
}

/// The two remark polynomials with their reduction sets and named families.
fn remark_data(k: u32) -> Result<(&'static str, &'static str, &'static [&'static str])> {
    match k {
        12 => Ok(("12t^10*d+6t^8*d^2+12t^2*d^5", "K2", &["g0"])),
        16 => Ok(("16t^14*d+8t^12*d^2+4t^8*d^4", "U", &["g", "q"])),
        _ => Err(Error::Invalid(format!("remarks exist for k = 12 and 16, not {k}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkRing {
    pub ring: String,
    pub group_size: usize,
    pub in_group: bool,
    pub outside: Vec<String>,
    pub in_trace_subgroup: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub k: u32,
    pub f: String,
    pub g1: String,
    pub g2: String,
    pub rings: Vec<RemarkRing>,
}

/// Exploratory: whether `f(g1(x), g2(x))` lies in the additive group
/// generated by the reduction set, the named families and `h(x, m)`,
/// `m >= 2`, on each ring.
pub fn explore_remark(k: u32, g1: &MultiPoly, g2: &MultiPoly, rings: &[Ring], budget: Budget) -> Result<RemarkReport> {
    let (f_src, kset_name, named) = remark_data(k)?;
    for g in [g1, g2] {
        if g.used_vars().iter().any(|v| *v != "x") {
            return Err(Error::Invalid(format!("candidate {g} must be a polynomial in x")));
        }
    }
    let f = MultiPoly::parse(f_src)?;
    let composed = f.substitute(&[("t", g1.clone()), ("d", g2.clone())]);
    let chain = chain_for_k(k)?;
    let derived = chain.derive("printed")?;
    let family = |id: &str| derived.iter().find(|d| d.entry.id == id).map(|d| d.entry.polynomial.clone()).expect("chain entry");
    let h = family("f");
    let mut out = Vec::new();
    for ring in rings {
        budget.check(ring.card() as u128 * 64)?;
        let elems = ring.elements_vec();
        let mut gens: Vec<Elem> = Vec::new();
        for id in named {
            let b = family(id).bind(ring, &["x"])?;
            gens.extend(elems.iter().map(|x| b.eval(&[*x])));
        }
        let hb = h.bind(ring, &["x", "y"])?;
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        let mut odd: Vec<Elem> = elems.clone();
        while seen.insert(odd.clone()) {
            for (x, o) in elems.iter().zip(&odd) {
                gens.push(hb.eval(&[ring.mul(*x, *x), *o]));
            }
            odd = odd.iter().zip(&elems).map(|(o, x)| ring.mul(*o, ring.mul(*x, *x))).collect();
        }
        let kgroup = chain.kset(kset_name).group(ring)?;
        gens.extend(ring.elements().filter(|v| kgroup[v.0 as usize]));
        gens.sort_by_key(|e| e.0);
        gens.dedup();
        let group = additive_closure(ring, &gens);
        let cb = composed.bind(ring, &["x"])?;
        let values: Vec<Elem> = elems.iter().map(|x| cb.eval(&[*x])).collect();
        let mut outside: Vec<String> = values.iter().filter(|v| !group[v.0 as usize]).map(|v| ring.format_elem(*v)).collect();
        outside.dedup();
        let s = compute_trace_subgroup(ring, k, 2, false, budget)?;
        out.push(RemarkRing {
            ring: ring.spec().to_string(),
            group_size: group.iter().filter(|b| **b).count(),
            in_group: outside.is_empty(),
            outside,
            in_trace_subgroup: values.iter().all(|v| s.contains(*v)),
        });
    }
    Ok(RemarkReport { k, f: f.to_string(), g1: g1.to_string(), g2: g2.to_string(), rings: out })
}

/// Splits a comma-separated list that may contain parenthesised specs.
pub fn split_list(s: &str) -> Vec<&str> {
    split_top_level(s, ',').into_iter().map(str::trim).filter(|x| !x.is_empty()).collect()
}
