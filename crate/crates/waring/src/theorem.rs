//! Per-ring verification of the theorem families. Every statement is
//! evaluated independently, then the implications each theorem asserts are
//! checked among the verdicts.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::matrix::MatrixR;
use crate::ring::{make_ring, Elem, Ring};
use crate::sets::{build_condition_set, evaluate_witness, pth_power_mod_p, verify_group_closure, ClosureViolation, ConditionSet, SetKind, Witness};
use crate::subgroup::{compute_trace_subgroup, SubgroupSet};

pub const FAMILIES: [&str; 8] = ["deg9", "deg10", "deg11", "deg12", "deg13", "deg14", "deg15", "deg16"];

/// Seed for the sampled soundness checks.
pub const DEFAULT_SEED: u64 = 0x5741_5249_4e47;

/// Random matrices per computed subgroup whose `k`-th power trace is checked
/// against the seeded subgroup.
const SAMPLES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The claim was checked on every element of the ring.
    Exhaustive { checked: u64 },
    /// `matrix` has trace `element`, which lies outside `S^k` at dimension `n`.
    NotASum { k: u32, n: usize, element: String, matrix: String },
    /// `element` is not a `p`-th power modulo `pR`.
    NotAPower { p: u64, element: String },
    /// The set is not closed; elements are positions in `R/mR`.
    NotAGroup { set: SetKind, violation: ClosureViolation },
    /// `element` separates the trace condition from `S^k` at dimension `n`.
    Mismatch {
        set: SetKind,
        k: u32,
        n: usize,
        element: String,
        in_set: bool,
        set_witness: Option<Witness>,
        in_subgroup: bool,
        matrix: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statement {
    pub id: String,
    pub claim: String,
    pub verdict: bool,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsed {
    /// Seed tuples enumerated across all trace subgroups.
    pub seed_tuples: u64,
    /// Members across all condition sets built.
    pub set_members: u64,
    /// Random matrices whose power traces were checked against `S^k`.
    pub sampled_matrices: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub family: String,
    pub ring: String,
    pub statements: Vec<Statement>,
    pub agreement: bool,
    /// Asserted relations that fail, with the statements involved.
    pub disagreements: Vec<String>,
    pub budget_used: BudgetUsed,
    pub seed: u64,
}

impl TheoremReport {
    pub fn statement(&self, id: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.id == id)
    }

    /// Parses a report and re-validates every counterexample against a
    /// fresh computation.
    pub fn from_json_validated(json: &str, budget: Budget) -> Result<TheoremReport> {
        let report: TheoremReport =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("theorem report: {e}")))?;
        let ring = make_ring(&report.ring)?;
        relations(&report.family)?;
        let mut ctx = Context::new(&ring, budget, report.seed);
        for st in &report.statements {
            ctx.validate(st).map_err(|e| Error::Invalid(format!("statement {}: {e}", st.id)))?;
        }
        let (agreement, disagreements) = check_relations(&report.family, &report.statements)?;
        if agreement != report.agreement || disagreements != report.disagreements {
            return Err(Error::Invalid("agreement does not follow from the statement verdicts".into()));
        }
        Ok(report)
    }
}

/// Relations asserted by a theorem family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relation {
    /// All listed statements share one verdict.
    Equivalent(Vec<&'static str>),
    /// The statement is asserted outright.
    Holds(&'static str),
}

pub fn relations(family: &str) -> Result<Vec<Relation>> {
    use Relation::*;
    Ok(match family {
        "deg9" => vec![
            Equivalent(vec!["1.n2", "2.n2", "3"]),
            Equivalent(vec!["1.n3", "2.n3", "3"]),
            Holds("4.n2"),
            Holds("4.n3"),
            Holds("5.n2"),
            Holds("5.n3"),
        ],
        "deg10" | "deg14" | "deg15" => vec![Holds("1"), Holds("2"), Holds("3.n2"), Holds("3.n3")],
        "deg12" => vec![Holds("1"), Holds("4"), Holds("5.n2"), Holds("5.n3")],
        "deg11" | "deg13" => vec![
            Equivalent(vec!["1.n2", "2"]),
            Equivalent(vec!["1.n3", "2"]),
            Holds("tail.n2"),
            Holds("tail.n3"),
        ],
        "deg16" => vec![
            Equivalent(vec!["1.n2", "2.n2", "3.n2", "4.n2", "5"]),
            Equivalent(vec!["1.n3", "2.n3", "3.n3", "4.n3", "5"]),
            Holds("6.n2"),
            Holds("6.n3"),
        ],
        other => return Err(Error::Invalid(format!("unknown theorem family {other:?}"))),
    })
}

fn check_relations(family: &str, statements: &[Statement]) -> Result<(bool, Vec<String>)> {
    let verdict = |id: &str| {
        statements
            .iter()
            .find(|s| s.id == id)
            .map(|s| s.verdict)
            .ok_or_else(|| Error::Invalid(format!("{family} report lacks statement {id}")))
    };
    let mut failures = Vec::new();
    for rel in relations(family)? {
        match rel {
            Relation::Equivalent(ids) => {
                let vs = ids.iter().map(|id| verdict(id)).collect::<Result<Vec<_>>>()?;
                if vs.iter().any(|v| *v != vs[0]) {
                    let parts: Vec<String> = ids.iter().zip(&vs).map(|(id, v)| format!("({id})={v}")).collect();
                    failures.push(format!("equivalence broken: {}", parts.join(", ")));
                }
            }
            Relation::Holds(id) => {
                if !verdict(id)? {
                    failures.push(format!("({id}) fails"));
                }
            }
        }
    }
    Ok((failures.is_empty(), failures))
}

pub fn ordinal(k: u64) -> String {
    let suffix = match (k % 10, k % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{k}{suffix}")
}

fn diagonal(ring: &Ring, n: usize, v: Elem) -> MatrixR {
    let mut entries = vec![ring.zero(); n * n];
    entries[0] = v;
    MatrixR::new(ring, n, entries).expect("entries belong to the ring")
}

struct Context<'a> {
    ring: &'a Ring,
    budget: Budget,
    seed: u64,
    subgroups: HashMap<(u32, usize), SubgroupSet>,
    sets: HashMap<SetKind, ConditionSet>,
    used: BudgetUsed,
}

impl<'a> Context<'a> {
    fn new(ring: &'a Ring, budget: Budget, seed: u64) -> Self {
        Context { ring, budget, seed, subgroups: HashMap::new(), sets: HashMap::new(), used: BudgetUsed::default() }
    }

    fn subgroup(&mut self, k: u32, n: usize) -> Result<&SubgroupSet> {
        if !self.subgroups.contains_key(&(k, n)) {
            let s = compute_trace_subgroup(self.ring, k, n, false, self.budget)?;
            self.used.seed_tuples += self.ring.card().pow(s.seed_dim as u32);
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((k as u64) << 8 | n as u64));
            for _ in 0..SAMPLES {
                let m = MatrixR::random(self.ring, n, &mut rng);
                let tr = m.pow_unchecked(k as u64).trace();
                if !s.contains(tr) {
                    return Err(Error::Invalid(format!(
                        "trace of ({})^{k} is {} but lies outside the seeded S^{k}",
                        m.to_text(),
                        self.ring.format_elem(tr)
                    )));
                }
            }
            self.used.sampled_matrices += SAMPLES as u64;
            self.subgroups.insert((k, n), s);
        }
        Ok(&self.subgroups[&(k, n)])
    }

    fn set(&mut self, kind: SetKind) -> Result<&ConditionSet> {
        if !self.sets.contains_key(&kind) {
            let s = build_condition_set(kind, self.ring, self.budget)?;
            self.used.set_members += s.len() as u64;
            self.sets.insert(kind, s);
        }
        Ok(&self.sets[&kind])
    }

    fn every_sum(&mut self, id: &str, k: u32, n: usize) -> Result<Statement> {
        let ring = self.ring;
        let s = self.subgroup(k, n)?;
        let outside = ring.elements().find(|v| !s.contains(*v));
        let claim = format!("every {n}x{n} matrix is a sum of {} powers", ordinal(k as u64));
        Ok(match outside {
            None => Statement { id: id.into(), claim, verdict: true, evidence: Evidence::Exhaustive { checked: ring.card() } },
            Some(v) => Statement {
                id: id.into(),
                claim,
                verdict: false,
                evidence: Evidence::NotASum {
                    k,
                    n,
                    element: ring.format_elem(v),
                    matrix: diagonal(ring, n, v).to_text(),
                },
            },
        })
    }

    fn power_mod(&mut self, id: &str, p: u64) -> Result<Statement> {
        let check = pth_power_mod_p(self.ring, p)?;
        let claim = format!("every element is a {} power mod {p}R", ordinal(p));
        Ok(Statement {
            id: id.into(),
            claim,
            verdict: check.holds,
            evidence: match check.counterexample {
                None => Evidence::Exhaustive { checked: self.ring.card() },
                Some(v) => Evidence::NotAPower { p, element: self.ring.format_elem(v) },
            },
        })
    }

    fn group(&mut self, id: &str, kind: SetKind) -> Result<Statement> {
        let set = self.set(kind)?;
        let checked = set.len() as u64;
        let violation = verify_group_closure(set);
        Ok(Statement {
            id: id.into(),
            claim: format!("{} is an additive group", kind.formula()),
            verdict: violation.is_none(),
            evidence: match violation {
                None => Evidence::Exhaustive { checked },
                Some(violation) => Evidence::NotAGroup { set: kind, violation },
            },
        })
    }

    /// Compares trace-condition membership with `S^k_n` over every element;
    /// `forward` asks set ⇒ subgroup, `backward` subgroup ⇒ set.
    fn relate(&mut self, id: &str, kind: SetKind, k: u32, n: usize, forward: bool, backward: bool) -> Result<Statement> {
        let ring = self.ring;
        self.subgroup(k, n)?;
        self.set(kind)?;
        let sub = &self.subgroups[&(k, n)];
        let set = &self.sets[&kind];
        let bad = ring.elements().find(|v| {
            let a = set.contains(set.quotient.project(*v));
            let b = sub.contains(*v);
            (forward && a && !b) || (backward && b && !a)
        });
        let arrow = match (forward, backward) {
            (true, true) => "iff",
            (true, false) => "implies",
            _ => "is implied by",
        };
        let claim = format!("tr(M) in {} {arrow} M ({n}x{n}) is a sum of {} powers", kind.formula(), ordinal(k as u64));
        Ok(match bad {
            None => Statement { id: id.into(), claim, verdict: true, evidence: Evidence::Exhaustive { checked: ring.card() } },
            Some(v) => {
                let pv = set.quotient.project(v);
                Statement {
                    id: id.into(),
                    claim,
                    verdict: false,
                    evidence: Evidence::Mismatch {
                        set: kind,
                        k,
                        n,
                        element: ring.format_elem(v),
                        in_set: set.contains(pv),
                        set_witness: set.witness(pv).cloned(),
                        in_subgroup: sub.contains(v),
                        matrix: diagonal(ring, n, v).to_text(),
                    },
                }
            }
        })
    }

    fn evaluate(&mut self, family: &str) -> Result<Vec<Statement>> {
        let mut out = Vec::new();
        match family {
            "deg9" => {
                for n in [2, 3] {
                    out.push(self.every_sum(&format!("1.n{n}"), 3, n)?);
                    out.push(self.every_sum(&format!("2.n{n}"), 9, n)?);
                }
                out.push(self.power_mod("3", 3)?);
                for n in [2, 3] {
                    out.push(self.relate(&format!("4.n{n}"), SetKind::Deg9Set, 9, n, true, true)?);
                }
                for n in [2, 3] {
                    out.push(self.relate(&format!("5.n{n}"), SetKind::Witt { p: 3, s: 2 }, 9, n, true, false)?);
                }
            }
            "deg10" | "deg14" | "deg15" => {
                let (k, kind) = match family {
                    "deg10" => (10, SetKind::S10),
                    "deg14" => (14, SetKind::S14),
                    _ => (15, SetKind::S15),
                };
                out.push(self.group("1", kind)?);
                out.push(self.relate("2", kind, k, 2, true, true)?);
                for n in [2, 3] {
                    out.push(self.relate(&format!("3.n{n}"), kind, k, n, true, false)?);
                }
            }
            "deg12" => {
                out.push(self.group("1", SetKind::S12)?);
                out.push(self.relate("4", SetKind::S12, 12, 2, false, true)?);
                for n in [2, 3] {
                    out.push(self.relate(&format!("5.n{n}"), SetKind::S12Star, 12, n, true, false)?);
                }
            }
            "deg11" | "deg13" => {
                let p: u32 = if family == "deg11" { 11 } else { 13 };
                for n in [2, 3] {
                    out.push(self.every_sum(&format!("1.n{n}"), p, n)?);
                }
                out.push(self.power_mod("2", p as u64)?);
                for n in [2, 3] {
                    out.push(self.relate(&format!("tail.n{n}"), SetKind::PthPowerModP(p as u64), p, n, true, true)?);
                }
            }
            "deg16" => {
                for n in [2, 3] {
                    for (i, k) in [2, 4, 8, 16].into_iter().enumerate() {
                        out.push(self.every_sum(&format!("{}.n{n}", i + 1), k, n)?);
                    }
                }
                out.push(self.power_mod("5", 2)?);
                for n in [2, 3] {
                    out.push(self.relate(&format!("6.n{n}"), SetKind::WittStar24, 16, n, true, false)?);
                }
            }
            other => return Err(Error::Invalid(format!("unknown theorem family {other:?}"))),
        }
        Ok(out)
    }

    fn parse(&self, s: &str) -> Result<Elem> {
        self.ring.parse_elem(s)
    }

    fn check_matrix(&self, text: &str, n: usize, element: Elem) -> Result<()> {
        let m = MatrixR::parse(self.ring, text)?;
        if m.dim() != n || m.trace() != element {
            return Err(Error::Invalid(format!("matrix {text:?} does not have dimension {n} and trace of the element")));
        }
        Ok(())
    }

    fn validate(&mut self, st: &Statement) -> Result<()> {
        let expect = |cond: bool, what: &str| if cond { Ok(()) } else { Err(Error::Invalid(what.into())) };
        match &st.evidence {
            Evidence::Exhaustive { checked } => {
                expect(st.verdict, "exhaustive evidence on a false verdict")?;
                expect(*checked <= self.ring.card(), "checked count exceeds the ring")
            }
            Evidence::NotASum { k, n, element, matrix } => {
                expect(!st.verdict, "counterexample on a true verdict")?;
                let v = self.parse(element)?;
                self.check_matrix(matrix, *n, v)?;
                expect(!self.subgroup(*k, *n)?.contains(v), "element lies in S^k")
            }
            Evidence::NotAPower { p, element } => {
                expect(!st.verdict, "counterexample on a true verdict")?;
                let v = self.parse(element)?;
                let q = crate::ring::quotient_by_integer(self.ring, *p)?;
                let pv = q.project(v);
                let is_power = q.target.elements().any(|a| q.target.pow(a, *p) == pv);
                expect(!is_power, "element is a p-th power")
            }
            Evidence::NotAGroup { set, violation } => {
                expect(!st.verdict, "counterexample on a true verdict")?;
                let s = self.set(*set)?;
                let ring = s.ambient();
                let broken = match violation {
                    ClosureViolation::MissingZero => !s.contains(ring.zero()),
                    ClosureViolation::Negation { element } => {
                        ring.contains(*element) && s.contains(*element) && !s.contains(ring.neg(*element))
                    }
                    ClosureViolation::Sum { a, b } => {
                        ring.contains(*a) && ring.contains(*b) && s.contains(*a) && s.contains(*b) && !s.contains(ring.add(*a, *b))
                    }
                };
                expect(broken, "closure violation does not reproduce")
            }
            Evidence::Mismatch { set, k, n, element, in_set, set_witness, in_subgroup, matrix } => {
                expect(!st.verdict, "counterexample on a true verdict")?;
                expect(in_set != in_subgroup, "mismatch must separate the two memberships")?;
                let v = self.parse(element)?;
                self.check_matrix(matrix, *n, v)?;
                expect(self.subgroup(*k, *n)?.contains(v) == *in_subgroup, "subgroup membership does not reproduce")?;
                let s = self.set(*set)?;
                let pv = s.quotient.project(v);
                expect(s.contains(pv) == *in_set, "set membership does not reproduce")?;
                if let Some(w) = set_witness {
                    expect(evaluate_witness(*set, s.ambient(), w)? == pv, "set witness does not evaluate to the element")?;
                }
                Ok(())
            }
        }
    }
}

/// Evaluates every statement of `family` over `ring` and checks the
/// implications the theorem asserts.
pub fn verify_theorem(family: &str, ring: &Ring, budget: Budget) -> Result<TheoremReport> {
    verify_theorem_seeded(family, ring, budget, DEFAULT_SEED)
}

pub fn verify_theorem_seeded(family: &str, ring: &Ring, budget: Budget, seed: u64) -> Result<TheoremReport> {
    relations(family)?;
    let mut ctx = Context::new(ring, budget, seed);
    let statements = ctx.evaluate(family)?;
    let (agreement, disagreements) = check_relations(family, &statements)?;
    Ok(TheoremReport {
        family: family.into(),
        ring: ring.spec().into(),
        statements,
        agreement,
        disagreements,
        budget_used: ctx.used,
        seed,
    })
}
