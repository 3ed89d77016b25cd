//! The trace of the `k`-th power of a 2x2 matrix as a polynomial in its trace
//! `t` and determinant `δ`:
//!
//! `tr(A^k) = t^k + Σ_{r=1}^{⌊k/2⌋} (-1)^r (k/r) C(k-r-1, r-1) t^{k-2r} δ^r`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::expr::{self, Algebra, Expr};
use crate::matrix::MatrixR;
use crate::ring::{quotient_by_integer, Elem, Quotient, Ring, RingElement};

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficient `c_r` of `t^{k-2r} δ^r` in `tr(A^k)`.
pub fn coefficient(k: u32, r: u32) -> BigInt {
    if r == 0 {
        return BigInt::one();
    }
    let (k64, r64) = (k as u64, r as u64);
    let magnitude = BigInt::from(k64) * binomial(k64 - r64 - 1, r64 - 1) / BigInt::from(r64);
    if r % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// Expansions of `tr(A^k)` as printed, `c_0..c_{⌊k/2⌋}`.
pub const PRINTED_COEFFICIENTS: &[(u32, &[i64])] = &[
    (9, &[1, -9, 27, -30, 9]),
    (10, &[1, -10, 35, -50, 25, -2]),
    (11, &[1, -11, 44, -77, 55, -11]),
    (12, &[1, -12, 54, -112, 105, -36, 2]),
    (13, &[1, -13, 65, -156, 182, -91, 13]),
    (14, &[1, -14, 77, -210, 294, -196, 49, -2]),
    (15, &[1, -15, 90, -275, 450, -378, 140, -15]),
    (16, &[1, -16, 104, -352, 660, -672, 336, -64, 2]),
];

pub fn printed_coefficients(k: u32) -> Option<&'static [i64]> {
    PRINTED_COEFFICIENTS.iter().find(|(kk, _)| *kk == k).map(|(_, c)| *c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientComparison {
    pub k: u32,
    pub computed: Vec<String>,
    pub printed: Vec<i64>,
    pub matches: bool,
    /// Indices `r` where the printed value differs from the formula.
    pub mismatched_terms: Vec<usize>,
}

/// Compares the formula against every printed expansion.
pub fn compare_printed_coefficients() -> Vec<CoefficientComparison> {
    PRINTED_COEFFICIENTS
        .iter()
        .map(|(k, printed)| {
            let tp = TracePolynomial::new(*k).expect("k >= 2");
            let mismatched_terms: Vec<usize> = (0..tp.coefficients.len().max(printed.len()))
                .filter(|&r| tp.coefficients.get(r) != printed.get(r).map(|c| BigInt::from(*c)).as_ref())
                .collect();
            CoefficientComparison {
                k: *k,
                computed: tp.coefficients.iter().map(|c| c.to_string()).collect(),
                printed: printed.to_vec(),
                matches: mismatched_terms.is_empty(),
                mismatched_terms,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePolynomial {
    pub k: u32,
    pub coefficients: Vec<BigInt>,
}

impl TracePolynomial {
    pub fn new(k: u32) -> Result<TracePolynomial> {
        if k < 2 {
            return Err(Error::Invalid(format!("trace polynomial needs k >= 2, got {k}")));
        }
        Ok(TracePolynomial { k, coefficients: (0..=k / 2).map(|r| coefficient(k, r)).collect() })
    }

    pub fn bind(&self, ring: &Ring) -> BoundTrace {
        BoundTrace {
            ring: ring.clone(),
            k: self.k,
            coefficients: self.coefficients.iter().map(|c| ring.from_bigint(c)).collect(),
        }
    }
}

/// A trace polynomial with coefficients mapped into a ring.
#[derive(Clone, Debug)]
pub struct BoundTrace {
    ring: Ring,
    k: u32,
    coefficients: Vec<Elem>,
}

impl BoundTrace {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn eval(&self, t: Elem, delta: Elem) -> Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        let mut d_pow = r.one();
        for (idx, c) in self.coefficients.iter().enumerate() {
            let t_pow = r.pow(t, (self.k - 2 * idx as u32) as u64);
            acc = r.add(acc, r.mul(*c, r.mul(t_pow, d_pow)));
            d_pow = r.mul(d_pow, delta);
        }
        acc
    }
}

/// `tr(A(t, δ)^k)` evaluated through the closed form.
pub fn closed_form(k: u32, t: &RingElement, delta: &RingElement) -> Result<RingElement> {
    if t.ring != delta.ring {
        return Err(Error::OwnerMismatch(t.ring.spec().into(), delta.ring.spec().into()));
    }
    let bound = TracePolynomial::new(k)?.bind(&t.ring);
    Ok(t.ring.element(bound.eval(t.value, delta.value)))
}

/// Normal forms of `tr(A^k)` modulo `kR`.
pub const REDUCED_FORMS: &[(u32, &str)] = &[
    (9, "t^9 - 3(t d)^3"),
    (10, "t^10 - 2d^5 + 5(t^3 d + t d^2)^2"),
    (11, "t^11"),
    (12, "t^12 + 2d^6 - 4(t^2 d)^3 - 3(t d)^4 + 6(t^4 d)^2"),
    (13, "t^13"),
    (14, "t^14 - 2d^7 + 7(t^5 d + t d^3)^2"),
    (15, "t^15 - 3(t d)^5 + 5(t d^2 - t^3 d)^3"),
    (16, "t^16 + 2d^8 + 4(t^2 d)^4 + 8(t^6 d)^2"),
];

/// Evaluates an expression in named ring elements.
pub(crate) struct VarAlgebra<'a> {
    pub ring: &'a Ring,
    pub vars: &'a [(&'a str, Elem)],
}

impl Algebra for VarAlgebra<'_> {
    type Value = Elem;

    fn int(&self, n: &BigUint) -> Result<Elem> {
        Ok(self.ring.from_bigint(&BigInt::from(n.clone())))
    }

    fn var(&self, name: &str) -> Result<Elem> {
        self.vars
            .iter()
            .find(|(v, _)| *v == name)
            .map(|(_, e)| *e)
            .ok_or_else(|| Error::Parse(format!("unbound variable {name}")))
    }

    fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.ring.add(*a, *b))
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.ring.sub(*a, *b))
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.ring.mul(*a, *b))
    }

    fn neg(&self, a: &Elem) -> Result<Elem> {
        Ok(self.ring.neg(*a))
    }

    fn pow(&self, a: &Elem, e: u32) -> Result<Elem> {
        Ok(self.ring.pow(*a, e as u64))
    }
}

/// The mod-`kR` normal form of `tr(A^k)`, evaluated in `R/kR`.
#[derive(Clone, Debug)]
pub struct ReducedForm {
    pub k: u32,
    pub source: &'static str,
    pub quotient: Quotient,
    expr: Expr,
}

impl ReducedForm {
    pub fn new(k: u32, ring: &Ring) -> Result<ReducedForm> {
        let source = REDUCED_FORMS
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::Invalid(format!("no reduced form for k = {k}")))?;
        Ok(ReducedForm { k, source, quotient: quotient_by_integer(ring, k as u64)?, expr: expr::parse(source)? })
    }

    /// Value in `R/kR` for `t, δ ∈ R`.
    pub fn eval(&self, t: Elem, delta: Elem) -> Elem {
        let q = &self.quotient;
        let vars = [("t", q.project(t)), ("d", q.project(delta))];
        expr::eval(&self.expr, &VarAlgebra { ring: &q.target, vars: &vars }).expect("reduced forms are well formed")
    }
}

pub fn reduced_form(k: u32, t: &RingElement, delta: &RingElement) -> Result<RingElement> {
    if t.ring != delta.ring {
        return Err(Error::OwnerMismatch(t.ring.spec().into(), delta.ring.spec().into()));
    }
    let rf = ReducedForm::new(k, &t.ring)?;
    Ok(rf.quotient.target.element(rf.eval(t.value, delta.value)))
}

/// Result of a search for a decomposition `v = Σ p^i a_i^{p^{s-i}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittDecomposition {
    pub value: Elem,
    pub witness: Option<Vec<Elem>>,
    pub nodes: u64,
}

/// `Σ_{i=0}^{s} p^i a_i^{p^{s-i}}`.
pub fn witt_evaluate(ring: &Ring, p: u64, a: &[Elem]) -> Elem {
    let s = a.len() - 1;
    ring.sum(a.iter().enumerate().map(|(i, ai)| {
        let scale = (p as i128).pow(i as u32);
        ring.int_scale(ring.pow(*ai, p.pow((s - i) as u32)), scale)
    }))
}

/// Lexicographically first (in enumeration order) decomposition of `v` as an
/// element of `W(p, s, R)`.
pub fn witt_decompose(ring: &Ring, p: u64, s: u32, v: Elem, budget: Budget) -> Result<WittDecomposition> {
    if s == 0 {
        return Err(Error::Invalid("s must be at least 1".into()));
    }
    let card = ring.card() as u128;
    budget.check(card.saturating_pow(s))?;
    let scale = (p as i128).pow(s);
    let mut last: HashMap<Elem, Elem> = HashMap::new();
    for a in ring.elements() {
        last.entry(ring.int_scale(a, scale)).or_insert(a);
    }
    let s = s as usize;
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(s);
    for i in 0..s {
        let e = p.pow((s - i) as u32);
        let c = (p as i128).pow(i as u32);
        powers.push(ring.elements().map(|a| ring.int_scale(ring.pow(a, e), c)).collect());
    }
    let card = ring.card();
    let mut idx = vec![0u64; s];
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        let partial = ring.sum((0..s).map(|i| powers[i][idx[i] as usize]));
        if let Some(a_s) = last.get(&ring.sub(v, partial)) {
            let mut witness: Vec<Elem> = idx.iter().map(|&i| ring.element_at(i)).collect();
            witness.push(*a_s);
            return Ok(WittDecomposition { value: v, witness: Some(witness), nodes });
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return Ok(WittDecomposition { value: v, witness: None, nodes });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < card {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Decomposes `tr(M^{p^s})` as an element of `W(p, s, R)`.
pub fn witt_membership_check(m: &MatrixR, p: u64, s: u32, budget: Budget) -> Result<WittDecomposition> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let v = m.pow(p.pow(s))?.trace();
    witt_decompose(m.ring(), p, s, v, budget)
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub ring: String,
    pub p: u64,
    pub parameter: u32,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sample_matrices(ring: &Ring, n: usize, samples: usize, seed: u64) -> Vec<MatrixR> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| MatrixR::random(ring, n, &mut rng)).collect()
}

/// Checks `tr(M^p) ≡ tr(M)^p mod pR` on seeded random `n x n` matrices.
pub fn frobenius_congruence(ring: &Ring, p: u64, n: usize, samples: usize, seed: u64) -> Result<SweepReport> {
    let q = quotient_by_integer(ring, p)?;
    let mats = sample_matrices(ring, n, samples, seed);
    let failures = crate::par::filter_map(&mats, |m| {
        let lhs = q.project(m.pow_unchecked(p).trace());
        let rhs = q.project(ring.pow(m.trace(), p));
        (lhs != rhs).then(|| m.to_text())
    });
    Ok(SweepReport { ring: ring.spec().into(), p, parameter: 1, n, samples, seed, failures })
}

/// Checks that `tr(M^{p^s})` lies in `W(p, s, R)` on seeded random matrices.
pub fn witt_containment(
    ring: &Ring,
    p: u64,
    s: u32,
    n: usize,
    samples: usize,
    seed: u64,
    budget: Budget,
) -> Result<SweepReport> {
    budget.check((ring.card() as u128).saturating_pow(s))?;
    let set = crate::sets::witt_value_set(ring, p, s, budget)?;
    let mats = sample_matrices(ring, n, samples, seed);
    let e = p.pow(s);
    let failures = crate::par::filter_map(&mats, |m| {
        let v = m.pow_unchecked(e).trace();
        (!set.contains(&v)).then(|| m.to_text())
    });
    Ok(SweepReport { ring: ring.spec().into(), p, parameter: s, n, samples, seed, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_coefficients() {
        assert_eq!(TracePolynomial::new(2).unwrap().coefficients, vec![BigInt::from(1), BigInt::from(-2)]);
        assert_eq!(
            TracePolynomial::new(4).unwrap().coefficients,
            vec![BigInt::from(1), BigInt::from(-4), BigInt::from(2)]
        );
    }

    #[test]
    fn rejects_small_k() {
        assert!(TracePolynomial::new(1).is_err());
        assert!(ReducedForm::new(8, &crate::ring::make_ring("Z/8").unwrap()).is_err());
    }
}
