//! Dense square matrices over a finite ring.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::split_top_level;
use crate::ring::{Elem, Ring, RingElement};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixR {
    ring: Ring,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for MatrixR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixR[{}]({})", self.ring.spec(), self.to_text())
    }
}

impl fmt::Display for MatrixR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl MatrixR {
    /// Row-major construction; every entry must belong to `ring`.
    pub fn new(ring: &Ring, n: usize, entries: Vec<Elem>) -> Result<MatrixR> {
        if n == 0 {
            return Err(Error::Invalid("matrix dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::Invalid(format!("expected {} entries, got {}", n * n, entries.len())));
        }
        for e in &entries {
            ring.check_elem(*e)?;
        }
        Ok(MatrixR { ring: ring.clone(), n, entries })
    }

    pub fn from_elements(n: usize, entries: &[RingElement]) -> Result<MatrixR> {
        let first = entries.first().ok_or_else(|| Error::Invalid("no entries".into()))?;
        let ring = first.ring.clone();
        for e in entries {
            if e.ring != ring {
                return Err(Error::OwnerMismatch(ring.spec().into(), e.ring.spec().into()));
            }
        }
        MatrixR::new(&ring, n, entries.iter().map(|e| e.value).collect())
    }

    pub fn zero(ring: &Ring, n: usize) -> MatrixR {
        MatrixR { ring: ring.clone(), n, entries: vec![ring.zero(); n * n] }
    }

    pub fn identity(ring: &Ring, n: usize) -> MatrixR {
        let mut m = MatrixR::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(ring: &Ring, n: usize, c: Elem) -> MatrixR {
        let mut m = MatrixR::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    fn compatible(&self, other: &MatrixR) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::OwnerMismatch(self.ring.spec().into(), other.ring.spec().into()));
        }
        if self.n != other.n {
            return Err(Error::Invalid(format!("dimension mismatch: {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub(crate) fn mul_unchecked(&self, other: &MatrixR) -> MatrixR {
        let n = self.n;
        let r = &self.ring;
        let mut out = vec![r.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = r.add(out[idx], r.mul(a, other.entries[k * n + j]));
                }
            }
        }
        MatrixR { ring: r.clone(), n, entries: out }
    }

    pub(crate) fn add_unchecked(&self, other: &MatrixR) -> MatrixR {
        let r = &self.ring;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| r.add(*a, *b)).collect();
        MatrixR { ring: r.clone(), n: self.n, entries }
    }

    pub fn mul(&self, other: &MatrixR) -> Result<MatrixR> {
        self.compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn add(&self, other: &MatrixR) -> Result<MatrixR> {
        self.compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    /// `self^k` by repeated squaring, `k ≥ 1`.
    pub fn pow(&self, k: u64) -> Result<MatrixR> {
        if k == 0 {
            return Err(Error::Invalid("matrix power exponent must be at least 1".into()));
        }
        Ok(self.pow_unchecked(k))
    }

    pub(crate) fn pow_unchecked(&self, mut k: u64) -> MatrixR {
        let mut acc: Option<MatrixR> = None;
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_unchecked(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc.unwrap_or_else(|| MatrixR::identity(&self.ring, self.n))
    }

    pub fn trace(&self) -> Elem {
        self.ring.sum((0..self.n).map(|i| self.entries[i * self.n + i]))
    }

    /// Determinant for `n ≤ 3`.
    pub fn det(&self) -> Result<Elem> {
        let r = &self.ring;
        let g = |i, j| self.get(i, j);
        match self.n {
            1 => Ok(g(0, 0)),
            2 => Ok(r.sub(r.mul(g(0, 0), g(1, 1)), r.mul(g(0, 1), g(1, 0)))),
            3 => {
                let minor = |a: usize, b: usize, c: usize, d: usize| {
                    r.sub(r.mul(g(1, a), g(2, b)), r.mul(g(1, c), g(2, d)))
                };
                let t0 = r.mul(g(0, 0), minor(1, 2, 2, 1));
                let t1 = r.mul(g(0, 1), minor(0, 2, 2, 0));
                let t2 = r.mul(g(0, 2), minor(0, 1, 1, 0));
                Ok(r.add(r.sub(t0, t1), t2))
            }
            n => Err(Error::Invalid(format!("determinant only implemented for n <= 3, got {n}"))),
        }
    }

    /// `A(t, δ) = [[t, δ], [-1, 0]]`, trace `t` and determinant `δ`.
    pub fn companion(ring: &Ring, t: Elem, delta: Elem) -> MatrixR {
        MatrixR { ring: ring.clone(), n: 2, entries: vec![t, delta, ring.neg(ring.one()), ring.zero()] }
    }

    pub fn companion_of(t: &RingElement, delta: &RingElement) -> Result<MatrixR> {
        if t.ring != delta.ring {
            return Err(Error::OwnerMismatch(t.ring.spec().into(), delta.ring.spec().into()));
        }
        Ok(MatrixR::companion(&t.ring, t.value, delta.value))
    }

    /// Companion matrix with first row `e_1, ..., e_n` and `-1` on the
    /// subdiagonal. Its characteristic polynomial is
    /// `x^n - e_1 x^{n-1} + e_2 x^{n-2} - ... + (-1)^n e_n`, so the trace is
    /// `e_1` and the determinant is `e_n`; for `n = 2` this is `companion`.
    pub fn general_companion(ring: &Ring, coeffs: &[Elem]) -> Result<MatrixR> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        let mut m = MatrixR::zero(ring, n);
        m.entries[..n].copy_from_slice(coeffs);
        let minus_one = ring.neg(ring.one());
        for i in 1..n {
            m.entries[i * n + i - 1] = minus_one;
        }
        Ok(m)
    }

    /// Block matrix `self ⊕ 0` of size `n`.
    pub fn direct_sum_embed(&self, n: usize) -> Result<MatrixR> {
        if n < self.n {
            return Err(Error::Invalid(format!("cannot embed a {}x{} matrix into size {n}", self.n, self.n)));
        }
        let mut m = MatrixR::zero(&self.ring, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j);
            }
        }
        Ok(m)
    }

    pub fn random<R: rand::Rng>(ring: &Ring, n: usize, rng: &mut R) -> MatrixR {
        let card = ring.card();
        let entries = (0..n * n).map(|_| Elem(rng.gen_range(0..card))).collect();
        MatrixR { ring: ring.clone(), n, entries }
    }

    /// All `n x n` matrices in lexicographic order of enumeration positions.
    pub fn all(ring: &Ring, n: usize) -> impl Iterator<Item = MatrixR> + '_ {
        let card = ring.card();
        let total = card.pow((n * n) as u32);
        (0..total).map(move |mut idx| {
            let mut entries = vec![Elem(0); n * n];
            for slot in entries.iter_mut().rev() {
                *slot = ring.element_at(idx % card);
                idx /= card;
            }
            MatrixR { ring: ring.clone(), n, entries }
        })
    }

    /// Text form `n; a11,a12; a21,a22`.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n).map(|j| self.ring.format_elem(self.get(i, j))).collect::<Vec<_>>().join(",")
            })
            .collect();
        format!("{}; {}", self.n, rows.join("; "))
    }

    pub fn parse(ring: &Ring, text: &str) -> Result<MatrixR> {
        let parts: Vec<&str> = split_top_level(text.trim(), ';').into_iter().map(str::trim).collect();
        let n: usize = parts[0].parse().map_err(|_| Error::Parse(format!("bad matrix dimension {:?}", parts[0])))?;
        let rows: Vec<&str> = parts[1..].iter().copied().filter(|r| !r.is_empty()).collect();
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cells = split_top_level(row, ',');
            if cells.len() != n {
                return Err(Error::Parse(format!("row {row:?} has {} entries, expected {n}", cells.len())));
            }
            for c in cells {
                entries.push(ring.parse_elem(c)?);
            }
        }
        MatrixR::new(ring, n, entries)
    }
}
