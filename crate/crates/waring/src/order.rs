//! Discriminants of monogenic orders `Z[x]/(f)` and the criterion relating
//! `(p, disc R) = 1` to `p`-th powers modulo `pR`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::expr::{self, Algebra};
use crate::ring::Ring;
use crate::sets::pth_power_mod_p;
use crate::trace_power::is_prime;

/// Integer polynomial, coefficients low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|c| BigInt::from(*c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default() + other.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: u64) -> Vec<i128> {
        let mb = BigInt::from(m);
        self.coeffs.iter().map(|c| c.mod_floor(&mb).to_i128().expect("residue fits")).collect()
    }

    /// Parses an expression in the single variable `var`.
    pub fn parse_in(src: &str, var: &str) -> Result<IntPolynomial> {
        let e = expr::parse(src)?;
        expr::eval(&e, &UniAlgebra { var })
    }

    /// Parses an expression in whichever single variable it uses (default `x`).
    pub fn parse(src: &str) -> Result<IntPolynomial> {
        let var = src.chars().find(|c| c.is_alphabetic()).map(|c| c.to_string()).unwrap_or_else(|| "x".into());
        IntPolynomial::parse_in(src, &var)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

struct UniAlgebra<'a> {
    var: &'a str,
}

impl Algebra for UniAlgebra<'_> {
    type Value = IntPolynomial;

    fn int(&self, n: &BigUint) -> Result<IntPolynomial> {
        Ok(IntPolynomial::new(vec![BigInt::from(n.clone())]))
    }

    fn var(&self, name: &str) -> Result<IntPolynomial> {
        if name == self.var {
            Ok(IntPolynomial::new(vec![BigInt::zero(), BigInt::one()]))
        } else {
            Err(Error::Parse(format!("unexpected variable {name}, expected {}", self.var)))
        }
    }

    fn add(&self, a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
        Ok(a.add(b))
    }

    fn sub(&self, a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
        Ok(a.add(&b.neg()))
    }

    fn mul(&self, a: &IntPolynomial, b: &IntPolynomial) -> Result<IntPolynomial> {
        Ok(a.mul(b))
    }

    fn neg(&self, a: &IntPolynomial) -> Result<IntPolynomial> {
        Ok(a.neg())
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant via the Sylvester matrix.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    match (f.degree(), g.degree()) {
        (None, None) => Err(Error::Invalid("resultant of two zero polynomials".into())),
        (None, Some(0)) | (Some(0), None) => Ok(BigInt::one()),
        (None, Some(_)) | (Some(_), None) => Ok(BigInt::zero()),
        (Some(m), Some(n)) => {
            if m == 0 {
                return Ok(f.coeffs[0].pow(n as u32));
            }
            if n == 0 {
                return Ok(g.coeffs[0].pow(m as u32));
            }
            let size = m + n;
            let mut syl = vec![vec![BigInt::zero(); size]; size];
            for row in 0..n {
                for (j, c) in f.coeffs.iter().rev().enumerate() {
                    syl[row][row + j] = c.clone();
                }
            }
            for row in 0..m {
                for (j, c) in g.coeffs.iter().rev().enumerate() {
                    syl[n + row][row + j] = c.clone();
                }
            }
            Ok(bareiss_determinant(syl))
        }
    }
}

/// `(-1)^{d(d-1)/2} res(f, f')` for monic `f`.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::NonMonic(f.to_string()));
    }
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::Invalid("discriminant needs degree at least 1".into()));
    }
    let r = resultant(f, &f.derivative())?;
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Theorem families whose hypotheses reduce to `p`-th powers mod `pR`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderFamily {
    Deg9,
    Deg11,
    Deg13,
    Deg16,
}

impl OrderFamily {
    pub fn prime(&self) -> u64 {
        match self {
            OrderFamily::Deg9 => 3,
            OrderFamily::Deg11 => 11,
            OrderFamily::Deg13 => 13,
            OrderFamily::Deg16 => 2,
        }
    }

    pub fn powers(&self) -> &'static str {
        match self {
            OrderFamily::Deg9 => "cubes and of 9th powers",
            OrderFamily::Deg11 => "11th powers",
            OrderFamily::Deg13 => "13th powers",
            OrderFamily::Deg16 => "squares, of 4th powers, of 8th powers and of 16th powers",
        }
    }

    pub fn parse(s: &str) -> Result<OrderFamily> {
        match s.trim().to_ascii_lowercase().as_str() {
            "deg9" => Ok(OrderFamily::Deg9),
            "deg11" => Ok(OrderFamily::Deg11),
            "deg13" => Ok(OrderFamily::Deg13),
            "deg16" => Ok(OrderFamily::Deg16),
            other => Err(Error::Parse(format!("unknown order family {other:?}"))),
        }
    }

    pub fn for_prime(p: u64) -> Option<OrderFamily> {
        [OrderFamily::Deg9, OrderFamily::Deg11, OrderFamily::Deg13, OrderFamily::Deg16]
            .into_iter()
            .find(|f| f.prime() == p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub poly: String,
    pub p: u64,
    pub discriminant: String,
    pub gcd: String,
    /// `(p, disc R) = 1`.
    pub coprime: bool,
    /// Every element of `R` is a `p`-th power modulo `pR`.
    pub every_element_pth_power: bool,
    pub non_power: Option<String>,
    /// `x^p ∈ pR` implies `x ∈ pR`.
    pub no_p_nilpotents: bool,
    pub nilpotent: Option<String>,
    pub agreement: bool,
    pub conclusion: Option<String>,
}

/// Evaluates the three equivalent statements for `R = Z[x]/(f)` and `p`.
pub fn order_power_criterion(f: &IntPolynomial, p: u64, family: Option<OrderFamily>, budget: Budget) -> Result<OrderReport> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let disc = discriminant(f)?;
    let d = f.degree().unwrap_or(0);
    if d < 1 {
        return Err(Error::Invalid("order needs a polynomial of degree at least 1".into()));
    }
    budget.check((p as u128).saturating_pow(d as u32))?;
    let g = disc.gcd(&BigInt::from(p));
    let coprime = g.is_one();
    let ring = Ring::poly_quotient(p, &f.reduce_mod(p), "x")?;
    let power = pth_power_mod_p(&ring, p)?;
    let nilpotent = ring.elements().skip(1).find(|x| ring.pow(*x, p) == ring.zero());
    let every = power.holds;
    let no_nil = nilpotent.is_none();
    let agreement = coprime == every && every == no_nil;
    let conclusion = match family {
        None => None,
        Some(fam) => {
            if fam.prime() != p {
                return Err(Error::Invalid(format!("family {fam:?} concerns p = {}, not {p}", fam.prime())));
            }
            let what = fam.powers();
            Some(if coprime {
                format!("every matrix over Z[x]/({f}) is a sum of {what}")
            } else {
                format!("not every matrix over Z[x]/({f}) is a sum of {what}")
            })
        }
    };
    Ok(OrderReport {
        poly: f.to_string(),
        p,
        discriminant: disc.to_string(),
        gcd: g.to_string(),
        coprime,
        every_element_pth_power: every,
        non_power: power.counterexample.map(|c| ring.format_elem(c)),
        no_p_nilpotents: no_nil,
        nilpotent: nilpotent.map(|x| ring.format_elem(x)),
        agreement,
        conclusion,
    })
}

/// Curated `(f, p)` pairs covering both verdicts.
pub const CURATED_PAIRS: &[(&str, u64)] = &[
    ("x^2-x+1", 3),
    ("x^2-x-1", 3),
    ("x^2+1", 2),
    ("x^2+1", 3),
    ("x^2+1", 5),
    ("x^2+1", 11),
    ("x^2+1", 13),
    ("x^2-2", 2),
    ("x^2-2", 3),
    ("x^2-5", 5),
    ("x^3-2", 3),
    ("x^3-2", 5),
    ("x^2-3", 3),
    ("x^2+7", 7),
    ("x^2-x+3", 11),
    ("x^2-x-1", 2),
];
