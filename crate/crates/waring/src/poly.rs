//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::{self, Algebra, Expr};
use crate::ring::{Elem, Ring};

/// Polynomial over `Z` in the named variables. Only variables that occur are
/// kept, sorted, and zero coefficients are never stored, so equal polynomials
/// are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> MultiPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn var(name: &str) -> MultiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], BigInt::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Builds `c * Π v_i^{e_i}`.
    pub fn monomial(c: impl Into<BigInt>, powers: &[(&str, u32)]) -> MultiPoly {
        powers.iter().fold(MultiPoly::constant(c), |acc, (v, e)| acc.mul(&MultiPoly::var(v).pow(*e)))
    }

    pub fn parse(src: &str) -> Result<MultiPoly> {
        expr::eval(&expr::parse(src)?, &PolyAlgebra)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<&str> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.as_str())
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    /// Coefficient of `Π v^e` for the given variable exponents.
    pub fn coefficient(&self, powers: &[(&str, u32)]) -> BigInt {
        let mut key = vec![0u32; self.vars.len()];
        for (v, e) in powers {
            match self.vars.iter().position(|w| w == v) {
                Some(i) => key[i] = *e,
                None if *e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    fn with_vars(&self, vars: &[String]) -> BTreeMap<Vec<u32>, BigInt> {
        let map: Vec<usize> = self.vars.iter().map(|v| vars.iter().position(|w| w == v).expect("superset")).collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut key = vec![0u32; vars.len()];
                for (i, x) in e.iter().enumerate() {
                    key[map[i]] = *x;
                }
                (key, c.clone())
            })
            .collect()
    }

    /// Terms re-keyed to `vars`, which must contain every variable.
    pub(crate) fn terms_in(&self, vars: &[String]) -> BTreeMap<Vec<u32>, BigInt> {
        self.with_vars(vars)
    }

    fn union_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn from_raw(vars: Vec<String>, mut terms: BTreeMap<Vec<u32>, BigInt>) -> MultiPoly {
        terms.retain(|_, c| !c.is_zero());
        let keep: Vec<usize> = (0..vars.len()).filter(|i| terms.keys().any(|e| e[*i] > 0)).collect();
        if keep.len() == vars.len() {
            return MultiPoly { vars, terms };
        }
        let terms = terms.into_iter().map(|(e, c)| (keep.iter().map(|i| e[*i]).collect(), c)).collect();
        MultiPoly { vars: keep.iter().map(|i| vars[*i].clone()).collect(), terms }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(other);
        let mut terms = self.with_vars(&vars);
        for (e, c) in other.with_vars(&vars) {
            *terms.entry(e).or_default() += c;
        }
        MultiPoly::from_raw(vars, terms)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        MultiPoly::from_raw(self.vars.clone(), self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let vars = self.union_vars(other);
        let a = self.with_vars(&vars);
        let b = other.with_vars(&vars);
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_default() += ca * cb;
            }
        }
        MultiPoly::from_raw(vars, terms)
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Simultaneous substitution of variables; unmapped variables stay.
    pub fn substitute(&self, map: &[(&str, MultiPoly)]) -> MultiPoly {
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| map.iter().find(|(w, _)| *w == v).map(|(_, p)| p.clone()).unwrap_or_else(|| MultiPoly::var(v)))
            .collect();
        let mut powers: Vec<BTreeMap<u32, MultiPoly>> = vec![BTreeMap::new(); images.len()];
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (i, x) in e.iter().enumerate() {
                if *x > 0 {
                    let p = powers[i].entry(*x).or_insert_with(|| images[i].pow(*x)).clone();
                    term = term.mul(&p);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> MultiPoly {
        MultiPoly::from_raw(self.vars.clone(), self.terms.iter().map(|(e, c)| (e.clone(), c.mod_floor(m))).collect())
    }

    /// Value in `ring` with the variables bound to ring elements.
    pub fn eval_in(&self, ring: &Ring, binding: &[(&str, Elem)]) -> Result<Elem> {
        let values: Vec<Elem> = self
            .vars
            .iter()
            .map(|v| {
                binding
                    .iter()
                    .find(|(w, _)| *w == v)
                    .map(|(_, x)| *x)
                    .ok_or_else(|| Error::Invalid(format!("unbound variable {v}")))
            })
            .collect::<Result<_>>()?;
        Ok(self.eval_values(ring, &values))
    }

    /// Value with variables bound positionally in sorted variable order.
    pub fn eval_values(&self, ring: &Ring, values: &[Elem]) -> Elem {
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut term = ring.from_bigint(c);
            for (i, x) in e.iter().enumerate() {
                if *x > 0 {
                    term = ring.mul(term, ring.pow(values[i], *x as u64));
                }
            }
            acc = ring.add(acc, term);
        }
        acc
    }

    /// Fixes the ring and the argument order `args`; every variable of the
    /// polynomial must appear in `args`.
    pub fn bind(&self, ring: &Ring, args: &[&str]) -> Result<BoundPoly> {
        let slots: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                args.iter().position(|a| a == v).ok_or_else(|| Error::Invalid(format!("variable {v} is not an argument")))
            })
            .collect::<Result<_>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let powers = e.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, x)| (slots[i], *x as u64)).collect();
                (powers, ring.from_bigint(c))
            })
            .filter(|(_, c)| c.0 != 0)
            .collect();
        Ok(BoundPoly { ring: ring.clone(), terms })
    }

    /// Returns the univariate coefficient list (low to high) when at most one
    /// variable is used.
    pub fn univariate(&self) -> Option<(Option<String>, Vec<BigInt>)> {
        let used = self.used_vars();
        if used.len() > 1 {
            return None;
        }
        let var = used.first().map(|v| v.to_string());
        let idx = var.as_ref().and_then(|v| self.vars.iter().position(|w| w == v));
        let deg = self.total_degree() as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for (e, c) in &self.terms {
            let d = idx.map(|i| e[i] as usize).unwrap_or(0);
            out[d] += c;
        }
        Some((var, out))
    }

    pub fn to_u32(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&vec![0; self.vars.len()]).and_then(|c| c.to_u32()),
            _ => None,
        }
    }
}

/// A polynomial with coefficients mapped into a ring and positional
/// arguments.
#[derive(Clone, Debug)]
pub struct BoundPoly {
    ring: Ring,
    terms: Vec<(Vec<(usize, u64)>, Elem)>,
}

impl BoundPoly {
    pub fn eval(&self, args: &[Elem]) -> Elem {
        let r = &self.ring;
        self.terms.iter().fold(r.zero(), |acc, (powers, c)| {
            let term = powers.iter().fold(*c, |t, (i, e)| r.mul(t, r.pow(args[*i], *e)));
            r.add(acc, term)
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x > 0)
                .map(|(i, x)| if *x == 1 { self.vars[i].clone() } else { format!("{}^{x}", self.vars[i]) })
                .collect();
            let sign = if c.is_negative() { "-" } else if n > 0 { "+" } else { "" };
            let abs = c.abs();
            f.write_str(sign)?;
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Evaluates expressions into `MultiPoly`, rejecting function calls.
pub struct PolyAlgebra;

impl Algebra for PolyAlgebra {
    type Value = MultiPoly;

    fn int(&self, n: &BigUint) -> Result<MultiPoly> {
        Ok(MultiPoly::constant(BigInt::from(n.clone())))
    }

    fn var(&self, name: &str) -> Result<MultiPoly> {
        Ok(MultiPoly::var(name))
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.add(b))
    }

    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.sub(b))
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.mul(b))
    }

    fn neg(&self, a: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.neg())
    }

    fn pow(&self, a: &MultiPoly, e: u32) -> Result<MultiPoly> {
        Ok(a.pow(e))
    }
}

/// Looks up a named function as its parameter names and body.
pub type FunctionLookup<'a> = dyn Fn(&str) -> Option<(Vec<String>, MultiPoly)> + 'a;

/// Polynomial algebra with named functions: each call substitutes its
/// arguments into the function body.
pub struct FunctionAlgebra<'a> {
    pub functions: &'a FunctionLookup<'a>,
}

impl Algebra for FunctionAlgebra<'_> {
    type Value = MultiPoly;

    fn int(&self, n: &BigUint) -> Result<MultiPoly> {
        PolyAlgebra.int(n)
    }

    fn var(&self, name: &str) -> Result<MultiPoly> {
        PolyAlgebra.var(name)
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.add(b))
    }

    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.sub(b))
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.mul(b))
    }

    fn neg(&self, a: &MultiPoly) -> Result<MultiPoly> {
        Ok(a.neg())
    }

    fn pow(&self, a: &MultiPoly, e: u32) -> Result<MultiPoly> {
        Ok(a.pow(e))
    }

    fn call(&self, name: &str, args: Vec<MultiPoly>) -> Result<MultiPoly> {
        let (params, body) = (self.functions)(name).ok_or_else(|| Error::Parse(format!("unknown function {name}")))?;
        if params.len() != args.len() {
            return Err(Error::Parse(format!("{name} takes {} arguments, got {}", params.len(), args.len())));
        }
        let map: Vec<(&str, MultiPoly)> = params.iter().map(String::as_str).zip(args).collect();
        Ok(body.substitute(&map))
    }
}

/// Evaluates an expression with function calls into a polynomial.
pub fn eval_with_functions(e: &Expr, functions: &FunctionLookup) -> Result<MultiPoly> {
    expr::eval(e, &FunctionAlgebra { functions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn square_of_binomial() {
        assert_eq!(p("(x+1)^2"), p("x^2+2x+1"));
    }

    #[test]
    fn substitution_shifts() {
        let cube = p("x^3");
        assert_eq!(cube.substitute(&[("x", p("x+1"))]), p("x^3+3x^2+3x+1"));
    }

    #[test]
    fn display_round_trips() {
        let q = p("-3x^2*y + 7y^5 - 2 + x");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(p("x*y").to_string(), "x*y");
    }

    #[test]
    fn simultaneous_substitution() {
        let q = p("x - y");
        assert_eq!(q.substitute(&[("x", p("y")), ("y", p("x"))]), p("y - x"));
    }
}
