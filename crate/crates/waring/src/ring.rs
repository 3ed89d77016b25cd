//! Finite commutative rings with unity: `Z/m`, `Z/m[v]/(f)` for monic `f`,
//! and finite products of those.
//!
//! Elements are dense indices in `0..card` (mixed radix over the presentation),
//! so every element has exactly one representation and equality is structural.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Algebra};
use crate::order::IntPolynomial;

/// Canonical element index inside its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    IntegersMod(u64),
    /// `Z/modulus[var]/(poly)` with `poly` monic, coefficients low to high.
    PolyQuotient { modulus: u64, poly: Vec<u64>, var: String },
    Product(Vec<Ring>),
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

struct Inner {
    presentation: Presentation,
    spec: String,
    card: u64,
    characteristic: u64,
    one: Elem,
    strides: Vec<u64>,
    tables: Option<Tables>,
}

/// Shared handle to an immutable ring presentation.
#[derive(Clone)]
pub struct Ring(Arc<Inner>);

const TABLE_LIMIT: u64 = 256;

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.spec)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + m as u128 - b as u128) % m as u128) as u64
    }
}

fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn format_poly_u64(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

impl Ring {
    fn build(presentation: Presentation) -> Result<Ring> {
        let (spec, card, characteristic, one, strides) = match &presentation {
            Presentation::IntegersMod(m) => (format!("Z/{m}"), *m, *m, Elem(if *m > 1 { 1 } else { 0 }), vec![]),
            Presentation::PolyQuotient { modulus, poly, var } => {
                let d = poly.len() - 1;
                let card = checked_pow(*modulus, d)
                    .ok_or_else(|| Error::TooLarge(format!("{modulus}^{d} elements")))?;
                let spec = format!("Z/{modulus}[{var}]/({})", format_poly_u64(poly, var));
                (spec, card, *modulus, Elem(if *modulus > 1 { 1 } else { 0 }), vec![])
            }
            Presentation::Product(factors) => {
                if factors.is_empty() {
                    return Err(Error::Invalid("empty product".into()));
                }
                let mut card: u64 = 1;
                let mut strides = Vec::with_capacity(factors.len());
                let mut one = 0u64;
                let mut ch: u64 = 1;
                for f in factors {
                    strides.push(card);
                    one += f.one().0 * card;
                    card = card
                        .checked_mul(f.card())
                        .ok_or_else(|| Error::TooLarge("product cardinality overflows".into()))?;
                    ch = ch.lcm(&f.characteristic());
                }
                let spec = factors.iter().map(|f| format!("({})", f.spec())).collect::<Vec<_>>().join("x");
                (spec, card, ch, Elem(one), strides)
            }
        };
        let mut inner = Inner { presentation, spec, card, characteristic, one, strides, tables: None };
        let is_zmod = matches!(inner.presentation, Presentation::IntegersMod(_));
        if !is_zmod && card <= TABLE_LIMIT {
            let tmp = Ring(Arc::new(inner));
            let n = card as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..card {
                for b in 0..card {
                    add[(a * card + b) as usize] = tmp.add_slow(Elem(a), Elem(b)).0 as u32;
                    mul[(a * card + b) as usize] = tmp.mul_slow(Elem(a), Elem(b)).0 as u32;
                }
            }
            inner = Arc::try_unwrap(tmp.0).ok().expect("fresh ring handle is unshared");
            inner.tables = Some(Tables { add, mul });
        }
        Ok(Ring(Arc::new(inner)))
    }

    /// `Z/m` for any `m ≥ 1`; `m = 1` is the zero ring.
    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m == 0 {
            return Err(Error::BadModulus(0));
        }
        Ring::build(Presentation::IntegersMod(m))
    }

    /// `Z/m[var]/(poly)`; `poly` is given low to high and must be monic mod `m`.
    pub fn poly_quotient(m: u64, poly: &[i128], var: &str) -> Result<Ring> {
        if m == 0 {
            return Err(Error::BadModulus(0));
        }
        let mut reduced: Vec<u64> = poly.iter().map(|c| c.rem_euclid(m as i128) as u64).collect();
        while reduced.last() == Some(&0) {
            reduced.pop();
        }
        if m == 1 {
            return Ring::integers_mod(1);
        }
        if reduced.len() < 2 || *reduced.last().unwrap() != 1 {
            return Err(Error::NonMonic(format_poly_u64(&reduced, var)));
        }
        Ring::build(Presentation::PolyQuotient { modulus: m, poly: reduced, var: var.to_string() })
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        Ring::build(Presentation::Product(factors))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.0.presentation
    }

    pub fn spec(&self) -> &str {
        &self.0.spec
    }

    pub fn card(&self) -> u64 {
        self.0.card
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.0.card == 1
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.0.card
    }

    /// Coefficients (low to high) of an element of a polynomial quotient.
    pub fn poly_coeffs(&self, a: Elem) -> Vec<u64> {
        match &self.0.presentation {
            Presentation::PolyQuotient { modulus, poly, .. } => {
                let d = poly.len() - 1;
                let mut v = Vec::with_capacity(d);
                let mut x = a.0;
                for _ in 0..d {
                    v.push(x % modulus);
                    x /= modulus;
                }
                v
            }
            Presentation::IntegersMod(_) => vec![a.0],
            Presentation::Product(_) => panic!("poly_coeffs on a product ring"),
        }
    }

    fn elem_of_poly_coeffs(&self, coeffs: &[u64]) -> Elem {
        let Presentation::PolyQuotient { modulus, .. } = &self.0.presentation else {
            unreachable!()
        };
        let mut x = 0u64;
        for &c in coeffs.iter().rev() {
            x = x * modulus + c;
        }
        Elem(x)
    }

    /// Components of an element of a product ring, in factor order.
    pub fn components(&self, a: Elem) -> Vec<Elem> {
        match &self.0.presentation {
            Presentation::Product(factors) => factors
                .iter()
                .zip(&self.0.strides)
                .map(|(f, s)| Elem((a.0 / s) % f.card()))
                .collect(),
            _ => vec![a],
        }
    }

    pub fn from_components(&self, parts: &[Elem]) -> Elem {
        Elem(parts.iter().zip(&self.0.strides).map(|(p, s)| p.0 * s).sum())
    }

    pub fn factors(&self) -> &[Ring] {
        match &self.0.presentation {
            Presentation::Product(f) => f,
            _ => &[],
        }
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.presentation {
            Presentation::IntegersMod(m) => Elem(addmod(a.0, b.0, *m)),
            Presentation::PolyQuotient { modulus, .. } => {
                let x = self.poly_coeffs(a);
                let y = self.poly_coeffs(b);
                let z: Vec<u64> = x.iter().zip(&y).map(|(p, q)| addmod(*p, *q, *modulus)).collect();
                self.elem_of_poly_coeffs(&z)
            }
            Presentation::Product(factors) => {
                let (x, y) = (self.components(a), self.components(b));
                let z: Vec<Elem> = factors.iter().zip(x.iter().zip(&y)).map(|(f, (p, q))| f.add(*p, *q)).collect();
                self.from_components(&z)
            }
        }
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.presentation {
            Presentation::IntegersMod(m) => Elem(mulmod(a.0, b.0, *m)),
            Presentation::PolyQuotient { modulus, poly, .. } => {
                let m = *modulus;
                let d = poly.len() - 1;
                let x = self.poly_coeffs(a);
                let y = self.poly_coeffs(b);
                let mut prod = vec![0u64; 2 * d];
                for (i, &p) in x.iter().enumerate() {
                    if p == 0 {
                        continue;
                    }
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = addmod(prod[i + j], mulmod(p, q, m), m);
                    }
                }
                for i in (d..2 * d).rev() {
                    let c = prod[i];
                    if c == 0 {
                        continue;
                    }
                    prod[i] = 0;
                    for j in 0..d {
                        prod[i - d + j] = submod(prod[i - d + j], mulmod(c, poly[j], m), m);
                    }
                }
                prod.truncate(d);
                self.elem_of_poly_coeffs(&prod)
            }
            Presentation::Product(factors) => {
                let (x, y) = (self.components(a), self.components(b));
                let z: Vec<Elem> = factors.iter().zip(x.iter().zip(&y)).map(|(f, (p, q))| f.mul(*p, *q)).collect();
                self.from_components(&z)
            }
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[(a.0 * self.0.card + b.0) as usize] as u64),
            None => self.add_slow(a, b),
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[(a.0 * self.0.card + b.0) as usize] as u64),
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.presentation {
            Presentation::IntegersMod(m) => Elem(submod(0, a.0, *m)),
            Presentation::PolyQuotient { modulus, .. } => {
                let z: Vec<u64> = self.poly_coeffs(a).iter().map(|c| submod(0, *c, *modulus)).collect();
                self.elem_of_poly_coeffs(&z)
            }
            Presentation::Product(factors) => {
                let z: Vec<Elem> = factors.iter().zip(self.components(a)).map(|(f, p)| f.neg(p)).collect();
                self.from_components(&z)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Image of the integer `c` under `Z → R`.
    pub fn from_int(&self, c: i128) -> Elem {
        match &self.0.presentation {
            Presentation::IntegersMod(m) => Elem(c.rem_euclid(*m as i128) as u64),
            Presentation::PolyQuotient { modulus, .. } => Elem(c.rem_euclid(*modulus as i128) as u64),
            Presentation::Product(factors) => {
                let z: Vec<Elem> = factors.iter().map(|f| f.from_int(c)).collect();
                self.from_components(&z)
            }
        }
    }

    pub fn from_bigint(&self, c: &BigInt) -> Elem {
        let ch = BigInt::from(self.0.characteristic);
        let r = c.mod_floor(&ch);
        self.from_int(r.to_i128().expect("residue fits"))
    }

    pub fn int_scale(&self, a: Elem, c: i128) -> Elem {
        self.mul(self.from_int(c), a)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// The `i`-th element in enumeration order: 0, 1, then the rest by index.
    pub fn element_at(&self, i: u64) -> Elem {
        let one = self.0.one.0;
        match i {
            0 => Elem(0),
            1 => Elem(one),
            _ => {
                let c = i - 1;
                Elem(if c >= one { c + 1 } else { c })
            }
        }
    }

    /// Inverse of [`Ring::element_at`].
    pub fn position(&self, a: Elem) -> u64 {
        let one = self.0.one.0;
        if a.0 == 0 {
            0
        } else if a.0 == one {
            1
        } else if a.0 < one {
            a.0 + 1
        } else {
            a.0
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.0.card).map(move |i| self.element_at(i))
    }

    pub fn elements_vec(&self) -> Vec<Elem> {
        self.elements().collect()
    }

    /// The adjoined variable of a polynomial quotient.
    pub fn generator(&self) -> Option<Elem> {
        match &self.0.presentation {
            Presentation::PolyQuotient { poly, .. } => {
                let d = poly.len() - 1;
                let mut c = vec![0u64; d];
                if d >= 2 {
                    c[1] = 1;
                    Some(self.elem_of_poly_coeffs(&c))
                } else {
                    Some(self.from_int(-(poly[0] as i128)))
                }
            }
            _ => None,
        }
    }

    pub fn format_elem(&self, a: Elem) -> String {
        match &self.0.presentation {
            Presentation::IntegersMod(_) => a.0.to_string(),
            Presentation::PolyQuotient { var, .. } => format_poly_u64(&self.poly_coeffs(a), var),
            Presentation::Product(factors) => {
                let parts: Vec<String> =
                    factors.iter().zip(self.components(a)).map(|(f, p)| f.format_elem(p)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn parse_elem(&self, src: &str) -> Result<Elem> {
        let s = src.trim();
        if let Presentation::Product(factors) = &self.0.presentation {
            if let Some(inner) = strip_outer_parens(s) {
                let parts = expr::split_top_level(inner, ',');
                if parts.len() > 1 {
                    if parts.len() != factors.len() {
                        return Err(Error::Parse(format!(
                            "expected {} components for {}, got {}",
                            factors.len(),
                            self.spec(),
                            parts.len()
                        )));
                    }
                    let comps = factors.iter().zip(parts).map(|(f, p)| f.parse_elem(p)).collect::<Result<Vec<_>>>()?;
                    return Ok(self.from_components(&comps));
                }
            }
        }
        let e = expr::parse(s)?;
        expr::eval(&e, &ElemAlgebra { ring: self })
    }

    pub fn element(&self, a: Elem) -> RingElement {
        RingElement { ring: self.clone(), value: a }
    }

    pub fn check_elem(&self, a: Elem) -> Result<Elem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::Invalid(format!("index {} is not an element of {}", a.0, self.spec())))
        }
    }
}

fn strip_outer_parens(s: &str) -> Option<&str> {
    if !s.starts_with('(') || !s.ends_with(')') {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != s.len() - 1 {
                    return None;
                }
            }
            _ => {}
        }
    }
    Some(&s[1..s.len() - 1])
}

struct ElemAlgebra<'a> {
    ring: &'a Ring,
}

impl Algebra for ElemAlgebra<'_> {
    type Value = Elem;

    fn int(&self, n: &BigUint) -> Result<Elem> {
        Ok(self.ring.from_bigint(&BigInt::from(n.clone())))
    }

    fn var(&self, name: &str) -> Result<Elem> {
        match &self.ring.0.presentation {
            Presentation::PolyQuotient { var, .. } if var == name => Ok(self.ring.generator().unwrap()),
            _ => Err(Error::Parse(format!("unknown symbol {name} in {}", self.ring.spec()))),
        }
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
}

fn parse_modulus_poly(src: &str, var: &str, m: u64) -> Result<Vec<i128>> {
    Ok(IntPolynomial::parse_in(src, var)?.reduce_mod(m))
}

fn parse_modulus(s: &str) -> Result<u64> {
    let m: u64 = s.trim().parse().map_err(|_| Error::Parse(format!("bad modulus {s:?}")))?;
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    Ok(m)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn parse_spec(spec: &str) -> Result<Ring> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty ring specification".into()));
    }
    if s.starts_with('(') {
        let mut factors = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        loop {
            if bytes.get(i) != Some(&b'(') {
                return Err(Error::Parse(format!("expected '(' at offset {i} in {s:?}")));
            }
            let mut depth = 0;
            let mut j = i;
            loop {
                match bytes.get(j) {
                    Some(b'(') => depth += 1,
                    Some(b')') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    Some(_) => {}
                    None => return Err(Error::Parse(format!("unbalanced parentheses in {s:?}"))),
                }
                j += 1;
            }
            factors.push(parse_spec(&s[i + 1..j])?);
            i = j + 1;
            match bytes.get(i) {
                None => break,
                Some(b'x') => i += 1,
                Some(_) => return Err(Error::Parse(format!("expected 'x' between factors in {s:?}"))),
            }
        }
        return if factors.len() == 1 { Ok(factors.pop().unwrap()) } else { Ring::product(factors) };
    }
    if let Some(q) = s.strip_prefix("F_").or_else(|| s.strip_prefix("GF")) {
        let q: u64 = q.parse().map_err(|_| Error::Parse(format!("bad field size in {s:?}")))?;
        return match q {
            p if is_prime(p) => Ring::integers_mod(p),
            4 => parse_spec("Z/2[x]/(x^2+x+1)"),
            8 => parse_spec("Z/2[x]/(x^3+x+1)"),
            9 => parse_spec("Z/3[x]/(x^2+1)"),
            16 => parse_spec("Z/2[x]/(x^4+x+1)"),
            25 => parse_spec("Z/5[x]/(x^2+2)"),
            27 => parse_spec("Z/3[x]/(x^3+2x+1)"),
            _ => Err(Error::Parse(format!("no built-in presentation for F_{q}"))),
        };
    }
    let rest = s.strip_prefix("Z/").ok_or_else(|| Error::Parse(format!("unrecognized ring {spec:?}")))?;
    match rest.find('[') {
        None => Ring::integers_mod(parse_modulus(rest)?),
        Some(open) => {
            let m = parse_modulus(&rest[..open])?;
            let close = rest.find(']').ok_or_else(|| Error::Parse(format!("missing ']' in {spec:?}")))?;
            let var = &rest[open + 1..close];
            if var.is_empty() || !var.chars().all(|c| c.is_alphabetic()) {
                return Err(Error::Parse(format!("bad variable name {var:?}")));
            }
            let tail = rest[close + 1..]
                .strip_prefix("/(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected /(<poly>) after [{var}] in {spec:?}")))?;
            let poly = parse_modulus_poly(tail, var, m)?;
            Ring::poly_quotient(m, &poly, var)
        }
    }
}

/// Builds a ring from its specification string.
pub fn make_ring(spec: &str) -> Result<Ring> {
    parse_spec(spec)
}

/// The quotient `R/mR` together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub source: Ring,
    pub target: Ring,
    pub modulus: u64,
}

impl Quotient {
    /// The identity map `R → R`.
    pub fn identity(ring: &Ring) -> Quotient {
        Quotient { source: ring.clone(), target: ring.clone(), modulus: 0 }
    }

    pub fn project(&self, a: Elem) -> Elem {
        project_into(&self.source, &self.target, a)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }
}

fn project_into(src: &Ring, tgt: &Ring, a: Elem) -> Elem {
    if tgt.is_zero_ring() {
        return Elem(0);
    }
    match (src.presentation(), tgt.presentation()) {
        (Presentation::IntegersMod(_), Presentation::IntegersMod(g)) => Elem(a.0 % g),
        (Presentation::PolyQuotient { .. }, Presentation::PolyQuotient { modulus, .. }) => {
            let c: Vec<u64> = src.poly_coeffs(a).iter().map(|x| x % modulus).collect();
            tgt.elem_of_poly_coeffs(&c)
        }
        (Presentation::Product(sf), Presentation::Product(tf)) => {
            let parts: Vec<Elem> = sf
                .iter()
                .zip(tf)
                .zip(src.components(a))
                .map(|((s, t), p)| project_into(s, t, p))
                .collect();
            tgt.from_components(&parts)
        }
        _ => unreachable!("projection between mismatched presentations"),
    }
}

fn quotient_ring(ring: &Ring, m: u64) -> Result<Ring> {
    match ring.presentation() {
        Presentation::IntegersMod(big) => {
            let g = big.gcd(&m);
            if g == *big {
                Ok(ring.clone())
            } else {
                Ring::integers_mod(g)
            }
        }
        Presentation::PolyQuotient { modulus, poly, var } => {
            let g = modulus.gcd(&m);
            if g == *modulus {
                Ok(ring.clone())
            } else if g == 1 {
                Ring::integers_mod(1)
            } else {
                let p: Vec<i128> = poly.iter().map(|c| *c as i128).collect();
                Ring::poly_quotient(g, &p, var)
            }
        }
        Presentation::Product(factors) => {
            let qs = factors.iter().map(|f| quotient_ring(f, m)).collect::<Result<Vec<_>>>()?;
            if qs.iter().zip(factors).all(|(q, f)| q == f) {
                Ok(ring.clone())
            } else {
                Ring::product(qs)
            }
        }
    }
}

/// `R/mR` with its projection map.
pub fn quotient_by_integer(ring: &Ring, m: u64) -> Result<Quotient> {
    if m == 0 {
        return Err(Error::Invalid("cannot quotient by 0".into()));
    }
    let target = quotient_ring(ring, m)?;
    Ok(Quotient { source: ring.clone(), target, modulus: m })
}

/// An element bundled with its ring; binary operations check ownership.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    pub ring: Ring,
    pub value: Elem,
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ring.format_elem(self.value), self.ring.spec())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(self.value))
    }
}

impl RingElement {
    pub fn parse(ring: &Ring, src: &str) -> Result<RingElement> {
        Ok(ring.element(ring.parse_elem(src)?))
    }

    fn same_owner(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::OwnerMismatch(self.ring.spec().into(), other.ring.spec().into()))
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_owner(other)?;
        Ok(self.ring.element(self.ring.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_owner(other)?;
        Ok(self.ring.element(self.ring.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_owner(other)?;
        Ok(self.ring.element(self.ring.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.ring.element(self.ring.neg(self.value))
    }

    pub fn int_scale(&self, c: i128) -> RingElement {
        self.ring.element(self.ring.int_scale(self.value, c))
    }

    pub fn pow(&self, e: u64) -> RingElement {
        self.ring.element(self.ring.pow(self.value, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["Z/9", "Z/3[e]/(e^2)", "Z/2[x]/(x^2+x+1)", "(Z/2)x(Z/3)", "((Z/2)x(Z/3))x(Z/5)"] {
            let r = make_ring(s).unwrap();
            assert_eq!(make_ring(r.spec()).unwrap(), r, "{s}");
        }
    }

    #[test]
    fn enumeration_starts_with_zero_and_one() {
        let r = make_ring("(Z/2)x(Z/3)").unwrap();
        let v = r.elements_vec();
        assert_eq!(v[0], r.zero());
        assert_eq!(v[1], r.one());
        for (i, e) in v.iter().enumerate() {
            assert_eq!(r.position(*e), i as u64);
        }
    }

    #[test]
    fn generator_of_linear_modulus() {
        let r = make_ring("Z/5[t]/(t+2)").unwrap();
        assert_eq!(r.card(), 5);
        assert_eq!(r.format_elem(r.generator().unwrap()), "3");
    }
}
