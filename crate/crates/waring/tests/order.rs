use num_bigint::BigInt;
use proptest::prelude::*;
use waring::order::{discriminant, order_power_criterion, resultant, IntPolynomial, OrderFamily, CURATED_PAIRS};
use waring::Budget;

fn poly(s: &str) -> IntPolynomial {
    IntPolynomial::parse(s).unwrap()
}

/// Sylvester matrix of `f` and `g`, coefficients highest degree first.
fn sylvester(f: &[i128], g: &[i128]) -> Vec<Vec<i128>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![0; size];
        row[i..i + f.len()].copy_from_slice(f);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![0; size];
        row[i..i + g.len()].copy_from_slice(g);
        rows.push(row);
    }
    rows
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    if m.len() == 1 {
        return m[0][0];
    }
    (0..m.len())
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn high_first(p: &IntPolynomial) -> Vec<i128> {
    p.coeffs().iter().rev().map(|c| i128::try_from(c).unwrap()).collect()
}

fn oracle_resultant(f: &IntPolynomial, g: &IntPolynomial) -> i128 {
    cofactor_det(&sylvester(&high_first(f), &high_first(g)))
}

#[test]
fn resultant_examples() {
    assert_eq!(resultant(&poly("x-3"), &poly("x-1")).unwrap(), BigInt::from(2));
    assert_eq!(resultant(&poly("x^2+1"), &poly("2x")).unwrap(), BigInt::from(4));
    for f in ["x^2+1", "x^3-2x+5", "3x^4-x+7"] {
        assert_eq!(resultant(&poly(f), &poly(f)).unwrap(), BigInt::from(0));
    }
    assert!(resultant(&IntPolynomial::zero(), &IntPolynomial::zero()).is_err());
}

#[test]
fn discriminant_examples() {
    assert_eq!(discriminant(&poly("x^2-x+1")).unwrap(), BigInt::from(-3));
    assert_eq!(discriminant(&poly("x^2+1")).unwrap(), BigInt::from(-4));
    assert_eq!(discriminant(&poly("x^2-x-1")).unwrap(), BigInt::from(5));
    assert!(discriminant(&poly("2x^2+1")).is_err());
}

#[test]
fn quadratic_discriminants() {
    for b in -20i64..=20 {
        for c in -20i64..=20 {
            let f = IntPolynomial::from_i64(&[c, b, 1]);
            assert_eq!(discriminant(&f).unwrap(), BigInt::from(b * b - 4 * c), "b={b} c={c}");
        }
    }
}

#[test]
fn depressed_cubic_discriminants() {
    for p in -8i64..=8 {
        for q in -8i64..=8 {
            let f = IntPolynomial::from_i64(&[q, p, 0, 1]);
            assert_eq!(discriminant(&f).unwrap(), BigInt::from(-4 * p.pow(3) - 27 * q * q));
        }
    }
}

#[test]
fn criterion_examples() {
    let r = order_power_criterion(&poly("x^2-x+1"), 3, Some(OrderFamily::Deg9), Budget::default()).unwrap();
    assert_eq!((r.discriminant.as_str(), r.gcd.as_str()), ("-3", "3"));
    assert!(!r.coprime && !r.every_element_pth_power && !r.no_p_nilpotents && r.agreement);
    assert!(r.conclusion.unwrap().starts_with("not every matrix"));

    let r = order_power_criterion(&poly("x^2-x-1"), 3, Some(OrderFamily::Deg9), Budget::default()).unwrap();
    assert!(r.coprime && r.every_element_pth_power && r.no_p_nilpotents && r.agreement);
    assert!(r.conclusion.unwrap().starts_with("every matrix"));

    let r = order_power_criterion(&poly("x^2+1"), 2, Some(OrderFamily::Deg16), Budget::default()).unwrap();
    assert_eq!(r.gcd, "2");
    assert!(!r.coprime && !r.every_element_pth_power && r.agreement);
    assert!(r.non_power.is_some() && r.nilpotent.is_some());
}

#[test]
fn criterion_errors() {
    assert!(order_power_criterion(&poly("x^2+1"), 4, None, Budget::default()).is_err());
    assert!(order_power_criterion(&poly("x^2+1"), 3, Some(OrderFamily::Deg16), Budget::default()).is_err());
    assert!(order_power_criterion(&poly("x^9+1"), 13, None, Budget::new(1000)).is_err());
}

#[test]
fn curated_pairs_agree_three_ways() {
    assert!(CURATED_PAIRS.len() >= 12);
    let mut verdicts = (0, 0);
    for (f, p) in CURATED_PAIRS {
        let f = poly(f);
        let r = order_power_criterion(&f, *p, None, Budget::default()).unwrap();
        assert!(r.agreement, "{f} p={p}");
        let disc = discriminant(&f).unwrap();
        assert_eq!(r.coprime, disc % BigInt::from(*p) != BigInt::from(0));
        if r.coprime {
            verdicts.0 += 1;
        } else {
            verdicts.1 += 1;
        }
    }
    assert!(verdicts.0 > 0 && verdicts.1 > 0);
}

#[test]
fn family_names() {
    for (s, p) in [("deg9", 3), ("deg11", 11), ("deg13", 13), ("deg16", 2)] {
        let fam = OrderFamily::parse(s).unwrap();
        assert_eq!(fam.prime(), p);
        assert_eq!(OrderFamily::for_prime(p), Some(fam));
    }
    assert!(OrderFamily::parse("deg10").is_err());
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPolynomial> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop::sample::select(vec![-9i64, -5, -2, -1, 1, 2, 3, 7, 9]))
            .prop_map(|(mut c, lead)| {
                c.push(lead);
                IntPolynomial::from_i64(&c)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resultant_is_multiplicative(f in small_poly(2), g in small_poly(2), h in small_poly(4)) {
        let lhs = resultant(&f.mul(&g), &h).unwrap();
        let rhs = resultant(&f, &h).unwrap() * resultant(&g, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_matches_cofactor_expansion(f in small_poly(3), g in small_poly(3)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(oracle_resultant(&f, &g)));
    }

    #[test]
    fn polynomial_text_round_trip(f in small_poly(5)) {
        prop_assert_eq!(IntPolynomial::parse(&f.to_string()).unwrap(), f);
    }
}
