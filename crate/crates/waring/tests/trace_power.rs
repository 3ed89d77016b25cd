use num_bigint::BigInt;
use proptest::prelude::*;
use waring::sets::witt_value_set;
use waring::trace_power::{
    closed_form, coefficient, compare_printed_coefficients, reduced_form, witt_decompose, witt_evaluate,
    witt_membership_check, ReducedForm, TracePolynomial,
};
use waring::{make_ring, quotient_by_integer, Budget, MatrixR, Ring, RingElement};

fn ring(s: &str) -> Ring {
    make_ring(s).unwrap()
}

/// Coefficients of `tr(A^k)` from `tr_k = t·tr_{k-1} - δ·tr_{k-2}`, `tr_0 = 2`, `tr_1 = t`,
/// indexed by the power of `δ`.
fn recurrence(k: u32) -> Vec<i128> {
    let mut prev: Vec<i128> = vec![2];
    let mut cur: Vec<i128> = vec![1];
    for _ in 1..k {
        let mut next = vec![0i128; cur.len().max(prev.len() + 1)];
        for (r, c) in cur.iter().enumerate() {
            next[r] += c;
        }
        for (r, c) in prev.iter().enumerate() {
            next[r + 1] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

const EXPANSIONS: [(u32, &[i64]); 8] = [
    (9, &[1, -9, 27, -30, 9]),
    (10, &[1, -10, 35, -50, 25, -2]),
    (11, &[1, -11, 44, -77, 55, -11]),
    (12, &[1, -12, 54, -112, 105, -36, 2]),
    (13, &[1, -13, 65, -156, 182, -91, 13]),
    (14, &[1, -14, 77, -210, 294, -196, 49, -2]),
    (15, &[1, -15, 90, -275, 450, -378, 140, -15]),
    (16, &[1, -16, 104, -352, 660, -672, 336, -64, 2]),
];

#[test]
fn coefficients_match_recurrence() {
    for k in 2..=40u32 {
        let tp = TracePolynomial::new(k).unwrap();
        let expected: Vec<BigInt> = recurrence(k).into_iter().map(BigInt::from).collect();
        assert_eq!(tp.coefficients, expected, "k={k}");
        assert_eq!(coefficient(k, 0), BigInt::from(1));
    }
}

#[test]
fn coefficients_match_published_expansions() {
    for (k, printed) in EXPANSIONS {
        let tp = TracePolynomial::new(k).unwrap();
        let printed: Vec<BigInt> = printed.iter().map(|c| BigInt::from(*c)).collect();
        assert_eq!(tp.coefficients, printed, "k={k}");
    }
    let cmp = compare_printed_coefficients();
    assert_eq!(cmp.len(), 8);
    assert!(cmp.iter().all(|c| c.matches && c.mismatched_terms.is_empty()));
}

#[test]
fn fifteen_expansion_is_consistent() {
    let tp = TracePolynomial::new(15).unwrap();
    let tail: Vec<i64> = tp.coefficients[1..].iter().map(|c| c.try_into().unwrap()).collect();
    assert_eq!(tail, [-15, 90, -275, 450, -378, 140, -15]);
}

#[test]
fn closed_form_examples() {
    let r = ring("Z/101");
    for t in r.elements().step_by(7) {
        for d in r.elements().step_by(11) {
            let v = closed_form(2, &r.element(t), &r.element(d)).unwrap();
            assert_eq!(v.value, r.sub(r.mul(t, t), r.int_scale(d, 2)));
        }
    }
    assert!(closed_form(1, &r.element(r.one()), &r.element(r.one())).is_err());
    let other = ring("Z/7");
    assert!(closed_form(3, &r.element(r.one()), &other.element(other.one())).is_err());
}

#[test]
fn closed_form_accepts_large_k() {
    let r = ring("Z/13");
    for t in r.elements() {
        for d in r.elements() {
            let a = MatrixR::companion(&r, t, d);
            for k in [17u32, 25, 40] {
                assert_eq!(closed_form(k, &r.element(t), &r.element(d)).unwrap().value, a.pow(k as u64).unwrap().trace());
            }
        }
    }
}

#[test]
fn reduced_form_examples() {
    let r = ring("Z/100");
    let one = RingElement::parse(&r, "1").unwrap();
    let zero = RingElement::parse(&r, "0").unwrap();
    let v = reduced_form(10, &one, &zero).unwrap();
    assert_eq!(v.ring.spec(), "Z/10");
    assert_eq!(v.value, v.ring.one());

    let z15 = ring("Z/15");
    let rf = ReducedForm::new(15, &z15).unwrap();
    for d in z15.elements() {
        assert_eq!(rf.eval(z15.zero(), d), rf.quotient.target.zero());
    }
    assert!(ReducedForm::new(17, &z15).is_err());
}

#[test]
fn reduced_forms_agree_with_closed_form_mod_k() {
    for k in 9..=16u32 {
        let r = ring(&format!("Z/{k}"));
        let rf = ReducedForm::new(k, &r).unwrap();
        let tp = TracePolynomial::new(k).unwrap().bind(&r);
        for t in r.elements() {
            for d in r.elements() {
                assert_eq!(rf.eval(t, d), rf.quotient.project(tp.eval(t, d)), "k={k} t={t:?} d={d:?}");
            }
        }
    }
}

#[test]
fn reduced_forms_agree_on_extension_rings() {
    for s in ["Z/3[e]/(e^2)", "Z/2[x]/(x^2+x+1)", "Z/4[e]/(e^2)", "(Z/2)x(Z/3)", "Z/9"] {
        let r = ring(s);
        for k in 9..=16u32 {
            let rf = ReducedForm::new(k, &r).unwrap();
            let tp = TracePolynomial::new(k).unwrap().bind(&r);
            for t in r.elements() {
                for d in r.elements() {
                    assert_eq!(rf.eval(t, d), rf.quotient.project(tp.eval(t, d)), "{s} k={k}");
                }
            }
        }
    }
}

#[test]
fn cubes_over_dual_numbers_are_constants() {
    let r = ring("Z/3[e]/(e^2)");
    let mut oracle: Vec<_> = r
        .elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .map(|(a, b)| r.add(r.pow(a, 3), r.int_scale(b, 3)))
        .collect();
    oracle.sort();
    oracle.dedup();
    assert_eq!(oracle, vec![r.from_int(0), r.from_int(1), r.from_int(2)]);

    let w = witt_value_set(&r, 3, 1, Budget::default()).unwrap();
    assert_eq!(w.len(), 3);
    assert!(!w.contains(&r.parse_elem("e").unwrap()));
    for m in MatrixR::all(&r, 2).step_by(37) {
        let d = witt_membership_check(&m, 3, 1, Budget::default()).unwrap();
        assert!(oracle.contains(&d.value));
        let wit = d.witness.expect("decomposition found");
        assert_eq!(witt_evaluate(&r, 3, &wit), d.value);
    }
}

#[test]
fn identity_over_z9_decomposes() {
    let r = ring("Z/9");
    let d = witt_membership_check(&MatrixR::identity(&r, 2), 3, 2, Budget::default()).unwrap();
    assert_eq!(d.value, r.from_int(2));
    let wit = d.witness.unwrap();
    assert_eq!(wit.len(), 3);
    assert_eq!(witt_evaluate(&r, 3, &wit), r.from_int(2));
}

#[test]
fn zero_matrix_has_zero_witness() {
    for (s, p, k) in [("Z/8", 2u64, 3u32), ("Z/9", 3, 2), ("Z/2[x]/(x^2+x+1)", 2, 4), ("Z/3[e]/(e^2)", 3, 1)] {
        let r = ring(s);
        let d = witt_membership_check(&MatrixR::zero(&r, 2), p, k, Budget::default()).unwrap();
        assert_eq!(d.witness, Some(vec![r.zero(); k as usize + 1]));
    }
}

#[test]
fn witt_rejects_bad_parameters() {
    let r = ring("Z/8");
    assert!(witt_membership_check(&MatrixR::zero(&r, 2), 4, 1, Budget::default()).is_err());
    assert!(witt_decompose(&r, 2, 0, r.zero(), Budget::default()).is_err());
    assert!(witt_decompose(&ring("Z/81"), 3, 4, r.zero(), Budget::new(1000)).is_err());
}

#[test]
fn witt_sets_are_nested() {
    for s in ["Z/2", "Z/4", "Z/8", "Z/16", "Z/9", "Z/3[e]/(e^2)", "Z/2[e]/(e^2)", "Z/4[e]/(e^2)", "Z/2[x]/(x^2+x+1)", "(Z/2)x(Z/3)"] {
        let r = ring(s);
        for (p, s_max) in [(2u64, 3u32), (3, 1)] {
            for k in 1..=s_max {
                let outer = witt_value_set(&r, p, k, Budget::default()).unwrap();
                let inner = witt_value_set(&r, p, k + 1, Budget::default()).unwrap();
                assert!(inner.is_subset(&outer), "{s} p={p} s={k}");
            }
        }
    }
}

#[test]
fn traces_of_prime_power_powers_land_in_witt_sets() {
    for (s, p, k) in [("Z/8", 2u64, 3u32), ("Z/9", 3, 2), ("Z/4[e]/(e^2)", 2, 2), ("Z/16", 2, 4)] {
        let r = ring(s);
        let set = witt_value_set(&r, p, k, Budget::default()).unwrap();
        for m in MatrixR::all(&r, 2).step_by(53) {
            assert!(set.contains(&m.pow(p.pow(k)).unwrap().trace()), "{s} {m}");
        }
    }
}

const PROP_RINGS: &[&str] = &["Z/7", "Z/12", "Z/16", "Z/27", "Z/3[e]/(e^2)", "Z/2[x]/(x^3+x+1)", "Z/3[x]/(x^2+1)", "(Z/2)x(Z/3)"];

fn ring_pair() -> impl Strategy<Value = (Ring, u64, u64)> {
    prop::sample::select(PROP_RINGS.to_vec()).prop_flat_map(|s| {
        let r = ring(s);
        let card = r.card();
        (Just(r), 0..card, 0..card)
    })
}

proptest! {
    #[test]
    fn closed_form_matches_companion_power((r, t, d) in ring_pair(), k in 2u32..=16) {
        let (t, d) = (r.element_at(t), r.element_at(d));
        let expected = MatrixR::companion(&r, t, d).pow(k as u64).unwrap().trace();
        prop_assert_eq!(closed_form(k, &r.element(t), &r.element(d)).unwrap().value, expected);
    }

    #[test]
    fn reduced_form_is_closed_form_mod_k((r, t, d) in ring_pair(), k in 9u32..=16) {
        let (t, d) = (r.element_at(t), r.element_at(d));
        let q = quotient_by_integer(&r, k as u64).unwrap();
        let full = closed_form(k, &r.element(t), &r.element(d)).unwrap().value;
        prop_assert_eq!(reduced_form(k, &r.element(t), &r.element(d)).unwrap().value, q.project(full));
    }

    #[test]
    fn coefficient_law(k in 2u32..=60) {
        let rec = recurrence(k);
        for r in 0..=k / 2 {
            prop_assert_eq!(coefficient(k, r), BigInt::from(rec[r as usize]));
        }
    }

    #[test]
    fn witt_witness_re_evaluates((r, v, _d) in ring_pair(), p in prop::sample::select(vec![2u64, 3]), s in 1u32..=2) {
        let v = r.element_at(v);
        let d = witt_decompose(&r, p, s, v, Budget::default()).unwrap();
        if let Some(w) = d.witness {
            prop_assert_eq!(witt_evaluate(&r, p, &w), v);
        }
    }
}
