use proptest::prelude::*;
use waring::trace_power::closed_form;
use waring::{make_ring, quotient_by_integer, Elem, Error, MatrixR, Ring, RingElement};

fn ring(s: &str) -> Ring {
    make_ring(s).unwrap()
}

fn mat(r: &Ring, text: &str) -> MatrixR {
    MatrixR::parse(r, text).unwrap()
}

/// `M^k` by `k - 1` plain multiplications with explicit index loops.
fn naive_pow(m: &MatrixR, k: u64) -> MatrixR {
    let r = m.ring();
    let n = m.dim();
    let mut acc: Vec<Elem> = m.entries().to_vec();
    for _ in 1..k {
        let mut next = vec![r.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = r.zero();
                for l in 0..n {
                    s = r.add(s, r.mul(acc[i * n + l], m.get(l, j)));
                }
                next[i * n + j] = s;
            }
        }
        acc = next;
    }
    MatrixR::new(r, n, acc).unwrap()
}

#[test]
fn power_examples() {
    for s in ["Z/2", "Z/3[e]/(e^2)", "(Z/2)x(Z/3)"] {
        let r = ring(s);
        let id = MatrixR::identity(&r, 3);
        assert_eq!(id.pow(2).unwrap(), id);
        let zero = MatrixR::zero(&r, 2);
        assert_eq!(zero.pow(7).unwrap(), zero);
    }
    let z7 = ring("Z/7");
    let a = MatrixR::companion(&z7, z7.one(), z7.one());
    assert_eq!(a.pow(9).unwrap().trace(), z7.from_int(5));
    assert_eq!(a.pow(1).unwrap(), a);
    assert!(a.pow(0).is_err());
}

#[test]
fn repeated_squaring_matches_naive_power() {
    for s in ["Z/5", "Z/4[e]/(e^2)", "Z/2[x]/(x^2+x+1)", "(Z/2)x(Z/3)"] {
        let r = ring(s);
        for (i, m) in MatrixR::all(&r, 2).enumerate().filter(|(i, _)| i % 7 == 0) {
            let k = 2 + (i as u64 % 15);
            assert_eq!(m.pow(k).unwrap(), naive_pow(&m, k), "{s} {m} ^ {k}");
        }
    }
}

#[test]
fn companion_examples() {
    let z5 = ring("Z/5");
    let a = MatrixR::companion(&z5, z5.one(), z5.zero());
    assert_eq!(a, mat(&z5, "2; 1,0; -1,0"));
    assert_eq!(a.trace(), z5.one());

    for s in ["Z/7", "Z/9", "Z/3[e]/(e^2)", "Z/4[e]/(e^2)"] {
        let r = ring(s);
        for x in r.elements() {
            let tr = MatrixR::companion(&r, r.zero(), x).pow(10).unwrap().trace();
            assert_eq!(tr, r.int_scale(r.pow(x, 5), -2), "{s}");
        }
    }

    let z = MatrixR::companion(&z5, z5.zero(), z5.zero());
    assert_ne!(z, MatrixR::zero(&z5, 2));
    assert_eq!(z.pow(2).unwrap(), MatrixR::zero(&z5, 2));
}

#[test]
fn companion_trace_and_determinant() {
    let r = ring("Z/3[e]/(e^2)");
    for t in r.elements() {
        for d in r.elements() {
            let a = MatrixR::companion(&r, t, d);
            assert_eq!((a.trace(), a.det().unwrap()), (t, d));
        }
    }
    let t = RingElement::parse(&ring("Z/4"), "1").unwrap();
    let d = RingElement::parse(&ring("Z/2"), "1").unwrap();
    assert!(matches!(MatrixR::companion_of(&t, &d), Err(Error::OwnerMismatch(..))));
}

#[test]
fn general_companion_examples() {
    let r = ring("Z/11");
    let a = r.from_int(4);
    assert_eq!(MatrixR::general_companion(&r, &[a]).unwrap(), mat(&r, "1; 4"));
    let (t, d) = (r.from_int(3), r.from_int(8));
    assert_eq!(MatrixR::general_companion(&r, &[t, d]).unwrap(), MatrixR::companion(&r, t, d));
    assert!(MatrixR::general_companion(&r, &[]).is_err());

    let z2 = ring("Z/2");
    let c = MatrixR::general_companion(&z2, &[z2.one(), z2.one(), z2.one()]).unwrap();
    assert_eq!(c.pow(3).unwrap().trace(), naive_pow(&c, 3).trace());
}

#[test]
fn general_companion_satisfies_newton_identities() {
    let r = ring("Z/5[e]/(e^2)");
    let elems = r.elements_vec();
    for (i, e1) in elems.iter().enumerate().step_by(3) {
        for e2 in elems.iter().skip(i % 5).step_by(4) {
            for e3 in elems.iter().step_by(6) {
                let c = MatrixR::general_companion(&r, &[*e1, *e2, *e3]).unwrap();
                assert_eq!(c.det().unwrap(), *e3);
                let p2 = r.sub(r.mul(*e1, *e1), r.int_scale(*e2, 2));
                let p3 = r.sum([r.pow(*e1, 3), r.int_scale(r.mul(*e1, *e2), -3), r.int_scale(*e3, 3)]);
                assert_eq!(c.pow(2).unwrap().trace(), p2);
                assert_eq!(c.pow(3).unwrap().trace(), p3);
            }
        }
    }
}

#[test]
fn direct_sum_examples() {
    let r = ring("Z/9");
    let id = MatrixR::identity(&r, 2).direct_sum_embed(4).unwrap();
    assert_eq!(id.trace(), r.from_int(2));
    assert_eq!(MatrixR::zero(&r, 2).direct_sum_embed(3).unwrap(), MatrixR::zero(&r, 3));
    assert!(MatrixR::identity(&r, 3).direct_sum_embed(2).is_err());
    let m = mat(&r, "2; 1,2; 3,4");
    for k in 1..=12 {
        let e = m.direct_sum_embed(3).unwrap();
        assert_eq!(e.pow(k).unwrap().trace(), m.pow(k).unwrap().trace());
        assert_eq!(e.pow(k).unwrap(), m.pow(k).unwrap().direct_sum_embed(3).unwrap());
    }
}

#[test]
fn trace_formula_matches_matrix_powers_on_small_rings() {
    let specs = ["Z/2", "Z/3", "Z/4", "Z/5", "Z/8", "Z/9", "Z/2[x]/(x^2+x+1)", "Z/3[e]/(e^2)", "Z/2[e]/(e^2)", "Z/3[x]/(x^2+1)", "(Z/2)x(Z/3)"];
    for s in specs {
        let r = ring(s);
        for t in r.elements() {
            for d in r.elements() {
                let a = MatrixR::companion(&r, t, d);
                let mut p = a.clone();
                for k in 2..=16u32 {
                    p = p.mul(&a).unwrap();
                    let cf = closed_form(k, &r.element(t), &r.element(d)).unwrap();
                    assert_eq!(p.trace(), cf.value, "{s} k={k}");
                }
            }
        }
    }
}

#[test]
fn identity_trace_is_dimension() {
    let r = ring("Z/5");
    for n in 1..=6 {
        assert_eq!(MatrixR::identity(&r, n).trace(), r.from_int(n as i128));
    }
}

#[test]
fn determinant_limited_to_three() {
    let r = ring("Z/5");
    assert!(MatrixR::identity(&r, 4).det().is_err());
}

#[test]
fn text_format_rejects_bad_shapes() {
    let r = ring("Z/5");
    assert!(MatrixR::parse(&r, "2; 1,2; 3").is_err());
    assert!(MatrixR::parse(&r, "3; 1,2; 3,4").is_err());
    assert!(MatrixR::parse(&r, "x; 1").is_err());
}

const RINGS: &[&str] = &["Z/6", "Z/8", "Z/9", "Z/3[e]/(e^2)", "Z/2[x]/(x^2+x+1)", "Z/4[e]/(e^2)", "(Z/2)x(Z/3)", "Z/25"];

fn ring_and_matrices(n: usize, count: usize) -> impl Strategy<Value = (Ring, Vec<MatrixR>)> {
    prop::sample::select(RINGS.to_vec()).prop_flat_map(move |s| {
        let r = ring(s);
        let card = r.card();
        let one = prop::collection::vec(0..card, n * n);
        (Just(r), prop::collection::vec(one, count)).prop_map(move |(r, raw)| {
            let ms = raw.into_iter().map(|v| MatrixR::new(&r, n, v.into_iter().map(Elem).collect()).unwrap()).collect();
            (r, ms)
        })
    })
}

proptest! {
    #[test]
    fn frobenius_trace_congruence((r, ms) in ring_and_matrices(3, 1), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let q = quotient_by_integer(&r, p).unwrap();
        let m = &ms[0];
        let lhs = q.project(m.pow(p).unwrap().trace());
        let rhs = q.project(r.pow(m.trace(), p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_is_multiplicative((_r, ms) in ring_and_matrices(3, 2)) {
        let (a, b) = (&ms[0], &ms[1]);
        let r = a.ring();
        prop_assert_eq!(a.mul(b).unwrap().det().unwrap(), r.mul(a.det().unwrap(), b.det().unwrap()));
    }

    #[test]
    fn multiplication_is_associative_and_trace_cyclic((_r, ms) in ring_and_matrices(2, 3)) {
        let (a, b, c) = (&ms[0], &ms[1], &ms[2]);
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(b).unwrap().trace(), b.mul(a).unwrap().trace());
    }

    #[test]
    fn embedding_commutes_with_powers((_r, ms) in ring_and_matrices(2, 1), k in 1u64..17, n in 2usize..5) {
        let m = &ms[0];
        let e = m.direct_sum_embed(n).unwrap();
        prop_assert_eq!(e.pow(k).unwrap(), m.pow(k).unwrap().direct_sum_embed(n).unwrap());
        prop_assert_eq!(e.trace(), m.trace());
    }

    #[test]
    fn power_exponents_add((_r, ms) in ring_and_matrices(2, 1), j in 1u64..12, k in 1u64..12) {
        let m = &ms[0];
        prop_assert_eq!(m.pow(j + k).unwrap(), m.pow(j).unwrap().mul(&m.pow(k).unwrap()).unwrap());
    }

    #[test]
    fn text_round_trip((r, ms) in ring_and_matrices(3, 1)) {
        prop_assert_eq!(MatrixR::parse(&r, &ms[0].to_text()).unwrap(), ms[0].clone());
    }
}
