use std::collections::BTreeSet;

use proptest::prelude::*;
use waring::sets::{
    build_condition_set, evaluate_witness, is_member, is_member_source, iterated_p_power_expansion, pth_power_mod_p,
    verify_group_closure, witt_value_set, SetKind, Witness,
};
use waring::trace_power::closed_form;
use waring::{make_ring, quotient_by_integer, Budget, Elem, Error, Ring, DEFAULT_UNIVERSE};

fn ring(s: &str) -> Ring {
    make_ring(s).unwrap()
}

fn build(kind: SetKind, r: &Ring) -> waring::sets::ConditionSet {
    build_condition_set(kind, r, Budget::default()).unwrap()
}

/// Value set of `Σ c_i x_i^{e_i}` over all tuples, as a running sumset.
fn sumset(r: &Ring, terms: &[(i128, u64)]) -> BTreeSet<Elem> {
    let mut acc: BTreeSet<Elem> = [r.zero()].into();
    for &(c, e) in terms {
        let values: BTreeSet<Elem> = r.elements().map(|x| r.int_scale(r.pow(x, e), c)).collect();
        acc = acc.iter().flat_map(|a| values.iter().map(|v| r.add(*a, *v))).collect();
    }
    acc
}

fn oracle(kind: SetKind, r: &Ring) -> Option<BTreeSet<Elem>> {
    let (m, terms): (u64, Vec<(i128, u64)>) = match kind {
        SetKind::S10 => (10, vec![(1, 10), (-2, 5), (5, 2)]),
        SetKind::S12 => (12, vec![(1, 12), (2, 6), (-3, 4), (-4, 3), (6, 2)]),
        SetKind::S14 => (14, vec![(1, 14), (-2, 7), (7, 2)]),
        SetKind::S15 => (15, vec![(1, 15), (-3, 5), (5, 3)]),
        SetKind::Deg9Set => (9, vec![(1, 9), (3, 3)]),
        SetKind::Witt { p, s } => {
            let terms: Vec<(i128, u64)> = (0..=s).map(|i| ((p as i128).pow(i), p.pow(s - i))).collect();
            return Some(sumset(r, &terms));
        }
        _ => return None,
    };
    let q = quotient_by_integer(r, m).unwrap();
    Some(sumset(&q.target, &terms))
}

fn s12_prime_oracle(r: &Ring) -> BTreeSet<Elem> {
    let head = sumset(r, &[(1, 12), (2, 6), (3, 4), (8, 3)]);
    let bound = 2 * r.card() + 2;
    let joint: BTreeSet<Elem> = r
        .elements()
        .flat_map(|x| (1..=bound).map(move |m| (x, m)))
        .map(|(x, m)| r.sum([r.int_scale(r.pow(x, 2 * m + 1), 4), r.int_scale(r.mul(x, x), 6), r.int_scale(x, 12)]))
        .collect();
    head.iter().flat_map(|h| joint.iter().map(|j| r.add(*h, *j))).collect()
}

#[test]
fn s10_over_z10_is_everything() {
    let r = ring("Z/10");
    let set = build(SetKind::S10, &r);
    assert!(set.is_whole_ring());
    let w = is_member(&set, r.one()).unwrap();
    assert_eq!(evaluate_witness(SetKind::S10, set.ambient(), w).unwrap(), r.one());
    assert_eq!(verify_group_closure(&set), None);
}

#[test]
fn cubes_over_dual_numbers() {
    let r = ring("Z/3[e]/(e^2)");
    let set = build(SetKind::Witt { p: 3, s: 1 }, &r);
    assert_eq!(set.elements_in_order(), vec![r.from_int(0), r.from_int(1), r.from_int(2)]);
    assert!(is_member(&set, r.parse_elem("e").unwrap()).is_none());
}

#[test]
fn deg9_set_over_z9_is_everything() {
    let r = ring("Z/9");
    let set = build(SetKind::Deg9Set, &r);
    assert!(set.is_whole_ring());
    assert_eq!(oracle(SetKind::Deg9Set, &r).unwrap().len(), 9);
}

#[test]
fn zero_is_in_every_set() {
    let kinds = [
        SetKind::S10,
        SetKind::S12,
        SetKind::S12Bar,
        SetKind::S12Prime,
        SetKind::S12Star,
        SetKind::S14,
        SetKind::S15,
        SetKind::Deg9Set,
        SetKind::WittStar24,
        SetKind::WittBar24,
        SetKind::Witt { p: 2, s: 3 },
        SetKind::PthPowerModP(3),
    ];
    for s in ["Z/2", "Z/12", "Z/3[e]/(e^2)", "Z/2[x]/(x^2+x+1)"] {
        let r = ring(s);
        for kind in kinds {
            let set = build(kind, &r);
            let w = set.witness(set.ambient().zero()).unwrap_or_else(|| panic!("{kind} on {s}"));
            assert_eq!(evaluate_witness(kind, set.ambient(), w).unwrap(), set.ambient().zero());
        }
    }
}

#[test]
fn membership_examples() {
    let r = ring("Z/14");
    let set = build(SetKind::S14, &r);
    let w = is_member(&set, r.one()).unwrap();
    assert_eq!(evaluate_witness(SetKind::S14, &r, w).unwrap(), r.one());
    assert_eq!(w.values, vec![r.zero(), r.from_int(3), r.one()]);
    let plain = Witness { values: vec![r.one(), r.zero(), r.zero()], m: None, component: 0 };
    assert_eq!(evaluate_witness(SetKind::S14, &r, &plain).unwrap(), r.one());

    let z15 = ring("Z/15");
    let set = build(SetKind::S15, &z15);
    for t in z15.elements() {
        for d in z15.elements() {
            let v = closed_form(15, &z15.element(t), &z15.element(d)).unwrap().value;
            assert!(is_member_source(&set, v).is_some());
        }
    }
}

#[test]
fn closure_examples() {
    assert_eq!(verify_group_closure(&build(SetKind::S12, &ring("Z/12"))), None);
    assert_eq!(verify_group_closure(&build(SetKind::S15, &ring("Z/3[e]/(e^2)"))), None);
    let cubes = build(SetKind::PthPowerModP(3), &ring("Z/3[e]/(e^2)"));
    assert!(cubes.contains(cubes.ambient().one()));
}

#[test]
fn pth_power_examples() {
    let f4 = pth_power_mod_p(&ring("Z/2[x]/(x^2+x+1)"), 2).unwrap();
    assert!(f4.holds);
    let r = ring("Z/3[e]/(e^2)");
    let dual = pth_power_mod_p(&r, 3).unwrap();
    assert!(!dual.holds);
    assert_eq!(dual.counterexample, Some(r.parse_elem("e").unwrap()));
    assert!(pth_power_mod_p(&ring("Z/9"), 3).unwrap().holds);
    assert!(pth_power_mod_p(&ring("Z/9"), 4).is_err());
}

#[test]
fn iterated_expansion_examples() {
    let z27 = ring("Z/27");
    for a in z27.elements() {
        let e = iterated_p_power_expansion(&z27, a, 3, 9, 2).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.evaluate(&z27), a);
    }
    let zero = iterated_p_power_expansion(&z27, z27.zero(), 3, 9, 3).unwrap();
    assert!(zero.terms.iter().chain([&zero.remainder]).all(|x| *x == z27.zero()));

    let f4 = ring("Z/2[x]/(x^2+x+1)");
    for a in f4.elements() {
        let e = iterated_p_power_expansion(&f4, a, 2, 16, 3).unwrap();
        assert_eq!(e.evaluate(&f4), a);
    }

    let dual = ring("Z/3[e]/(e^2)");
    assert!(matches!(iterated_p_power_expansion(&dual, dual.one(), 3, 9, 1), Err(Error::Hypothesis(_))));
}

#[test]
fn sets_match_enumeration_oracle() {
    let kinds = [SetKind::S10, SetKind::S12, SetKind::S14, SetKind::S15, SetKind::Deg9Set, SetKind::Witt { p: 2, s: 2 }, SetKind::Witt { p: 3, s: 1 }];
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        for kind in kinds {
            let set = build(kind, &r);
            let got: BTreeSet<Elem> = set.elements().collect();
            assert_eq!(got, oracle(kind, &r).unwrap(), "{kind} on {s}");
        }
        let got: BTreeSet<Elem> = build(SetKind::S12Prime, &r).elements().collect();
        assert_eq!(got, s12_prime_oracle(&r), "s12prime on {s}");
    }
}

#[test]
fn witnesses_re_evaluate() {
    let kinds = [
        SetKind::S10,
        SetKind::S12,
        SetKind::S12Star,
        SetKind::S14,
        SetKind::S15,
        SetKind::Deg9Set,
        SetKind::WittStar24,
        SetKind::Witt { p: 3, s: 2 },
    ];
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        for kind in kinds {
            let set = build(kind, &r);
            for v in set.elements() {
                let w = set.witness(v).unwrap();
                assert_eq!(evaluate_witness(kind, set.ambient(), w).unwrap(), v, "{kind} on {s}");
            }
        }
    }
}

#[test]
fn trace_condition_sets_are_groups_on_every_ring() {
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        for kind in [SetKind::S10, SetKind::S12, SetKind::S14, SetKind::S15] {
            assert_eq!(verify_group_closure(&build(kind, &r)), None, "{kind} on {s}");
        }
    }
}

#[test]
fn closed_form_values_lie_in_their_sets() {
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        for (k, kind) in [(10u32, SetKind::S10), (12, SetKind::S12), (14, SetKind::S14), (15, SetKind::S15)] {
            let set = build(kind, &r);
            for t in r.elements() {
                for d in r.elements() {
                    let v = closed_form(k, &r.element(t), &r.element(d)).unwrap().value;
                    assert!(is_member_source(&set, v).is_some(), "k={k} on {s}");
                }
            }
        }
    }
}

#[test]
fn deg9_set_contains_projected_witt_set() {
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        let deg9 = build(SetKind::Deg9Set, &r);
        for v in witt_value_set(&r, 3, 2, Budget::default()).unwrap() {
            assert!(is_member_source(&deg9, v).is_some(), "{s}");
        }
    }
}

#[test]
fn witt_nesting_on_every_ring() {
    for s in DEFAULT_UNIVERSE {
        let r = ring(s);
        for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1)] {
            let outer = witt_value_set(&r, p, k, Budget::default()).unwrap();
            let inner = witt_value_set(&r, p, k + 1, Budget::default()).unwrap();
            assert!(inner.is_subset(&outer), "{s} p={p} s={k}");
        }
    }
}

#[test]
fn budget_is_enforced() {
    assert!(build_condition_set(SetKind::S12Bar, &ring("Z/16"), Budget::new(100)).is_err());
}

proptest! {
    #[test]
    fn sums_of_members_stay_in_s_k(idx in 0usize..DEFAULT_UNIVERSE.len(), kind in prop::sample::select(vec![SetKind::S10, SetKind::S12, SetKind::S14, SetKind::S15]), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let r = ring(DEFAULT_UNIVERSE[idx]);
        let set = build(kind, &r);
        let elems = set.elements_in_order();
        let (x, y) = (elems[a.index(elems.len())], elems[b.index(elems.len())]);
        let amb = set.ambient();
        prop_assert!(set.contains(amb.add(x, y)));
        prop_assert!(set.contains(amb.neg(x)));
    }

    #[test]
    fn kind_names_round_trip(p in prop::sample::select(vec![2u64, 3, 5, 7]), s in 1u32..5) {
        let kind = SetKind::Witt { p, s };
        prop_assert_eq!(kind.to_string().parse::<SetKind>().unwrap(), kind);
        prop_assert_eq!(SetKind::PthPowerModP(p).to_string().parse::<SetKind>().unwrap(), SetKind::PthPowerModP(p));
    }
}
