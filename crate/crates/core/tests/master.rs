use std::collections::BTreeMap;

use mdseries_core::expression_one::a_coeffs;
use mdseries_core::expression_two::a_prime_coeffs;
use mdseries_core::transforms::{jbar_from_b, BSequence, JSequence};
use mdseries_core::verification::*;
use mdseries_core::{Poly, Rational, Var, VarKind};
use proptest::prelude::*;

#[test]
fn master_identity_through_order_eight() {
    for n in 2..=8 {
        let v = verify_master::<Rational>(n, None).unwrap();
        assert!(v.is_verified(), "order {n}: {:?}", v.witness());
    }
}

#[test]
fn perturbed_master_is_refuted_at_the_perturbed_order() {
    let delta = Rational::new(1.into(), 3.into());
    for k in 2..=5 {
        let v = verify_master(5, Some((k, delta.clone()))).unwrap();
        assert_eq!(v.status(), Status::Refuted);
        let w = v.witness().unwrap();
        assert_eq!(w.k, k);
        assert!(!w.residual.is_empty());
    }
}

#[test]
fn all_four_maps_are_triangular() {
    assert!(triangularity_check::<Rational>(7).unwrap().is_verified());
}

#[test]
fn triangularity_negative_control() {
    // a synthetic map whose second component reads b_4
    let outputs: Vec<Poly> = vec![Poly::d(), Poly::b(2) + Poly::b(4), Poly::b(3), Poly::b(4)];
    let w = triangular_witness("synthetic", &outputs, VarKind::B).unwrap();
    assert_eq!(w.k, 2);
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Substituting numbers into both sides of the identity agrees exactly.
    #[test]
    fn numeric_sides_agree(
        d in (1i64..=6).prop_map(|n| Rational::from_integer(n.into())),
        bs in proptest::collection::vec(small_rational(), 4),
    ) {
        let order = 5;
        let b = BSequence::<Rational>::symbolic(order);
        let j = jbar_from_b(&b).unwrap();
        let a = a_coeffs(&JSequence::<Rational>::symbolic(order), order).unwrap();
        let a_prime = a_prime_coeffs(&b, order).unwrap();

        let b_values: BTreeMap<Var, Rational> =
            (2..=order as u32).map(Var::b).zip(bs.iter().cloned()).collect();
        let j_values: BTreeMap<Var, Rational> = (2..=order)
            .map(|k| (Var::j(k as u32), j.get(k).eval(&d, &b_values).unwrap()))
            .collect();
        for k in 2..=order {
            let lhs = a.get(k).eval(&d, &j_values).unwrap();
            let rhs = a_prime.get(k).eval(&d, &b_values).unwrap();
            prop_assert_eq!(lhs, rhs, "k = {}", k);
        }
    }
}
