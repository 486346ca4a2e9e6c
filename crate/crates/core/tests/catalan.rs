use mdseries_core::expression_two::invert_mayer;
use mdseries_core::scalar::factorial;
use mdseries_core::verification::*;
use mdseries_core::{parse_poly, Poly, Rational};

fn unperturbed() -> Option<(usize, Rational)> {
    None
}

fn bump(k: usize) -> Option<(usize, Rational)> {
    Some((k, Rational::from_integer(1.into())))
}

#[test]
fn catalan_numbers_match_the_factorial_formula() {
    let data = catalan_b::<Rational>(20).unwrap();
    for n in 0..=20usize {
        let c = factorial::<Rational>(2 * n)
            / (factorial::<Rational>(n + 1) * factorial::<Rational>(n));
        assert_eq!(data.catalans()[n], c, "C_{n}");
    }
}

#[test]
fn catalan_sequence_matches_vanishing_kernel_tables() {
    let data = catalan_b::<Rational>(5).unwrap();
    // b_2 and b_5 of the inverse map with every J set to zero
    assert_eq!(
        data.btilde().get(2),
        &parse_poly::<Rational>("-2*d^2").unwrap()
    );
    assert_eq!(
        data.btilde().get(5),
        &parse_poly::<Rational>("16/5*d^5*42").unwrap()
    );
}

#[test]
fn generating_function_and_exponent_sum() {
    assert!(verify_catalan_gf::<Rational>(20).unwrap().is_verified());
    assert!(verify_e_closed_form::<Rational>(20).unwrap().is_verified());
}

#[test]
fn parts_one_and_two_hold_to_order_twenty() {
    for v in verify_catalan::<Rational>(20).unwrap() {
        assert!(v.is_verified(), "{} {:?}", v.claim(), v.witness());
    }
}

#[test]
fn closed_forms_of_the_intermediate_series() {
    let b = catalan_b::<Rational>(9).unwrap();
    let inv = invert_mayer(b.btilde(), 8).unwrap();
    assert_eq!(inv.f_factor().order(), 8);
    assert_eq!(
        inv.z_of_p().coeff(3).unwrap(),
        &parse_poly::<Rational>("3/2*d^-1").unwrap()
    );
    assert_eq!(
        inv.pressure().coeff(4).unwrap(),
        &parse_poly::<Rational>("1/4").unwrap()
    );
    assert_eq!(inv.f_factor().coeff(8).unwrap(), &Poly::integer(9));
}

#[test]
fn part3_holds_to_order_ten() {
    let v = verify_part3::<Rational>(10, unperturbed()).unwrap();
    assert!(v.is_verified(), "{:?}", v.witness());
    assert!(v.claim().is_conjecture());
}

#[test]
fn perturbed_inputs_are_refuted_at_the_right_order() {
    for k in [2, 3, 5] {
        let part1 = verify_catalan_part1::<Rational>(6, bump(k)).unwrap();
        assert_eq!(part1.status(), Status::Refuted);
        assert_eq!(part1.witness().unwrap().k, k);

        let part2 = verify_catalan_part2::<Rational>(6, bump(k)).unwrap();
        assert_eq!(part2.status(), Status::Refuted);
        assert_eq!(part2.witness().unwrap().k, k);

        let part3 = verify_part3::<Rational>(6, bump(k)).unwrap();
        assert_eq!(part3.status(), Status::Refuted);
        assert_eq!(part3.witness().unwrap().k, k);
    }
}
