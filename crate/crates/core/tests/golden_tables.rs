//! The published coefficient tables, reproduced exactly.

use std::collections::BTreeMap;

use mdseries_core::expression_one::a_coeffs;
use mdseries_core::expression_two::a_prime_coeffs;
use mdseries_core::transforms::{b_from_jbar, jbar_from_b, BSequence, JSequence};
use mdseries_core::{parse_poly, Poly, Rational};

fn tables() -> BTreeMap<String, Poly> {
    include_str!("data/published_tables.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, expr) = l.split_once('=').expect("name = expr");
            let poly = parse_poly(expr.trim()).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name.trim().to_string(), poly)
        })
        .collect()
}

fn expected(prefix: &str, k: usize) -> Poly {
    tables()
        .remove(&format!("{prefix}{k}"))
        .unwrap_or_else(|| panic!("no table entry {prefix}{k}"))
}

#[test]
fn kernels_from_mayer_coefficients() {
    let j = jbar_from_b(&BSequence::<Rational>::symbolic(6)).unwrap();
    for k in 2..=6 {
        assert_eq!(j.get(k), &expected("J", k), "J{k}");
    }
}

#[test]
fn mayer_coefficients_from_kernels() {
    let b = b_from_jbar(&JSequence::<Rational>::symbolic(6)).unwrap();
    for k in 2..=6 {
        assert_eq!(b.get(k), &expected("b", k), "b{k}");
    }
}

#[test]
fn kernel_side_coefficients() {
    let a = a_coeffs(&JSequence::<Rational>::symbolic(6), 6).unwrap();
    for k in 2..=6 {
        assert_eq!(a.get(k), &expected("a", k), "a{k}");
    }
    assert_eq!(a.get(6).len(), 12);
}

#[test]
fn mayer_side_coefficients() {
    let a = a_prime_coeffs(&BSequence::<Rational>::symbolic(6), 6).unwrap();
    for k in 2..=6 {
        assert_eq!(a.get(k), &expected("ap", k), "a'{k}");
    }
    assert_eq!(a.get(5).len(), 6);
    assert_eq!(a.get(6).len(), 8);
}

#[test]
fn factored_rendering_round_trips_the_tables() {
    for (name, poly) in tables() {
        let text = poly.render_factored();
        assert_eq!(
            parse_poly::<Rational>(&text).unwrap(),
            poly,
            "{name}: {text}"
        );
        assert_eq!(
            parse_poly::<Rational>(&poly.to_string()).unwrap(),
            poly,
            "{name}"
        );
    }
}
