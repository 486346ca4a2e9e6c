//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::collections::BTreeMap;
use std::process::Command as Process;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::Parser;
use mdseries_cli::numeric::{q1_eval, to_decimal};
use mdseries_cli::report::{poly_of, Report};
use mdseries_cli::{run, Cli};
use mdseries_core::transforms::{
    b_from_jbar, jbar_from_b, BSequence, FiniteSizeRecursion, JSequence,
};
use mdseries_core::verification::{
    e_closed_form, e_series, sqrt_one_plus, triangular_witness, verify_catalan_gf,
    verify_catalan_part1, verify_catalan_part2, verify_master, verify_part3, Status,
};
use mdseries_core::{parse_poly, FixedSize, FormalVar, LFrac, Poly, Rational, Series, VarKind};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(
        elapsed <= limit,
        format!("took {elapsed:.1?}, limit {limit:?}"),
    )
}

fn tables() -> BTreeMap<String, Poly> {
    include_str!("../../core/tests/data/published_tables.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, expr) = l.split_once('=').unwrap();
            (name.trim().to_string(), parse_poly(expr.trim()).unwrap())
        })
        .collect()
}

fn cli(args: &[&str]) -> Result<(i32, Report), String> {
    let mut full = vec!["mdseries"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let parsed = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
    let out = run(&parsed);
    if out.stdout.is_empty() {
        return Err(format!("exit {}: {}", out.code, out.stderr.trim()));
    }
    let report = Report::from_json(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.code, report))
}

fn binary(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_mdseries"))
        .args(args)
        .output()
        .expect("run mdseries");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

/// A table command against the published entries `prefix2..prefix6`.
fn golden(args: &[&str], prefix: &str, term_counts: &[(usize, usize)]) -> Check {
    let start = Instant::now();
    let (code, report) = cli(args)?;
    let elapsed = start.elapsed();
    ensure(code == 0, format!("exit code {code}"))?;
    let expected = tables();
    for k in 2..=6 {
        let name = format!("{prefix}{k}");
        let entry = report
            .tables
            .iter()
            .find(|e| e.name == name)
            .ok_or(format!("{name} missing"))?;
        let got = poly_of(&entry.terms).map_err(|e| e.to_string())?;
        let residual = &got - &expected[&name];
        ensure(residual.is_zero(), format!("{name}: residual {residual}"))?;
        let text: Poly = parse_poly(&entry.text).map_err(|e| e.to_string())?;
        ensure(text == got, format!("{name}: text and JSON disagree"))?;
    }
    for &(k, n) in term_counts {
        let len = expected[&format!("{prefix}{k}")].len();
        ensure(
            len == n,
            format!("{prefix}{k} has {len} terms, expected {n}"),
        )?;
    }
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("k = 2..6 exact, {elapsed:.2?}"))
}

fn c1() -> Check {
    golden(&["transform", "jbar-from-b", "--order", "6"], "J", &[])
}

fn c2() -> Check {
    golden(&["transform", "b-from-jbar", "--order", "6"], "b", &[])
}

fn c3() -> Check {
    golden(&["coeffs", "first", "--order", "6"], "a", &[(6, 12)])
}

fn c4() -> Check {
    golden(
        &["coeffs", "second", "--order", "6"],
        "ap",
        &[(5, 6), (6, 8)],
    )
}

fn c5() -> Check {
    let b = BSequence::<Rational>::symbolic(8);
    let back =
        b_from_jbar(&jbar_from_b(&b).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(back == b, "f^-1(f(b)) != b")?;
    let j = JSequence::<Rational>::symbolic(8);
    let forth =
        jbar_from_b(&b_from_jbar(&j).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(forth == j, "f(f^-1(J)) != J")?;
    Ok("both compositions are the identity through order 8".into())
}

fn c6() -> Check {
    let start = Instant::now();
    let (code, report) = cli(&["verify", "master", "--order", "10"])?;
    let elapsed = start.elapsed();
    ensure(
        code == 0 && report.status.as_deref() == Some("verified"),
        format!("exit {code}, witness {:?}", report.witness),
    )?;
    within(elapsed, Duration::from_secs(600))?;
    Ok(format!(
        "a_k(J(b)) = a'_k(b) and a'_k(b(J)) = a_k(J), d-free, k <= 10, {elapsed:.2?}"
    ))
}

fn c7() -> Check {
    let v = verify_catalan_part1::<Rational>(20, None).map_err(|e| e.to_string())?;
    ensure(v.is_verified(), format!("{:?}", v.witness()))?;
    Ok("g(0) = 0 through order 20".into())
}

fn c8() -> Check {
    let v = verify_catalan_part2::<Rational>(20, None).map_err(|e| e.to_string())?;
    ensure(v.is_verified(), format!("{:?}", v.witness()))?;
    Ok("Q_2 = 0, z, P and 1 + F closed forms through order 20".into())
}

fn c9() -> Check {
    let (code, out) = binary(&["verify", "part3", "--order", "10"]);
    ensure(code == 0, format!("exit code {code}: {out}"))?;
    ensure(
        out.contains("finite-order evidence only"),
        "caveat line missing",
    )?;
    let v = verify_part3::<Rational>(10, None).map_err(|e| e.to_string())?;
    ensure(v.is_verified(), format!("{:?}", v.witness()))?;
    Ok("J_r(b~) = 0 for r <= 10 (finite-order evidence only)".into())
}

fn c10() -> Check {
    let lhs = e_series::<Rational>(20).map_err(|e| e.to_string())?;
    let rhs = e_closed_form::<Rational>(20).map_err(|e| e.to_string())?;
    ensure(lhs == rhs, "exponent sum differs from its closed form")?;
    // the same closed form assembled independently: 1/(1 + s) + ln((1 + s)/2) - 1/2
    let one = Series::one(FormalVar::X, 20);
    let s = sqrt_one_plus(&Rational::from_integer(4.into()), FormalVar::X, 20);
    let half = Rational::new(1.into(), 2.into());
    let one_plus_s = one.add(&s).map_err(|e| e.to_string())?;
    let ln_part = one_plus_s.scale(&half).sub(&one).unwrap().log1p().unwrap();
    let alt = one_plus_s
        .scale(&half)
        .inverse()
        .unwrap()
        .scale(&half)
        .add(&ln_part)
        .unwrap()
        .sub(&one.scale(&half))
        .unwrap();
    ensure(
        alt == lhs,
        "independent assembly of the closed form differs",
    )?;
    let gf = verify_catalan_gf::<Rational>(20).map_err(|e| e.to_string())?;
    ensure(gf.is_verified(), "Catalan generating function differs")?;
    Ok("exponent sum and Catalan generating function through x^20".into())
}

fn small_series() -> impl Strategy<Value = Series<Rational>> {
    proptest::collection::vec((-20i64..=20, 1i64..=6), 6).prop_map(|v| {
        Series::from_coeffs(
            FormalVar::X,
            6,
            std::iter::once(Rational::zero()).chain(
                v.into_iter()
                    .map(|(n, d)| Rational::new(n.into(), d.into())),
            ),
        )
    })
}

fn check_size<const L: i64>(bs: &[Poly]) -> Result<(), TestCaseError> {
    let mut symbolic = FiniteSizeRecursion::<LFrac>::new();
    let mut fixed = FiniteSizeRecursion::<FixedSize<Rational, L>>::new();
    for b in bs {
        let s = symbolic
            .push(b.clone())
            .unwrap()
            .eval(&Rational::from_integer(L.into()))
            .unwrap();
        let f = fixed.push(b.clone()).unwrap();
        prop_assert_eq!(&s, &f.value);
    }
    Ok(())
}

fn c11() -> Check {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config {
        cases: 32,
        failure_persistence: None,
        ..Config::default()
    });
    let one = || Series::<Rational>::one(FormalVar::X, 6);
    runner
        .run(&small_series(), |s| {
            prop_assert_eq!(
                s.exp().unwrap().sub(&one()).unwrap().log1p().unwrap(),
                s.clone()
            );
            prop_assert_eq!(s.log1p().unwrap().exp().unwrap(), one().add(&s).unwrap());
            let u = one().add(&s).unwrap();
            prop_assert_eq!(
                u.pow(3).unwrap().mul(&u.pow(-5).unwrap()).unwrap(),
                u.pow(-2).unwrap()
            );
            let cut = |x: &Series<Rational>| x.truncate(3).unwrap();
            prop_assert_eq!(cut(&s.exp().unwrap()), cut(&s).exp().unwrap());
            Ok(())
        })
        .map_err(|e| format!("series properties: {e}"))?;
    runner
        .run(
            &proptest::collection::vec((-9i64..=9, 1i64..=4), 3),
            |tail| {
                let mut bs = vec![Poly::d()];
                for (i, (n, d)) in tail.iter().enumerate() {
                    bs.push(
                        Poly::d_pow(i as i32 + 2).scale(&Rational::new((*n).into(), (*d).into())),
                    );
                }
                check_size::<5>(&bs)?;
                check_size::<7>(&bs)?;
                check_size::<11>(&bs)?;
                check_size::<13>(&bs)?;
                Ok(())
            },
        )
        .map_err(|e| format!("size differential: {e}"))?;

    let (code, report) = cli(&["verify", "triangularity", "--order", "6"])?;
    ensure(code == 0, format!("triangularity: {:?}", report.witness))?;
    let synthetic = vec![Poly::d(), Poly::b(3), Poly::b(3)];
    ensure(
        triangular_witness("synthetic", &synthetic, VarKind::B).map(|w| w.k) == Some(2),
        "synthetic non-triangular map not refuted at k = 2",
    )?;

    let bump = || Some((3, Rational::one()));
    let located = [
        ("master", verify_master::<Rational>(5, bump())),
        ("part 1", verify_catalan_part1(5, bump())),
        ("part 2", verify_catalan_part2(5, bump())),
        ("part 3", verify_part3(5, bump())),
    ];
    for (name, v) in located {
        let v = v.map_err(|e| e.to_string())?;
        ensure(
            v.status() == Status::Refuted && v.witness().map(|w| w.k) == Some(3),
            format!("{name}: perturbed input not refuted at k = 3"),
        )?;
    }
    let (code, _) = binary(&["verify", "master", "--order", "4", "--perturb", "2:1/5"]);
    ensure(
        code == 1,
        format!("perturbed master exits {code}, expected 1"),
    )?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "series, size differential, triangularity, negative controls, {elapsed:.2?}"
    ))
}

/// `ln x` to within `10^-digits` by `2 atanh((x-1)/(x+1))` in fixed point.
fn ln_oracle(x: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10).pow(digits + 10);
    let y = (x - Rational::one()) / (x + Rational::one());
    let y2 = &y * &y;
    let mut power = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    loop {
        let term = (&power * Rational::from_integer(scale.clone())
            / Rational::from_integer((2 * k + 1).into()))
        .to_integer();
        if term.is_zero() {
            break;
        }
        sum += term;
        power = &power * &y2;
        // keep the power itself short
        power = (power * Rational::from_integer(scale.clone())).round()
            / Rational::from_integer(scale.clone());
        k += 1;
    }
    Rational::new(sum * 2, scale)
}

fn c12() -> Check {
    let path = std::env::temp_dir().join(format!("mdseries-acceptance-{}.b", std::process::id()));
    std::fs::write(&path, "catalan\n").map_err(|e| e.to_string())?;
    let path_str = path.to_string_lossy().into_owned();
    let args = [
        "eval", "lambda", "--d", "3", "--p", "1/10", "--order", "10", "--b-file", &path_str,
    ];
    let (code, report) = cli(&args)?;
    let _ = std::fs::remove_file(&path);
    ensure(code == 0, format!("exit code {code}"))?;
    let l = report.lambda.ok_or("no lambda section")?;
    let zero = to_decimal(&Rational::zero(), 50);
    ensure(l.q2_first == zero && l.q2_second == zero, "Q_2 is not zero")?;

    let r = |s: &str| Rational::from_str(s).unwrap();
    let (d, p) = (r("3"), r("1/10"));
    let q = Rational::one() - &p;
    let oracle = (&p * ln_oracle(&(r("2") * &d), 60)
        - &p * ln_oracle(&p, 60)
        - r("2") * &q * ln_oracle(&q, 60)
        - &p)
        / r("2");
    let expected = to_decimal(&oracle, 50);
    ensure(
        l.q1 == expected,
        format!("q1 {} vs oracle {expected}", l.q1),
    )?;
    ensure(
        l.lambda_first == expected && l.lambda_second == expected,
        "lambda differs from Q_1",
    )?;
    ensure(
        l.q1.split('.').nth(1).map(str::len) == Some(50),
        "not 50 digits",
    )?;
    for d in ["1", "3", "7/2"] {
        ensure(
            q1_eval(&r(d), &Rational::zero(), 50).unwrap().is_zero(),
            "q1(d, 0) != 0",
        )?;
    }
    Ok(format!("lambda = Q_1 = {}", l.q1))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden tables, forward map", c1),
        ("golden tables, inverse map", c2),
        ("golden tables, kernel-side coefficients", c3),
        ("golden tables, Mayer-side coefficients", c4),
        ("round trips at order 8", c5),
        ("master identity at order 10", c6),
        ("Catalan part 1 at order 20", c7),
        ("Catalan part 2 at order 20", c8),
        ("Catalan part 3 at order 10", c9),
        ("closed forms at order 20", c10),
        ("property suites", c11),
        ("numeric consistency", c12),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:6.2}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:6.2}s] {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
