//! Command dispatch: turns parsed arguments into a report and an exit code.

use std::fmt::Write as _;

use mdseries_core::expression_one::a_coeffs;
use mdseries_core::expression_two::a_prime_coeffs;
use mdseries_core::transforms::{b_from_jbar, jbar_from_b, JSequence};
use mdseries_core::verification::{
    triangularity_check, verify_catalan_gf, verify_catalan_part1, verify_catalan_part2,
    verify_e_closed_form, verify_master, verify_part3, Status, Verdict,
};
use mdseries_core::{Error, Poly, Rational, Result};
use num_traits::One;

use crate::args::{Cli, CoeffsKind, Command, EvalKind, Format, Options, TransformKind, VerifyKind};
use crate::input::{check_dimension, parse_perturbation, parse_rational, BInput};
use crate::numeric::{lambda_eval, to_decimal};
use crate::report::{Check, LambdaReport, Report, TableEntry, WitnessReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

pub const CAVEAT: &str = "finite-order evidence only; not a proof";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok((code, report)) => Outcome {
            code,
            stdout: render(&report, cli.options.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

struct Context {
    order: usize,
    d: Option<Rational>,
    b: BInput,
    perturb: Option<(usize, Rational)>,
}

impl Context {
    fn new(opts: &Options) -> Result<Self> {
        if opts.order < 2 {
            return Err(Error::Usage(format!(
                "--order must be at least 2, got {}",
                opts.order
            )));
        }
        let d = opts
            .d
            .as_deref()
            .map(|s| parse_rational("--d", s))
            .transpose()?;
        if let Some(d) = &d {
            check_dimension(d)?;
        }
        let b = match &opts.b_file {
            None => BInput::Symbolic,
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
                BInput::parse(&text, d.as_ref())?
            }
        };
        let perturb = opts
            .perturb
            .as_deref()
            .map(parse_perturbation)
            .transpose()?;
        Ok(Context {
            order: opts.order,
            d,
            b,
            perturb,
        })
    }

    fn no_perturbation(&self, what: &str) -> Result<()> {
        match self.perturb {
            Some(_) => Err(Error::Usage(format!(
                "--perturb is not supported by {what}"
            ))),
            None => Ok(()),
        }
    }

    fn no_b_file(&self, what: &str) -> Result<()> {
        match self.b {
            BInput::Symbolic => Ok(()),
            _ => Err(Error::Usage(format!("--b-file is not used by {what}"))),
        }
    }

    /// Substitutes `d` when one was given.
    fn finish(&self, p: &Poly) -> Result<Poly> {
        match &self.d {
            Some(d) => p.substitute_d(d),
            None => Ok(p.clone()),
        }
    }

    fn table(&self, report: &mut Report, prefix: &str, values: &[Poly]) -> Result<()> {
        for (i, v) in values.iter().enumerate().skip(1) {
            report.tables.push(TableEntry::new(
                format!("{prefix}{}", i + 1),
                &self.finish(v)?,
            )?);
        }
        Ok(())
    }
}

fn execute(cli: &Cli) -> Result<(i32, Report)> {
    let ctx = Context::new(&cli.options)?;
    let order = ctx.order;
    match cli.command {
        Command::Transform { which } => {
            ctx.no_perturbation("transform")?;
            let mut report;
            match which {
                TransformKind::JbarFromB => {
                    report = Report::new("transform jbar-from-b", order);
                    let j = jbar_from_b(&ctx.b.sequence(order)?)?;
                    ctx.table(&mut report, "J", j.values())?;
                }
                TransformKind::BFromJbar => {
                    ctx.no_b_file("transform b-from-jbar")?;
                    report = Report::new("transform b-from-jbar", order);
                    let b = b_from_jbar(&JSequence::<Rational>::symbolic(order))?;
                    ctx.table(&mut report, "b", b.values())?;
                }
            }
            Ok((EXIT_OK, report))
        }
        Command::Coeffs { which } => {
            ctx.no_perturbation("coeffs")?;
            let mut report;
            match which {
                CoeffsKind::First => {
                    report = Report::new("coeffs first", order);
                    let j = match ctx.b {
                        BInput::Symbolic => JSequence::symbolic(order),
                        _ => jbar_from_b(&ctx.b.sequence(order)?)?,
                    };
                    ctx.table(&mut report, "a", a_coeffs(&j, order)?.values())?;
                }
                CoeffsKind::Second => {
                    report = Report::new("coeffs second", order);
                    let a = a_prime_coeffs(&ctx.b.sequence(order)?, order)?;
                    ctx.table(&mut report, "ap", a.values())?;
                }
            }
            Ok((EXIT_OK, report))
        }
        Command::Verify { which } => {
            ctx.no_b_file("verify")?;
            let perturb = ctx.perturb.clone();
            let (name, verdicts) = match which {
                VerifyKind::Master => (
                    "verify master",
                    vec![("master", verify_master(order, perturb)?)],
                ),
                VerifyKind::Catalan => (
                    "verify catalan",
                    vec![
                        ("exponent sum", verify_e_closed_form(order)?),
                        ("generating function", verify_catalan_gf(order)?),
                        ("part 1", verify_catalan_part1(order, perturb.clone())?),
                        ("part 2", verify_catalan_part2(order, perturb)?),
                    ],
                ),
                VerifyKind::Part3 => (
                    "verify part3",
                    vec![("part 3", verify_part3(order, perturb)?)],
                ),
                VerifyKind::Triangularity => {
                    ctx.no_perturbation("verify triangularity")?;
                    (
                        "verify triangularity",
                        vec![("triangularity", triangularity_check(order)?)],
                    )
                }
            };
            verdict_report(name, order, &verdicts)
        }
        Command::Eval {
            which: EvalKind::Lambda,
        } => {
            ctx.no_perturbation("eval lambda")?;
            let d = ctx
                .d
                .clone()
                .ok_or_else(|| Error::Usage("eval lambda needs --d".into()))?;
            if d < Rational::one() {
                return Err(Error::Usage(format!("eval lambda needs d >= 1, got {d}")));
            }
            let p = cli
                .options
                .p
                .as_deref()
                .ok_or_else(|| Error::Usage("eval lambda needs --p".into()))
                .and_then(|s| parse_rational("--p", s))?;
            if let BInput::Symbolic = ctx.b {
                return Err(Error::Usage(
                    "eval lambda needs --b-file (a file of b_i values, or `catalan`)".into(),
                ));
            }
            let digits = cli.options.precision;
            let est = lambda_eval(&ctx.b.sequence(order)?, &d, &p, order, digits)?;
            let mut report = Report::new("eval lambda", order);
            report.lambda = Some(LambdaReport {
                d: d.to_string(),
                p: p.to_string(),
                precision: digits,
                q1: to_decimal(&est.q1, digits),
                q2_first: to_decimal(&est.q2_first, digits),
                q2_second: to_decimal(&est.q2_second, digits),
                lambda_first: to_decimal(&est.lambda_first(), digits),
                lambda_second: to_decimal(&est.lambda_second(), digits),
            });
            Ok((EXIT_OK, report))
        }
    }
}

/// The first non-verified verdict decides the headline, else the last one;
/// all are listed when there are several.
fn verdict_report(
    name: &str,
    order: usize,
    verdicts: &[(&str, Verdict<Rational>)],
) -> Result<(i32, Report)> {
    let mut report = Report::new(name, order);
    let (_, deciding) = verdicts
        .iter()
        .find(|(_, v)| !v.is_verified())
        .unwrap_or_else(|| verdicts.last().expect("at least one verdict"));
    report.claim = Some(deciding.claim().tag().to_string());
    report.status = Some(deciding.status().tag().to_string());
    report.witness = deciding.witness().map(WitnessReport::new).transpose()?;
    if verdicts.len() > 1 {
        report.checks = verdicts
            .iter()
            .map(|(label, v)| Check::new(label, v))
            .collect::<Result<_>>()?;
    }
    if deciding.is_verified() && verdicts.iter().any(|(_, v)| v.claim().is_conjecture()) {
        report.caveat = Some(CAVEAT.to_string());
    }
    let code = match deciding.status() {
        Status::Verified => EXIT_OK,
        Status::Refuted => EXIT_REFUTED,
        Status::Divergence => EXIT_FAILURE,
    };
    Ok((code, report))
}

fn latex_name(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (base, index) = name.split_at(split);
    let base = match base {
        "J" => "\\bar{J}",
        "ap" => "a'",
        other => other,
    };
    format!("{base}_{{{index}}}")
}

pub fn render(report: &Report, format: Format) -> String {
    if format == Format::Json {
        let mut s = report.to_json();
        s.push('\n');
        return s;
    }
    let latex = format == Format::Latex;
    let mut out = String::new();
    for entry in &report.tables {
        if latex {
            let poly = crate::report::poly_of(&entry.terms).expect("terms from a polynomial");
            let _ = writeln!(out, "{} = {}", latex_name(&entry.name), poly.to_latex());
        } else {
            let _ = writeln!(out, "{} = {}", entry.name, entry.text);
        }
    }
    if let Some(claim) = &report.claim {
        let _ = writeln!(out, "claim: {claim}");
        let _ = writeln!(out, "order: {}", report.order);
        let _ = writeln!(out, "status: {}", report.status.as_deref().unwrap_or("?"));
        for check in &report.checks {
            let _ = writeln!(
                out,
                "check {} ({}): {}",
                check.label, check.claim, check.status
            );
        }
        match &report.witness {
            Some(w) => {
                let _ = writeln!(out, "witness: k = {} ({})", w.k, w.detail);
                let residual = if latex {
                    crate::report::poly_of(&w.residual_terms)
                        .expect("terms from a polynomial")
                        .to_latex()
                } else {
                    w.residual.clone()
                };
                let _ = writeln!(out, "residual: {residual}");
            }
            None if report.status.as_deref() == Some("verified") && report.checks.is_empty() => {
                for k in 2..=report.order {
                    let _ = writeln!(out, "k = {k}: residual 0");
                }
            }
            None => {}
        }
        if let Some(c) = &report.caveat {
            let _ = writeln!(out, "caveat: {c}");
        }
    }
    if let Some(l) = &report.lambda {
        let _ = writeln!(out, "order: {}", report.order);
        for (k, v) in [
            ("d", &l.d),
            ("p", &l.p),
            ("q1", &l.q1),
            ("q2First", &l.q2_first),
            ("q2Second", &l.q2_second),
            ("lambdaFirst", &l.lambda_first),
            ("lambdaSecond", &l.lambda_second),
        ] {
            let _ = writeln!(out, "{k}: {v}");
        }
    }
    out
}
