//! The report emitted by every command, and its JSON form.
//!
//! The schema is described in `docs/report-schema.md`; its id is
//! [`SCHEMA_ID`].

use std::collections::BTreeMap;

use mdseries_core::verification::{Verdict, Witness};
use mdseries_core::{Error, Monomial, Poly, Rational, Result, VarKind};
use serde::{Deserialize, Serialize};

pub const SCHEMA_ID: &str = "mdseries-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exps {
    pub d: i32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub b: BTreeMap<u32, u32>,
    #[serde(rename = "J", default, skip_serializing_if = "BTreeMap::is_empty")]
    pub j: BTreeMap<u32, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: String,
    pub exps: Exps,
}

pub fn terms_of(poly: &Poly) -> Result<Vec<Term>> {
    poly.terms()
        .map(|(m, c)| {
            let mut exps = Exps {
                d: m.d_exp(),
                b: BTreeMap::new(),
                j: BTreeMap::new(),
            };
            for (v, e) in m.vars() {
                match v.kind {
                    VarKind::B => exps.b.insert(v.index, e),
                    VarKind::J => exps.j.insert(v.index, e),
                    VarKind::Aux => {
                        return Err(Error::Consistency(format!(
                            "scratch symbol {v} leaked into output"
                        )))
                    }
                };
            }
            Ok(Term {
                coeff: c.to_string(),
                exps,
            })
        })
        .collect()
}

pub fn poly_of(terms: &[Term]) -> Result<Poly> {
    terms
        .iter()
        .map(|t| {
            let c: Rational = t.coeff.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad coefficient {:?}", t.coeff),
            })?;
            let vars = t
                .exps
                .b
                .iter()
                .map(|(&i, &e)| (mdseries_core::Var::b(i), e))
                .chain(
                    t.exps
                        .j
                        .iter()
                        .map(|(&i, &e)| (mdseries_core::Var::j(i), e)),
                );
            Ok(Poly::term(c, Monomial::new(t.exps.d, vars)))
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessReport {
    pub k: usize,
    pub detail: String,
    pub residual: String,
    pub residual_terms: Vec<Term>,
}

impl WitnessReport {
    pub fn new(w: &Witness<Rational>) -> Result<Self> {
        Ok(WitnessReport {
            k: w.k,
            detail: w.detail.clone(),
            residual: w.residual.to_string(),
            residual_terms: terms_of(&w.residual)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub claim: String,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(label: &str, v: &Verdict<Rational>) -> Result<Self> {
        Ok(Check {
            label: label.to_string(),
            claim: v.claim().tag().to_string(),
            status: v.status().tag().to_string(),
            witness: v.witness().map(WitnessReport::new).transpose()?,
            note: v.note().map(str::to_string),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub name: String,
    pub text: String,
    pub terms: Vec<Term>,
}

impl TableEntry {
    pub fn new(name: String, poly: &Poly) -> Result<Self> {
        Ok(TableEntry {
            name,
            text: poly.render_factored(),
            terms: terms_of(poly)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaReport {
    pub d: String,
    pub p: String,
    pub precision: usize,
    pub q1: String,
    pub q2_first: String,
    pub q2_second: String,
    pub lambda_first: String,
    pub lambda_second: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<TableEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<LambdaReport>,
}

impl Report {
    pub fn new(command: &str, order: usize) -> Self {
        Report {
            schema: SCHEMA_ID.to_string(),
            command: command.to_string(),
            order,
            claim: None,
            status: None,
            witness: None,
            checks: Vec::new(),
            caveat: None,
            tables: Vec::new(),
            lambda: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }
}
