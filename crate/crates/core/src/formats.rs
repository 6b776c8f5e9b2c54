//! JSON input and output formats.
//!
//! - class: `{"factors": [{"poly": "u^2-3*u+1", "mult": 1}], "trusted": false}`
//! - base set: `{"classes": {"rho1": <class>, ...}}`
//! - complex: `{"ranks": [1, 2, 1], "boundaries": [[["u-1", "1"]], ...]}`
//! - C-complex: `{"components": 2, "generators": 2, "linking": {"00": [[..]], ...},
//!   "linking_number": 1}` with entries as integers or `"p/q"` strings
//! - group table: `{"table": [[0, 1], [1, 0]], "g": 1}`
//!
//! Any document may carry `"variables": ["u", ...]` naming the ring
//! generators.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::alexander::{assemble_pairing, default_variable_names, CComplexPairing, LinkingData};
use crate::chain_torsion::BasedChainComplex;
use crate::covering_links::{FiniteGroupSpec, LinkingMultiset};
use crate::error::{Error, Result};
use crate::group_ring::{parse_poly, parse_ratfun, Rational};
use crate::satellite::BaseTorsionSet;
use crate::torsion_quotient::{make_class, TorsionClass};

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

/// Prefixes a parse error with where in the document it happened.
fn locate(e: Error, at: &str) -> Error {
    match e {
        Error::Syntax { position, message } => Error::Syntax { position, message: format!("{at}: {message}") },
        other => other,
    }
}

#[derive(Deserialize)]
struct FactorDoc {
    poly: String,
    mult: i64,
}

#[derive(Deserialize)]
struct ClassDoc {
    factors: Vec<FactorDoc>,
    #[serde(default)]
    trusted: bool,
    variables: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct BaseDoc {
    classes: BTreeMap<String, ClassDoc>,
    variables: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct ComplexDoc {
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<Value>>>,
    variables: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct CComplexDoc {
    components: usize,
    generators: usize,
    linking: BTreeMap<String, Vec<Vec<Value>>>,
    linking_number: Option<i64>,
    variables: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct GroupDoc {
    table: Vec<Vec<usize>>,
    g: usize,
}

fn class_from_doc(doc: &ClassDoc, vars: &[String]) -> Result<TorsionClass> {
    let items = doc
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| Ok((parse_poly(&f.poly, vars).map_err(|e| locate(e, &format!("factor {i}")))?, f.mult)))
        .collect::<Result<Vec<_>>>()?;
    make_class(&items, doc.trusted)
}

/// Variables from the command line win over those in the document.
fn pick(cli: Option<&[String]>, doc: Option<Vec<String>>, default: Vec<String>) -> Vec<String> {
    cli.map(|v| v.to_vec()).or(doc).unwrap_or(default)
}

pub fn parse_class(text: &str, vars: Option<&[String]>) -> Result<(TorsionClass, Vec<String>)> {
    let doc: ClassDoc = from_json(text)?;
    let vars = pick(vars, doc.variables.clone(), vec!["u".into()]);
    Ok((class_from_doc(&doc, &vars)?, vars))
}

pub fn parse_base_set(text: &str, vars: Option<&[String]>) -> Result<(BaseTorsionSet, Vec<String>)> {
    let doc: BaseDoc = from_json(text)?;
    let vars = pick(vars, doc.variables, vec!["u".into()]);
    let classes =
        doc.classes.iter().map(|(label, c)| Ok((label.clone(), class_from_doc(c, &vars)?))).collect::<Result<_>>()?;
    Ok((BaseTorsionSet::new(classes)?, vars))
}

fn value_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        other => Err(Error::Input(format!("expected an integer or a string, got {other}"))),
    }
}

fn parse_rational(v: &Value) -> Result<Rational> {
    let text = value_text(v)?;
    let (num, den) = text.split_once('/').unwrap_or((text.as_str(), "1"));
    let parse = |s: &str| {
        s.trim().parse::<num_bigint::BigInt>().map_err(|_| Error::Input(format!("`{text}` is not a rational number")))
    };
    let (num, den) = (parse(num)?, parse(den)?);
    if den == 0.into() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn parse_complex(text: &str, vars: Option<&[String]>) -> Result<(BasedChainComplex, Vec<String>)> {
    let doc: ComplexDoc = from_json(text)?;
    let vars = pick(vars, doc.variables, vec!["u".into()]);
    if doc.boundaries.len() + 1 != doc.ranks.len() {
        return Err(Error::Input(format!(
            "{} ranks need {} boundary matrices, got {}",
            doc.ranks.len(),
            doc.ranks.len().saturating_sub(1),
            doc.boundaries.len()
        )));
    }
    let mut boundaries = Vec::new();
    for (k, d) in doc.boundaries.iter().enumerate() {
        let m = d
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        parse_ratfun(&value_text(v)?, &vars)
                            .map_err(|e| locate(e, &format!("d{} entry ({i}, {j})", k + 1)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(m);
    }
    Ok((BasedChainComplex::new(vars.len(), doc.ranks, boundaries), vars))
}

/// The pairing and the linking number used for the Torres check (default 1).
pub fn parse_ccomplex(text: &str, vars: Option<&[String]>) -> Result<(CComplexPairing, i64)> {
    let doc: CComplexDoc = from_json(text)?;
    let vars = pick(vars, doc.variables, default_variable_names(doc.components));
    let mut linking = LinkingData::new();
    for (key, a) in &doc.linking {
        if a.len() != doc.generators || a.iter().any(|r| r.len() != doc.generators) {
            return Err(Error::Shape {
                degree: 0,
                message: format!("linking matrix `{key}` must be {0}x{0}", doc.generators),
            });
        }
        let m = a.iter().map(|r| r.iter().map(parse_rational).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        linking.insert(key.clone(), m);
    }
    let pairing = assemble_pairing(doc.components, &linking, vars)?;
    Ok((pairing, doc.linking_number.unwrap_or(1)))
}

pub fn parse_group(text: &str) -> Result<FiniteGroupSpec> {
    let doc: GroupDoc = from_json(text)?;
    FiniteGroupSpec::from_table(doc.table, doc.g)
}

pub fn class_to_json(class: &TorsionClass, vars: &[String]) -> Value {
    let factors: Vec<Value> =
        class.factors().map(|(p, m)| json!({"poly": p.to_string_with(vars), "mult": m})).collect();
    json!({ "factors": factors })
}

pub fn multiset_to_json(s: &LinkingMultiset) -> Value {
    let counts: serde_json::Map<String, Value> = s.counts().iter().map(|(k, c)| (k.to_string(), json!(c))).collect();
    json!({ "multiset": counts, "components": s.components(), "pairs": s.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::{parse_poly, rat};

    #[test]
    fn class_round_trip() {
        let text = r#"{"factors": [{"poly": "-6*(u^4+1)+11*u^2", "mult": 1}, {"poly": "u-2", "mult": -2}]}"#;
        let (c, vars) = parse_class(text, None).unwrap();
        assert_eq!(vars, vec!["u"]);
        let out = class_to_json(&c, &vars).to_string();
        let (again, _) = parse_class(&out, None).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn class_rejects_reducible_unless_trusted() {
        assert!(parse_class(r#"{"factors": [{"poly": "u^2-1", "mult": 1}]}"#, None).is_err());
        assert!(parse_class(r#"{"factors": [{"poly": "u^2-1", "mult": 1}], "trusted": true}"#, None).is_ok());
    }

    #[test]
    fn bad_polynomial_reports_position() {
        let err = parse_class(r#"{"factors": [{"poly": "u +", "mult": 1}]}"#, None).unwrap_err();
        assert_eq!(err.position(), Some(3));
        assert!(matches!(parse_class("{", None), Err(Error::Input(_))));
    }

    #[test]
    fn base_set() {
        let (b, _) = parse_base_set(r#"{"classes": {"a": {"factors": []}, "b": {"factors": []}}}"#, None).unwrap();
        assert_eq!(b.classes().len(), 2);
        assert!(parse_base_set(r#"{"classes": {}}"#, None).is_err());
    }

    #[test]
    fn complex_document() {
        let text = r#"{"ranks": [1, 1], "boundaries": [[["(u^2-1)/(u-1)"]]], "variables": ["u"]}"#;
        let (c, _) = parse_complex(text, None).unwrap();
        let tau = c.torsion().unwrap();
        assert_eq!(tau.numerator(), &parse_poly("u+1", &["u"]).unwrap());
        assert!(parse_complex(r#"{"ranks": [1, 1], "boundaries": []}"#, None).is_err());
    }

    #[test]
    fn ccomplex_document() {
        let text = r#"{"components": 1, "generators": 2,
            "linking": {"0": [[-1, 1], [0, -1]], "1": [["-1", "0"], ["1", "-2/2"]]}}"#;
        let (p, lk) = parse_ccomplex(text, None).unwrap();
        assert_eq!(lk, 1);
        assert_eq!(p.entry(0, 0), &parse_poly("t-1", &["t"]).unwrap());
        assert!(parse_ccomplex(r#"{"components": 1, "generators": 2, "linking": {"0": [[1]]}}"#, None).is_err());
        assert_eq!(parse_rational(&json!("3/6")).unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational(&json!(4)).unwrap(), rat(4));
        assert!(parse_rational(&json!(1.5)).is_err());
    }

    #[test]
    fn group_document() {
        let g = parse_group(r#"{"table": [[0, 1], [1, 0]], "g": 1}"#).unwrap();
        assert_eq!(g.order(), 2);
        assert!(parse_group(r#"{"table": [[0, 1], [1, 0]], "g": 0}"#).is_err());
    }
}
