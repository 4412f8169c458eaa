//! Canonical JSON files.
//!
//! Parsing is lenient about term order and non-reduced rationals; emitting
//! is canonical (sorted terms, rationals in lowest terms, two-space pretty
//! printing, trailing newline), so `emit(parse(x)) == x` for canonical `x`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{validate_gram, DualVector, EvenLattice};
use crate::lift::{OrthogonalExpansion, PrincipalPart, PrincipalTerm};
use crate::rational::{self, Rational};
use crate::series::{FormClass, JacobiSeries, QSeries, Term, VectorValuedForm};

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::SchemaViolation {
            path: if path.is_empty() { "$".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::SchemaViolation {
        path: path.into(),
        message: message.into(),
    }
}

fn rat(path: &str, text: &str) -> Result<Rational> {
    rational::parse(text).map_err(|_| schema(path, format!("`{text}` is not a rational p/q")))
}

fn rat_vec(path: &str, texts: &[String]) -> Result<Vec<Rational>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| rat(&format!("{path}[{i}]"), t))
        .collect()
}

fn integer(path: &str, text: &str) -> Result<BigInt> {
    text.trim()
        .parse()
        .map_err(|_| schema(path, format!("`{text}` is not an integer")))
}

fn fmt_vec(values: &[Rational]) -> Vec<String> {
    values.iter().map(rational::format).collect()
}

fn lattice_from(gram: Vec<Vec<i64>>) -> Result<EvenLattice> {
    validate_gram(gram)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub gram: Vec<Vec<i64>>,
}

/// Only the `gram` field is read, so any file carrying one is accepted.
#[derive(Debug, Deserialize)]
struct GramOnly {
    gram: Vec<Vec<i64>>,
}

pub fn parse_lattice(text: &str) -> Result<EvenLattice> {
    let file: GramOnly = from_json(text)?;
    lattice_from(file.gram)
}

pub fn emit_lattice(lattice: &EvenLattice) -> String {
    to_canonical_json(&LatticeFile {
        gram: lattice.gram().to_vec(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesTermFile {
    pub n: String,
    pub l: Vec<String>,
    pub c: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFile {
    pub gram: Vec<Vec<i64>>,
    pub weight: String,
    pub q_den: i64,
    pub prec: String,
    pub terms: Vec<SeriesTermFile>,
}

/// Reads a series; the form class is inferred (weak Jacobi when the weight
/// and every q-exponent are integral and every `l` lies in `K'`).
pub fn parse_series(text: &str) -> Result<JacobiSeries> {
    let file: SeriesFile = from_json(text)?;
    let lattice = lattice_from(file.gram)?;
    let weight = rat("weight", &file.weight)?;
    let prec = rat("prec", &file.prec)?;
    if file.q_den <= 0 {
        return Err(schema("q_den", "must be a positive integer"));
    }
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(file.terms.len());
    let mut weak = weight.is_integer();
    for (i, t) in file.terms.iter().enumerate() {
        let path = format!("terms[{i}]");
        let n = rat(&format!("{path}.n"), &t.n)?;
        let l = rat_vec(&format!("{path}.l"), &t.l)?;
        let c = integer(&format!("{path}.c"), &t.c)?;
        if l.len() != lattice.rank() {
            return Err(schema(
                format!("{path}.l"),
                format!("expected {} coordinates", lattice.rank()),
            ));
        }
        if !(&n * rational::int(file.q_den)).is_integer() {
            return Err(schema(
                format!("{path}.n"),
                format!("not in (1/{})Z", file.q_den),
            ));
        }
        if n >= prec {
            return Err(schema(format!("{path}.n"), "at or above prec"));
        }
        if !seen.insert((n.clone(), l.clone())) {
            return Err(schema(path, "duplicate term"));
        }
        weak &= n.is_integer() && lattice.is_in_dual(&l);
        terms.push(Term { n, l, c });
    }
    let class = if weak {
        FormClass::WeakJacobi
    } else {
        FormClass::Raw
    };
    JacobiSeries::from_terms(lattice, weight, class, file.q_den, prec, terms)
}

pub fn emit_series(series: &JacobiSeries) -> String {
    let file = SeriesFile {
        gram: series.lattice().gram().to_vec(),
        weight: rational::format(series.weight()),
        q_den: series.q_den(),
        prec: rational::format(series.prec()),
        terms: series
            .terms()
            .map(|t| SeriesTermFile {
                n: rational::format(&t.n),
                l: fmt_vec(&t.l),
                c: t.c.to_string(),
            })
            .collect(),
    };
    to_canonical_json(&file)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipalTermFile {
    pub gamma: Vec<String>,
    pub exp: String,
    pub c: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrincipalPartFile {
    pub gram: Vec<Vec<i64>>,
    pub constant_term: i64,
    pub terms: Vec<PrincipalTermFile>,
    /// Claimed weight of the lift, checked against `constant_term / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

pub fn parse_principal_part(text: &str) -> Result<PrincipalPart> {
    let file: PrincipalPartFile = from_json(text)?;
    let lattice = lattice_from(file.gram)?;
    let claimed_weight = file
        .weight
        .as_deref()
        .map(|w| rat("weight", w))
        .transpose()?;
    let mut terms = Vec::with_capacity(file.terms.len());
    for (i, t) in file.terms.iter().enumerate() {
        let path = format!("terms[{i}]");
        let gamma = rat_vec(&format!("{path}.gamma"), &t.gamma)?;
        if gamma.len() != lattice.rank() {
            return Err(schema(
                format!("{path}.gamma"),
                format!("expected {} coordinates", lattice.rank()),
            ));
        }
        terms.push(PrincipalTerm {
            exp: rat(&format!("{path}.exp"), &t.exp)?,
            gamma,
            c: BigInt::from(t.c),
        });
    }
    let mut pp = PrincipalPart {
        lattice,
        constant_term: BigInt::from(file.constant_term),
        terms,
        claimed_weight,
    };
    pp.canonicalize();
    Ok(pp)
}

pub fn emit_principal_part(pp: &PrincipalPart) -> String {
    let mut terms = pp.terms.clone();
    terms.sort();
    let small = |c: &BigInt| i64::try_from(c).expect("principal-part coefficient fits i64");
    let file = PrincipalPartFile {
        gram: pp.lattice.gram().to_vec(),
        constant_term: small(&pp.constant_term),
        terms: terms
            .iter()
            .map(|t| PrincipalTermFile {
                gamma: fmt_vec(&t.gamma),
                exp: rational::format(&t.exp),
                c: small(&t.c),
            })
            .collect(),
        weight: pp.claimed_weight.as_ref().map(rational::format),
    };
    to_canonical_json(&file)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentTermFile {
    pub exp: String,
    pub c: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub gamma: Vec<String>,
    pub prec: String,
    pub terms: Vec<ComponentTermFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFormFile {
    pub gram: Vec<Vec<i64>>,
    pub weight: String,
    pub components: Vec<ComponentFile>,
}

pub fn emit_vector_form(form: &VectorValuedForm) -> String {
    let file = VectorFormFile {
        gram: form.lattice.gram().to_vec(),
        weight: rational::format(&form.weight),
        components: form
            .components
            .iter()
            .map(|(gamma, f)| ComponentFile {
                gamma: fmt_vec(gamma.coords()),
                prec: rational::format(&f.prec),
                terms: f
                    .terms
                    .iter()
                    .map(|(e, c)| ComponentTermFile {
                        exp: rational::format(e),
                        c: c.to_string(),
                    })
                    .collect(),
            })
            .collect(),
    };
    to_canonical_json(&file)
}

pub fn parse_vector_form(text: &str) -> Result<VectorValuedForm> {
    let file: VectorFormFile = from_json(text)?;
    let lattice = lattice_from(file.gram)?;
    let weight = rat("weight", &file.weight)?;
    let group = lattice.discriminant_group();
    let mut components: BTreeMap<DualVector, QSeries> = group
        .representatives()
        .iter()
        .map(|g| (g.clone(), QSeries::zero(Rational::from_integer(0.into()))))
        .collect();
    let mut seen = BTreeSet::new();
    for (i, comp) in file.components.iter().enumerate() {
        let path = format!("components[{i}]");
        let coords = rat_vec(&format!("{path}.gamma"), &comp.gamma)?;
        let gamma = DualVector::new(&lattice, coords)
            .map_err(|e| schema(format!("{path}.gamma"), e.to_string()))?;
        let gamma = gamma.reduced();
        if !seen.insert(gamma.clone()) {
            return Err(schema(path, "duplicate component"));
        }
        let mut series = QSeries::zero(rat(&format!("{path}.prec"), &comp.prec)?);
        for (j, t) in comp.terms.iter().enumerate() {
            let tp = format!("{path}.terms[{j}]");
            let exp = rat(&format!("{tp}.exp"), &t.exp)?;
            let c = integer(&format!("{tp}.c"), &t.c)?;
            if series.terms.insert(exp, c).is_some() {
                return Err(schema(tp, "duplicate exponent"));
            }
        }
        components.insert(gamma, series);
    }
    if seen.len() != group.order() {
        return Err(schema(
            "components",
            format!("expected {} components", group.order()),
        ));
    }
    Ok(VectorValuedForm {
        lattice,
        weight,
        components: components.into_iter().collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct WeylFile {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: String,
    pub w0: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MonomialFile {
    pub n: i64,
    pub l: Vec<String>,
    pub m: i64,
    pub c: String,
}

#[derive(Debug, Serialize)]
pub struct ExpansionFile {
    pub gram: Vec<Vec<i64>>,
    pub weight: String,
    pub holomorphic: &'static str,
    pub weyl: WeylFile,
    pub total_prec: String,
    pub monomials: Vec<MonomialFile>,
}

pub fn weyl_file(weyl: &crate::lift::WeylData) -> WeylFile {
    WeylFile {
        a: rational::format(&weyl.a),
        b: fmt_vec(&weyl.b),
        c: rational::format(&weyl.c),
        w0: fmt_vec(&weyl.chamber_vector),
    }
}

pub fn emit_expansion(expansion: &OrthogonalExpansion) -> String {
    let file = ExpansionFile {
        gram: expansion.lattice.gram().to_vec(),
        weight: rational::format(&expansion.weight),
        holomorphic: "unknown",
        weyl: weyl_file(&expansion.weyl),
        total_prec: rational::format(&expansion.total_prec),
        monomials: expansion
            .coeffs
            .iter()
            .map(|(k, c)| MonomialFile {
                n: k.n,
                l: fmt_vec(&k.l),
                m: k.m,
                c: c.to_string(),
            })
            .collect(),
    };
    to_canonical_json(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::series::{phi04, theta_decompose, theta_sum};

    #[test]
    fn lattice_files() {
        let k = parse_lattice(r#"{"gram": [[8]]}"#).unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(parse_lattice(&emit_lattice(&k)).unwrap(), k);
        assert!(matches!(
            parse_lattice(r#"{"gram": [[1]]}"#),
            Err(Error::NotEven { .. })
        ));
        match parse_lattice(r#"{"gram": [[8, "x"]]}"#) {
            Err(Error::SchemaViolation { path, .. }) => assert_eq!(path, "gram[0][1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn series_round_trip() {
        for series in [phi04(&int(4)).unwrap(), theta_sum(&int(3)).unwrap()] {
            let text = emit_series(&series);
            let back = parse_series(&text).unwrap();
            assert_eq!(back.form_class(), series.form_class());
            assert!(back.agrees_with(&series));
            assert_eq!(emit_series(&back), text);
        }
    }

    #[test]
    fn series_parse_is_lenient_emit_is_canonical() {
        let text = r#"{"gram": [[8]], "weight": "0", "q_den": 1, "prec": "2",
            "terms": [{"n": "1", "l": ["2/16"], "c": "5"}, {"n": "0", "l": ["0"], "c": "1"}]}"#;
        let series = parse_series(text).unwrap();
        let emitted = emit_series(&series);
        let first = emitted.find("\"n\": \"0\"").unwrap();
        let second = emitted.find("\"n\": \"1\"").unwrap();
        assert!(first < second);
        assert!(emitted.contains("\"1/8\""));
        assert_eq!(
            series.coefficient(&int(1), &[frac(1, 8)]),
            Some(BigInt::from(5))
        );
    }

    #[test]
    fn series_schema_errors() {
        let bad = r#"{"gram": [[8]], "weight": "0", "q_den": 1, "prec": "2",
            "terms": [{"n": "1/2", "l": ["0"], "c": "5"}]}"#;
        match parse_series(bad) {
            Err(Error::SchemaViolation { path, .. }) => assert_eq!(path, "terms[0].n"),
            other => panic!("{other:?}"),
        }
        let dup = r#"{"gram": [[8]], "weight": "0", "q_den": 1, "prec": "2",
            "terms": [{"n": "1", "l": ["0"], "c": "5"}, {"n": "1", "l": ["0"], "c": "5"}]}"#;
        assert!(matches!(
            parse_series(dup),
            Err(Error::SchemaViolation { .. })
        ));
        let missing = r#"{"gram": [[8]], "weight": "0", "prec": "2", "terms": []}"#;
        assert!(matches!(
            parse_series(missing),
            Err(Error::SchemaViolation { .. })
        ));
        let coeff = r#"{"gram": [[8]], "weight": "0", "q_den": 1, "prec": "2",
            "terms": [{"n": "1", "l": ["0"], "c": "1.5"}]}"#;
        match parse_series(coeff) {
            Err(Error::SchemaViolation { path, .. }) => assert_eq!(path, "terms[0].c"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vector_form_round_trip() {
        let form = theta_decompose(&phi04(&int(3)).unwrap()).unwrap();
        let text = emit_vector_form(&form);
        let back = parse_vector_form(&text).unwrap();
        assert_eq!(back, form);
        assert_eq!(emit_vector_form(&back), text);
    }
}
