//! JSON documents for systems and certificates.
//!
//! Coefficients are written as exact fraction strings, one for the real and
//! one for the imaginary part: `"a"` or `"a/b"` with `b ≥ 2` and the fraction
//! reduced. Terms are emitted in natural order.

use serde::{Deserialize, Serialize};

use super::FormatError;
use crate::engine::ansatz::capped_basis;
use crate::engine::{make_ansatz, AnsatzKind, AnsatzSpec, Certificate, StrategyTag, Unknown};
use crate::monomial::{monomials_up_to_degree, Monomial};
use crate::poly::{PolySystem, Polynomial, Term};
use crate::scalar::{format_canonical_fraction, parse_canonical_fraction, GaussianRational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    n: usize,
    polys: Vec<PolyDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyDoc {
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    re: String,
    #[serde(default = "zero_string")]
    im: String,
    e: Vec<u32>,
}

fn zero_string() -> String {
    "0".into()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    n: usize,
    g: Vec<PolyDoc>,
    ansatz: AnsatzDoc,
    strategy: String,
    zeroed: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    escalation: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnsatzDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    caps: Option<Vec<u32>>,
}

fn poly_doc(p: &Polynomial) -> PolyDoc {
    PolyDoc {
        terms: p
            .terms()
            .iter()
            .map(|t| TermDoc {
                re: format_canonical_fraction(t.coeff.re()),
                im: format_canonical_fraction(t.coeff.im()),
                e: t.mono.exponents().to_vec(),
            })
            .collect(),
    }
}

fn read_poly(n: usize, index: usize, doc: PolyDoc) -> Result<Polynomial, FormatError> {
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (t, term) in doc.terms.into_iter().enumerate() {
        let at = |msg: String| FormatError::Term { poly: index + 1, term: t + 1, msg };
        if term.e.len() != n {
            return Err(at(format!("exponent list has length {}, expected {n}", term.e.len())));
        }
        let re = parse_canonical_fraction(&term.re).map_err(|e| at(format!("re {:?}: {e}", term.re)))?;
        let im = parse_canonical_fraction(&term.im).map_err(|e| at(format!("im {:?}: {e}", term.im)))?;
        let coeff = GaussianRational::new(re, im);
        if coeff.is_zero() {
            return Err(at("zero coefficient".into()));
        }
        let mono = Monomial::new(term.e);
        if terms.iter().any(|prev: &Term| prev.mono == mono) {
            return Err(at(format!("duplicate monomial {mono}")));
        }
        terms.push(Term::new(coeff, mono));
    }
    Polynomial::from_distinct_terms(n, terms).map_err(|e| FormatError::Document(format!("poly {}: {e}", index + 1)))
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn emit_system(sys: &PolySystem) -> String {
    to_json(&SystemDoc { n: sys.nvars(), polys: sys.polys().iter().map(poly_doc).collect() })
}

/// Reads a system document. Terms may appear in any order; the result is canonical.
pub fn parse_system(text: &str) -> Result<PolySystem, FormatError> {
    let doc: SystemDoc = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    if doc.polys.is_empty() {
        return Err(FormatError::Document("a system needs at least one polynomial".into()));
    }
    let n = doc.n;
    let polys = doc.polys.into_iter().enumerate().map(|(i, p)| read_poly(n, i, p)).collect::<Result<Vec<_>, _>>()?;
    PolySystem::new(n, polys).map_err(|e| FormatError::Document(e.to_string()))
}

fn ansatz_doc(a: &AnsatzSpec) -> AnsatzDoc {
    let (kind, caps) = match &a.kind {
        AnsatzKind::PaperRank => ("paper-rank", None),
        AnsatzKind::TotalDegree(_) => ("total-degree", None),
        AnsatzKind::PerVariable(c) => ("per-variable", Some(c.clone())),
        AnsatzKind::Brownawell => ("brownawell", None),
    };
    AnsatzDoc { kind: kind.into(), degree: a.degree, caps }
}

pub fn emit_certificate(cert: &Certificate) -> String {
    let n = cert.g.first().map_or(0, Polynomial::nvars);
    to_json(&CertificateDoc {
        n,
        g: cert.g.iter().map(poly_doc).collect(),
        ansatz: ansatz_doc(&cert.ansatz),
        strategy: cert.strategy.as_str().into(),
        zeroed: cert.zeroed_params.iter().map(Unknown::to_string).collect(),
        escalation: cert.escalation.clone(),
    })
}

/// Parses an unknown name such as `g2[0,1]`.
pub fn parse_unknown(name: &str, n: usize) -> Result<Unknown, String> {
    let bad = || format!("bad unknown name {name:?}");
    let rest = name.strip_prefix('g').ok_or_else(bad)?;
    let (idx, exps) = rest.split_once('[').ok_or_else(bad)?;
    let exps = exps.strip_suffix(']').ok_or_else(bad)?;
    let poly: usize = idx.parse().map_err(|_| bad())?;
    if poly == 0 || idx.starts_with('0') {
        return Err(bad());
    }
    let exps: Vec<u32> = if exps.is_empty() {
        Vec::new()
    } else {
        exps.split(',').map(|e| e.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if exps.len() != n {
        return Err(format!("unknown {name:?} has {} exponents, expected {n}", exps.len()));
    }
    Ok(Unknown { poly: poly - 1, mono: Monomial::new(exps) })
}

/// Reads a certificate for `sys`; the ansatz bases are rebuilt from the
/// recorded kind.
pub fn parse_certificate(text: &str, sys: &PolySystem) -> Result<Certificate, FormatError> {
    let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let n = sys.nvars();
    if doc.n != n {
        return Err(FormatError::Document(format!("certificate has n = {}, system has n = {n}", doc.n)));
    }
    if doc.g.len() != sys.len() {
        return Err(FormatError::Document(format!(
            "certificate has {} polynomials, system has {}",
            doc.g.len(),
            sys.len()
        )));
    }
    let g = doc.g.into_iter().enumerate().map(|(i, p)| read_poly(n, i, p)).collect::<Result<Vec<_>, _>>()?;

    let strategy = match doc.strategy.as_str() {
        "macaulay" => StrategyTag::Macaulay,
        "levelwise" => StrategyTag::Levelwise,
        "dense-oracle" => StrategyTag::DenseOracle,
        other => return Err(FormatError::Document(format!("unknown strategy {other:?}"))),
    };

    let a = doc.ansatz;
    let need_degree = || a.degree.ok_or_else(|| FormatError::Document(format!("ansatz {:?} needs a degree", a.kind)));
    let ansatz = match a.kind.as_str() {
        "paper-rank" => make_ansatz(sys, &AnsatzKind::PaperRank).map_err(|e| FormatError::Document(e.to_string()))?,
        "total-degree" => {
            let d = need_degree()?;
            AnsatzSpec {
                kind: AnsatzKind::TotalDegree(d),
                degree: Some(d),
                bases: vec![monomials_up_to_degree(n, d); sys.len()],
            }
        }
        "brownawell" => {
            let d = need_degree()?;
            AnsatzSpec {
                kind: AnsatzKind::Brownawell,
                degree: Some(d),
                bases: vec![monomials_up_to_degree(n, d); sys.len()],
            }
        }
        "per-variable" => {
            let caps =
                a.caps.clone().ok_or_else(|| FormatError::Document("ansatz \"per-variable\" needs caps".into()))?;
            if caps.len() != n {
                return Err(FormatError::Document(format!("ansatz has {} caps, expected {n}", caps.len())));
            }
            AnsatzSpec {
                bases: vec![capped_basis(&caps); sys.len()],
                kind: AnsatzKind::PerVariable(caps),
                degree: None,
            }
        }
        other => return Err(FormatError::Document(format!("unknown ansatz kind {other:?}"))),
    };

    let zeroed_params =
        doc.zeroed.iter().map(|s| parse_unknown(s, n)).collect::<Result<Vec<_>, _>>().map_err(FormatError::Document)?;
    Ok(Certificate { g, ansatz, strategy, zeroed_params, escalation: doc.escalation })
}
