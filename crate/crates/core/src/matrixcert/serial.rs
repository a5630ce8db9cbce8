//! JSON certificate files.
//!
//! Every expression is stored as text in the polynomial grammar, so a file can
//! be read by eye and re-parsed exactly. Matrix entries and scalar squares are
//! `{"num": ..., "den": ...}` pairs; scalar certificate targets are implied by
//! the minimal-polynomial coefficients.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{count_law, MatrixSOSCert, Provenance};
use crate::multipoly::{parse_poly, print_poly, PolyError, Polynomial, RationalFunction, VarSet};
use crate::polymatrix::{MinPolyForm, MinPolyRoute, SymbolicMatrix};
use crate::scalarsos::{Provider, ScalarSOSCert};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertFormatError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: {source}")]
    Expression { context: String, source: PolyError },
    #[error("{0}")]
    Shape(String),
}

#[derive(Serialize, Deserialize)]
struct Entry {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct MinPolyJson {
    d: usize,
    coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    route: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    provider: String,
    squares: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    multiplier: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    version: u32,
    vars: Vec<String>,
    dim: usize,
    minpoly: MinPolyJson,
    scalar_certs: BTreeMap<usize, ScalarJson>,
    squares: Vec<Vec<Vec<Entry>>>,
    square_count: usize,
}

fn entry(f: &RationalFunction, vars: &VarSet) -> Entry {
    Entry {
        num: print_poly(f.num(), vars),
        den: print_poly(f.den(), vars),
    }
}

fn route_tag(route: MinPolyRoute) -> &'static str {
    match route {
        MinPolyRoute::SquarefreePart => "squarefree-part",
        MinPolyRoute::Krylov => "krylov",
    }
}

pub fn certificate_to_json(cert: &MatrixSOSCert) -> String {
    let vars = &cert.vars;
    let n = cert.dim;
    let json = CertJson {
        version: FORMAT_VERSION,
        vars: vars.names().to_vec(),
        dim: n,
        minpoly: MinPolyJson {
            d: cert.minpoly.degree(),
            coefficients: cert.minpoly.coefficients().iter().map(|a| print_poly(a, vars)).collect(),
            route: Some(route_tag(cert.minpoly.route()).to_string()),
        },
        scalar_certs: cert
            .scalar_certs
            .iter()
            .map(|(i, c)| {
                let s = ScalarJson {
                    provider: c.provider().tag().to_string(),
                    squares: c.squares().iter().map(|g| entry(g, vars)).collect(),
                    multiplier: c.multiplier().map(|m| print_poly(m, vars)),
                };
                (*i, s)
            })
            .collect(),
        squares: cert
            .squares
            .iter()
            .map(|m| {
                (0..n)
                    .map(|i| (0..n).map(|j| entry(m.get(i, j), vars)).collect())
                    .collect()
            })
            .collect(),
        square_count: cert.square_count,
    };
    serde_json::to_string_pretty(&json).expect("plain data serializes")
}

pub fn certificate_from_json(text: &str) -> Result<MatrixSOSCert, CertFormatError> {
    let json: CertJson = serde_json::from_str(text)?;
    if json.version != FORMAT_VERSION {
        return Err(CertFormatError::Shape(format!(
            "unsupported certificate version {}",
            json.version
        )));
    }
    let vars = VarSet::new(json.vars.iter().cloned()).map_err(|source| CertFormatError::Expression {
        context: "vars".into(),
        source,
    })?;
    let poly = |text: &str, context: &dyn Fn() -> String| -> Result<Polynomial, CertFormatError> {
        parse_poly(text, &vars).map_err(|source| CertFormatError::Expression {
            context: context(),
            source,
        })
    };
    let rf = |e: &Entry, context: &dyn Fn() -> String| -> Result<RationalFunction, CertFormatError> {
        let num = poly(&e.num, context)?;
        let den = poly(&e.den, context)?;
        RationalFunction::new(num, den).map_err(|source| CertFormatError::Expression {
            context: context(),
            source,
        })
    };

    let coefficients = json
        .minpoly
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| poly(c, &|| format!("minpoly coefficient a{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coefficients.len() != json.minpoly.d + 1 {
        return Err(CertFormatError::Shape(format!(
            "minpoly has degree {} but {} coefficients",
            json.minpoly.d,
            coefficients.len()
        )));
    }
    let route = match json.minpoly.route.as_deref() {
        None | Some("squarefree-part") => MinPolyRoute::SquarefreePart,
        Some("krylov") => MinPolyRoute::Krylov,
        Some(other) => return Err(CertFormatError::Shape(format!("unknown minpoly route `{other}`"))),
    };
    let minpoly = MinPolyForm::from_coefficients(coefficients, route)
        .map_err(|e| CertFormatError::Shape(e.to_string()))?;

    let mut scalar_certs = BTreeMap::new();
    for (i, s) in &json.scalar_certs {
        if *i > minpoly.degree() {
            return Err(CertFormatError::Shape(format!("scalar certificate for a{i} beyond degree")));
        }
        let provider: Provider = s.provider.parse().map_err(CertFormatError::Shape)?;
        let squares = s
            .squares
            .iter()
            .enumerate()
            .map(|(k, e)| rf(e, &|| format!("scalar certificate a{i}, square {k}")))
            .collect::<Result<Vec<_>, _>>()?;
        let multiplier = s
            .multiplier
            .as_deref()
            .map(|m| poly(m, &|| format!("scalar certificate a{i}, multiplier")))
            .transpose()?;
        let target = RationalFunction::from_poly(minpoly.coeff(*i));
        scalar_certs.insert(
            *i,
            ScalarSOSCert::unverified(target, squares, provider).with_multiplier(multiplier),
        );
    }

    let n = json.dim;
    let mut squares = Vec::with_capacity(json.squares.len());
    for (k, rows) in json.squares.iter().enumerate() {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(CertFormatError::Shape(format!("square {k} is not {n}x{n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                entries.push(rf(e, &|| format!("square {k}, entry ({}, {})", i + 1, j + 1))?);
            }
        }
        squares.push(
            SymbolicMatrix::new(n, vars.len(), entries).map_err(|e| CertFormatError::Shape(e.to_string()))?,
        );
    }
    if squares.len() != json.square_count {
        return Err(CertFormatError::Shape(format!(
            "square_count is {} but {} squares are listed",
            json.square_count,
            squares.len()
        )));
    }

    Ok(MatrixSOSCert {
        dim: n,
        provenance: Provenance {
            providers: scalar_certs.iter().map(|(i, c)| (*i, c.provider())).collect(),
            timings: Vec::new(),
        },
        square_count: json.square_count,
        vars,
        squares,
        minpoly,
        scalar_certs,
    })
}

impl MatrixSOSCert {
    /// True when `square_count` follows the product formula over the scalar certificates.
    pub fn count_law_holds(&self) -> bool {
        self.square_count == count_law(&self.scalar_certs) && self.square_count == self.squares.len()
    }
}
