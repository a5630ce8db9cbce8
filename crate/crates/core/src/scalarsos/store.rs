//! User-supplied certificates.
//!
//! ```text
//! # comments and blank lines are ignored
//! target: 1 + x1^4*x2^2 + x1^2*x2^4 - x1^2*x2^2
//! multiplier: x1^2 + x2^2
//! square: x2 - 1/2*x1^2*x2
//! square: 2 | x1*x2 - 1/2*x1*x2^3 - 1/2*x1^3*x2
//! monomials: 3/4*(x1^2*x2^4 + x1^4*x2^2)
//! ```
//!
//! Each `target:` line opens a record. `square: c | q` stands for `c q^2` and is
//! expanded into at most four plain squares when the store is loaded.
//! `monomials: e` takes a polynomial whose terms are even monomials with
//! positive coefficients and adds their monomial squares. With a
//! `multiplier: m` line the squares certify `m * target` instead of `target`.

use num_traits::One;

use super::providers::{constant_parts, sos_monomial_squares};
use super::ScalarSosError;
use crate::exactarith::{parse_rational, BigRat};
use crate::multipoly::{parse_poly, Polynomial, VarSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoreRecord {
    pub target: Polynomial,
    pub multiplier: Option<Polynomial>,
    pub squares: Vec<Polynomial>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertStore {
    records: Vec<StoreRecord>,
}

impl CertStore {
    pub fn new(records: Vec<StoreRecord>) -> Self {
        CertStore { records }
    }

    /// First record whose target equals `p` exactly.
    pub fn lookup(&self, p: &Polynomial) -> Option<&StoreRecord> {
        self.records.iter().find(|r| &r.target == p)
    }

    pub fn records(&self) -> &[StoreRecord] {
        &self.records
    }

    pub fn push(&mut self, record: StoreRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

pub fn parse_store(text: &str, vars: &VarSet) -> Result<CertStore, ScalarSosError> {
    let mut store = CertStore::default();
    let mut current: Option<StoreRecord> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ScalarSosError::Store { line, message };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| err(format!("expected `key: value`, got `{body}`")))?;
        let value = value.trim();
        let poly = |s: &str| parse_poly(s, vars).map_err(|e| err(e.to_string()));
        match key.trim() {
            "target" => {
                store.records.extend(current.take());
                current = Some(StoreRecord {
                    target: poly(value)?,
                    multiplier: None,
                    squares: Vec::new(),
                });
            }
            "multiplier" => {
                let rec = current.as_mut().ok_or_else(|| err("multiplier before any target".into()))?;
                if rec.multiplier.is_some() {
                    return Err(err("duplicate multiplier".into()));
                }
                rec.multiplier = Some(poly(value)?);
            }
            "square" => {
                let rec = current.as_mut().ok_or_else(|| err("square before any target".into()))?;
                let (weight, expr) = match value.split_once('|') {
                    Some((w, e)) => (
                        parse_rational(w.trim()).map_err(|e| err(e.to_string()))?,
                        e.trim(),
                    ),
                    None => (BigRat::one(), value),
                };
                let q = poly(expr)?;
                let parts = constant_parts(&weight).map_err(|e| err(e.to_string()))?;
                rec.squares.extend(parts.iter().map(|s| q.scale(s)));
            }
            "monomials" => {
                let rec = current.as_mut().ok_or_else(|| err("monomials before any target".into()))?;
                let cert = sos_monomial_squares(&poly(value)?).map_err(|e| err(e.to_string()))?;
                rec.squares
                    .extend(cert.squares().iter().map(|g| g.to_polynomial().expect("polynomial squares")));
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    store.records.extend(current);
    Ok(store)
}
