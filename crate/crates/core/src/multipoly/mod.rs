//! Sparse multivariate polynomials over the rationals, the field of rational
//! functions built on them, and univariate polynomials with rational-function
//! coefficients.
//!
//! A [`Polynomial`] only knows how many variables it ranges over; names live in
//! a [`VarSet`] that the parser and printer consume. Terms are kept in a
//! `BTreeMap` under graded-lexicographic order, so iteration (and therefore
//! printing, hashing and serialization) is canonical.

mod parse;
mod poly;
mod ratfunc;
mod univar;

pub use parse::{parse_poly, print_poly};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use univar::UnivarPoly;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactarith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("point has {got} coordinates but the polynomial ring has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Ordered, duplicate-free variable names. Cloning is cheap.
#[derive(Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (k, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::InvalidVarSet(format!("bad identifier `{name}`")));
            }
            if seen.insert(name.as_str(), k).is_some() {
                return Err(PolyError::InvalidVarSet(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VarSet { names: names.into() })
    }

    /// `x1, ..., xn`.
    pub fn numbered(n: usize) -> Self {
        VarSet {
            names: (1..=n).map(|k| format!("x{k}")).collect::<Vec<_>>().into(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}
