//! Sum-of-squares certificates for scalar polynomials.
//!
//! Certificates come from a chain of providers, each of which verifies its own
//! output before returning it. When every provider declines, the pipeline
//! reports why instead of guessing: a nonnegative polynomial with no
//! certificate found here may still be a sum of squares of rational functions.

mod bounds;
mod gram;
mod providers;
mod store;

pub use gram::{sos_gram_attempt, sos_gram_with_strategy, GramStrategy};
pub use providers::{
    sos_constant, sos_denominator_lift, sos_monomial_squares, sos_perfect_square,
};
pub use store::{parse_store, CertStore, StoreRecord};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exactarith::BigRat;
use crate::multipoly::{PolyError, Polynomial, RationalFunction};

/// Which provider produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provider {
    Zero,
    Constant,
    PerfectSquare,
    MonomialSquares,
    UserStore,
    DenominatorLift,
    Gram,
}

impl Provider {
    pub fn tag(self) -> &'static str {
        match self {
            Provider::Zero => "zero",
            Provider::Constant => "constant",
            Provider::PerfectSquare => "perfect-square",
            Provider::MonomialSquares => "monomial-squares",
            Provider::UserStore => "user-store",
            Provider::DenominatorLift => "denominator-lift",
            Provider::Gram => "gram",
        }
    }
}

impl fmt::Display for Provider {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Provider {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Provider::Zero,
            Provider::Constant,
            Provider::PerfectSquare,
            Provider::MonomialSquares,
            Provider::UserStore,
            Provider::DenominatorLift,
            Provider::Gram,
        ]
        .into_iter()
        .find(|p| p.tag() == s)
        .ok_or_else(|| format!("unknown provider tag `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarSosError {
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("negative constant {0}")]
    Negative(BigRat),
    #[error("certificate does not verify: {0}")]
    VerificationFailed(String),
    #[error("multiplier is zero")]
    ZeroMultiplier,
    #[error("no Gram certificate found: {0}")]
    NotFound(String),
    #[error("no provider certified {target}: {}", format_reasons(.reasons))]
    Unavailable {
        target: Polynomial,
        reasons: Vec<(Provider, String)>,
    },
    #[error("store line {line}: {message}")]
    Store { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn format_reasons(reasons: &[(Provider, String)]) -> String {
    reasons
        .iter()
        .map(|(p, r)| format!("{p}: {r}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// `target = sum_k squares[k]^2`, checked when constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSOSCert {
    target: RationalFunction,
    squares: Vec<RationalFunction>,
    provider: Provider,
    multiplier: Option<Polynomial>,
}

impl ScalarSOSCert {
    /// Verifies before returning; a certificate that does not check out is an error.
    pub fn new(
        target: RationalFunction,
        squares: Vec<RationalFunction>,
        provider: Provider,
    ) -> Result<Self, ScalarSosError> {
        let cert = ScalarSOSCert {
            target,
            squares,
            provider,
            multiplier: None,
        };
        if !verify_scalar_cert(&cert) {
            return Err(ScalarSosError::VerificationFailed(format!(
                "{} squares from {provider} do not sum to the target",
                cert.squares.len()
            )));
        }
        Ok(cert)
    }

    /// Builds without checking; pair with [`verify_scalar_cert`].
    pub fn unverified(target: RationalFunction, squares: Vec<RationalFunction>, provider: Provider) -> Self {
        ScalarSOSCert {
            target,
            squares,
            provider,
            multiplier: None,
        }
    }

    pub fn target(&self) -> &RationalFunction {
        &self.target
    }

    pub fn squares(&self) -> &[RationalFunction] {
        &self.squares
    }

    pub fn provider(&self) -> Provider {
        self.provider
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// The polynomial a denominator-lift certificate divided out, if any.
    pub fn multiplier(&self) -> Option<&Polynomial> {
        self.multiplier.as_ref()
    }

    pub fn with_multiplier(mut self, multiplier: Option<Polynomial>) -> Self {
        self.multiplier = multiplier;
        self
    }

    /// Same squares, relabelled.
    pub fn with_provider(mut self, provider: Provider) -> Self {
        self.provider = provider;
        self
    }
}

/// Exact check that the squares sum to the target. An empty list certifies only 0.
pub fn verify_scalar_cert(cert: &ScalarSOSCert) -> bool {
    if cert.squares.iter().any(|g| g.nvars() != cert.target.nvars()) {
        return false;
    }
    let sum = sum_of_squares(&cert.squares, cert.target.nvars());
    sum == cert.target
}

pub(crate) fn sum_of_squares(squares: &[RationalFunction], nvars: usize) -> RationalFunction {
    squares
        .iter()
        .fold(RationalFunction::zero(nvars), |acc, g| &acc + &(g * g))
}

/// Tries, in order: zero, constant, perfect square, monomial squares, the
/// user store (plain records and denominator-lift records), and a Gram
/// attempt. The first verified certificate wins.
pub fn scalar_sos_pipeline(p: &Polynomial, store: &CertStore) -> Result<ScalarSOSCert, ScalarSosError> {
    let mut reasons = Vec::new();
    let nvars = p.nvars();

    if p.is_zero() {
        return ScalarSOSCert::new(RationalFunction::zero(nvars), Vec::new(), Provider::Zero);
    }
    reasons.push((Provider::Zero, "nonzero".to_string()));

    match p.constant_value() {
        Some(c) => match sos_constant(&c, nvars) {
            Ok(cert) => return Ok(cert),
            Err(e) => reasons.push((Provider::Constant, e.to_string())),
        },
        None => reasons.push((Provider::Constant, "not constant".to_string())),
    }

    let attempts: [(Provider, fn(&Polynomial) -> Result<ScalarSOSCert, ScalarSosError>); 2] = [
        (Provider::PerfectSquare, sos_perfect_square),
        (Provider::MonomialSquares, sos_monomial_squares),
    ];
    for (provider, attempt) in attempts {
        match attempt(p) {
            Ok(cert) => return Ok(cert),
            Err(e) => reasons.push((provider, e.to_string())),
        }
    }

    match store.lookup(p) {
        None => reasons.push((Provider::UserStore, "no matching record".to_string())),
        Some(record) => match store_certificate(p, record) {
            Ok(cert) => return Ok(cert),
            Err(e) => reasons.push((Provider::UserStore, e.to_string())),
        },
    }

    match sos_gram_attempt(p) {
        Ok(cert) => return Ok(cert),
        Err(e) => reasons.push((Provider::Gram, e.to_string())),
    }

    Err(ScalarSosError::Unavailable {
        target: p.clone(),
        reasons,
    })
}

fn store_certificate(p: &Polynomial, record: &StoreRecord) -> Result<ScalarSOSCert, ScalarSosError> {
    let squares: Vec<RationalFunction> = record
        .squares
        .iter()
        .cloned()
        .map(RationalFunction::from_poly)
        .collect();
    match &record.multiplier {
        None => ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::UserStore),
        Some(m) => {
            let product = RationalFunction::from_poly(m * p);
            let cert_of_product = ScalarSOSCert::new(product, squares, Provider::UserStore)?;
            let cert_of_multiplier = scalar_sos_pipeline(m, &CertStore::default())?;
            sos_denominator_lift(p, m, &cert_of_product, &cert_of_multiplier)
        }
    }
}
