//! Matrix sum-of-squares certificates built from the minimal polynomial.
//!
//! With `p(t) = sum_i (-1)^(d-i) a_i t^i` the minimal polynomial of `A`, set
//! `b(t) = sum_{i odd} a_i t^(i-1)` and `r(t) = sum_{j even} a_j t^j`. Then
//! `b(t) t - r(t) = +-p(t)`, so `B A = R` for `B = b(A)`, `R = r(A)`. When every
//! `a_i` is a sum of squares and `B` is invertible,
//!
//! ```text
//! A = sum_{i odd, j even} a_i a_j (B^-1 A^((i-1+j)/2))^2
//! ```
//!
//! and folding the scalar squares in gives symmetric matrix squares
//! `s u q(A) A^e` where `q = b^-1 mod p`. Every square is a polynomial in `A`,
//! so they commute with `A` and with each other.

mod serial;

pub use serial::{certificate_from_json, certificate_to_json, CertFormatError};

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactarith::BigRat;
use crate::multipoly::{RationalFunction, UnivarPoly, VarSet};
use crate::polymatrix::{
    check_lemma_form, minimal_polynomial, psd_sample_check, LemmaViolation, MatrixError, MinPolyForm,
    PsdReport, SymbolicMatrix,
};
use crate::scalarsos::{
    scalar_sos_pipeline, sos_constant, verify_scalar_cert, CertStore, Provider, ScalarSOSCert, ScalarSosError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("input: {0}")]
    Input(#[from] MatrixError),
    #[error("psd-check: principal minor {} is {value} at {}", format_minor(.minor), format_point(.point))]
    NotPsd {
        point: Vec<BigRat>,
        minor: Vec<usize>,
        value: BigRat,
    },
    #[error("minimal-polynomial: the matrix is not diagonalizable")]
    NotDiagonalizable,
    #[error("lemma-check: {0}")]
    Lemma(#[from] LemmaViolation),
    #[error("scalar-sos: a_{index}: {source}")]
    ScalarSosUnavailable { index: usize, source: ScalarSosError },
    #[error("invert: b(t) and p(t) are not coprime")]
    NotCoprime,
    #[error("build: no scalar certificate for a_{0}")]
    MissingScalarCert(usize),
    #[error("verify: {0}")]
    VerificationFailed(String),
}

impl CertError {
    /// Pipeline stage that raised the error.
    pub fn stage(&self) -> &'static str {
        match self {
            CertError::Input(_) => "input",
            CertError::NotPsd { .. } => "psd-check",
            CertError::NotDiagonalizable => "minimal-polynomial",
            CertError::Lemma(_) => "lemma-check",
            CertError::ScalarSosUnavailable { .. } => "scalar-sos",
            CertError::NotCoprime => "invert",
            CertError::MissingScalarCert(_) => "build",
            CertError::VerificationFailed(_) => "verify",
        }
    }
}

fn format_minor(minor: &[usize]) -> String {
    let idx: Vec<String> = minor.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", idx.join(", "))
}

pub(crate) fn format_point(point: &[BigRat]) -> String {
    let vals: Vec<String> = point.iter().map(|v| v.to_string()).collect();
    format!("({})", vals.join(", "))
}

/// `b` and `r` with `b(t) t - r(t) = +-p(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenOddSplit {
    pub b: UnivarPoly,
    pub r: UnivarPoly,
}

pub fn split_even_odd(mp: &MinPolyForm) -> Result<EvenOddSplit, CertError> {
    let nvars = mp.nvars();
    if mp.coeff(1).is_zero() {
        let err = if mp.coeff(0).is_zero() {
            LemmaViolation::TSquaredDivides
        } else {
            LemmaViolation::ZeroLinearCoefficient
        };
        return Err(err.into());
    }
    let d = mp.degree();
    let mut b = vec![RationalFunction::zero(nvars); d];
    let mut r = vec![RationalFunction::zero(nvars); d + 1];
    for (i, a) in mp.coefficients().iter().enumerate() {
        let a = RationalFunction::from_poly(a.clone());
        if i % 2 == 1 {
            b[i - 1] = a;
        } else {
            r[i] = a;
        }
    }
    let split = EvenOddSplit {
        b: UnivarPoly::new(nvars, b),
        r: UnivarPoly::new(nvars, r),
    };
    let residue = split.b.mul(&UnivarPoly::t(nvars)).sub(&split.r);
    let p = mp.to_univar();
    if !residue.rem(&p).map_err(MatrixError::from)?.is_zero() {
        return Err(CertError::VerificationFailed("b(t) t - r(t) is not a multiple of p(t)".into()));
    }
    Ok(split)
}

/// `q` with `q b = 1 mod p` and `deg q < d`.
pub fn invert_b_mod_p(split: &EvenOddSplit, mp: &MinPolyForm) -> Result<UnivarPoly, CertError> {
    let p = mp.to_univar();
    let (g, u, _) = split.b.ext_euclid(&p).map_err(MatrixError::from)?;
    if g.degree() != Some(0) {
        return Err(CertError::NotCoprime);
    }
    let q = u.rem(&p).map_err(MatrixError::from)?;
    let check = q.mul(&split.b).rem(&p).map_err(MatrixError::from)?;
    if check != UnivarPoly::one(mp.nvars()) {
        return Err(CertError::VerificationFailed("q(t) b(t) is not 1 modulo p(t)".into()));
    }
    Ok(q)
}

/// Where a certificate came from. Timings are informational and not serialized.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub providers: BTreeMap<usize, Provider>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl Provenance {
    pub fn total_time(&self) -> Duration {
        self.timings.iter().map(|(_, t)| *t).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSOSCert {
    pub dim: usize,
    pub vars: VarSet,
    pub squares: Vec<SymbolicMatrix>,
    pub minpoly: MinPolyForm,
    pub scalar_certs: BTreeMap<usize, ScalarSOSCert>,
    pub square_count: usize,
    pub provenance: Provenance,
}

impl MatrixSOSCert {
    /// `(sum over odd i of c_i) * (sum over even j of c_j)`, `c_i` the scalar square counts.
    pub fn expected_count(&self) -> usize {
        count_law(&self.scalar_certs)
    }

    /// Provider tag for every certified coefficient, e.g. `a0=monomial-squares`.
    pub fn provider_summary(&self) -> String {
        let tags: Vec<String> = self
            .scalar_certs
            .iter()
            .map(|(i, c)| format!("a{i}={}", c.provider()))
            .collect();
        tags.join(" ")
    }
}

pub fn count_law(scalar_certs: &BTreeMap<usize, ScalarSOSCert>) -> usize {
    let (mut odd, mut even) = (0, 0);
    for (i, c) in scalar_certs {
        if i % 2 == 1 {
            odd += c.len();
        } else {
            even += c.len();
        }
    }
    odd * even
}

/// Emits `s u q(A) A^((i-1+j)/2)` for odd `i`, even `j` and every pair of
/// scalar squares, in ascending `(i, j, s, u)` order, and verifies the result.
pub fn build_squares(
    a: &SymbolicMatrix,
    vars: &VarSet,
    mp: &MinPolyForm,
    q: &UnivarPoly,
    scalar_certs: &BTreeMap<usize, ScalarSOSCert>,
) -> Result<MatrixSOSCert, CertError> {
    let d = mp.degree();
    let n = a.dim();
    for i in 0..=d {
        if !mp.coeff(i).is_zero() && !scalar_certs.contains_key(&i) {
            return Err(CertError::MissingScalarCert(i));
        }
    }
    let qa = a.eval_univar(q);
    let mut q_times_power = vec![qa];
    for _ in 1..d {
        let next = q_times_power.last().expect("nonempty").mul(a)?;
        q_times_power.push(next);
    }

    let mut terms = Vec::new();
    for (&i, ci) in scalar_certs.range(..).filter(|(i, _)| *i % 2 == 1) {
        for (&j, cj) in scalar_certs.iter().filter(|(j, _)| *j % 2 == 0) {
            let e = (i - 1 + j) / 2;
            for s in ci.squares() {
                for u in cj.squares() {
                    terms.push((e, s, u));
                }
            }
        }
    }
    let squares: Vec<SymbolicMatrix> = terms
        .par_iter()
        .map(|(e, s, u)| q_times_power[*e].scale(&(*s * *u)))
        .collect();

    let cert = MatrixSOSCert {
        dim: n,
        vars: vars.clone(),
        square_count: squares.len(),
        squares,
        minpoly: mp.clone(),
        scalar_certs: scalar_certs.clone(),
        provenance: Provenance {
            providers: scalar_certs.iter().map(|(i, c)| (*i, c.provider())).collect(),
            timings: Vec::new(),
        },
    };
    let report = verify_matrix_cert(a, &cert, VerifyOptions::default());
    if !report.passed() {
        return Err(CertError::VerificationFailed(report.to_string()));
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Check `M_k A = A M_k` for every square.
    pub commute_with_a: bool,
    /// Check `M_j M_k = M_k M_j` for every pair (quadratic in the square count).
    pub pairwise: bool,
    /// Re-check each scalar certificate against its minimal-polynomial coefficient.
    pub scalar_certs: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            commute_with_a: true,
            pairwise: false,
            scalar_certs: false,
        }
    }
}

impl VerifyOptions {
    pub fn full() -> Self {
        VerifyOptions {
            commute_with_a: true,
            pairwise: true,
            scalar_certs: true,
        }
    }
}

/// Structured outcome of [`verify_matrix_cert`]; empty lists mean the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub dimension_mismatch: Option<String>,
    /// `(square, row, col)` with `M[row][col] != M[col][row]`.
    pub asymmetric: Vec<(usize, usize, usize)>,
    /// First entry where the sum of squares differs from `A`.
    pub sum_mismatch: Option<(usize, usize)>,
    pub not_commuting_with_a: Vec<usize>,
    pub not_commuting_pairs: Vec<(usize, usize)>,
    pub bad_scalar_certs: Vec<usize>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.dimension_mismatch.is_none()
            && self.asymmetric.is_empty()
            && self.sum_mismatch.is_none()
            && self.not_commuting_with_a.is_empty()
            && self.not_commuting_pairs.is_empty()
            && self.bad_scalar_certs.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("certificate verified");
        }
        let mut parts = Vec::new();
        if let Some(m) = &self.dimension_mismatch {
            parts.push(format!("dimension mismatch: {m}"));
        }
        for (k, i, j) in &self.asymmetric {
            parts.push(format!("square {k} is not symmetric at ({}, {})", i + 1, j + 1));
        }
        if let Some((i, j)) = self.sum_mismatch {
            parts.push(format!("sum of squares differs from A at entry ({}, {})", i + 1, j + 1));
        }
        for k in &self.not_commuting_with_a {
            parts.push(format!("square {k} does not commute with A"));
        }
        for (j, k) in &self.not_commuting_pairs {
            parts.push(format!("squares {j} and {k} do not commute"));
        }
        for i in &self.bad_scalar_certs {
            parts.push(format!("scalar certificate for a_{i} does not verify"));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Checks symmetry of every square and `sum_k M_k^2 = A` exactly, plus the
/// optional checks in `options`.
pub fn verify_matrix_cert(a: &SymbolicMatrix, cert: &MatrixSOSCert, options: VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    let n = a.dim();
    if cert.dim != n || cert.vars.len() != a.nvars() {
        report.dimension_mismatch = Some(format!(
            "matrix is {n}x{n} in {} variables, certificate is {}x{} in {}",
            a.nvars(),
            cert.dim,
            cert.dim,
            cert.vars.len()
        ));
        return report;
    }
    if let Some(k) = cert
        .squares
        .iter()
        .position(|m| m.dim() != n || m.nvars() != a.nvars())
    {
        report.dimension_mismatch = Some(format!("square {k} has the wrong shape"));
        return report;
    }

    report.asymmetric = cert
        .squares
        .par_iter()
        .enumerate()
        .filter_map(|(k, m)| m.symmetry_defect().map(|(i, j)| (k, i, j)))
        .collect();

    let zero = || SymbolicMatrix::zero(n, a.nvars());
    let sum = cert
        .squares
        .par_iter()
        .fold(zero, |acc, m| acc.add(&m.mul(m).expect("checked shape")).expect("checked shape"))
        .reduce(zero, |x, y| x.add(&y).expect("checked shape"));
    report.sum_mismatch = sum.first_difference(a);

    if options.commute_with_a {
        report.not_commuting_with_a = cert
            .squares
            .par_iter()
            .enumerate()
            .filter(|(_, m)| m.mul(a).ok() != a.mul(m).ok())
            .map(|(k, _)| k)
            .collect();
    }
    if options.pairwise {
        let pairs: Vec<(usize, usize)> = (0..cert.squares.len())
            .flat_map(|j| (j + 1..cert.squares.len()).map(move |k| (j, k)))
            .collect();
        report.not_commuting_pairs = pairs
            .into_par_iter()
            .filter(|&(j, k)| {
                let (x, y) = (&cert.squares[j], &cert.squares[k]);
                x.mul(y).ok() != y.mul(x).ok()
            })
            .collect();
    }
    if options.scalar_certs {
        report.bad_scalar_certs = cert
            .scalar_certs
            .iter()
            .filter(|(i, c)| {
                c.target() != &RationalFunction::from_poly(cert.minpoly.coeff(**i)) || !verify_scalar_cert(c)
            })
            .map(|(i, _)| *i)
            .collect();
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { samples: 100, seed: 0 }
    }
}

/// End-to-end: PSD screening, minimal polynomial, coefficient checks, scalar
/// certificates, split, inversion, construction and verification.
pub fn certify(
    a: &SymbolicMatrix,
    vars: &VarSet,
    store: &CertStore,
    options: CertifyOptions,
) -> Result<MatrixSOSCert, CertError> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &'static str, timings: &mut Vec<(&'static str, Duration)>| {
        timings.push((stage, clock.elapsed()));
        clock = Instant::now();
    };

    a.require_symmetric()?;
    a.polynomial_entries()?;
    if vars.len() != a.nvars() {
        return Err(MatrixError::DimensionMismatch(format!(
            "{} variable names for a matrix in {} variables",
            vars.len(),
            a.nvars()
        ))
        .into());
    }

    if let PsdReport::Refuted { point, minor, value } = psd_sample_check(a, options.samples, options.seed)? {
        return Err(CertError::NotPsd { point, minor, value });
    }
    lap("psd-check", &mut timings);

    let mp = match minimal_polynomial(a) {
        Err(MatrixError::NotDiagonalizable) => return Err(CertError::NotDiagonalizable),
        other => other?,
    };
    lap("minimal-polynomial", &mut timings);

    check_lemma_form(&mp, options.samples, options.seed)?;
    lap("lemma-check", &mut timings);

    let d = mp.degree();
    let indices: Vec<usize> = (0..=d).filter(|&i| !mp.coeff(i).is_zero()).collect();
    let certs: Vec<(usize, Result<ScalarSOSCert, ScalarSosError>)> = indices
        .par_iter()
        .map(|&i| {
            let c = if i == d {
                sos_constant(&BigRat::from_integer(1.into()), a.nvars())
            } else {
                scalar_sos_pipeline(&mp.coeff(i), store)
            };
            (i, c)
        })
        .collect();
    let mut scalar_certs = BTreeMap::new();
    for (index, c) in certs {
        match c {
            Ok(c) => {
                scalar_certs.insert(index, c);
            }
            Err(source) => return Err(CertError::ScalarSosUnavailable { index, source }),
        }
    }
    lap("scalar-sos", &mut timings);

    let split = split_even_odd(&mp)?;
    let q = invert_b_mod_p(&split, &mp)?;
    lap("invert", &mut timings);

    let mut cert = build_squares(a, vars, &mp, &q, &scalar_certs)?;
    lap("build-and-verify", &mut timings);
    cert.provenance.timings = timings;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_poly;
    use crate::polymatrix::MinPolyRoute;

    fn example1() -> (VarSet, SymbolicMatrix) {
        let vars = VarSet::numbered(2);
        let a = SymbolicMatrix::parse_rows(
            &[&["1", "x1*x2"], &["x1*x2", "1 + x1^4*x2^2 + x1^2*x2^4"]],
            &vars,
        )
        .unwrap();
        (vars, a)
    }

    #[test]
    fn split_examples() {
        let (vars, a) = example1();
        let mp = minimal_polynomial(&a).unwrap();
        let split = split_even_odd(&mp).unwrap();
        assert_eq!(split.b, UnivarPoly::constant(a.trace()));
        let det = parse_poly("1 + x1^4*x2^2 + x1^2*x2^4 - x1^2*x2^2", &vars).unwrap();
        let want_r = UnivarPoly::from_polys(2, vec![det, parse_poly("0", &vars).unwrap(), parse_poly("1", &vars).unwrap()]);
        assert_eq!(split.r, want_r);
        assert_eq!(a.eval_univar(&split.b).mul(&a).unwrap(), a.eval_univar(&split.r));

        let q = invert_b_mod_p(&split, &mp).unwrap();
        assert_eq!(q, UnivarPoly::constant(a.trace().inv().unwrap()));
    }

    #[test]
    fn scalar_matrix() {
        let vars = VarSet::numbered(1);
        let a = SymbolicMatrix::scalar(2, &RationalFunction::constant(1, BigRat::from_integer(4.into())));
        let mp = minimal_polynomial(&a).unwrap();
        let split = split_even_odd(&mp).unwrap();
        assert!(split.b.coeff(0).is_one());
        let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap();
        assert_eq!(cert.squares, [SymbolicMatrix::scalar(2, &RationalFunction::constant(1, BigRat::from_integer(2.into())))]);
    }

    #[test]
    fn zero_matrix_has_empty_certificate() {
        let vars = VarSet::numbered(1);
        let cert = certify(&SymbolicMatrix::zero(2, 1), &vars, &CertStore::default(), CertifyOptions::default()).unwrap();
        assert!(cert.squares.is_empty());
        assert_eq!(cert.square_count, 0);
    }

    #[test]
    fn lemma_violation_on_split() {
        let vars = VarSet::numbered(1);
        let p = |s: &str| parse_poly(s, &vars).unwrap();
        let mp = MinPolyForm::from_coefficients(vec![p("1"), p("0"), p("1")], MinPolyRoute::Krylov).unwrap();
        assert_eq!(
            split_even_odd(&mp),
            Err(CertError::Lemma(LemmaViolation::ZeroLinearCoefficient))
        );
    }

    #[test]
    fn not_psd_names_stage() {
        let vars = VarSet::numbered(1);
        let a = SymbolicMatrix::parse_rows(&[&["x1"]], &vars).unwrap();
        let err = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap_err();
        assert_eq!(err.stage(), "psd-check");
        match err {
            CertError::NotPsd { point, value, .. } => assert_eq!(point[0], value),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn example1_without_store_names_a0() {
        let (vars, a) = example1();
        match certify(&a, &vars, &CertStore::default(), CertifyOptions::default()) {
            Err(CertError::ScalarSosUnavailable { index: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampering_is_located() {
        let vars = VarSet::numbered(1);
        let a = SymbolicMatrix::parse_rows(&[&["x1^2 + 1", "x1"], &["x1", "x1^2 + 1"]], &vars).unwrap();
        let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap();
        assert!(verify_matrix_cert(&a, &cert, VerifyOptions::full()).passed());
        assert_eq!(cert.square_count, cert.expected_count());

        let mut negated = cert.clone();
        negated.squares[0] = negated.squares[0].neg();
        assert!(verify_matrix_cert(&a, &negated, VerifyOptions::full()).passed());

        let mut bumped = cert.clone();
        let v = bumped.squares[0].get(0, 0) + &RationalFunction::one(1);
        bumped.squares[0].set(0, 0, v);
        let report = verify_matrix_cert(&a, &bumped, VerifyOptions::default());
        assert!(!report.passed());
        assert_eq!(report.sum_mismatch, Some((0, 0)));
    }
}
