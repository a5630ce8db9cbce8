//! Square matrices over the rational-function field: arithmetic, principal
//! minors, fraction-free determinants, characteristic and minimal polynomials,
//! and randomized PSD screening.

mod charpoly;
mod det;
mod format;
mod minpoly;
mod psd;

pub use charpoly::charpoly;
pub use det::{det_bareiss, det_rational, principal_minors, rank, ExactRing};
pub use format::{parse_matrix_file, write_matrix_file};
pub use minpoly::{
    check_lemma_form, krylov_minpoly, minimal_polynomial, LemmaReport, LemmaViolation, MinPolyForm,
    MinPolyRoute,
};
pub use psd::{psd_sample_check, sample_points, PsdReport};

use std::fmt;

use thiserror::Error;

use crate::exactarith::BigRat;
use crate::multipoly::{PolyError, Polynomial, RationalFunction, UnivarPoly, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not a polynomial")]
    NonPolynomialEntry { row: usize, col: usize },
    #[error("minimal polynomial is not squarefree; the matrix is not diagonalizable")]
    NotDiagonalizable,
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `n x n` matrix of rational functions, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<RationalFunction>,
}

impl SymbolicMatrix {
    pub fn new(n: usize, nvars: usize, entries: Vec<RationalFunction>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.nvars() != nvars) {
            return Err(MatrixError::DimensionMismatch(format!(
                "entry over {} variables in a matrix over {nvars}",
                e.nvars()
            )));
        }
        Ok(SymbolicMatrix { n, nvars, entries })
    }

    pub fn from_polys(n: usize, nvars: usize, entries: Vec<Polynomial>) -> Result<Self, MatrixError> {
        Self::new(n, nvars, entries.into_iter().map(RationalFunction::from_poly).collect())
    }

    /// Builds a matrix from rows of expressions.
    pub fn parse_rows(rows: &[&[&str]], vars: &VarSet) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch("ragged rows".into()));
            }
            for e in row.iter() {
                entries.push(RationalFunction::from_poly(crate::multipoly::parse_poly(e, vars)?));
            }
        }
        Self::new(n, vars.len(), entries)
    }

    pub fn from_fn(n: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> RationalFunction) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SymbolicMatrix { n, nvars, entries }
    }

    pub fn zero(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, nvars, |_, _| RationalFunction::zero(nvars))
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, &RationalFunction::one(nvars))
    }

    /// `c * I`.
    pub fn scalar(n: usize, c: &RationalFunction) -> Self {
        let nvars = c.nvars();
        Self::from_fn(n, nvars, |i, j| {
            if i == j {
                c.clone()
            } else {
                RationalFunction::zero(nvars)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    /// First `(i, j)` with `a_ij != a_ji`, if any.
    pub fn symmetry_defect(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_defect().is_none()
    }

    pub fn require_symmetric(&self) -> Result<(), MatrixError> {
        match self.symmetry_defect() {
            Some((row, col)) => Err(MatrixError::NotSymmetric { row, col }),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.nvars, |i, j| self.get(j, i).clone())
    }

    /// Entries as polynomials, row-major; fails on a genuine fraction.
    pub fn polynomial_entries(&self) -> Result<Vec<Polynomial>, MatrixError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, e)| {
                e.to_polynomial().ok_or(MatrixError::NonPolynomialEntry {
                    row: k / self.n,
                    col: k % self.n,
                })
            })
            .collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n || self.nvars != other.nvars {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} over {} variables vs {}x{} over {}",
                self.n, self.n, self.nvars, other.n, other.n, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.n, self.nvars, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.n, self.nvars, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        let n = self.n;
        Ok(Self::from_fn(n, self.nvars, |i, j| {
            let mut acc = RationalFunction::zero(self.nvars);
            for k in 0..n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    /// `M * M`, computing only the upper triangle when `M` is symmetric.
    pub fn square(&self) -> Self {
        if !self.is_symmetric() {
            return self.mul(self).expect("same shape");
        }
        let n = self.n;
        let mut out = Self::zero(n, self.nvars);
        for i in 0..n {
            for j in i..n {
                let mut acc = RationalFunction::zero(self.nvars);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), self.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                if i != j {
                    out.set(j, i, acc.clone());
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Self::from_fn(self.n, self.nvars, |i, j| self.get(i, j) * c)
    }

    pub fn scale_rational(&self, c: &BigRat) -> Self {
        Self::from_fn(self.n, self.nvars, |i, j| self.get(i, j).scale(c))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.n, self.nvars, |i, j| -self.get(i, j))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n, self.nvars);
        for _ in 0..k {
            result = result.mul(self).expect("same shape");
        }
        result
    }

    pub fn trace(&self) -> RationalFunction {
        (0..self.n).fold(RationalFunction::zero(self.nvars), |acc, i| &acc + self.get(i, i))
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_univar(&self, p: &UnivarPoly) -> Self {
        let mut acc = Self::zero(self.n, self.nvars);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same shape");
            for i in 0..self.n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Substitutes a rational point into every entry.
    pub fn eval(&self, point: &[BigRat]) -> Result<Vec<BigRat>, MatrixError> {
        self.entries
            .iter()
            .map(|e| e.eval(point).map_err(MatrixError::from))
            .collect()
    }

    /// Square submatrix on the given rows and columns (same index set).
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.nvars, |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// First entry `(i, j)` where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        (0..self.n * self.n)
            .find(|&k| self.entries[k] != other.entries[k])
            .map(|k| (k / self.n, k % self.n))
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarSet::numbered(self.nvars);
        writeln!(f, "SymbolicMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| {
                    let e = self.get(i, j);
                    let num = crate::multipoly::print_poly(e.num(), &vars);
                    if e.is_polynomial() {
                        num
                    } else {
                        format!("({num})/({})", crate::multipoly::print_poly(e.den(), &vars))
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example1() -> (VarSet, SymbolicMatrix) {
        let vars = VarSet::numbered(2);
        let a = SymbolicMatrix::parse_rows(
            &[&["1", "x1*x2"], &["x1*x2", "1 + x1^4*x2^2 + x1^2*x2^4"]],
            &vars,
        )
        .unwrap();
        (vars, a)
    }

    #[test]
    fn identity_laws() {
        let (_, a) = example1();
        assert_eq!(a.pow(0), SymbolicMatrix::identity(2, 2));
        assert_eq!(a.mul(&SymbolicMatrix::identity(2, 2)).unwrap(), a);
        assert!(a.is_symmetric());
    }

    // (A^2)_{11} = 1*1 + (x1 x2)(x1 x2)
    #[test]
    fn example1_square_corner() {
        let (vars, a) = example1();
        let sq = a.square();
        let expect = crate::multipoly::parse_poly("1 + x1^2*x2^2", &vars).unwrap();
        assert_eq!(sq.get(0, 0), &RationalFunction::from_poly(expect));
        assert_eq!(sq, a.mul(&a).unwrap());
    }

    #[test]
    fn shape_errors() {
        let (_, a) = example1();
        let b = SymbolicMatrix::identity(3, 2);
        assert!(matches!(a.mul(&b), Err(MatrixError::DimensionMismatch(_))));
        assert!(SymbolicMatrix::new(2, 2, vec![RationalFunction::zero(2)]).is_err());
    }

    #[test]
    fn asymmetric_detected() {
        let vars = VarSet::numbered(1);
        let a = SymbolicMatrix::parse_rows(&[&["1", "x1"], &["0", "1"]], &vars).unwrap();
        assert_eq!(
            a.require_symmetric(),
            Err(MatrixError::NotSymmetric { row: 0, col: 1 })
        );
    }
}
