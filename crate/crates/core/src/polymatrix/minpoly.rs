use num_traits::{Signed, Zero};
use thiserror::Error;

use super::det::{det_bareiss, rank};
use super::psd::sample_points;
use super::{charpoly, MatrixError, SymbolicMatrix};
use crate::exactarith::BigRat;
use crate::multipoly::{Polynomial, RationalFunction, UnivarPoly};

/// How the minimal polynomial was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinPolyRoute {
    /// Squarefree part of the characteristic polynomial, confirmed by substitution.
    SquarefreePart,
    /// First linear dependence among `I, A, A^2, ...`.
    Krylov,
}

/// Minimal polynomial in alternating-sign form
/// `p(t) = sum_i (-1)^(d-i) a_i t^i` with `a_d = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPolyForm {
    a: Vec<Polynomial>,
    route: MinPolyRoute,
}

impl MinPolyForm {
    /// From a monic univariate polynomial whose coefficients are polynomials.
    pub fn from_univar(p: &UnivarPoly, route: MinPolyRoute) -> Result<Self, MatrixError> {
        let d = p.degree().ok_or_else(|| {
            MatrixError::DimensionMismatch("zero polynomial has no alternating form".into())
        })?;
        if !p.is_monic() {
            return Err(MatrixError::DimensionMismatch("minimal polynomial must be monic".into()));
        }
        let mut a = Vec::with_capacity(d + 1);
        for (i, c) in p.coeffs().iter().enumerate() {
            let poly = c
                .to_polynomial()
                .ok_or(MatrixError::NonPolynomialEntry { row: i, col: i })?;
            a.push(if (d - i) % 2 == 0 { poly } else { -poly });
        }
        Ok(MinPolyForm { a, route })
    }

    /// From `a_0, ..., a_d` directly; `a_d` must be 1.
    pub fn from_coefficients(a: Vec<Polynomial>, route: MinPolyRoute) -> Result<Self, MatrixError> {
        match a.last() {
            Some(lead) if lead.is_one() => Ok(MinPolyForm { a, route }),
            _ => Err(MatrixError::DimensionMismatch("leading coefficient a_d must be 1".into())),
        }
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.a[0].nvars()
    }

    /// `a_i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Polynomial {
        self.a
            .get(i)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars()))
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.a
    }

    pub fn route(&self) -> MinPolyRoute {
        self.route
    }

    /// `p(t)` with its signs restored.
    pub fn to_univar(&self) -> UnivarPoly {
        let d = self.degree();
        let coeffs = self
            .a
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let c = if (d - i) % 2 == 0 { a.clone() } else { -a };
                RationalFunction::from_poly(c)
            })
            .collect();
        UnivarPoly::new(self.nvars(), coeffs)
    }
}

/// Minimal polynomial of a polynomial matrix.
///
/// The squarefree part of the characteristic polynomial is tried first and
/// accepted only if it annihilates `A`; otherwise the Krylov route decides,
/// and a non-squarefree answer there means `A` is not diagonalizable.
pub fn minimal_polynomial(a: &SymbolicMatrix) -> Result<MinPolyForm, MatrixError> {
    a.polynomial_entries()?;
    let sf = charpoly(a).squarefree_part()?;
    if a.eval_univar(&sf).is_zero() {
        return MinPolyForm::from_univar(&sf, MinPolyRoute::SquarefreePart);
    }
    let k = krylov_minpoly(a)?;
    let g = k.gcd(&k.derivative())?;
    if g.degree() != Some(0) {
        return Err(MatrixError::NotDiagonalizable);
    }
    MinPolyForm::from_univar(&k, MinPolyRoute::Krylov)
}

/// Monic minimal polynomial from the first linear dependence among the
/// powers of `A`, solved by Cramer's rule on fraction-free determinants.
pub fn krylov_minpoly(a: &SymbolicMatrix) -> Result<UnivarPoly, MatrixError> {
    let n = a.dim();
    let nvars = a.nvars();
    let rows = n * n;
    let mut powers: Vec<Vec<Polynomial>> = vec![SymbolicMatrix::identity(n, nvars).polynomial_entries()?];
    let mut current = SymbolicMatrix::identity(n, nvars);
    for k in 1..=n {
        current = current.mul(a)?;
        powers.push(current.polynomial_entries()?);
        let cols = k + 1;
        let stacked: Vec<Polynomial> = (0..rows)
            .flat_map(|r| powers.iter().map(move |v| v[r].clone()))
            .collect();
        let (rk, _) = rank(&stacked, rows, cols);
        if rk == cols {
            continue;
        }
        // Columns 0..k are independent; pick k rows on which they stay independent.
        let basis: Vec<Polynomial> = (0..rows)
            .flat_map(|r| powers[..k].iter().map(move |v| v[r].clone()))
            .collect();
        let (rb, pivots) = rank(&basis, rows, k);
        debug_assert_eq!(rb, k);
        let sub = |col_override: Option<usize>| -> Vec<Polynomial> {
            pivots
                .iter()
                .flat_map(|&r| {
                    (0..k).map(move |c| (r, c))
                })
                .map(|(r, c)| {
                    if Some(c) == col_override {
                        -&powers[k][r]
                    } else {
                        powers[c][r].clone()
                    }
                })
                .collect()
        };
        let det = det_bareiss(&sub(None), k, nvars);
        let mut coeffs = Vec::with_capacity(k + 1);
        for c in 0..k {
            let num = det_bareiss(&sub(Some(c)), k, nvars);
            coeffs.push(RationalFunction::new(num, det.clone())?.reduced());
        }
        coeffs.push(RationalFunction::one(nvars));
        return Ok(UnivarPoly::new(nvars, coeffs));
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaViolation {
    #[error("t^2 divides the minimal polynomial (a_0 = a_1 = 0)")]
    TSquaredDivides,
    #[error("a_1 = 0")]
    ZeroLinearCoefficient,
    #[error("a_{index} is negative ({value}) at {point:?}")]
    NegativeCoefficient {
        index: usize,
        point: Vec<BigRat>,
        value: BigRat,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub degree: usize,
    pub samples: usize,
    /// Indices `i` with `a_i != 0`.
    pub nonzero: Vec<usize>,
}

/// Checks the shape the minimal polynomial of a PSD matrix must have:
/// `t^2` does not divide it, `a_1 != 0`, and no `a_i` is negative at any of
/// `samples` seeded rational points. A negative sample is a definitive refutation.
pub fn check_lemma_form(mp: &MinPolyForm, samples: usize, seed: u64) -> Result<LemmaReport, LemmaViolation> {
    let a0 = mp.coeff(0);
    let a1 = mp.coeff(1);
    if a0.is_zero() && a1.is_zero() {
        return Err(LemmaViolation::TSquaredDivides);
    }
    if a1.is_zero() {
        return Err(LemmaViolation::ZeroLinearCoefficient);
    }
    let points = sample_points(mp.nvars(), samples, seed);
    for (index, a) in mp.coefficients().iter().enumerate() {
        if let Some(c) = a.constant_value() {
            if c.is_negative() {
                return Err(LemmaViolation::NegativeCoefficient {
                    index,
                    point: vec![BigRat::zero(); mp.nvars()],
                    value: c,
                });
            }
            continue;
        }
        for point in &points {
            let value = a.eval(point).expect("point arity matches");
            if value.is_negative() {
                return Err(LemmaViolation::NegativeCoefficient {
                    index,
                    point: point.clone(),
                    value,
                });
            }
        }
    }
    Ok(LemmaReport {
        degree: mp.degree(),
        samples,
        nonzero: (0..=mp.degree()).filter(|&i| !mp.coeff(i).is_zero()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};

    fn example2() -> (VarSet, SymbolicMatrix) {
        let vars = VarSet::numbered(3);
        let a = SymbolicMatrix::parse_rows(
            &[
                &["x1^2+2*x3^2", "-x1*x2", "-x1*x3"],
                &["-x1*x2", "x2^2+2*x1^2", "-x2*x3"],
                &["-x1*x3", "-x2*x3", "x3^2+2*x2^2"],
            ],
            &vars,
        )
        .unwrap();
        (vars, a)
    }

    #[test]
    fn example2_coefficients() {
        let (vars, a) = example2();
        let mp = minimal_polynomial(&a).unwrap();
        let p = |s: &str| parse_poly(s, &vars).unwrap();
        assert_eq!(mp.degree(), 3);
        assert_eq!(mp.route(), MinPolyRoute::SquarefreePart);
        assert_eq!(mp.coeff(2), p("3*x3^2+3*x2^2+3*x1^2"));
        assert_eq!(
            mp.coeff(1),
            p("2*x2^4+6*x1^2*x3^2+6*x1^2*x2^2+2*x1^4+2*x3^4+6*x2^2*x3^2")
        );
        assert_eq!(
            mp.coeff(0),
            p("4*x1^4*x2^2+4*x3^2*x2^4+4*x3^4*x1^2+4*x3^2*x1^2*x2^2")
        );
        assert!(check_lemma_form(&mp, 50, 0).is_ok());
        assert_eq!(krylov_minpoly(&a).unwrap(), mp.to_univar());
    }

    #[test]
    fn identity_and_zero() {
        let mp = minimal_polynomial(&SymbolicMatrix::identity(3, 1)).unwrap();
        assert_eq!(mp.degree(), 1);
        assert!(mp.coeff(0).is_one());
        let mp = minimal_polynomial(&SymbolicMatrix::zero(3, 1)).unwrap();
        assert_eq!(mp.degree(), 1);
        assert!(mp.coeff(0).is_zero());
        assert!(check_lemma_form(&mp, 10, 0).is_ok());
    }

    #[test]
    fn nilpotent_is_not_diagonalizable() {
        let vars = VarSet::numbered(1);
        let a = SymbolicMatrix::parse_rows(&[&["0", "1"], &["0", "0"]], &vars).unwrap();
        assert_eq!(minimal_polynomial(&a), Err(MatrixError::NotDiagonalizable));
    }

    #[test]
    fn lemma_violations() {
        let vars = VarSet::numbered(1);
        let p = |s: &str| parse_poly(s, &vars).unwrap();
        let t2 = MinPolyForm::from_coefficients(vec![p("0"), p("0"), p("1")], MinPolyRoute::Krylov).unwrap();
        assert_eq!(check_lemma_form(&t2, 10, 0), Err(LemmaViolation::TSquaredDivides));

        let zero_a1 =
            MinPolyForm::from_coefficients(vec![p("1"), p("0"), p("1")], MinPolyRoute::Krylov).unwrap();
        assert_eq!(
            check_lemma_form(&zero_a1, 10, 0),
            Err(LemmaViolation::ZeroLinearCoefficient)
        );

        let odd = MinPolyForm::from_coefficients(vec![p("x1"), p("1")], MinPolyRoute::Krylov).unwrap();
        match check_lemma_form(&odd, 100, 0) {
            Err(LemmaViolation::NegativeCoefficient { index: 0, point, value }) => {
                assert!(point[0].is_negative());
                assert_eq!(value, point[0]);
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }
}
