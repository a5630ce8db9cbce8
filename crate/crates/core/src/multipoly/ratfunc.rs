use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{PolyError, Polynomial};
use crate::exactarith::BigRat;

// Above this many terms in the denominator, reduction is attempted by exact
// division in both directions.
const REDUCE_THRESHOLD: usize = 4;

/// Quotient of two polynomials.
///
/// The denominator is kept monic (leading coefficient 1 in graded-lex order)
/// and free of common monomial factors with the numerator. A constant
/// denominator therefore always collapses to 1. Full GCD cancellation is not
/// maintained, so equality goes through cross-multiplication.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let nvars = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(nvars),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRat) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial this equals, if any (tries exact division).
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.exact_div(&self.den)
    }

    pub fn constant_value(&self) -> Option<BigRat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn eval(&self, point: &[BigRat]) -> Result<BigRat, PolyError> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Attempts to cancel the denominator against the numerator by exact division.
    pub fn reduced(&self) -> Self {
        if self.den.is_one() {
            return self.clone();
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            return Self::from_poly(q);
        }
        if let Some(q) = self.den.exact_div(&self.num) {
            return Self::normalized(Polynomial::one(self.nvars()), q);
        }
        self.clone()
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let (mut num, mut den) = (num, den);
        let common = num.monomial_content().gcd(&den.monomial_content());
        if !common.is_one() {
            num = num.div_monomial(&common);
            den = den.div_monomial(&common);
        }
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let out = RationalFunction { num, den };
        if out.den.len() == 1 {
            // monomial denominator with no common content: already lowest terms
            out
        } else if out.den.len() >= REDUCE_THRESHOLD || out.den.is_one() {
            out
        } else {
            out.reduced_cheap()
        }
    }

    // Short denominators: one exact-division attempt is cheap.
    fn reduced_cheap(self) -> Self {
        match self.num.exact_div(&self.den) {
            Some(q) => Self::from_poly(q),
            None => self,
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RationalFunction::normalized(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RationalFunction::normalized(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if let Some(k) = rhs.den.exact_div(&self.den) {
            return RationalFunction::normalized(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        if let Some(k) = self.den.exact_div(&rhs.den) {
            return RationalFunction::normalized(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        // cross cancellation when a numerator equals the other denominator
        if self.num == rhs.den {
            return RationalFunction::normalized(rhs.num.clone(), self.den.clone());
        }
        if rhs.num == self.den {
            return RationalFunction::normalized(self.num.clone(), rhs.den.clone());
        }
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = Result<RationalFunction, PolyError>;
    fn div(self, rhs: &'a RationalFunction) -> Result<RationalFunction, PolyError> {
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &VarSet::numbered(2)).unwrap()
    }

    fn rf(n: &str, d: &str) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn inverse_swaps() {
        assert_eq!(rf("x1", "x2").inv().unwrap(), rf("x2", "x1"));
        assert!(matches!(
            RationalFunction::zero(2).inv(),
            Err(PolyError::DivisionByZero)
        ));
        assert!(RationalFunction::new(p("1"), p("0")).is_err());
    }

    #[test]
    fn cancellation_and_equality() {
        let a = rf("x1^2*x2", "x1");
        assert_eq!(a, RationalFunction::from_poly(p("x1*x2")));
        assert!(a.is_polynomial());
        let b = rf("x1^2 - x2^2", "x1 + x2");
        assert_eq!(b.to_polynomial().unwrap(), p("x1 - x2"));
        assert_eq!(rf("2*x1", "4*x2 + 2"), rf("x1", "2*x2 + 1"));
    }

    #[test]
    fn additive_inverse() {
        let a = rf("1", "x1 + 1");
        let b = rf("-1", "x1 + 1");
        assert!((&a + &b).is_zero());
        let c = rf("1", "x1") + rf("1", "x2");
        assert_eq!(c, rf("x1 + x2", "x1*x2"));
    }

    #[test]
    fn denominators_are_monic() {
        let a = rf("1", "3*x1 + 6");
        assert!(a.den().leading_coeff().is_one());
        assert_eq!(a.num(), &p("1/3"));
        let c = rf("x1", "5");
        assert!(c.is_polynomial());
    }

    #[test]
    fn eval_matches() {
        let a = rf("x1 + x2", "x1 - x2");
        let pt = [BigRat::from_integer(3.into()), BigRat::from_integer(1.into())];
        assert_eq!(a.eval(&pt).unwrap(), BigRat::from_integer(2.into()));
    }
}
