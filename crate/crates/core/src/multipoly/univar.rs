use super::{PolyError, Polynomial, RationalFunction};
use crate::exactarith::BigRat;

/// Polynomial in `t` whose coefficients are rational functions.
///
/// `coeffs[i]` is the coefficient of `t^i`; the last stored coefficient is
/// never zero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivarPoly {
    nvars: usize,
    coeffs: Vec<RationalFunction>,
}

impl UnivarPoly {
    pub fn new(nvars: usize, coeffs: Vec<RationalFunction>) -> Self {
        let mut p = UnivarPoly { nvars, coeffs };
        p.trim();
        p
    }

    pub fn from_polys(nvars: usize, coeffs: Vec<Polynomial>) -> Self {
        Self::new(nvars, coeffs.into_iter().map(RationalFunction::from_poly).collect())
    }

    pub fn zero(nvars: usize) -> Self {
        UnivarPoly {
            nvars,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: RationalFunction) -> Self {
        let nvars = c.nvars();
        Self::new(nvars, vec![c])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(RationalFunction::one(nvars))
    }

    /// `c * t^k`.
    pub fn monomial(c: RationalFunction, k: usize) -> Self {
        let nvars = c.nvars();
        let mut coeffs = vec![RationalFunction::zero(nvars); k];
        coeffs.push(c);
        Self::new(nvars, coeffs)
    }

    /// `t`.
    pub fn t(nvars: usize) -> Self {
        Self::monomial(RationalFunction::one(nvars), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RationalFunction::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> RationalFunction {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RationalFunction::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&RationalFunction> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(RationalFunction::is_one)
    }

    pub fn add(&self, other: &UnivarPoly) -> UnivarPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        UnivarPoly::new(self.nvars, coeffs)
    }

    pub fn sub(&self, other: &UnivarPoly) -> UnivarPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        UnivarPoly::new(self.nvars, coeffs)
    }

    pub fn neg(&self) -> UnivarPoly {
        UnivarPoly::new(self.nvars, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UnivarPoly) -> UnivarPoly {
        if self.is_zero() || other.is_zero() {
            return UnivarPoly::zero(self.nvars);
        }
        let mut coeffs =
            vec![RationalFunction::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        UnivarPoly::new(self.nvars, coeffs)
    }

    pub fn scale(&self, c: &RationalFunction) -> UnivarPoly {
        UnivarPoly::new(self.nvars, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Formal derivative in `t`.
    pub fn derivative(&self) -> UnivarPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRat::from_integer(i.into())))
            .collect();
        UnivarPoly::new(self.nvars, coeffs)
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UnivarPoly) -> Result<(UnivarPoly, UnivarPoly), PolyError> {
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RationalFunction::zero(self.nvars); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if !c.is_zero() {
                let factor = if divisor.coeffs[dd].is_one() {
                    c
                } else {
                    &c * &lead_inv
                };
                let shift = top - dd;
                for (k, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                    if !dc.is_zero() {
                        rem[shift + k] = &rem[shift + k] - &(dc * &factor);
                    }
                }
                quot[shift] = factor;
            }
            rem.pop();
        }
        Ok((
            UnivarPoly::new(self.nvars, quot),
            UnivarPoly::new(self.nvars, rem),
        ))
    }

    pub fn rem(&self, divisor: &UnivarPoly) -> Result<UnivarPoly, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient, or `None` if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UnivarPoly) -> Result<Option<UnivarPoly>, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Result<UnivarPoly, PolyError> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(lc) if lc.is_one() => Ok(self.clone()),
            Some(lc) => {
                let inv = lc.inv()?;
                let mut out = self.scale(&inv);
                // exact: the leading coefficient is 1 by construction
                if let Some(last) = out.coeffs.last_mut() {
                    *last = RationalFunction::one(self.nvars);
                }
                out.coeffs.iter_mut().for_each(|c| *c = c.reduced());
                Ok(out)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UnivarPoly) -> Result<UnivarPoly, PolyError> {
        let mut a = self.monic()?;
        let mut b = other.monic()?;
        while !b.is_zero() {
            let r = a.rem(&b)?.monic()?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Extended Euclid: `(g, u, w)` with `u*self + w*other = g`, `g` the monic gcd.
    pub fn ext_euclid(&self, other: &UnivarPoly) -> Result<(UnivarPoly, UnivarPoly, UnivarPoly), PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let n = self.nvars;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (UnivarPoly::one(n), UnivarPoly::zero(n));
        let (mut w0, mut w1) = (UnivarPoly::zero(n), UnivarPoly::one(n));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let u2 = u0.sub(&q.mul(&u1));
            let w2 = w0.sub(&q.mul(&w1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u2;
            w0 = w1;
            w1 = w2;
        }
        match r0.leading_coeff() {
            None => Ok((r0, u0, w0)),
            Some(lc) => {
                let inv = lc.inv()?;
                let g = r0.monic()?;
                let u = reduce_coeffs(u0.scale(&inv));
                let w = reduce_coeffs(w0.scale(&inv));
                Ok((g, u, w))
            }
        }
    }

    /// `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> Result<UnivarPoly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let g = self.gcd(&self.derivative())?;
        let (q, _) = self.div_rem(&g)?;
        q.monic()
    }

    /// Horner evaluation at a rational-function point.
    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero(self.nvars);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

fn reduce_coeffs(p: UnivarPoly) -> UnivarPoly {
    let n = p.nvars;
    UnivarPoly::new(n, p.coeffs.iter().map(RationalFunction::reduced).collect())
}
