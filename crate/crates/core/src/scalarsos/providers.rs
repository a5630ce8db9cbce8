use num_traits::{One, Signed, Zero};

use super::{Provider, ScalarSOSCert, ScalarSosError};
use crate::exactarith::{four_squares_rational, rational_sqrt, BigRat};
use crate::multipoly::{Monomial, Polynomial, RationalFunction};

// Rational multipliers whose squares sum to `c >= 0`: one when `c` is a
// perfect square, otherwise the nonzero Lagrange parts.
pub(super) fn constant_parts(c: &BigRat) -> Result<Vec<BigRat>, ScalarSosError> {
    if c.is_negative() {
        return Err(ScalarSosError::Negative(c.clone()));
    }
    if c.is_zero() {
        return Ok(Vec::new());
    }
    if let Some(r) = rational_sqrt(c) {
        return Ok(vec![r]);
    }
    let fs = four_squares_rational(c).expect("nonnegative");
    Ok(fs.nonzero_parts().cloned().collect())
}

/// At most four rational squares for `q >= 0`.
pub fn sos_constant(q: &BigRat, nvars: usize) -> Result<ScalarSOSCert, ScalarSosError> {
    let squares = constant_parts(q)?
        .into_iter()
        .map(|s| RationalFunction::constant(nvars, s))
        .collect();
    ScalarSOSCert::new(RationalFunction::constant(nvars, q.clone()), squares, Provider::Constant)
}

/// Each term `c x^(2e)` with `c > 0` becomes the squares `(s_r x^e)^2` where
/// `s_1^2 + ... + s_4^2 = c`.
pub fn sos_monomial_squares(p: &Polynomial) -> Result<ScalarSOSCert, ScalarSosError> {
    if let Some((m, c)) = p.terms().find(|(m, c)| !m.is_even() || !c.is_positive()) {
        let why = if m.is_even() {
            format!("term with coefficient {c} is not positive")
        } else {
            "a term has an odd exponent".to_string()
        };
        return Err(ScalarSosError::NotApplicable(why));
    }
    let mut squares = Vec::new();
    for (m, c) in p.terms().rev() {
        let half = m.half();
        for s in four_squares_rational(c).expect("positive").nonzero_parts() {
            squares.push(RationalFunction::from_poly(Polynomial::term(half.clone(), s.clone())));
        }
    }
    ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::MonomialSquares)
}

/// Succeeds when `p = c q^2` for a rational `c >= 0` and a polynomial `q`.
pub fn sos_perfect_square(p: &Polynomial) -> Result<ScalarSOSCert, ScalarSosError> {
    let nvars = p.nvars();
    if p.is_zero() {
        return ScalarSOSCert::new(RationalFunction::zero(nvars), Vec::new(), Provider::PerfectSquare);
    }
    let c = p.leading_coeff();
    if c.is_negative() {
        return Err(ScalarSosError::NotApplicable("negative leading coefficient".into()));
    }
    let monic = p.scale(&c.recip());
    let root = polynomial_sqrt(&monic)
        .ok_or_else(|| ScalarSosError::NotApplicable("no exact polynomial square root".into()))?;
    let squares = constant_parts(&c)?
        .into_iter()
        .map(|s| RationalFunction::from_poly(root.scale(&s)))
        .collect();
    ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::PerfectSquare)
}

// Square root of a polynomial with leading coefficient 1, term by term from
// the top of the graded-lex order.
fn polynomial_sqrt(p: &Polynomial) -> Option<Polynomial> {
    let (lm, lc) = p.leading_term()?;
    if !lc.is_one() || !lm.is_even() {
        return None;
    }
    let top = lm.half();
    let mut root = Polynomial::term(top.clone(), BigRat::one());
    let mut rem = p - &(&root * &root);
    let mut last = top.clone();
    let two = BigRat::from_integer(2.into());
    while let Some((rm, rc)) = rem.leading_term() {
        if !top.divides(rm) {
            return None;
        }
        let m: Monomial = rm.div(&top);
        if m >= last {
            return None;
        }
        let t = Polynomial::term(m.clone(), rc / &two);
        // rem -= 2 t root + t^2
        let update = &(&t * &root).scale(&two) + &(&t * &t);
        rem = &rem - &update;
        root = &root + &t;
        last = m;
    }
    Some(root)
}

/// Turns a certificate for `multiplier * p` into one for `p`:
/// `p = sum_{k,l} (sigma_l h_k / multiplier)^2` where `multiplier = sum_l sigma_l^2`
/// and `multiplier * p = sum_k h_k^2`.
pub fn sos_denominator_lift(
    p: &Polynomial,
    multiplier: &Polynomial,
    cert_of_product: &ScalarSOSCert,
    cert_of_multiplier: &ScalarSOSCert,
) -> Result<ScalarSOSCert, ScalarSosError> {
    if multiplier.is_zero() {
        return Err(ScalarSosError::ZeroMultiplier);
    }
    let product = RationalFunction::from_poly(multiplier * p);
    if cert_of_product.target() != &product || !super::verify_scalar_cert(cert_of_product) {
        return Err(ScalarSosError::VerificationFailed(
            "certificate does not match multiplier * target".into(),
        ));
    }
    if multiplier.is_one() {
        return Ok(cert_of_product.clone());
    }
    let m = RationalFunction::from_poly(multiplier.clone());
    if cert_of_multiplier.target() != &m || !super::verify_scalar_cert(cert_of_multiplier) {
        return Err(ScalarSosError::VerificationFailed(
            "certificate does not match the multiplier".into(),
        ));
    }
    let inv = m.inv()?;
    let mut squares = Vec::with_capacity(cert_of_product.len() * cert_of_multiplier.len());
    for sigma in cert_of_multiplier.squares() {
        let scaled = sigma * &inv;
        for h in cert_of_product.squares() {
            squares.push(&scaled * h);
        }
    }
    ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::DenominatorLift)
        .map(|c| c.with_multiplier(Some(multiplier.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};

    fn vars() -> VarSet {
        VarSet::numbered(3)
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &vars()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRat {
        BigRat::new(a.into(), b.into())
    }

    #[test]
    fn constants() {
        assert!(sos_constant(&q(0, 1), 3).unwrap().is_empty());
        let four = sos_constant(&q(4, 1), 3).unwrap();
        assert_eq!(four.squares(), [RationalFunction::constant(3, q(2, 1))]);
        let sev = sos_constant(&q(7, 9), 3).unwrap();
        assert_eq!(sev.len(), 4);
        assert!(matches!(sos_constant(&q(-1, 2), 3), Err(ScalarSosError::Negative(_))));
    }

    #[test]
    fn example2_a2_gives_nine_squares() {
        let cert = sos_monomial_squares(&p("3*x1^2+3*x2^2+3*x3^2")).unwrap();
        assert_eq!(cert.len(), 9);
        assert_eq!(cert.provider(), Provider::MonomialSquares);
    }

    #[test]
    fn example1_trace_squares() {
        let cert = sos_monomial_squares(&p("2 + x1^4*x2^2 + x1^2*x2^4")).unwrap();
        let mut got: Vec<Polynomial> = cert.squares().iter().map(|g| g.num().clone()).collect();
        got.sort_by(|a, b| a.leading_term().cmp(&b.leading_term()));
        let mut want = vec![p("1"), p("1"), p("x1^2*x2"), p("x1*x2^2")];
        want.sort_by(|a, b| a.leading_term().cmp(&b.leading_term()));
        assert_eq!(got, want);
    }

    #[test]
    fn monomial_squares_rejects_odd_and_negative() {
        assert!(matches!(sos_monomial_squares(&p("x1")), Err(ScalarSosError::NotApplicable(_))));
        assert!(sos_monomial_squares(&p("x1^2 - x2^2")).is_err());
    }

    #[test]
    fn perfect_squares() {
        let cert = sos_perfect_square(&p("x1^2+2*x1*x2+x2^2")).unwrap();
        assert_eq!(cert.squares(), [RationalFunction::from_poly(p("x1 + x2"))]);
        let one = sos_perfect_square(&p("1")).unwrap();
        assert_eq!(one.squares(), [RationalFunction::from_poly(p("1"))]);
        assert!(sos_perfect_square(&p("x1^2+x2^2")).is_err());
        // 3 (x1 - 2 x3 + 1/2)^2 needs the constant folded in
        let scaled = p("3*(x1 - 2*x3 + 1/2)^2");
        let cert = sos_perfect_square(&scaled).unwrap();
        assert_eq!(cert.len(), 3);
        assert!(sos_perfect_square(&p("-(x1+1)^2")).is_err());
    }

    #[test]
    fn lift_example1_determinant() {
        let v = VarSet::numbered(2);
        let pp = |s: &str| parse_poly(s, &v).unwrap();
        let det = pp("1 + x1^4*x2^2 + x1^2*x2^4 - x1^2*x2^2");
        let mult = pp("x1^2 + x2^2");
        let groups = [
            (q(1, 1), "x2 - 1/2*x1^2*x2"),
            (q(1, 1), "x1 - 1/2*x1*x2^2"),
            (q(2, 1), "x1*x2 - 1/2*x1*x2^3 - 1/2*x1^3*x2"),
            (q(3, 4), "x1*x2^2"),
            (q(3, 4), "x1^2*x2"),
            (q(1, 2), "x1*x2^3 + x1^3*x2"),
        ];
        let mut hs = Vec::new();
        for (w, e) in groups {
            for s in constant_parts(&w).unwrap() {
                hs.push(RationalFunction::from_poly(pp(e).scale(&s)));
            }
        }
        let prod = ScalarSOSCert::new(RationalFunction::from_poly(&mult * &det), hs, Provider::UserStore).unwrap();
        let mcert = sos_monomial_squares(&mult).unwrap();
        let lifted = sos_denominator_lift(&det, &mult, &prod, &mcert).unwrap();
        assert_eq!(lifted.provider(), Provider::DenominatorLift);
        assert_eq!(lifted.len(), prod.len() * 2);

        let unit = sos_denominator_lift(&mult, &pp("1"), &mcert, &mcert).unwrap();
        assert_eq!(unit, mcert);

        let bogus = ScalarSOSCert::unverified(RationalFunction::from_poly(&mult * &det), vec![], Provider::UserStore);
        assert!(matches!(
            sos_denominator_lift(&det, &mult, &bogus, &mcert),
            Err(ScalarSosError::VerificationFailed(_))
        ));
        assert_eq!(
            sos_denominator_lift(&det, &pp("0"), &prod, &mcert),
            Err(ScalarSosError::ZeroMultiplier)
        );
    }
}
