//! Gram-matrix search for polynomial sum-of-squares certificates.
//!
//! `p = z^T G z` over a monomial vector `z`. Every entry `G[a][b]` feeds the
//! coefficient of exactly one monomial `z_a z_b`, so the coefficient-matching
//! system splits into one equation per product monomial. A particular solution
//! is fixed by deciding, for each equation, which entries carry the
//! coefficient; the rest are pinned to zero. The resulting `G` is then
//! factored as `L D L^T` in exact arithmetic. Failure is not a proof that `p`
//! is not a sum of squares.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::bounds::propagated_gram;
use super::providers::constant_parts;
use super::{Provider, ScalarSOSCert, ScalarSosError};
use crate::exactarith::BigRat;
use crate::multipoly::{Monomial, Polynomial, RationalFunction};

const MAX_BASIS: usize = 120;

/// How each coefficient-matching equation is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramStrategy {
    /// All of the coefficient on the first off-diagonal entry, when one exists.
    OffDiagonalFirst,
    /// All of the coefficient on the diagonal entry, when one exists.
    DiagonalFirst,
    /// Equal values on every entry of the equation (the least-norm solution).
    Balanced,
    /// Entries bounded by interval propagation, then fixed class by class.
    Propagated,
}

impl GramStrategy {
    pub const ORDER: [GramStrategy; 4] = [
        GramStrategy::OffDiagonalFirst,
        GramStrategy::DiagonalFirst,
        GramStrategy::Balanced,
        GramStrategy::Propagated,
    ];
}

/// Tries each [`GramStrategy`] in [`GramStrategy::ORDER`]; the first
/// particular solution with a nonnegative `L D L^T` factorization wins.
pub fn sos_gram_attempt(p: &Polynomial) -> Result<ScalarSOSCert, ScalarSosError> {
    let nvars = p.nvars();
    if p.is_zero() {
        return ScalarSOSCert::new(RationalFunction::zero(nvars), Vec::new(), Provider::Gram);
    }
    check_necessary(p)?;
    let basis = half_newton_basis(p)?;
    let classes = product_classes(&basis);
    if let Some((m, _)) = p.terms().find(|(m, _)| !classes.contains_key(*m)) {
        return Err(ScalarSosError::NotFound(format!(
            "monomial {:?} is not a product of basis monomials",
            m.exponents()
        )));
    }
    let mut reasons = Vec::new();
    for strategy in GramStrategy::ORDER {
        match particular_solution(p, &basis, &classes, strategy).and_then(|g| ldl_squares(&g, &basis, nvars)) {
            Ok(squares) => {
                return ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::Gram)
            }
            Err(why) => reasons.push(format!("{strategy:?}: {why}")),
        }
    }
    Err(ScalarSosError::NotFound(reasons.join("; ")))
}

/// Runs a single strategy; exposed for diagnostics and tests.
pub fn sos_gram_with_strategy(p: &Polynomial, strategy: GramStrategy) -> Result<ScalarSOSCert, ScalarSosError> {
    let nvars = p.nvars();
    check_necessary(p)?;
    let basis = half_newton_basis(p)?;
    let classes = product_classes(&basis);
    if p.terms().any(|(m, _)| !classes.contains_key(m)) {
        return Err(ScalarSosError::NotFound("support outside basis products".into()));
    }
    let squares = particular_solution(p, &basis, &classes, strategy)
        .and_then(|g| ldl_squares(&g, &basis, nvars))
        .map_err(ScalarSosError::NotFound)?;
    ScalarSOSCert::new(RationalFunction::from_poly(p.clone()), squares, Provider::Gram)
}

// Vertices of the Newton polytope found by lexicographic optimization must be
// even with positive coefficient; the total degree must be even.
fn check_necessary(p: &Polynomial) -> Result<(), ScalarSosError> {
    let not_found = |why: String| Err(ScalarSosError::NotFound(why));
    if p.total_degree().is_some_and(|d| d % 2 == 1) {
        return not_found("odd total degree".into());
    }
    let n = p.nvars();
    let mut vertices: Vec<(&Monomial, &BigRat)> = Vec::new();
    vertices.extend(p.leading_term());
    vertices.extend(p.terms().next());
    for first in 0..n {
        let key = |m: &Monomial| -> Vec<u32> {
            let e = m.exponents();
            (0..n).map(|k| e[(first + k) % n]).collect()
        };
        vertices.extend(p.terms().max_by_key(|(m, _)| key(m)));
        vertices.extend(p.terms().min_by_key(|(m, _)| key(m)));
    }
    for (m, c) in vertices {
        if !m.is_even() || !c.is_positive() {
            return not_found(format!(
                "extreme monomial {:?} must be even with positive coefficient",
                m.exponents()
            ));
        }
    }
    Ok(())
}

// Monomials in the half bounding box of the support, pruned of those whose
// square cannot be produced.
fn half_newton_basis(p: &Polynomial) -> Result<Vec<Monomial>, ScalarSosError> {
    let n = p.nvars();
    let support: BTreeSet<Monomial> = p.terms().map(|(m, _)| m.clone()).collect();
    let mut lo = vec![u32::MAX; n];
    let mut hi = vec![0u32; n];
    let (mut dlo, mut dhi) = (u32::MAX, 0u32);
    for m in &support {
        for (k, &e) in m.exponents().iter().enumerate() {
            lo[k] = lo[k].min(e);
            hi[k] = hi[k].max(e);
        }
        dlo = dlo.min(m.degree());
        dhi = dhi.max(m.degree());
    }
    let lo: Vec<u32> = lo.iter().map(|e| e.div_ceil(2)).collect();
    let hi: Vec<u32> = hi.iter().map(|e| e / 2).collect();
    let (dlo, dhi) = (dlo.div_ceil(2), dhi / 2);

    let mut basis: BTreeSet<Monomial> = BTreeSet::new();
    let mut current = lo.clone();
    'outer: loop {
        let d: u32 = current.iter().sum();
        if (dlo..=dhi).contains(&d) {
            basis.insert(Monomial::new(current.clone()));
            if basis.len() > MAX_BASIS {
                return Err(ScalarSosError::NotFound(format!(
                    "candidate basis exceeds {MAX_BASIS} monomials"
                )));
            }
        }
        for k in 0..n {
            if current[k] < hi[k] {
                current[k] += 1;
                continue 'outer;
            }
            current[k] = lo[k];
        }
        break;
    }

    loop {
        let doubled_pairs: BTreeSet<Monomial> = basis
            .iter()
            .flat_map(|a| basis.range(..a).map(move |b| a.mul(b)))
            .collect();
        let before = basis.len();
        basis.retain(|z| {
            let sq = z.pow(2);
            support.contains(&sq) || doubled_pairs.contains(&sq)
        });
        if basis.len() == before {
            break;
        }
    }
    Ok(basis.into_iter().collect())
}

// Product monomial -> index pairs (a <= b) producing it.
fn product_classes(basis: &[Monomial]) -> BTreeMap<Monomial, Vec<(usize, usize)>> {
    let mut classes: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..basis.len() {
        for b in a..basis.len() {
            classes.entry(basis[a].mul(&basis[b])).or_default().push((a, b));
        }
    }
    classes
}

fn particular_solution(
    p: &Polynomial,
    basis: &[Monomial],
    classes: &BTreeMap<Monomial, Vec<(usize, usize)>>,
    strategy: GramStrategy,
) -> Result<Vec<BigRat>, String> {
    if strategy == GramStrategy::Propagated {
        return propagated_gram(p, basis, classes);
    }
    let k = basis.len();
    let mut gram = vec![BigRat::zero(); k * k];
    let mut put = |a: usize, b: usize, v: BigRat| {
        gram[a * k + b] = v.clone();
        gram[b * k + a] = v;
    };
    let two = BigRat::from_integer(2.into());
    for (gamma, pairs) in classes {
        let c = p.coeff(gamma);
        if c.is_zero() {
            continue;
        }
        let diagonal = pairs.iter().find(|(a, b)| a == b);
        let off = pairs.iter().find(|(a, b)| a != b);
        match strategy {
            GramStrategy::OffDiagonalFirst | GramStrategy::DiagonalFirst => {
                let pick = if strategy == GramStrategy::OffDiagonalFirst {
                    off.or(diagonal)
                } else {
                    diagonal.or(off)
                };
                let &(a, b) = pick.expect("class is nonempty");
                let v = if a == b { c } else { c / &two };
                put(a, b, v);
            }
            GramStrategy::Propagated => unreachable!("handled above"),
            GramStrategy::Balanced => {
                let weight: usize = pairs.iter().map(|(a, b)| if a == b { 1 } else { 2 }).sum();
                let v = c / BigRat::from_integer(weight.into());
                for &(a, b) in pairs {
                    put(a, b, v.clone());
                }
            }
        }
    }
    Ok(gram)
}

// L D L^T with pivots taken in descending monomial order. A negative pivot,
// or a zero pivot with a nonzero row, rejects the candidate.
fn ldl_squares(gram: &[BigRat], basis: &[Monomial], nvars: usize) -> Result<Vec<RationalFunction>, String> {
    let k = basis.len();
    let mut g = gram.to_vec();
    let mut squares = Vec::new();
    for piv in (0..k).rev() {
        let d = g[piv * k + piv].clone();
        if d.is_negative() {
            return Err(format!("negative pivot at {:?}", basis[piv].exponents()));
        }
        if d.is_zero() {
            if (0..piv).any(|j| !g[piv * k + j].is_zero()) {
                return Err(format!("zero pivot with nonzero row at {:?}", basis[piv].exponents()));
            }
            continue;
        }
        let ratios: Vec<BigRat> = (0..piv).map(|j| &g[j * k + piv] / &d).collect();
        for i in 0..piv {
            if ratios[i].is_zero() {
                continue;
            }
            for j in 0..=i {
                let upd = &ratios[i] * &g[j * k + piv];
                let v = &g[i * k + j] - &upd;
                g[i * k + j] = v.clone();
                g[j * k + i] = v;
            }
        }
        let mut form = Polynomial::term(basis[piv].clone(), BigRat::from_integer(1.into()));
        for (j, r) in ratios.iter().enumerate() {
            form.add_term(basis[j].clone(), r.clone());
        }
        for s in constant_parts(&d).expect("positive pivot") {
            squares.push(RationalFunction::from_poly(form.scale(&s)));
        }
    }
    let _ = nvars;
    Ok(squares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::{parse_poly, VarSet};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &VarSet::numbered(2)).unwrap()
    }

    #[test]
    fn square_of_sum_of_squares() {
        let cert = sos_gram_attempt(&p("x1^4 + 2*x1^2*x2^2 + x2^4")).unwrap();
        assert_eq!(cert.provider(), Provider::Gram);
        assert_eq!(cert.squares(), [RationalFunction::from_poly(p("x1^2 + x2^2"))]);
    }

    #[test]
    fn example1_quadratic_form_is_not_found() {
        let f = p("2 + x1^4*x2^2 + x1^2*x2^4 - 2*x1*x2");
        assert!(matches!(sos_gram_attempt(&f), Err(ScalarSosError::NotFound(_))));
    }

    #[test]
    fn zero_is_empty() {
        assert!(sos_gram_attempt(&p("0")).unwrap().is_empty());
    }

    #[test]
    fn necessary_conditions() {
        assert!(sos_gram_attempt(&p("x1^3 + 1")).is_err());
        assert!(sos_gram_attempt(&p("x1^2 - x2^4")).is_err());
        assert!(sos_gram_attempt(&p("x1*x2")).is_err());
    }

    #[test]
    fn negative_cross_term() {
        let cert = sos_gram_attempt(&p("(1 - x1^2)^2")).unwrap();
        assert_eq!(cert.len(), 1);
    }

    #[test]
    fn basis_follows_half_newton_polytope() {
        let basis = half_newton_basis(&p("x1^4 + x2^4")).unwrap();
        assert_eq!(
            basis,
            [Monomial::new(vec![0, 2]), Monomial::new(vec![1, 1]), Monomial::new(vec![2, 0])]
        );
        // x1^2*x2^2 only enters through x1^2 * x2^2 cross pairs
        let basis = half_newton_basis(&p("x1^4 + 1")).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(!basis.contains(&Monomial::new(vec![0, 1])));
    }
}
