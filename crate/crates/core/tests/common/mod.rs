//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use matsos::exactarith::BigRat;
use matsos::matrixcert::{certificate_from_json, certificate_to_json, invert_b_mod_p, split_even_odd, MatrixSOSCert};
use matsos::multipoly::{Monomial, Polynomial, RationalFunction};
use matsos::polymatrix::SymbolicMatrix;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Laplace expansion along the first row.
pub fn cofactor_det(entries: &[Polynomial], n: usize, nvars: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut total = Polynomial::zero(nvars);
    for col in 0..n {
        let minor: Vec<Polynomial> = (1..n)
            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| entries[i * n + j].clone())
            .collect();
        let term = &entries[col] * &cofactor_det(&minor, n - 1, nvars);
        total = if col % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// Some `(a, b, c, d)` with `a^2 + b^2 + c^2 + d^2 = n`, by search.
pub fn brute_four_squares(n: u64) -> Option<[u64; 4]> {
    let root = |m: u64| (m as f64).sqrt() as u64 + 1;
    for a in 0..=root(n) {
        if a * a > n {
            break;
        }
        for b in 0..=a {
            if a * a + b * b > n {
                break;
            }
            for c in 0..=b {
                let rest = n.checked_sub(a * a + b * b + c * c);
                let Some(rest) = rest else { break };
                let d = (rest as f64).sqrt() as u64;
                for d in d.saturating_sub(1)..=d + 1 {
                    if d * d == rest {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, terms: usize, max_deg: u32, coeff: i64) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut e = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial::new(e), rat(rng.gen_range(-coeff..=coeff)));
    }
    p
}

pub fn random_poly_matrix(rng: &mut ChaCha8Rng, n: usize, nvars: usize, symmetric: bool) -> SymbolicMatrix {
    let mut entries = vec![Polynomial::zero(nvars); n * n];
    for i in 0..n {
        for j in 0..n {
            if symmetric && j < i {
                entries[i * n + j] = entries[j * n + i].clone();
            } else {
                entries[i * n + j] = random_poly(rng, nvars, 3, 2, 4);
            }
        }
    }
    SymbolicMatrix::from_polys(n, nvars, entries).unwrap()
}

pub fn constant_matrix(n: usize, nvars: usize, values: &[BigRat]) -> SymbolicMatrix {
    SymbolicMatrix::from_fn(n, nvars, |i, j| RationalFunction::constant(nvars, values[i * n + j].clone()))
}

fn rat_mul(a: &[BigRat], b: &[BigRat], n: usize) -> Vec<BigRat> {
    let mut out = vec![BigRat::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] += &a[i * n + k] * &b[k * n + j];
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` if singular.
fn rat_inverse(a: &[BigRat], n: usize) -> Option<Vec<BigRat>> {
    let mut m = a.to_vec();
    let mut inv: Vec<BigRat> = (0..n * n).map(|k| if k / n == k % n { BigRat::one() } else { BigRat::zero() }).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r * n + c].is_zero())?;
        for j in 0..n {
            m.swap(c * n + j, p * n + j);
            inv.swap(c * n + j, p * n + j);
        }
        let d = m[c * n + c].clone();
        for j in 0..n {
            m[c * n + j] /= &d;
            inv[c * n + j] /= &d;
        }
        for r in (0..n).filter(|&r| r != c) {
            let f = m[r * n + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let (mv, iv) = (m[c * n + j].clone(), inv[c * n + j].clone());
                m[r * n + j] -= &f * mv;
                inv[r * n + j] -= &f * iv;
            }
        }
    }
    Some(inv)
}

/// `Q D Q^T` with `Q` the Cayley transform of a random skew matrix and `D`
/// diagonal with repeated values; returns the matrix and the distinct eigenvalues.
pub fn random_diagonalizable(rng: &mut ChaCha8Rng, n: usize) -> (Vec<BigRat>, Vec<BigRat>) {
    let mut s = vec![BigRat::zero(); n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = BigRat::new(rng.gen_range(-3..=3i64).into(), rng.gen_range(1..=3i64).into());
            s[i * n + j] = v.clone();
            s[j * n + i] = -v;
        }
    }
    let id: Vec<BigRat> = (0..n * n).map(|k| if k / n == k % n { BigRat::one() } else { BigRat::zero() }).collect();
    let minus: Vec<BigRat> = id.iter().zip(&s).map(|(a, b)| a - b).collect();
    let plus: Vec<BigRat> = id.iter().zip(&s).map(|(a, b)| a + b).collect();
    let q = rat_mul(&minus, &rat_inverse(&plus, n).expect("I + S is invertible for skew S"), n);
    let pool: Vec<BigRat> = (0..rng.gen_range(1..=n)).map(|_| rat(rng.gen_range(-4..=4))).collect();
    let diag: Vec<BigRat> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
    let mut d = vec![BigRat::zero(); n * n];
    for i in 0..n {
        d[i * n + i] = diag[i].clone();
    }
    let qt: Vec<BigRat> = (0..n * n).map(|k| q[(k % n) * n + k / n].clone()).collect();
    let a = rat_mul(&rat_mul(&q, &d, n), &qt, n);
    let mut distinct = diag;
    distinct.sort();
    distinct.dedup();
    (a, distinct)
}

/// Count law, exact JSON round trip, `b(A) A = r(A)` and `q(A) b(A) = I`.
pub fn structural_properties(a: &SymbolicMatrix, cert: &MatrixSOSCert) -> Result<(), String> {
    if !cert.count_law_holds() {
        return Err(format!("count law: {} squares, expected {}", cert.square_count, cert.expected_count()));
    }
    let text = certificate_to_json(cert);
    let back = certificate_from_json(&text).map_err(|e| e.to_string())?;
    if back.squares != cert.squares || back.minpoly != cert.minpoly || certificate_to_json(&back) != text {
        return Err("serialization round trip changed the certificate".into());
    }
    let split = split_even_odd(&cert.minpoly).map_err(|e| e.to_string())?;
    let b_of_a = a.eval_univar(&split.b);
    if b_of_a.mul(a).unwrap() != a.eval_univar(&split.r) {
        return Err("b(A) A != r(A)".into());
    }
    let q = invert_b_mod_p(&split, &cert.minpoly).map_err(|e| e.to_string())?;
    if a.eval_univar(&q).mul(&b_of_a).unwrap() != SymbolicMatrix::identity(a.dim(), a.nvars()) {
        return Err("q(A) b(A) != I".into());
    }
    Ok(())
}

use matsos::matrixcert::{certify, verify_matrix_cert, CertifyOptions, VerifyOptions};
use matsos::multipoly::{UnivarPoly, VarSet};
use matsos::polymatrix::{charpoly, det_bareiss, krylov_minpoly, minimal_polynomial, MinPolyRoute};
use matsos::scalarsos::{CertStore, Provider};
use rand::SeedableRng;

pub fn bareiss_vs_cofactor(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..count {
        let n = 1 + t % 4;
        let a = random_poly_matrix(&mut rng, n, 2, false);
        let e = a.polynomial_entries().unwrap();
        if det_bareiss(&e, n, 2) != cofactor_det(&e, n, 2) {
            return Err(format!("case {t}: determinants differ for {a:?}"));
        }
    }
    Ok(())
}

pub fn cayley_hamilton(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..count {
        let n = 1 + t % 3;
        let a = random_poly_matrix(&mut rng, n, 2, true);
        let p = charpoly(&a);
        if p.degree() != Some(n) || !p.is_monic() || !a.eval_univar(&p).is_zero() {
            return Err(format!("case {t}: charpoly does not annihilate {a:?}"));
        }
    }
    Ok(())
}

/// Squarefree part of the characteristic polynomial, Krylov, and the product
/// of `t - lambda` over the known distinct eigenvalues must agree.
pub fn squarefree_vs_krylov(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..count {
        let n = 1 + t % 4;
        let (values, eigen) = random_diagonalizable(&mut rng, n);
        let a = constant_matrix(n, 1, &values);
        let expect = eigen.iter().fold(UnivarPoly::one(1), |acc, l| {
            acc.mul(&UnivarPoly::new(1, vec![RationalFunction::constant(1, -l.clone()), RationalFunction::one(1)]))
        });
        let sf = charpoly(&a).squarefree_part().map_err(|e| e.to_string())?;
        let kr = krylov_minpoly(&a).map_err(|e| e.to_string())?;
        let mp = minimal_polynomial(&a).map_err(|e| e.to_string())?;
        if sf != expect || kr != expect || mp.to_univar() != expect || mp.route() != MinPolyRoute::SquarefreePart {
            return Err(format!("case {t}: minimal polynomials disagree for eigenvalues {eigen:?}"));
        }
    }
    Ok(())
}

/// `C^T C` for random integer `C`; only constant certificates may be used.
pub fn gram_of_integer_matrices(count: usize, seed: u64) -> Result<Vec<(SymbolicMatrix, MatrixSOSCert)>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = VarSet::numbered(1);
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        let n = 1 + t % 4;
        let c: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-5..=5)).collect();
        let mut values = vec![BigRat::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                values[i * n + j] = (0..n).map(|k| rat(c[k * n + i] * c[k * n + j])).sum();
            }
        }
        let a = constant_matrix(n, 1, &values);
        let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default())
            .map_err(|e| format!("case {t}: {e}"))?;
        if cert.scalar_certs.values().any(|s| !matches!(s.provider(), Provider::Constant | Provider::Zero)) {
            return Err(format!("case {t}: non-constant provider {}", cert.provider_summary()));
        }
        if !verify_matrix_cert(&a, &cert, VerifyOptions::full()).passed() {
            return Err(format!("case {t}: certificate rejected"));
        }
        out.push((a, cert));
    }
    Ok(out)
}
