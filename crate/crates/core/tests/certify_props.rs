mod common;

use common::{random_poly, structural_properties};
use matsos::matrixcert::{certify, verify_matrix_cert, CertError, CertifyOptions, VerifyOptions};
use matsos::multipoly::{Polynomial, VarSet};
use matsos::polymatrix::{parse_matrix_file, SymbolicMatrix};
use matsos::scalarsos::{parse_store, CertStore};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn example2_certificate_is_sound() {
    let (vars, a) = parse_matrix_file(include_str!("../fixtures/example2.txt")).unwrap();
    let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap();
    assert_eq!(cert.square_count, cert.expected_count());
    assert!(verify_matrix_cert(&a, &cert, VerifyOptions::default()).passed());
    structural_properties(&a, &cert).unwrap();
}

#[test]
fn example1_needs_the_store() {
    let (vars, a) = parse_matrix_file(include_str!("../fixtures/example1.txt")).unwrap();
    match certify(&a, &vars, &CertStore::default(), CertifyOptions::default()) {
        Err(CertError::ScalarSosUnavailable { index: 0, .. }) => {}
        other => panic!("expected a0 to be unavailable, got {other:?}"),
    }
    let store = parse_store(include_str!("../fixtures/example1_store.txt"), &vars).unwrap();
    let cert = certify(&a, &vars, &store, CertifyOptions::default()).unwrap();
    assert!(verify_matrix_cert(&a, &cert, VerifyOptions::full()).passed());
    structural_properties(&a, &cert).unwrap();
}

/// `M^T M` for small random `M` with affine entries; every square is also
/// checked to commute with every other.
#[test]
fn small_gram_products_commute_pairwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in 0..12 {
        let nvars = 1 + t % 2;
        let n = 2;
        let m: Vec<Polynomial> = (0..n * n).map(|_| random_poly(&mut rng, nvars, 2, 1, 3)).collect();
        let mut entries = vec![Polynomial::zero(nvars); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = (0..n).fold(Polynomial::zero(nvars), |acc, k| &acc + &(&m[k * n + i] * &m[k * n + j]));
            }
        }
        let a = SymbolicMatrix::from_polys(n, nvars, entries).unwrap();
        let vars = VarSet::numbered(nvars);
        let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default())
            .unwrap_or_else(|e| panic!("case {t}: {e}"));
        let report = verify_matrix_cert(&a, &cert, VerifyOptions::full());
        assert!(report.passed(), "case {t}: {report}");
        structural_properties(&a, &cert).unwrap();
    }
}
