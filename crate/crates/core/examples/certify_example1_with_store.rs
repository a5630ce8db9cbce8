//! A 2x2 matrix whose determinant is a sum of rational but not polynomial squares.

use matsos::matrixcert::{certify, CertifyOptions};
use matsos::polymatrix::parse_matrix_file;
use matsos::scalarsos::{parse_store, CertStore};

fn main() {
    let (vars, a) = parse_matrix_file(include_str!("../fixtures/example1.txt")).unwrap();

    match certify(&a, &vars, &CertStore::default(), CertifyOptions::default()) {
        Ok(_) => unreachable!("det(A) has no polynomial certificate"),
        Err(e) => println!("without a store, stage {}: {e}", e.stage()),
    }

    let store = parse_store(include_str!("../fixtures/example1_store.txt"), &vars).unwrap();
    let cert = certify(&a, &vars, &store, CertifyOptions::default()).unwrap();
    println!("with the store: {} squares, {}", cert.square_count, cert.provider_summary());
}
