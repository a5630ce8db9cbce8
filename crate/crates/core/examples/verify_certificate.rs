//! Serialize a certificate, reload it, verify it, then tamper with it.

use matsos::matrixcert::{
    certificate_from_json, certificate_to_json, certify, verify_matrix_cert, CertifyOptions, VerifyOptions,
};
use matsos::multipoly::{RationalFunction, VarSet};
use matsos::polymatrix::SymbolicMatrix;
use matsos::scalarsos::CertStore;

fn main() {
    let vars = VarSet::new(["s", "t"]).unwrap();
    let a = SymbolicMatrix::parse_rows(&[&["s^2 + 1", "s*t"], &["s*t", "t^2 + 1"]], &vars).unwrap();
    let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap();

    let json = certificate_to_json(&cert);
    println!("{} bytes of JSON, {} squares", json.len(), cert.square_count);
    let loaded = certificate_from_json(&json).unwrap();
    println!("reloaded: {}", verify_matrix_cert(&a, &loaded, VerifyOptions::full()));

    let mut tampered = loaded;
    let bumped = tampered.squares[0].get(0, 0) + &RationalFunction::one(2);
    tampered.squares[0].set(0, 0, bumped);
    println!("tampered: {}", verify_matrix_cert(&a, &tampered, VerifyOptions::default()));
}
