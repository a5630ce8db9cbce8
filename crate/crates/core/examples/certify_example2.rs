//! Certifies the 3x3 matrix that is PSD but not a sum of polynomial squares.

use matsos::matrixcert::{certify, verify_matrix_cert, CertifyOptions, VerifyOptions};
use matsos::multipoly::print_poly;
use matsos::polymatrix::parse_matrix_file;
use matsos::scalarsos::CertStore;

fn main() {
    let text = include_str!("../fixtures/example2.txt");
    let (vars, a) = parse_matrix_file(text).expect("fixture parses");
    let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).expect("certifies");

    for (i, c) in cert.minpoly.coefficients().iter().enumerate() {
        println!("a{i} = {}", print_poly(c, &vars));
    }
    println!("providers: {}", cert.provider_summary());
    println!("squares: {} (count law gives {})", cert.square_count, cert.expected_count());
    for (stage, t) in &cert.provenance.timings {
        println!("  {stage:<20} {:>8.1?}", t);
    }

    let report = verify_matrix_cert(&a, &cert, VerifyOptions::default());
    println!("independent check: {report}");

    let first = &cert.squares[0];
    println!("M_0 (1,1) = ({}) / ({})", print_poly(first.get(0, 0).num(), &vars), print_poly(first.get(0, 0).den(), &vars));
}
