//! Constant PSD matrices are sums of squares of rational matrices.

use matsos::exactarith::BigRat;
use matsos::matrixcert::{certify, CertifyOptions};
use matsos::multipoly::{RationalFunction, VarSet};
use matsos::polymatrix::SymbolicMatrix;
use matsos::scalarsos::CertStore;

fn main() {
    let c = [[1i64, 2, 0], [0, 1, -1], [3, 0, 1]];
    let n = 3;
    let vars = VarSet::numbered(1);
    // A = C^T C
    let a = SymbolicMatrix::from_fn(n, 1, |i, j| {
        let v: i64 = (0..n).map(|k| c[k][i] * c[k][j]).sum();
        RationalFunction::constant(1, BigRat::from_integer(v.into()))
    });
    let cert = certify(&a, &vars, &CertStore::default(), CertifyOptions::default()).unwrap();
    println!("{a:?}");
    println!("{} rational squares ({})", cert.square_count, cert.provider_summary());
    println!("first square: {:?}", cert.squares[0]);
}
