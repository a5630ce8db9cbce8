//! Minimal polynomial in alternating-sign form, two ways.

use matsos::multipoly::print_poly;
use matsos::polymatrix::{charpoly, check_lemma_form, krylov_minpoly, minimal_polynomial, parse_matrix_file};

fn main() {
    let (vars, a) = parse_matrix_file(include_str!("../fixtures/example2.txt")).unwrap();
    let cp = charpoly(&a);
    println!("characteristic polynomial has degree {}", cp.degree().unwrap());

    let mp = minimal_polynomial(&a).unwrap();
    println!("minimal polynomial (route {:?}), p(t) = sum (-1)^(d-i) a_i t^i:", mp.route());
    for i in (0..=mp.degree()).rev() {
        println!("  a{i} = {}", print_poly(&mp.coeff(i), &vars));
    }
    assert_eq!(krylov_minpoly(&a).unwrap(), mp.to_univar());
    assert!(a.eval_univar(&mp.to_univar()).is_zero());

    let report = check_lemma_form(&mp, 200, 7).unwrap();
    println!("nonzero coefficients {:?}, nonnegative at {} sample points", report.nonzero, report.samples);
}
