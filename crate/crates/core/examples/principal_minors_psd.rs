//! Principal minors and seeded PSD screening.

use matsos::multipoly::{print_poly, VarSet};
use matsos::polymatrix::{principal_minors, psd_sample_check, PsdReport, SymbolicMatrix};

fn rows(idx: &[usize]) -> String {
    let one_based: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", one_based.join(","))
}

fn main() {
    let vars = VarSet::numbered(2);
    let a = SymbolicMatrix::parse_rows(&[&["x1^2 + 1", "x1*x2"], &["x1*x2", "x2^2 + 1"]], &vars).unwrap();
    for (idx, m) in principal_minors(&a).unwrap() {
        println!("minor {}: {}", rows(&idx), print_poly(&m, &vars));
    }
    if let PsdReport::Pass { samples } = psd_sample_check(&a, 100, 0).unwrap() {
        println!("no negative minor at {samples} points");
    }

    let b = SymbolicMatrix::parse_rows(&[&["1", "x1"], &["x1", "1"]], &vars).unwrap();
    if let PsdReport::Refuted { point, minor, value } = psd_sample_check(&b, 100, 0).unwrap() {
        let at: Vec<String> = point.iter().map(|v| v.to_string()).collect();
        println!("not PSD: minor {} = {value} at ({})", rows(&minor), at.join(", "));
    }
}
