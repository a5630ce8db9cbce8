//! The scalar provider chain, including a failure report for the Motzkin form.

use matsos::multipoly::{parse_poly, print_poly, VarSet};
use matsos::scalarsos::{parse_store, scalar_sos_pipeline, CertStore};

fn main() {
    let vars = VarSet::numbered(2);
    let empty = CertStore::default();
    for text in [
        "7/9",
        "x1^2 + 2*x1*x2 + x2^2",
        "2 + x1^4*x2^2 + x1^2*x2^4",
        "x1^2 - 2*x1*x2 + 2*x2^2",
        "x1^4*x2^2 + x1^2*x2^4 - 3*x1^2*x2^2 + 1",
    ] {
        let p = parse_poly(text, &vars).unwrap();
        match scalar_sos_pipeline(&p, &empty) {
            Ok(cert) => {
                let sq: Vec<String> = cert
                    .squares()
                    .iter()
                    .map(|g| format!("({})^2", print_poly(g.num(), &vars)))
                    .collect();
                println!("[{}] {text} = {}", cert.provider(), sq.join(" + "));
            }
            Err(e) => println!("{text}: {e}"),
        }
    }

    // A store record: the squares certify (x1^2 + x2^2) * target, and the
    // multiplier is divided back out.
    let store = parse_store(include_str!("../fixtures/example1_store.txt"), &vars).unwrap();
    let det = &store.records()[0].target;
    let cert = scalar_sos_pipeline(det, &store).unwrap();
    println!("det(A): {} rational squares via {}", cert.len(), cert.provider());
}
