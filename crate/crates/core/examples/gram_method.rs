//! Each Gram strategy on the same polynomial, with the squares it finds.

use matsos::multipoly::{parse_poly, print_poly, VarSet};
use matsos::scalarsos::{sos_gram_with_strategy, GramStrategy};

fn main() {
    let vars = VarSet::numbered(2);
    let p = parse_poly("(x1^2 + x2^2)^2 + (x1*x2 - 1)^2", &vars).unwrap();
    for strategy in GramStrategy::ORDER {
        match sos_gram_with_strategy(&p, strategy) {
            Ok(cert) => {
                let sq: Vec<String> = cert.squares().iter().map(|g| print_poly(g.num(), &vars)).collect();
                println!("{strategy:?}: {} squares: {}", cert.len(), sq.join(" | "));
            }
            Err(e) => println!("{strategy:?}: {e}"),
        }
    }
}
