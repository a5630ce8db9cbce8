//! Canonical printing: parse, expand, print, parse again.

use matsos::multipoly::{parse_poly, print_poly, RationalFunction, VarSet};

fn main() {
    let vars = VarSet::new(["x", "y"]).unwrap();
    for text in ["(x - y)^3", "-x*y - 3/4*y + 1/2", "x^2*(1 + y)^2 - x^2", "0"] {
        let p = parse_poly(text, &vars).unwrap();
        let printed = print_poly(&p, &vars);
        assert_eq!(parse_poly(&printed, &vars).unwrap(), p);
        println!("{text:<24} -> {printed}");
    }

    match parse_poly("x^2 + z", &vars) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }

    // rational functions keep a monic denominator
    let f = RationalFunction::new(parse_poly("2*x^2 - 2*y^2", &vars).unwrap(), parse_poly("2*x - 2*y", &vars).unwrap()).unwrap();
    println!("(2x^2 - 2y^2)/(2x - 2y) = {}", print_poly(f.num(), &vars));
}
