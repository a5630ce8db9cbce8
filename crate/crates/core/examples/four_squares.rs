//! Lagrange decompositions of integers and rationals.
//!
//! Run with `cargo run --example four_squares -- 7 3/4 1000003`.

use matsos::exactarith::{four_squares_rational, parse_rational};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if args.is_empty() {
        vec!["7".to_string(), "3/4".into(), "2/9".into(), "1000003".into()]
    } else {
        args
    };
    for text in inputs {
        let q = parse_rational(&text).expect("a rational such as 7 or -2/3");
        match four_squares_rational(&q) {
            Ok(fs) => {
                assert_eq!(fs.square_sum(), q);
                println!("{q} = {fs}");
            }
            Err(e) => println!("{q}: {e}"),
        }
    }
}
