//! Matches rule patterns against ground goals and prints the substitution
//! in discovery order.

use axolotl::term::{match_pattern, parse_term, print_term, PrintMode, Signature};

fn main() {
    let mut sig = Signature::new();
    for c in ["A", "B"] {
        sig.declare_function(c, 0, false).unwrap();
    }
    sig.declare_function("impl", 2, true).unwrap();
    for v in ["x", "y"] {
        sig.declare_variable(v).unwrap();
    }

    let cases = [
        ("impl(x,impl(y,x))", "impl(A,impl(B,A))"),
        ("impl(x,x)", "impl(A,B)"),
        ("cons(x,eps)|-cons(x,eps)", "cons(A,eps)|-cons(A,eps)"),
    ];
    for (pattern, target) in cases {
        let p = parse_term(pattern, &sig).unwrap();
        let t = parse_term(target, &sig).unwrap();
        print!("{}  against  {}:", print_term(&p, &sig, PrintMode::Display), print_term(&t, &sig, PrintMode::Display));
        match match_pattern(&p, &t) {
            Ok(report) => {
                for (var, sub) in report.trace {
                    print!(" {var} := {}", print_term(&sub, &sig, PrintMode::Display));
                }
                println!();
            }
            Err(e) => println!(" {e}"),
        }
    }
}
