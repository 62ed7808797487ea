//! Parses a problem file, prints its diagnostics or a summary, and shows the
//! canonical serialization.
//!
//! ```text
//! cargo run -p axolotl-core --example problem_file -- path/to/problem.axolotl
//! ```

use axolotl::problem::{parse_problem, serialize_problem};
use axolotl::term::PrintMode;

const BROKEN: &str = "Function P 0\nFunction impl 2 infix\nVariable x\nProblem 1 impl(x,P)\nFunction Q 0\nRule 0 impl(x,x)\n";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => BROKEN.to_string(),
    };
    match parse_problem(&text) {
        Err(diagnostics) => {
            for d in diagnostics {
                println!("{}:{}: {}: {}", d.line, d.column, d.kind, d.message);
            }
        }
        Ok(spec) => {
            println!("{} goals, {} rules", spec.goals.len(), spec.rules.len());
            for (i, rule) in spec.rules.iter().enumerate() {
                let premises: Vec<String> = rule.premises.iter().map(|p| spec.print(p, PrintMode::Display)).collect();
                println!(
                    "  {}: {} / {}",
                    rule.label(i),
                    premises.join("   "),
                    spec.print(&rule.conclusion, PrintMode::Display)
                );
            }
            println!("{}", serialize_problem(&spec));
        }
    }
}
