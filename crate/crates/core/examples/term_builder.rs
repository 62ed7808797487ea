//! Builds the value of a free premise variable hole by hole, showing the
//! goal list the rule would produce at each stage.

use axolotl::builder::BuilderState;
use axolotl::engine::{Application, ProofSession};
use axolotl::library::builtin;
use axolotl::term::{HoleStyle, PrintMode};

fn main() {
    let spec = builtin("hilbert/p_implies_p").unwrap().spec;
    let mut session = ProofSession::new(spec.clone());
    let app = Application::new(0, 0);
    let mut builder = BuilderState::for_rule(&spec, 0, "x").unwrap();
    let palette: Vec<&str> = builder.palette().iter().map(|(s, _)| s.as_str()).collect();
    println!("palette: {palette:?}");

    for symbol in ["impl", "P", "impl", "P", "P"] {
        builder.place_symbol(symbol).unwrap();
        let goals = builder.preview_problem_state(&session, &app).unwrap();
        let shown: Vec<String> = goals
            .iter()
            .map(|g| g.render(&spec.signature, PrintMode::Display, HoleStyle::Plain))
            .collect();
        println!("{:<24} goals: [{}]", builder.render(&spec.signature, PrintMode::File), shown.join(", "));
    }

    let value = builder.finish().unwrap();
    session.apply(&app.bind("x", value)).unwrap();
    println!("{} open goals", session.goals().len());
}
