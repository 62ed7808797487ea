//! Proves P impl P with modus ponens and the K and S axioms, printing the
//! goal list after every step.

use axolotl::engine::{Application, ProofSession};
use axolotl::export::to_text;
use axolotl::library::builtin;
use axolotl::term::{parse_term, PrintMode};

fn main() {
    let entry = builtin("hilbert/p_implies_p").unwrap();
    let spec = entry.spec.clone();
    let term = |s: &str| parse_term(s, &spec.signature).unwrap();
    let mut session = ProofSession::new(spec.clone());

    // MP leaves x open; preview shows it as a hole.
    let preview = session.preview(&Application::new(0, 0)).unwrap();
    println!("MP needs values for {:?}", preview.unbound);

    let steps = [
        Application::new(0, 0).bind("x", term("impl(P,impl(P,P))")),
        Application::new(1, 0).bind("x", term("impl(P,impl(impl(P,P),P))")),
        Application::new(0, 1),
        Application::new(0, 1),
        Application::new(0, 2),
    ];
    for app in &steps {
        let rule = spec.rules[app.rule_index].label(app.rule_index);
        session.apply(app).unwrap();
        let goals: Vec<String> = session.goals().iter().map(|g| spec.print(g, PrintMode::Display)).collect();
        println!("{rule:>2}: [{}]", goals.join(", "));
    }
    println!("complete: {}", session.is_complete());
    print!("{}", to_text(&session));
}
