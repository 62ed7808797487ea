//! Replays the bundled transitivity proof from its script, undoes the last
//! step, and redoes it.

use axolotl::engine::ProofSession;
use axolotl::library::builtin;
use axolotl::script::{format_script, parse_script};
use axolotl::term::PrintMode;

fn main() {
    let entry = builtin("sequent/transitivity").unwrap();
    let steps = parse_script(entry.script, &entry.spec.signature).unwrap();
    let mut session = ProofSession::new(entry.spec.clone());
    for step in &steps {
        let goal = entry.spec.print(session.goals()[step.application.goal_position], PrintMode::Display);
        let rule = entry.spec.rules[step.application.rule_index].label(step.application.rule_index);
        session.apply(&step.application).unwrap();
        println!("line {:>2}  {rule:<11} {goal}", step.line);
    }
    println!("complete after {} steps", session.history.len());

    let last = session.undo().unwrap();
    println!("undo: {} open goal(s)", session.goals().len());
    session.apply(&last.application()).unwrap();
    println!("redo: complete = {}", session.is_complete());
    print!("{}", format_script(&session.applications(), &entry.spec.signature));
}
