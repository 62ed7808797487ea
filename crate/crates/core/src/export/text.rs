use crate::engine::{ProofNode, ProofSession};
use crate::term::{print_term, PrintMode};

/// One line per node in pre-order, indented two spaces per level:
/// `[rule] goal` for closed nodes, `? goal` for open ones.
pub fn to_text(session: &ProofSession) -> String {
    let sig = &session.spec.signature;
    let mut out = String::new();
    for root in &session.roots {
        for (depth, node) in root.walk() {
            out.push_str(&"  ".repeat(depth));
            out.push_str(&marker(node));
            out.push(' ');
            out.push_str(&print_term(&node.goal, sig, PrintMode::Display));
            out.push('\n');
        }
    }
    out
}

fn marker(node: &ProofNode) -> String {
    match (node.rule_index, &node.rule_name) {
        (None, _) => "?".to_string(),
        (Some(_), Some(name)) => format!("[{name}]"),
        (Some(i), None) => format!("[rule {i}]"),
    }
}
