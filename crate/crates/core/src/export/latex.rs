use crate::engine::{ProofNode, ProofSession};
use crate::term::{print_term, PrintMode};

use super::ExportError;

pub const MAX_LATEX_PREMISES: usize = 5;

const PREAMBLE: &str = "\\documentclass{article}
\\usepackage[a2paper]{geometry}
\\usepackage{amssymb}
\\usepackage{bussproofs}
\\begin{document}
";

const INFERENCES: [&str; MAX_LATEX_PREMISES] = [
    "\\UnaryInfC",
    "\\BinaryInfC",
    "\\TrinaryInfC",
    "\\QuaternaryInfC",
    "\\QuinaryInfC",
];

/// A standalone bussproofs document with one `prooftree` per initial goal.
/// Open goals sit below a `?` leaf. The rule list is not included.
pub fn to_latex(session: &ProofSession) -> Result<String, ExportError> {
    let mut out = String::from(PREAMBLE);
    for root in &session.roots {
        out.push_str("\\begin{prooftree}\n");
        write_node(&mut out, session, root)?;
        out.push_str("\\end{prooftree}\n");
    }
    out.push_str("\\end{document}\n");
    Ok(out)
}

fn write_node(out: &mut String, session: &ProofSession, node: &ProofNode) -> Result<(), ExportError> {
    let goal = print_term(&node.goal, &session.spec.signature, PrintMode::Latex);
    let Some(index) = node.rule_index else {
        out.push_str("\\AxiomC{?}\n");
        out.push_str(&format!("\\UnaryInfC{{${goal}$}}\n"));
        return Ok(());
    };
    let label = match &node.rule_name {
        Some(name) => name.clone(),
        None => format!("rule {index}"),
    };
    let premises = node.children.len();
    if premises > MAX_LATEX_PREMISES {
        return Err(ExportError::TooManyPremises { rule: label, premises });
    }
    if premises == 0 {
        out.push_str("\\AxiomC{}\n");
    }
    for child in &node.children {
        write_node(out, session, child)?;
    }
    out.push_str(&format!("\\RightLabel{{{}}}\n", escape_label(&label)));
    let command = INFERENCES[premises.max(1) - 1];
    out.push_str(&format!("{command}{{${goal}$}}\n"));
    Ok(())
}

fn escape_label(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        match c {
            '→' => out.push_str("$\\rightarrow$"),
            '⊃' => out.push_str("$\\supset$"),
            '_' => out.push_str("\\_"),
            c => out.push(c),
        }
    }
    out
}
