//! Proof scripts: one application per line.
//!
//! ```text
//! # comment
//! step GOAL_POS RULE_INDEX (BIND VAR=TERM)*
//! ```
//!
//! Indices are zero-based. Goal positions count open goals in depth-first,
//! left-to-right order at the moment the step runs. Blank lines and lines
//! starting with `#` are ignored. Terms use file syntax.

use thiserror::Error;

use crate::engine::Application;
use crate::term::{parse_term, print_term, PrintMode, Signature, Substitution, TermParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    /// 1-based line in the script text.
    pub line: usize,
    pub application: Application,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("line {line}: expected `step GOAL_POS RULE_INDEX (BIND VAR=TERM)*`")]
    Malformed { line: usize },
    #[error("line {line}: `{text}` is not an index")]
    BadIndex { line: usize, text: String },
    #[error("line {line}: `{text}` is not a binding `VAR=TERM`")]
    BadBinding { line: usize, text: String },
    #[error("line {line}: `{var}` is not a declared variable")]
    NotAVariable { line: usize, var: String },
    #[error("line {line}: `{var}` bound twice")]
    DuplicateBinding { line: usize, var: String },
    #[error("line {line}: {source}")]
    Term {
        line: usize,
        #[source]
        source: TermParseError,
    },
}

pub fn parse_script(text: &str, sig: &Signature) -> Result<Vec<ScriptStep>, ScriptError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        if words.len() < 3 || words[0] != "step" {
            return Err(ScriptError::Malformed { line });
        }
        let index = |text: &str| {
            text.parse::<usize>().map_err(|_| ScriptError::BadIndex {
                line,
                text: text.to_string(),
            })
        };
        let goal_position = index(words[1])?;
        let rule_index = index(words[2])?;
        let mut bindings = Substitution::new();
        let mut rest = words[3..].iter();
        while let Some(&kw) = rest.next() {
            if kw != "BIND" {
                return Err(ScriptError::Malformed { line });
            }
            let Some(&binding) = rest.next() else {
                return Err(ScriptError::Malformed { line });
            };
            let Some((var, term)) = binding.split_once('=') else {
                return Err(ScriptError::BadBinding {
                    line,
                    text: binding.to_string(),
                });
            };
            if !sig.is_variable(var) {
                return Err(ScriptError::NotAVariable {
                    line,
                    var: var.to_string(),
                });
            }
            let value = parse_term(term, sig).map_err(|source| ScriptError::Term { line, source })?;
            if !bindings.bind(var, value) {
                return Err(ScriptError::DuplicateBinding {
                    line,
                    var: var.to_string(),
                });
            }
        }
        steps.push(ScriptStep {
            line,
            application: Application {
                goal_position,
                rule_index,
                bindings,
            },
        });
    }
    Ok(steps)
}

/// One `step` line per application, newline-terminated.
pub fn format_script(apps: &[Application], sig: &Signature) -> String {
    let mut out = String::new();
    for app in apps {
        out.push_str(&format!("step {} {}", app.goal_position, app.rule_index));
        for (var, term) in app.bindings.iter() {
            out.push_str(&format!(" BIND {var}={}", print_term(term, sig, PrintMode::File)));
        }
        out.push('\n');
    }
    out
}
