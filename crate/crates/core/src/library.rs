//! Problems bundled with the crate, each with a complete proof script.

use crate::engine::{Application, ProofSession, ReplayError};
use crate::problem::{parse_problem_named, ProblemSpec};
use crate::script::{parse_script, ScriptError};

pub const CATEGORIES: [&str; 4] = ["hilbert", "sequent", "natural-deduction", "rewriting"];

#[derive(Clone, Debug)]
pub struct LibraryEntry {
    /// `category/name`, e.g. `sequent/transitivity`.
    pub id: String,
    pub category: String,
    pub name: String,
    pub text: &'static str,
    pub script: &'static str,
    pub spec: ProblemSpec,
}

impl LibraryEntry {
    pub fn applications(&self) -> Result<Vec<Application>, ScriptError> {
        Ok(parse_script(self.script, &self.spec.signature)?
            .into_iter()
            .map(|s| s.application)
            .collect())
    }

    /// Replays the bundled script.
    pub fn solved(&self) -> Result<ProofSession, ReplayError> {
        let apps = self.applications().expect("bundled scripts parse");
        ProofSession::replay(self.spec.clone(), &apps)
    }
}

macro_rules! bundled {
    ($category:literal, $name:literal) => {
        (
            $category,
            $name,
            include_str!(concat!("../library/", $category, "/", $name, ".axolotl")),
            include_str!(concat!("../library/", $category, "/", $name, ".proof")),
        )
    };
}

const BUNDLED: [(&str, &str, &str, &str); 4] = [
    bundled!("hilbert", "p_implies_p"),
    bundled!("sequent", "transitivity"),
    bundled!("natural-deduction", "contrapositive"),
    bundled!("rewriting", "ac_permutation"),
];

pub fn builtin_library() -> Vec<LibraryEntry> {
    BUNDLED
        .iter()
        .map(|&(category, name, text, script)| LibraryEntry {
            id: format!("{category}/{name}"),
            category: category.to_string(),
            name: name.to_string(),
            text,
            script,
            spec: parse_problem_named(name, text)
                .unwrap_or_else(|d| panic!("bundled problem {category}/{name} is invalid: {d:?}")),
        })
        .collect()
}

/// Looks up a bundled problem by id.
pub fn builtin(id: &str) -> Option<LibraryEntry> {
    builtin_library().into_iter().find(|e| e.id == id)
}
