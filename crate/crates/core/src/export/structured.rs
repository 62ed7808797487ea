//! JSON interchange form.
//!
//! ```json
//! {
//!   "version": 1,
//!   "spec": { "source_name": "...", "text": "<problem file>" },
//!   "tree": [ { "goal": "...", "status": "closed", "rule_index": 0,
//!               "rule_name": "MP", "children": [ ... ] } ],
//!   "history": [ { "goal_position": 0, "rule_index": 0, "node_path": [0],
//!                  "bindings": [["x", "..."]], "matched": [["y", "..."]] } ]
//! }
//! ```
//!
//! Terms are in file syntax. Reading a document replays its history against
//! the embedded problem and checks that the result matches the recorded
//! tree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Application, NodeStatus, ProofNode, ProofSession, ReplayError};
use crate::problem::{parse_problem_named, serialize_problem, ParseDiagnostic};
use crate::term::{parse_term, print_term, PrintMode, Signature, Substitution, TermParseError};

pub const STRUCTURED_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Document {
    version: u32,
    spec: SpecRef,
    tree: Vec<Node>,
    history: Vec<HistoryEntry>,
}

#[derive(Serialize, Deserialize)]
struct SpecRef {
    source_name: String,
    text: String,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
struct Node {
    goal: String,
    status: Status,
    rule_index: Option<usize>,
    rule_name: Option<String>,
    children: Vec<Node>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum Status {
    Open,
    Closed,
}

#[derive(Serialize, Deserialize)]
struct HistoryEntry {
    goal_position: usize,
    rule_index: usize,
    node_path: Vec<usize>,
    bindings: Vec<(String, String)>,
    matched: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum StructuredError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported version {0}")]
    Version(u32),
    #[error("embedded problem is invalid: {}", .0.first().map(|d| d.to_string()).unwrap_or_default())]
    Spec(Vec<ParseDiagnostic>),
    #[error("binding for `{var}`: {source}")]
    Term {
        var: String,
        #[source]
        source: TermParseError,
    },
    #[error("history does not replay: {0}")]
    Replay(#[from] ReplayError),
    #[error("recorded {0} does not match the replayed proof")]
    Mismatch(&'static str),
}

fn node(n: &ProofNode, sig: &Signature) -> Node {
    Node {
        goal: print_term(&n.goal, sig, PrintMode::File),
        status: match n.status {
            NodeStatus::Open => Status::Open,
            NodeStatus::Closed => Status::Closed,
        },
        rule_index: n.rule_index,
        rule_name: n.rule_name.clone(),
        children: n.children.iter().map(|c| node(c, sig)).collect(),
    }
}

fn pairs(s: &Substitution, sig: &Signature) -> Vec<(String, String)> {
    s.iter()
        .map(|(v, t)| (v.to_string(), print_term(t, sig, PrintMode::File)))
        .collect()
}

fn document(session: &ProofSession) -> Document {
    let sig = &session.spec.signature;
    Document {
        version: STRUCTURED_VERSION,
        spec: SpecRef {
            source_name: session.spec.source_name.clone(),
            text: serialize_problem(&session.spec),
        },
        tree: session.roots.iter().map(|r| node(r, sig)).collect(),
        history: session
            .history
            .iter()
            .map(|s| HistoryEntry {
                goal_position: s.goal_position,
                rule_index: s.rule_index,
                node_path: s.node_path.clone(),
                bindings: pairs(&s.free_bindings, sig),
                matched: pairs(&s.matched.substitution, sig),
            })
            .collect(),
    }
}

/// Pretty-printed JSON, byte-identical for equal sessions.
pub fn to_structured(session: &ProofSession) -> String {
    let mut out = serde_json::to_string_pretty(&document(session)).expect("document serializes");
    out.push('\n');
    out
}

pub fn from_structured(text: &str) -> Result<ProofSession, StructuredError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.version != STRUCTURED_VERSION {
        return Err(StructuredError::Version(doc.version));
    }
    let spec = parse_problem_named(&doc.spec.source_name, &doc.spec.text).map_err(StructuredError::Spec)?;
    let mut apps = Vec::with_capacity(doc.history.len());
    for entry in &doc.history {
        let mut bindings = Substitution::new();
        for (var, term) in &entry.bindings {
            let t = parse_term(term, &spec.signature).map_err(|source| StructuredError::Term {
                var: var.clone(),
                source,
            })?;
            bindings.bind(var.clone(), t);
        }
        apps.push(Application {
            goal_position: entry.goal_position,
            rule_index: entry.rule_index,
            bindings,
        });
    }
    let session = ProofSession::replay(spec, &apps)?;
    let replayed = document(&session);
    if replayed.tree != doc.tree {
        return Err(StructuredError::Mismatch("tree"));
    }
    for (a, b) in replayed.history.iter().zip(&doc.history) {
        if a.matched != b.matched || a.node_path != b.node_path || a.bindings != b.bindings {
            return Err(StructuredError::Mismatch("history"));
        }
    }
    Ok(session)
}
