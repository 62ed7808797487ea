//! Proof rendering: LaTeX documents, indented text trees, and a JSON form
//! that can be read back into a session.

mod latex;
mod structured;
mod text;

pub use latex::{to_latex, MAX_LATEX_PREMISES};
pub use structured::{from_structured, to_structured, StructuredError, STRUCTURED_VERSION};
pub use text::to_text;

use std::str::FromStr;

use thiserror::Error;

use crate::engine::ProofSession;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExportFormat {
    Latex,
    Text,
    Structured,
}

impl ExportFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            ExportFormat::Latex => "latex",
            ExportFormat::Text => "text",
            ExportFormat::Structured => "structured",
        }
    }

    pub fn content_type(self) -> &'static str {
        match self {
            ExportFormat::Latex => "application/x-tex",
            ExportFormat::Text => "text/plain; charset=utf-8",
            ExportFormat::Structured => "application/json",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "latex" => Ok(ExportFormat::Latex),
            "text" => Ok(ExportFormat::Text),
            "structured" => Ok(ExportFormat::Structured),
            other => Err(format!("unknown export format `{other}` (latex, text, structured)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("rule {rule} has {premises} premises; LaTeX export supports at most five")]
    TooManyPremises { rule: String, premises: usize },
}

pub fn export(session: &ProofSession, format: ExportFormat) -> Result<String, ExportError> {
    match format {
        ExportFormat::Latex => to_latex(session),
        ExportFormat::Text => Ok(to_text(session)),
        ExportFormat::Structured => Ok(to_structured(session)),
    }
}
