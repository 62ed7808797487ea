//! Problem files: `Function`, `Variable`, `Problem` and `Rule` lines.
//!
//! ```text
//! Function SYMBOL ARITY [infix]
//! Variable SYMBOL
//! Problem COUNT TERM{COUNT}
//! Rule COUNT TERM{COUNT} TERM [[NAME]]
//! ```
//!
//! Declarations come first. Tokens are separated by spaces and terms contain
//! no whitespace, so every line splits unambiguously. The last line carries
//! no line terminator.

use std::fmt;

use crate::term::{
    parse_term, print_term, well_formed, Declaration, PrintMode, Signature, SignatureError, Term,
    SEQUENT,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub premises: Vec<Term>,
    pub conclusion: Term,
    pub name: Option<String>,
}

impl Rule {
    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }

    /// Variables that occur in the premises but not in the conclusion, in
    /// order of first appearance across the premises.
    pub fn free_variables(&self) -> Vec<&str> {
        let bound = self.conclusion.vars();
        let mut out: Vec<&str> = Vec::new();
        for p in &self.premises {
            for v in p.vars() {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Name for display; unnamed rules are labelled by index.
    pub fn label(&self, index: usize) -> String {
        match &self.name {
            Some(name) => name.clone(),
            None => format!("rule {index}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub signature: Signature,
    pub goals: Vec<Term>,
    pub rules: Vec<Rule>,
    pub source_name: String,
}

impl ProblemSpec {
    pub fn print(&self, t: &Term, mode: PrintMode) -> String {
        print_term(t, &self.signature, mode)
    }

    /// Whether any goal is a sequent.
    pub fn uses_sequents(&self) -> bool {
        self.goals.iter().any(|g| g.head() == SEQUENT)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    EmptyFile,
    EmptyLine,
    TrailingLine,
    InvalidCharacter,
    UnknownPrefix,
    MalformedLine,
    DeclarationOrder,
    InvalidSymbol,
    ReservedSymbol,
    DuplicateSymbol,
    InvalidArity,
    InfixArity,
    InvalidCount,
    CountMismatch,
    MissingProblem,
    MultipleProblems,
    TermSyntax,
    VariableInGoal,
    IllFormedTerm,
    InvalidRuleName,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::EmptyFile => "empty_file",
            DiagnosticKind::EmptyLine => "empty_line",
            DiagnosticKind::TrailingLine => "trailing_line",
            DiagnosticKind::InvalidCharacter => "invalid_character",
            DiagnosticKind::UnknownPrefix => "unknown_prefix",
            DiagnosticKind::MalformedLine => "malformed_line",
            DiagnosticKind::DeclarationOrder => "declaration_order",
            DiagnosticKind::InvalidSymbol => "invalid_symbol",
            DiagnosticKind::ReservedSymbol => "reserved_symbol",
            DiagnosticKind::DuplicateSymbol => "duplicate_symbol",
            DiagnosticKind::InvalidArity => "invalid_arity",
            DiagnosticKind::InfixArity => "infix_arity",
            DiagnosticKind::InvalidCount => "invalid_count",
            DiagnosticKind::CountMismatch => "count_mismatch",
            DiagnosticKind::MissingProblem => "missing_problem",
            DiagnosticKind::MultipleProblems => "multiple_problems",
            DiagnosticKind::TermSyntax => "term_syntax",
            DiagnosticKind::VariableInGoal => "variable_in_goal",
            DiagnosticKind::IllFormedTerm => "ill_formed_term",
            DiagnosticKind::InvalidRuleName => "invalid_rule_name",
        }
    }
}

impl fmt::Display for DiagnosticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Line and column are 1-based; the column counts characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}: {}", self.line, self.column, self.kind, self.message)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Accept a final line terminator, reporting it as a warning.
    pub lenient: bool,
    pub source_name: String,
}

#[derive(Clone, Debug)]
pub struct Parsed {
    pub spec: ProblemSpec,
    pub warnings: Vec<ParseDiagnostic>,
}

/// Strict parse; the resulting spec has an empty `source_name`.
pub fn parse_problem(text: &str) -> Result<ProblemSpec, Vec<ParseDiagnostic>> {
    parse_problem_with(text, &ParseOptions::default()).map(|p| p.spec)
}

pub fn parse_problem_named(name: &str, text: &str) -> Result<ProblemSpec, Vec<ParseDiagnostic>> {
    let opts = ParseOptions {
        lenient: false,
        source_name: name.to_string(),
    };
    parse_problem_with(text, &opts).map(|p| p.spec)
}

pub fn parse_problem_with(
    text: &str,
    opts: &ParseOptions,
) -> Result<Parsed, Vec<ParseDiagnostic>> {
    let mut p = LineParser {
        sig: Signature::new(),
        goals: None,
        rules: Vec::new(),
        diagnostics: Vec::new(),
        warnings: Vec::new(),
        body_started: false,
    };

    let mut lines: Vec<&str> = text.split('\n').collect();
    if text.is_empty() {
        p.error(1, 1, DiagnosticKind::EmptyFile, "file is empty".to_string());
        return Err(p.diagnostics);
    }
    if lines.len() > 1 && lines.last() == Some(&"") {
        let line = lines.len();
        let diag = ParseDiagnostic {
            line,
            column: 1,
            kind: DiagnosticKind::TrailingLine,
            message: "trailing line after the final input line".to_string(),
        };
        if opts.lenient {
            p.warnings.push(diag);
        } else {
            p.diagnostics.push(diag);
        }
        lines.pop();
    }

    for (i, line) in lines.iter().enumerate() {
        p.line(i + 1, line);
    }

    if p.goals.is_none() {
        p.error(lines.len(), 1, DiagnosticKind::MissingProblem, "no Problem line".to_string());
    }

    if !p.diagnostics.is_empty() {
        p.diagnostics.sort_by_key(|d| (d.line, d.column));
        return Err(p.diagnostics);
    }
    Ok(Parsed {
        spec: ProblemSpec {
            signature: p.sig,
            goals: p.goals.unwrap_or_default(),
            rules: p.rules,
            source_name: opts.source_name.clone(),
        },
        warnings: p.warnings,
    })
}

struct LineParser {
    sig: Signature,
    goals: Option<Vec<Term>>,
    rules: Vec<Rule>,
    diagnostics: Vec<ParseDiagnostic>,
    warnings: Vec<ParseDiagnostic>,
    body_started: bool,
}

/// A space-separated token with its 1-based character column.
#[derive(Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch == ' ', start) {
            (true, Some((s_byte, s_col))) => {
                out.push(Token {
                    column: s_col + 1,
                    text: &line[s_byte..byte],
                });
                start = None;
            }
            (false, None) => start = Some((byte, col)),
            _ => {}
        }
    }
    if let Some((s_byte, s_col)) = start {
        out.push(Token {
            column: s_col + 1,
            text: &line[s_byte..],
        });
    }
    out
}

fn is_rule_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, ':' | '→' | '⊃' | '_' | '-'))
}

impl LineParser {
    fn error(&mut self, line: usize, column: usize, kind: DiagnosticKind, message: String) {
        self.diagnostics.push(ParseDiagnostic {
            line,
            column,
            kind,
            message,
        });
    }

    fn line(&mut self, lineno: usize, line: &str) {
        if let Some(col) = line.chars().position(|c| c == '\t' || c == '\r') {
            let what = if line.contains('\t') { "tab" } else { "carriage return" };
            self.error(
                lineno,
                col + 1,
                DiagnosticKind::InvalidCharacter,
                format!("{what} not allowed; separate tokens with spaces"),
            );
        }
        let cleaned = line.replace(['\t', '\r'], " ");
        let tokens = tokenize(&cleaned);
        let Some(prefix) = tokens.first() else {
            self.error(lineno, 1, DiagnosticKind::EmptyLine, "empty line".to_string());
            return;
        };
        match prefix.text {
            "Function" | "Variable" => {
                if self.body_started {
                    self.error(
                        lineno,
                        prefix.column,
                        DiagnosticKind::DeclarationOrder,
                        format!("{} line must occur before Problem and Rule lines", prefix.text),
                    );
                } else if prefix.text == "Function" {
                    self.function(lineno, &tokens);
                } else {
                    self.variable(lineno, &tokens);
                }
            }
            "Problem" => {
                self.body_started = true;
                self.problem(lineno, &tokens);
            }
            "Rule" => {
                self.body_started = true;
                self.rule(lineno, &tokens);
            }
            other => self.error(
                lineno,
                prefix.column,
                DiagnosticKind::UnknownPrefix,
                format!("unknown line prefix `{other}`; expected Function, Variable, Problem or Rule"),
            ),
        }
    }

    fn declaration_error(&mut self, lineno: usize, tok: Token<'_>, err: SignatureError) {
        let kind = match err {
            SignatureError::InvalidName(_) => DiagnosticKind::InvalidSymbol,
            SignatureError::Reserved(_) => DiagnosticKind::ReservedSymbol,
            SignatureError::Duplicate(_) => DiagnosticKind::DuplicateSymbol,
            SignatureError::InfixArity { .. } => DiagnosticKind::InfixArity,
        };
        self.error(lineno, tok.column, kind, err.to_string());
    }

    fn function(&mut self, lineno: usize, tokens: &[Token<'_>]) {
        if !(3..=4).contains(&tokens.len()) {
            self.error(
                lineno,
                1,
                DiagnosticKind::MalformedLine,
                "expected `Function SYMBOL ARITY [infix]`".to_string(),
            );
            return;
        }
        let Ok(arity) = tokens[2].text.parse::<usize>() else {
            self.error(
                lineno,
                tokens[2].column,
                DiagnosticKind::InvalidArity,
                format!("`{}` is not a valid arity", tokens[2].text),
            );
            return;
        };
        let infix = match tokens.get(3) {
            None => false,
            Some(t) if t.text == "infix" => true,
            Some(t) => {
                self.error(
                    lineno,
                    t.column,
                    DiagnosticKind::MalformedLine,
                    format!("unexpected `{}`; only `infix` may follow the arity", t.text),
                );
                return;
            }
        };
        if let Err(e) = self.sig.declare_function(tokens[1].text, arity, infix) {
            let tok = match e {
                SignatureError::InfixArity { .. } => tokens[3],
                _ => tokens[1],
            };
            self.declaration_error(lineno, tok, e);
        }
    }

    fn variable(&mut self, lineno: usize, tokens: &[Token<'_>]) {
        if tokens.len() != 2 {
            self.error(
                lineno,
                1,
                DiagnosticKind::MalformedLine,
                "expected `Variable SYMBOL`".to_string(),
            );
            return;
        }
        if let Err(e) = self.sig.declare_variable(tokens[1].text) {
            self.declaration_error(lineno, tokens[1], e);
        }
    }

    fn count(&mut self, lineno: usize, tokens: &[Token<'_>], prefix: &str) -> Option<usize> {
        let Some(tok) = tokens.get(1) else {
            self.error(
                lineno,
                1,
                DiagnosticKind::MalformedLine,
                format!("{prefix} line needs a count"),
            );
            return None;
        };
        match tok.text.parse::<usize>() {
            Ok(n) => Some(n),
            Err(_) => {
                self.error(
                    lineno,
                    tok.column,
                    DiagnosticKind::InvalidCount,
                    format!("{prefix} count `{}` is not a number", tok.text),
                );
                None
            }
        }
    }

    fn term(&mut self, lineno: usize, tok: Token<'_>) -> Option<Term> {
        match parse_term(tok.text, &self.sig) {
            Ok(t) => match well_formed(&t, &self.sig) {
                Ok(()) => Some(t),
                Err(v) => {
                    self.error(
                        lineno,
                        tok.column,
                        DiagnosticKind::IllFormedTerm,
                        format!("ill-formed term `{}`: {v}", tok.text),
                    );
                    None
                }
            },
            Err(e) => {
                self.error(
                    lineno,
                    tok.column + e.offset,
                    DiagnosticKind::TermSyntax,
                    e.kind.to_string(),
                );
                None
            }
        }
    }

    fn problem(&mut self, lineno: usize, tokens: &[Token<'_>]) {
        if self.goals.is_some() {
            self.error(
                lineno,
                1,
                DiagnosticKind::MultipleProblems,
                "Problem line already given; a file has exactly one".to_string(),
            );
            return;
        }
        // Parse failures below still count as "the" Problem line.
        self.goals = Some(Vec::new());
        let Some(count) = self.count(lineno, tokens, "Problem") else {
            return;
        };
        let terms = &tokens[2..];
        if count == 0 {
            self.error(
                lineno,
                tokens[1].column,
                DiagnosticKind::InvalidCount,
                "Problem needs at least one goal".to_string(),
            );
            return;
        }
        if terms.len() != count {
            self.error(
                lineno,
                tokens[1].column,
                DiagnosticKind::CountMismatch,
                format!("Problem declares {count} goals but lists {}", terms.len()),
            );
            return;
        }
        let mut goals = Vec::new();
        for &tok in terms {
            let Some(t) = self.term(lineno, tok) else { continue };
            if !t.is_ground() {
                self.error(
                    lineno,
                    tok.column,
                    DiagnosticKind::VariableInGoal,
                    format!(
                        "variables cannot occur in goals; `{}` contains {}",
                        tok.text,
                        t.vars().join(", ")
                    ),
                );
                continue;
            }
            goals.push(t);
        }
        self.goals = Some(goals);
    }

    fn rule(&mut self, lineno: usize, tokens: &[Token<'_>]) {
        let Some(count) = self.count(lineno, tokens, "Rule") else {
            return;
        };
        let mut terms = &tokens[2..];
        let mut name = None;
        if let Some(start) = terms.iter().position(|t| t.text.starts_with('[')) {
            let label = &terms[start..];
            let inner = match label {
                [only] => only
                    .text
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .filter(|s| is_rule_name(s)),
                _ => None,
            };
            match inner {
                Some(n) => name = Some(n.to_string()),
                None => {
                    let text: Vec<&str> = label.iter().map(|t| t.text).collect();
                    self.error(
                        lineno,
                        label[0].column,
                        DiagnosticKind::InvalidRuleName,
                        format!("invalid rule name `{}`", text.join(" ")),
                    );
                    return;
                }
            }
            terms = &terms[..start];
        }
        if terms.len() != count + 1 {
            self.error(
                lineno,
                tokens[1].column,
                DiagnosticKind::CountMismatch,
                format!(
                    "Rule declares {count} premises and needs {} terms including the conclusion, found {}",
                    count + 1,
                    terms.len()
                ),
            );
            return;
        }
        let parsed: Vec<Option<Term>> = terms.iter().map(|&tok| self.term(lineno, tok)).collect();
        let Some(mut patterns) = parsed.into_iter().collect::<Option<Vec<Term>>>() else {
            return;
        };
        let conclusion = patterns.pop().expect("count + 1 >= 1 terms");
        self.rules.push(Rule {
            premises: patterns,
            conclusion,
            name,
        });
    }
}

/// Canonical file text: declarations in order, then the Problem line, then
/// rules. No newline after the last line.
pub fn serialize_problem(spec: &ProblemSpec) -> String {
    let sig = &spec.signature;
    let term = |t: &Term| print_term(t, sig, PrintMode::File);
    let mut lines = Vec::new();
    for decl in sig.declarations() {
        lines.push(match decl {
            Declaration::Function(f) if f.infix => format!("Function {} {} infix", f.name, f.arity),
            Declaration::Function(f) => format!("Function {} {}", f.name, f.arity),
            Declaration::Variable(v) => format!("Variable {}", v.name),
        });
    }
    let mut problem = format!("Problem {}", spec.goals.len());
    for g in &spec.goals {
        problem.push(' ');
        problem.push_str(&term(g));
    }
    lines.push(problem);
    for rule in &spec.rules {
        let mut line = format!("Rule {}", rule.premises.len());
        for p in rule.premises.iter().chain(std::iter::once(&rule.conclusion)) {
            line.push(' ');
            line.push_str(&term(p));
        }
        if let Some(name) = &rule.name {
            line.push_str(&format!(" [{name}]"));
        }
        lines.push(line);
    }
    lines.join("\n")
}
