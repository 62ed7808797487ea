//! Terms, signatures and substitutions: the kernel every other module builds on.
//!
//! A [`Term`] is either a variable or a function symbol applied to an ordered
//! list of arguments. Constants are applications with no arguments. Goals are
//! always ground; rule premises and conclusions are patterns that may contain
//! variables.

mod holed;
mod matching;
mod parse;
mod print;
mod signature;
mod wellformed;

pub use holed::{HoleStyle, Holed};
pub use matching::{match_pattern, MatchError, MatchReport};
pub use parse::{parse_term, TermParseError, TermParseErrorKind};
pub use print::{print_term, PrintMode};
pub use signature::{Declaration, FunctionDecl, Signature, SignatureError, VariableDecl};
pub use wellformed::{well_formed, Violation, ViolationKind};

use std::fmt;

/// The sequent symbol. Binary, infix, both arguments are lists.
pub const SEQUENT: &str = "|-";
/// The list constructor.
pub const CONS: &str = "cons";
/// The empty list.
pub const NIL: &str = "eps";

/// Glyph accepted on input in place of [`SEQUENT`].
pub const SEQUENT_GLYPH: &str = "⊢";
/// Glyph accepted on input in place of [`NIL`].
pub const NIL_GLYPH: &str = "ε";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// `lhs |- rhs`.
    pub fn sequent(lhs: Term, rhs: Term) -> Term {
        Term::App(SEQUENT.to_string(), vec![lhs, rhs])
    }

    /// Builds `cons(t1, cons(t2, ... eps))`.
    pub fn list<I>(items: I) -> Term
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        items.into_iter().rev().fold(Term::constant(NIL), |tail, head| {
            Term::App(CONS.to_string(), vec![head, tail])
        })
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn head(&self) -> &str {
        match self {
            Term::Var(name) | Term::App(name, _) => name,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Variable names in first-occurrence order (depth-first, left to right),
    /// without duplicates.
    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_symbol(&self, symbol: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => f == symbol || args.iter().any(|a| a.contains_symbol(symbol)),
        }
    }

    /// All subterms in pre-order, including `self`.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let t = out[i];
            out.extend(t.args());
            i += 1;
        }
        out
    }

    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// A leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }
}

/// Prefix rendering without a signature; matches file mode.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => f.write_str(name),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Ordered variable bindings. Each variable is bound at most once and the
/// order records discovery sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: Vec<(String, Term)>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.iter().find(|(v, _)| v == var).map(|(_, t)| t)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.get(var).is_some()
    }

    /// Binds `var` unless it is already bound. Returns whether the binding was added.
    pub fn bind(&mut self, var: impl Into<String>, term: Term) -> bool {
        let var = var.into();
        if self.contains(&var) {
            return false;
        }
        self.bindings.push((var, term));
        true
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.bindings.iter().map(|(v, t)| (v.as_str(), t))
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.bindings.iter().map(|(v, _)| v.as_str())
    }

    /// Simultaneous application: bound variables are replaced once, bindings
    /// are never applied to each other.
    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(name) => self.get(name).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.apply(a)).collect()),
        }
    }
}

impl FromIterator<(String, Term)> for Substitution {
    /// Later bindings for an already bound variable are dropped.
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (v, t) in iter {
            s.bind(v, t);
        }
        s
    }
}

impl<'a> IntoIterator for &'a Substitution {
    type Item = (&'a str, &'a Term);
    type IntoIter = Box<dyn Iterator<Item = (&'a str, &'a Term)> + 'a>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(self.iter())
    }
}

pub fn apply_subst(subst: &Substitution, t: &Term) -> Term {
    subst.apply(t)
}
