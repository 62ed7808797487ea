use std::borrow::Cow;

use super::print::{render, Printable, Shape};
use super::{PrintMode, Signature, Term};

/// A term that may still contain holes, as seen while a term is being built
/// or while a rule application is only partially instantiated.
///
/// `Var` stands for a free variable that has not been given a value yet and
/// renders as `x?`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Holed {
    Hole { id: usize, selected: bool },
    Var(String),
    App(String, Vec<Holed>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleStyle {
    /// Selected hole as `☐•`, others as `☐`.
    ShowSelection,
    /// Every hole as `☐`.
    Plain,
}

pub const HOLE: &str = "☐";
pub const SELECTED_HOLE: &str = "☐•";

struct Styled<'a> {
    inner: &'a Holed,
    style: HoleStyle,
    args: Vec<Styled<'a>>,
}

impl<'a> Styled<'a> {
    fn new(inner: &'a Holed, style: HoleStyle) -> Self {
        let args = match inner {
            Holed::App(_, args) => args.iter().map(|a| Styled::new(a, style)).collect(),
            _ => Vec::new(),
        };
        Styled { inner, style, args }
    }
}

impl Printable for Styled<'_> {
    fn shape(&self) -> Shape<'_, Self> {
        match self.inner {
            Holed::Hole { selected: true, .. } if self.style == HoleStyle::ShowSelection => {
                Shape::Atom(Cow::Borrowed(SELECTED_HOLE))
            }
            Holed::Hole { .. } => Shape::Atom(Cow::Borrowed(HOLE)),
            Holed::Var(name) => Shape::Atom(Cow::Owned(format!("{name}?"))),
            Holed::App(f, _) => Shape::App(f, &self.args),
        }
    }
}

impl From<&Term> for Holed {
    fn from(t: &Term) -> Self {
        match t {
            Term::Var(x) => Holed::Var(x.clone()),
            Term::App(f, args) => Holed::App(f.clone(), args.iter().map(Holed::from).collect()),
        }
    }
}

impl Holed {
    pub fn hole_count(&self) -> usize {
        match self {
            Holed::Hole { .. } => 1,
            Holed::Var(_) => 0,
            Holed::App(_, args) => args.iter().map(Holed::hole_count).sum(),
        }
    }

    /// Hole ids in pre-order (textual left-to-right order).
    pub fn holes(&self) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        self.collect_holes(&mut out);
        out
    }

    fn collect_holes(&self, out: &mut Vec<(usize, bool)>) {
        match self {
            Holed::Hole { id, selected } => out.push((*id, *selected)),
            Holed::Var(_) => {}
            Holed::App(_, args) => args.iter().for_each(|a| a.collect_holes(out)),
        }
    }

    /// The plain term, if no holes remain.
    pub fn to_term(&self) -> Option<Term> {
        match self {
            Holed::Hole { .. } => None,
            Holed::Var(x) => Some(Term::Var(x.clone())),
            Holed::App(f, args) => Some(Term::App(
                f.clone(),
                args.iter().map(Holed::to_term).collect::<Option<_>>()?,
            )),
        }
    }

    /// Replaces every occurrence of the free variable `var`.
    pub fn substitute(&self, var: &str, value: &Holed) -> Holed {
        match self {
            Holed::Var(x) if x == var => value.clone(),
            Holed::App(f, args) => {
                Holed::App(f.clone(), args.iter().map(|a| a.substitute(var, value)).collect())
            }
            other => other.clone(),
        }
    }

    pub fn render(&self, sig: &Signature, mode: PrintMode, style: HoleStyle) -> String {
        render(&Styled::new(self, style), sig, mode)
    }
}
