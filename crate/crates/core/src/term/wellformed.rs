use std::fmt;

use super::{Signature, Term, CONS, NIL, SEQUENT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    UnknownSymbol(String),
    UndeclaredVariable(String),
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    /// `|-` somewhere other than the root.
    NestedSequent,
    /// An argument of `|-` that is not a list term.
    SequentSideNotList,
    /// The tail of a `cons` that is not a list term.
    ListTailNotList,
    /// A list element containing `cons` or `eps`.
    ListInListElement,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ViolationKind::UndeclaredVariable(s) => write!(f, "undeclared variable `{s}`"),
            ViolationKind::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(f, "`{symbol}` expects {expected} arguments, found {found}"),
            ViolationKind::NestedSequent => f.write_str("sequent symbol below another symbol"),
            ViolationKind::SequentSideNotList => f.write_str("sequent argument is not a list"),
            ViolationKind::ListTailNotList => f.write_str("list tail is not a list"),
            ViolationKind::ListInListElement => f.write_str("list nested in a list element"),
        }
    }
}

/// The first violated constraint and the argument path to the offending
/// subterm (empty path = root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub path: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{} at root", self.kind)
        } else {
            let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
            write!(f, "{} at argument path {}", self.kind, path.join("."))
        }
    }
}

impl std::error::Error for Violation {}

#[derive(Clone, Copy)]
enum ListRole {
    SequentSide,
    Tail,
}

struct Checker<'a> {
    sig: &'a Signature,
    path: Vec<usize>,
}

/// Checks declarations, arities and the list/sequent discipline of the
/// built-ins: `|-` only at the root with list arguments, and list elements
/// free of `cons`, `eps` and `|-`.
pub fn well_formed(t: &Term, sig: &Signature) -> Result<(), Violation> {
    let mut c = Checker {
        sig,
        path: Vec::new(),
    };
    match t {
        Term::App(f, args) if f == SEQUENT => {
            c.symbol(t)?;
            for (i, side) in args.iter().enumerate() {
                c.at(i, |c| c.list(side, ListRole::SequentSide))?;
            }
            Ok(())
        }
        _ => c.general(t),
    }
}

impl Checker<'_> {
    fn fail<T>(&self, kind: ViolationKind) -> Result<T, Violation> {
        Err(Violation {
            kind,
            path: self.path.clone(),
        })
    }

    fn at<T>(
        &mut self,
        index: usize,
        f: impl FnOnce(&mut Self) -> Result<T, Violation>,
    ) -> Result<T, Violation> {
        self.path.push(index);
        let r = f(self);
        self.path.pop();
        r
    }

    fn symbol(&self, t: &Term) -> Result<(), Violation> {
        match t {
            Term::Var(name) if self.sig.is_variable(name) => Ok(()),
            Term::Var(name) => self.fail(ViolationKind::UndeclaredVariable(name.clone())),
            Term::App(f, args) => match self.sig.function(f) {
                None => self.fail(ViolationKind::UnknownSymbol(f.clone())),
                Some(decl) if decl.arity != args.len() => self.fail(ViolationKind::ArityMismatch {
                    symbol: f.clone(),
                    expected: decl.arity,
                    found: args.len(),
                }),
                Some(_) => Ok(()),
            },
        }
    }

    fn general(&mut self, t: &Term) -> Result<(), Violation> {
        self.symbol(t)?;
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, _) if f == SEQUENT => self.fail(ViolationKind::NestedSequent),
            Term::App(f, _) if f == CONS => self.list(t, ListRole::Tail),
            Term::App(_, args) => {
                for (i, a) in args.iter().enumerate() {
                    self.at(i, |c| c.general(a))?;
                }
                Ok(())
            }
        }
    }

    fn list(&mut self, t: &Term, role: ListRole) -> Result<(), Violation> {
        self.symbol(t)?;
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, _) if f == NIL => Ok(()),
            Term::App(f, args) if f == CONS => {
                self.at(0, |c| c.element(&args[0]))?;
                self.at(1, |c| c.list(&args[1], ListRole::Tail))
            }
            Term::App(f, _) if f == SEQUENT => self.fail(ViolationKind::NestedSequent),
            Term::App(..) => self.fail(match role {
                ListRole::SequentSide => ViolationKind::SequentSideNotList,
                ListRole::Tail => ViolationKind::ListTailNotList,
            }),
        }
    }

    fn element(&mut self, t: &Term) -> Result<(), Violation> {
        self.symbol(t)?;
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, _) if f == SEQUENT => self.fail(ViolationKind::NestedSequent),
            Term::App(f, _) if f == CONS || f == NIL => {
                self.fail(ViolationKind::ListInListElement)
            }
            Term::App(_, args) => {
                for (i, a) in args.iter().enumerate() {
                    self.at(i, |c| c.element(a))?;
                }
                Ok(())
            }
        }
    }
}
