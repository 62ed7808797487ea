use std::borrow::Cow;

use super::{Signature, Term, CONS, NIL, SEQUENT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintMode {
    /// Exact file syntax: prefix everywhere, no whitespace.
    File,
    /// Human-facing: infix symbols, `⊢`, `ε`, flattened lists.
    Display,
    /// Display layout in LaTeX math notation.
    Latex,
}

/// What the printer needs to know about a node. Lets the same printer render
/// plain terms and terms with holes.
pub(crate) enum Shape<'a, T> {
    Atom(Cow<'a, str>),
    App(&'a str, &'a [T]),
}

pub(crate) trait Printable: Sized {
    fn shape(&self) -> Shape<'_, Self>;
}

impl Printable for Term {
    fn shape(&self) -> Shape<'_, Self> {
        match self {
            Term::Var(name) => Shape::Atom(Cow::Borrowed(name)),
            Term::App(f, args) => Shape::App(f, args),
        }
    }
}

pub fn print_term(t: &Term, sig: &Signature, mode: PrintMode) -> String {
    render(t, sig, mode)
}

pub(crate) fn render<T: Printable>(t: &T, sig: &Signature, mode: PrintMode) -> String {
    let mut out = String::new();
    Printer { sig, mode }.write(&mut out, t);
    out
}

struct Printer<'a> {
    sig: &'a Signature,
    mode: PrintMode,
}

impl Printer<'_> {
    fn write<T: Printable>(&self, out: &mut String, t: &T) {
        match self.mode {
            PrintMode::File => self.write_file(out, t),
            PrintMode::Display | PrintMode::Latex => self.write_pretty(out, t),
        }
    }

    fn write_file<T: Printable>(&self, out: &mut String, t: &T) {
        match t.shape() {
            Shape::Atom(s) => out.push_str(&s),
            Shape::App(f, args) => {
                out.push_str(f);
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        self.write_file(out, a);
                    }
                    out.push(')');
                }
            }
        }
    }

    fn latex(&self) -> bool {
        self.mode == PrintMode::Latex
    }

    fn symbol(&self, out: &mut String, name: &str) {
        if self.latex() && name.chars().count() > 1 {
            out.push_str("\\mathrm{");
            out.push_str(name);
            out.push('}');
        } else {
            out.push_str(name);
        }
    }

    fn write_pretty<T: Printable>(&self, out: &mut String, t: &T) {
        match t.shape() {
            Shape::Atom(s) => out.push_str(&s),
            Shape::App(f, [lhs, rhs]) if f == SEQUENT => {
                let left = self.list_items(lhs);
                let right = self.list_items(rhs);
                out.push_str(&left);
                if !left.is_empty() {
                    out.push(' ');
                }
                out.push_str(if self.latex() { "\\vdash" } else { "⊢" });
                if !right.is_empty() {
                    out.push(' ');
                }
                out.push_str(&right);
            }
            Shape::App(f, _) if f == CONS => out.push_str(&self.list_items(t)),
            Shape::App(f, []) if f == NIL => {
                out.push_str(if self.latex() { "\\varepsilon" } else { "ε" })
            }
            Shape::App(f, [a, b]) if self.sig.is_infix(f) => {
                out.push('(');
                self.write_pretty(out, a);
                out.push(' ');
                if self.latex() {
                    out.push_str("\\mathbin{");
                    self.symbol(out, f);
                    out.push('}');
                } else {
                    out.push_str(f);
                }
                out.push(' ');
                self.write_pretty(out, b);
                out.push(')');
            }
            Shape::App(f, args) => {
                self.symbol(out, f);
                if !args.is_empty() {
                    out.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        self.write_pretty(out, a);
                    }
                    out.push(')');
                }
            }
        }
    }

    /// Comma-separated list elements; `ε` at the tail is dropped.
    fn list_items<T: Printable>(&self, t: &T) -> String {
        let mut items = Vec::new();
        let mut cur = t;
        loop {
            match cur.shape() {
                Shape::App(f, [head, tail]) if f == CONS => {
                    let mut s = String::new();
                    self.write_pretty(&mut s, head);
                    items.push(s);
                    cur = tail;
                }
                Shape::App(f, []) if f == NIL => break,
                _ => {
                    let mut s = String::new();
                    self.write_pretty(&mut s, cur);
                    items.push(s);
                    break;
                }
            }
        }
        items.join(", ")
    }
}
