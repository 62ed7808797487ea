use indexmap::IndexMap;
use thiserror::Error;

use super::{CONS, NIL, NIL_GLYPH, SEQUENT, SEQUENT_GLYPH};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: String,
    pub arity: usize,
    /// Printed infix in display mode. Only set on binary symbols.
    pub infix: bool,
    pub builtin: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableDecl {
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Declaration {
    Function(FunctionDecl),
    Variable(VariableDecl),
}

impl Declaration {
    pub fn name(&self) -> &str {
        match self {
            Declaration::Function(f) => &f.name,
            Declaration::Variable(v) => &v.name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("`{0}` is not an alphanumeric identifier")]
    InvalidName(String),
    #[error("`{0}` is a built-in symbol")]
    Reserved(String),
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("`{name}` has arity {arity}; only binary symbols may be infix")]
    InfixArity { name: String, arity: usize },
}

/// Declared function symbols and variables, sharing a single namespace.
///
/// Declaration order is kept so that problem files serialize back the way
/// they were written. The built-ins `|-`, `cons` and `eps` are always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    decls: IndexMap<String, Declaration>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature::new()
    }
}

pub fn is_identifier(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric())
}

fn is_reserved(name: &str) -> bool {
    matches!(name, SEQUENT | CONS | NIL) || name == SEQUENT_GLYPH || name == NIL_GLYPH
}

impl Signature {
    pub fn new() -> Signature {
        let mut decls = IndexMap::new();
        for (name, arity, infix) in [(SEQUENT, 2, true), (CONS, 2, false), (NIL, 0, false)] {
            decls.insert(
                name.to_string(),
                Declaration::Function(FunctionDecl {
                    name: name.to_string(),
                    arity,
                    infix,
                    builtin: true,
                }),
            );
        }
        Signature { decls }
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if is_reserved(name) {
            return Err(SignatureError::Reserved(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(SignatureError::InvalidName(name.to_string()));
        }
        if self.decls.contains_key(name) {
            return Err(SignatureError::Duplicate(name.to_string()));
        }
        Ok(())
    }

    pub fn declare_function(
        &mut self,
        name: &str,
        arity: usize,
        infix: bool,
    ) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        if infix && arity != 2 {
            return Err(SignatureError::InfixArity {
                name: name.to_string(),
                arity,
            });
        }
        self.decls.insert(
            name.to_string(),
            Declaration::Function(FunctionDecl {
                name: name.to_string(),
                arity,
                infix,
                builtin: false,
            }),
        );
        Ok(())
    }

    pub fn declare_variable(&mut self, name: &str) -> Result<(), SignatureError> {
        self.check_fresh(name)?;
        self.decls.insert(
            name.to_string(),
            Declaration::Variable(VariableDecl {
                name: name.to_string(),
            }),
        );
        Ok(())
    }

    /// Maps the glyph aliases onto their ASCII built-in names.
    pub fn canonical_name(name: &str) -> &str {
        if name == SEQUENT_GLYPH {
            SEQUENT
        } else if name == NIL_GLYPH {
            NIL
        } else {
            name
        }
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDecl> {
        match self.decls.get(Self::canonical_name(name)) {
            Some(Declaration::Function(f)) => Some(f),
            _ => None,
        }
    }

    pub fn is_variable(&self, name: &str) -> bool {
        matches!(self.decls.get(name), Some(Declaration::Variable(_)))
    }

    pub fn is_infix(&self, name: &str) -> bool {
        self.function(name).is_some_and(|f| f.infix)
    }

    pub fn functions(&self) -> impl Iterator<Item = &FunctionDecl> {
        self.decls.values().filter_map(|d| match d {
            Declaration::Function(f) => Some(f),
            Declaration::Variable(_) => None,
        })
    }

    pub fn variables(&self) -> impl Iterator<Item = &VariableDecl> {
        self.decls.values().filter_map(|d| match d {
            Declaration::Variable(v) => Some(v),
            Declaration::Function(_) => None,
        })
    }

    /// User declarations in declaration order, built-ins excluded.
    pub fn declarations(&self) -> impl Iterator<Item = &Declaration> {
        self.decls
            .values()
            .filter(|d| !matches!(d, Declaration::Function(f) if f.builtin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_always_present() {
        let sig = Signature::new();
        let seq = sig.function(SEQUENT).unwrap();
        assert_eq!((seq.arity, seq.infix, seq.builtin), (2, true, true));
        assert_eq!(sig.function(CONS).unwrap().arity, 2);
        assert_eq!(sig.function(NIL).unwrap().arity, 0);
        assert_eq!(sig.function("⊢").unwrap().name, SEQUENT);
        assert_eq!(sig.function("ε").unwrap().name, NIL);
        assert_eq!(sig.declarations().count(), 0);
    }

    #[test]
    fn shared_namespace() {
        let mut sig = Signature::new();
        sig.declare_function("f", 2, false).unwrap();
        assert_eq!(
            sig.declare_function("f", 3, false),
            Err(SignatureError::Duplicate("f".into()))
        );
        assert_eq!(
            sig.declare_variable("f"),
            Err(SignatureError::Duplicate("f".into()))
        );
        sig.declare_variable("x").unwrap();
        assert_eq!(
            sig.declare_function("x", 0, false),
            Err(SignatureError::Duplicate("x".into()))
        );
    }

    #[test]
    fn names_and_infix_are_validated() {
        let mut sig = Signature::new();
        assert!(matches!(sig.declare_function("a-b", 0, false), Err(SignatureError::InvalidName(_))));
        assert!(matches!(sig.declare_variable(""), Err(SignatureError::InvalidName(_))));
        assert!(matches!(sig.declare_function("cons", 2, false), Err(SignatureError::Reserved(_))));
        assert!(matches!(sig.declare_variable("ε"), Err(SignatureError::Reserved(_))));
        assert!(matches!(sig.declare_function("g", 1, true), Err(SignatureError::InfixArity { .. })));
        sig.declare_function("impl", 2, true).unwrap();
        assert!(sig.is_infix("impl"));
    }

    #[test]
    fn declaration_order_is_kept() {
        let mut sig = Signature::new();
        sig.declare_variable("x").unwrap();
        sig.declare_function("P", 0, false).unwrap();
        sig.declare_variable("y").unwrap();
        let names: Vec<_> = sig.declarations().map(Declaration::name).collect();
        assert_eq!(names, ["x", "P", "y"]);
    }
}
