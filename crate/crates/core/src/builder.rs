//! Hole-directed construction of ground terms for free premise variables.
//!
//! The builder starts with a single selected hole. Placing a symbol of arity
//! k fills the selected hole with the symbol applied to k fresh holes, then
//! selects the leftmost remaining hole. No text is ever typed.

use thiserror::Error;

use crate::engine::{Application, EngineError, ProofSession};
use crate::problem::ProblemSpec;
use crate::term::{HoleStyle, Holed, PrintMode, Signature, Term, CONS, NIL, SEQUENT};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuilderError {
    #[error("`{0}` is not a declared variable")]
    NotAVariable(String),
    #[error("`{0}` is not available in the palette")]
    UnknownSymbol(String),
    #[error("no holes left to fill")]
    NoHoles,
    #[error("{0} holes left to fill")]
    Incomplete(usize),
    #[error("nothing to undo")]
    NothingToUndo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuilderState {
    target_var: String,
    partial: Holed,
    /// (hole id, symbol) in placement order.
    placements: Vec<(usize, String)>,
    /// (symbol, arity) pairs that may be placed.
    palette: Vec<(String, usize)>,
    next_hole: usize,
}

impl BuilderState {
    /// Builder offering every declared non-built-in function symbol.
    pub fn new(var: &str, sig: &Signature) -> Result<BuilderState, BuilderError> {
        if !sig.is_variable(var) {
            return Err(BuilderError::NotAVariable(var.to_string()));
        }
        let palette = sig
            .functions()
            .filter(|f| !f.builtin)
            .map(|f| (f.name.clone(), f.arity))
            .collect();
        Ok(BuilderState::with_palette(var, palette))
    }

    /// Builder for a free variable of a rule. List symbols are offered when
    /// the variable sits in a list position of some premise, and the sequent
    /// symbol when it is a whole premise of a sequent problem.
    pub fn for_rule(spec: &ProblemSpec, rule_index: usize, var: &str) -> Result<BuilderState, BuilderError> {
        let mut b = BuilderState::new(var, &spec.signature)?;
        let Some(rule) = spec.rules.get(rule_index) else {
            return Ok(b);
        };
        if rule.premises.iter().any(|p| occurs_in_list_position(p, var)) {
            b.palette.push((CONS.to_string(), 2));
            b.palette.push((NIL.to_string(), 0));
        }
        let whole = rule.premises.iter().any(|p| matches!(p, Term::Var(x) if x == var));
        if whole && spec.uses_sequents() {
            b.palette.push((SEQUENT.to_string(), 2));
            if !b.palette.iter().any(|(s, _)| s == CONS) {
                b.palette.push((CONS.to_string(), 2));
                b.palette.push((NIL.to_string(), 0));
            }
        }
        Ok(b)
    }

    fn with_palette(var: &str, palette: Vec<(String, usize)>) -> BuilderState {
        BuilderState {
            target_var: var.to_string(),
            partial: Holed::Hole { id: 0, selected: true },
            placements: Vec::new(),
            palette,
            next_hole: 1,
        }
    }

    pub fn target_var(&self) -> &str {
        &self.target_var
    }

    pub fn partial(&self) -> &Holed {
        &self.partial
    }

    pub fn palette(&self) -> &[(String, usize)] {
        &self.palette
    }

    pub fn placements(&self) -> &[(usize, String)] {
        &self.placements
    }

    pub fn hole_count(&self) -> usize {
        self.partial.hole_count()
    }

    pub fn is_complete(&self) -> bool {
        self.hole_count() == 0
    }

    pub fn selected_hole(&self) -> Option<usize> {
        self.partial.holes().into_iter().find(|&(_, sel)| sel).map(|(id, _)| id)
    }

    pub fn render(&self, sig: &Signature, mode: PrintMode) -> String {
        self.partial.render(sig, mode, HoleStyle::ShowSelection)
    }

    pub fn place_symbol(&mut self, symbol: &str) -> Result<(), BuilderError> {
        let canonical = Signature::canonical_name(symbol);
        let Some(&(_, arity)) = self.palette.iter().find(|(s, _)| s == canonical) else {
            return Err(BuilderError::UnknownSymbol(symbol.to_string()));
        };
        let Some(target) = self.selected_hole() else {
            return Err(BuilderError::NoHoles);
        };
        let holes = (0..arity)
            .map(|i| Holed::Hole {
                id: self.next_hole + i,
                selected: false,
            })
            .collect();
        self.next_hole += arity;
        let filled = Holed::App(canonical.to_string(), holes);
        self.partial = fill(&self.partial, target, &filled);
        if let Some(&(first, _)) = self.partial.holes().first() {
            self.partial = select(&self.partial, first);
        }
        self.placements.push((target, canonical.to_string()));
        Ok(())
    }

    pub fn undo_placement(&mut self) -> Result<(), BuilderError> {
        if self.placements.pop().is_none() {
            return Err(BuilderError::NothingToUndo);
        }
        let symbols: Vec<String> = self.placements.iter().map(|(_, s)| s.clone()).collect();
        let mut fresh = BuilderState::with_palette(&self.target_var, self.palette.clone());
        for s in &symbols {
            fresh.place_symbol(s).expect("replaying a valid placement");
        }
        *self = fresh;
        Ok(())
    }

    /// Discards the builder; start a new one to try again.
    pub fn abandon(self) {}

    pub fn finish(&self) -> Result<Term, BuilderError> {
        self.partial
            .to_term()
            .ok_or(BuilderError::Incomplete(self.hole_count()))
    }

    /// The goal list the session would have if the target variable were
    /// bound to the current partial term. `app` carries any values already
    /// chosen for the rule's other free variables.
    pub fn preview_problem_state(
        &self,
        session: &ProofSession,
        app: &Application,
    ) -> Result<Vec<Holed>, EngineError> {
        let mut others = app.clone();
        others.bindings = app
            .bindings
            .iter()
            .filter(|(v, _)| *v != self.target_var)
            .map(|(v, t)| (v.to_string(), t.clone()))
            .collect();
        let preview = session.preview(&others)?;
        let plain = unselect(&self.partial);
        Ok(preview
            .goals
            .iter()
            .map(|g| g.substitute(&self.target_var, &plain))
            .collect())
    }
}

fn fill(h: &Holed, target: usize, value: &Holed) -> Holed {
    match h {
        Holed::Hole { id, .. } if *id == target => value.clone(),
        Holed::App(f, args) => Holed::App(f.clone(), args.iter().map(|a| fill(a, target, value)).collect()),
        other => other.clone(),
    }
}

fn select(h: &Holed, target: usize) -> Holed {
    match h {
        Holed::Hole { id, .. } => Holed::Hole {
            id: *id,
            selected: *id == target,
        },
        Holed::App(f, args) => Holed::App(f.clone(), args.iter().map(|a| select(a, target)).collect()),
        other => other.clone(),
    }
}

fn unselect(h: &Holed) -> Holed {
    select(h, usize::MAX)
}

/// True when `var` appears where a list is expected: directly under `|-`
/// or as the tail of a `cons`.
fn occurs_in_list_position(t: &Term, var: &str) -> bool {
    match t {
        Term::Var(_) => false,
        Term::App(f, args) => {
            let is_var = |a: &Term| matches!(a, Term::Var(x) if x == var);
            let direct = if f == SEQUENT {
                args.iter().any(is_var)
            } else if f == CONS {
                is_var(&args[1])
            } else {
                false
            };
            direct || args.iter().any(|a| occurs_in_list_position(a, var))
        }
    }
}
