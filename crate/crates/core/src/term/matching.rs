use thiserror::Error;

use super::{Substitution, Term};

/// Result of a successful match: the substitution plus, per bound variable,
/// the (pattern variable, matched subterm) pair in discovery order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchReport {
    pub substitution: Substitution,
    pub trace: Vec<(Term, Term)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("pattern does not match")]
    NoMatch,
    #[error("match target is not ground")]
    NonGroundTarget,
}

/// One-sided first-order matching of `pattern` against the ground `target`.
///
/// Repeated pattern variables must match equal subterms. Since the target is
/// ground, a successful match is unique.
pub fn match_pattern(pattern: &Term, target: &Term) -> Result<MatchReport, MatchError> {
    if !target.is_ground() {
        return Err(MatchError::NonGroundTarget);
    }
    let mut report = MatchReport::default();
    if go(pattern, target, &mut report) {
        Ok(report)
    } else {
        Err(MatchError::NoMatch)
    }
}

fn go(pattern: &Term, target: &Term, report: &mut MatchReport) -> bool {
    match pattern {
        Term::Var(x) => match report.substitution.get(x) {
            Some(bound) => bound == target,
            None => {
                report.substitution.bind(x.clone(), target.clone());
                report.trace.push((pattern.clone(), target.clone()));
                true
            }
        },
        Term::App(f, ps) => match target {
            Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                ps.iter().zip(ts).all(|(p, t)| go(p, t, report))
            }
            _ => false,
        },
    }
}
