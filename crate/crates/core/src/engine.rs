//! Backward proof construction.
//!
//! A session holds one proof tree per initial goal. The goal list is the
//! sequence of open leaves in depth-first, left-to-right order; a goal's
//! position is its index in that sequence and is recomputed after every
//! change.

use thiserror::Error;

use crate::problem::{ProblemSpec, Rule};
use crate::term::{match_pattern, well_formed, Holed, MatchReport, Substitution, Term, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    Open,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub goal: Term,
    pub status: NodeStatus,
    pub rule_index: Option<usize>,
    /// Rule name at the time of application.
    pub rule_name: Option<String>,
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    pub fn open(goal: Term) -> ProofNode {
        ProofNode {
            goal,
            status: NodeStatus::Open,
            rule_index: None,
            rule_name: None,
            children: Vec::new(),
        }
    }

    pub fn is_open(&self) -> bool {
        self.status == NodeStatus::Open
    }

    /// Closed with no children, i.e. closed by an axiom.
    pub fn is_axiom_leaf(&self) -> bool {
        self.status == NodeStatus::Closed && self.children.is_empty()
    }

    /// Pre-order traversal with depths, starting at 0 for `self`.
    pub fn walk(&self) -> Vec<(usize, &ProofNode)> {
        let mut out = Vec::new();
        let mut stack = vec![(0, self)];
        while let Some((depth, node)) = stack.pop() {
            out.push((depth, node));
            for child in node.children.iter().rev() {
                stack.push((depth + 1, child));
            }
        }
        out
    }

    fn open_paths(&self, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if self.is_open() {
            out.push(prefix.clone());
            return;
        }
        for (i, child) in self.children.iter().enumerate() {
            prefix.push(i);
            child.open_paths(prefix, out);
            prefix.pop();
        }
    }
}

/// What a caller asks for: which goal, which rule, and values for the
/// rule's free premise variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Application {
    pub goal_position: usize,
    pub rule_index: usize,
    pub bindings: Substitution,
}

impl Application {
    pub fn new(goal_position: usize, rule_index: usize) -> Application {
        Application {
            goal_position,
            rule_index,
            bindings: Substitution::new(),
        }
    }

    pub fn bind(mut self, var: &str, term: Term) -> Application {
        self.bindings.bind(var, term);
        self
    }
}

/// A recorded application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub goal_position: usize,
    pub rule_index: usize,
    /// Match of the rule's conclusion against the goal.
    pub matched: MatchReport,
    /// Values for the free premise variables, in prompting order.
    pub free_bindings: Substitution,
    /// Root index followed by child indices of the node this step closed.
    pub node_path: Vec<usize>,
}

impl Step {
    pub fn application(&self) -> Application {
        Application {
            goal_position: self.goal_position,
            rule_index: self.rule_index,
            bindings: self.free_bindings.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApplicationPreview {
    pub report: MatchReport,
    /// Free premise variables without a value, in prompting order.
    pub unbound: Vec<String>,
    /// Instantiated premises; unbound variables remain as `Holed::Var`.
    pub premises: Vec<Holed>,
    /// The whole goal list as it would be after the application.
    pub goals: Vec<Holed>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("goal position {position} out of range ({count} open goals)")]
    InvalidGoalPosition { position: usize, count: usize },
    #[error("rule index {index} out of range ({count} rules)")]
    InvalidRuleIndex { index: usize, count: usize },
    #[error("conclusion of rule {rule} does not match the goal")]
    NoMatch { rule: String },
    #[error("no value given for {}", .0.join(", "))]
    UnresolvedVariables(Vec<String>),
    #[error("premise {index} would be ill-formed: {violation}")]
    IllFormedPremise { index: usize, violation: Violation },
    #[error("`{0}` is not a free premise variable of this rule")]
    UnexpectedBinding(String),
    #[error("value for `{0}` contains variables")]
    NonGroundBinding(String),
    #[error("nothing to undo")]
    NothingToUndo,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("step {step}: {error}")]
pub struct ReplayError {
    /// 1-based.
    pub step: usize,
    pub error: EngineError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofSession {
    pub spec: ProblemSpec,
    pub roots: Vec<ProofNode>,
    pub history: Vec<Step>,
}

impl ProofSession {
    pub fn new(spec: ProblemSpec) -> ProofSession {
        let roots = spec.goals.iter().cloned().map(ProofNode::open).collect();
        ProofSession {
            spec,
            roots,
            history: Vec::new(),
        }
    }

    pub fn replay(spec: ProblemSpec, steps: &[Application]) -> Result<ProofSession, ReplayError> {
        let mut s = ProofSession::new(spec);
        for (i, app) in steps.iter().enumerate() {
            s.apply(app).map_err(|error| ReplayError { step: i + 1, error })?;
        }
        Ok(s)
    }

    pub fn applications(&self) -> Vec<Application> {
        self.history.iter().map(Step::application).collect()
    }

    fn open_paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, root) in self.roots.iter().enumerate() {
            root.open_paths(&mut vec![i], &mut out);
        }
        out
    }

    fn node(&self, path: &[usize]) -> &ProofNode {
        let mut node = &self.roots[path[0]];
        for &i in &path[1..] {
            node = &node.children[i];
        }
        node
    }

    fn node_mut(&mut self, path: &[usize]) -> &mut ProofNode {
        let mut node = &mut self.roots[path[0]];
        for &i in &path[1..] {
            node = &mut node.children[i];
        }
        node
    }

    /// Open goals in position order.
    pub fn goals(&self) -> Vec<&Term> {
        self.open_paths().iter().map(|p| &self.node(p).goal).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.roots.iter().all(|r| r.walk().iter().all(|(_, n)| !n.is_open()))
    }

    pub fn rule(&self, index: usize) -> Result<&Rule, EngineError> {
        self.spec.rules.get(index).ok_or(EngineError::InvalidRuleIndex {
            index,
            count: self.spec.rules.len(),
        })
    }

    fn goal_path(&self, position: usize) -> Result<Vec<usize>, EngineError> {
        let mut paths = self.open_paths();
        let count = paths.len();
        if position >= count {
            return Err(EngineError::InvalidGoalPosition { position, count });
        }
        Ok(paths.swap_remove(position))
    }

    pub fn preview(&self, app: &Application) -> Result<ApplicationPreview, EngineError> {
        let path = self.goal_path(app.goal_position)?;
        let rule = self.rule(app.rule_index)?;
        let goal = &self.node(&path).goal;
        let report = match_pattern(&rule.conclusion, goal).map_err(|_| EngineError::NoMatch {
            rule: rule.label(app.rule_index),
        })?;
        let free = rule.free_variables();
        for (var, value) in app.bindings.iter() {
            if !free.contains(&var) {
                return Err(EngineError::UnexpectedBinding(var.to_string()));
            }
            if !value.is_ground() {
                return Err(EngineError::NonGroundBinding(var.to_string()));
            }
        }
        let unbound: Vec<String> = free
            .iter()
            .filter(|v| !app.bindings.contains(v))
            .map(|v| v.to_string())
            .collect();
        let subst = combined(&report.substitution, &app.bindings);
        let premises: Vec<Holed> = rule
            .premises
            .iter()
            .map(|p| Holed::from(&subst.apply(p)))
            .collect();
        let mut goals = Vec::new();
        for (i, g) in self.goals().into_iter().enumerate() {
            if i == app.goal_position {
                goals.extend(premises.iter().cloned());
            } else {
                goals.push(Holed::from(g));
            }
        }
        Ok(ApplicationPreview {
            report,
            unbound,
            premises,
            goals,
        })
    }

    /// Applies a rule backwards. On error the session is unchanged.
    pub fn apply(&mut self, app: &Application) -> Result<&Step, EngineError> {
        let preview = self.preview(app)?;
        if !preview.unbound.is_empty() {
            return Err(EngineError::UnresolvedVariables(preview.unbound));
        }
        let mut premises = Vec::with_capacity(preview.premises.len());
        for (index, p) in preview.premises.iter().enumerate() {
            let t = p.to_term().expect("no holes in a fully bound premise");
            well_formed(&t, &self.spec.signature)
                .map_err(|violation| EngineError::IllFormedPremise { index, violation })?;
            premises.push(t);
        }
        let rule = self.rule(app.rule_index)?;
        let rule_name = rule.name.clone();
        let free_bindings: Substitution = rule
            .free_variables()
            .into_iter()
            .map(|v| (v.to_string(), app.bindings.get(v).cloned().expect("checked above")))
            .collect();
        let path = self.goal_path(app.goal_position)?;
        let node = self.node_mut(&path);
        node.status = NodeStatus::Closed;
        node.rule_index = Some(app.rule_index);
        node.rule_name = rule_name;
        node.children = premises.into_iter().map(ProofNode::open).collect();
        self.history.push(Step {
            goal_position: app.goal_position,
            rule_index: app.rule_index,
            matched: preview.report,
            free_bindings,
            node_path: path,
        });
        Ok(self.history.last().expect("just pushed"))
    }

    pub fn undo(&mut self) -> Result<Step, EngineError> {
        let step = self.history.pop().ok_or(EngineError::NothingToUndo)?;
        let node = self.node_mut(&step.node_path);
        *node = ProofNode::open(node.goal.clone());
        Ok(step)
    }
}

fn combined(matched: &Substitution, free: &Substitution) -> Substitution {
    matched
        .iter()
        .chain(free.iter())
        .map(|(v, t)| (v.to_string(), t.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;
    use crate::term::{parse_term, HoleStyle, PrintMode};

    const HILBERT: &str = "Function P 0\nFunction impl 2 infix\nVariable x\nVariable y\nVariable z\nProblem 1 impl(P,P)\nRule 2 x impl(x,y) y [MP]\nRule 0 impl(x,impl(y,x)) [K]\nRule 0 impl(impl(x,impl(y,z)),impl(impl(x,y),impl(x,z))) [S]";

    fn session() -> ProofSession {
        ProofSession::new(parse_problem(HILBERT).unwrap())
    }

    fn t(s: &ProofSession, text: &str) -> Term {
        parse_term(text, &s.spec.signature).unwrap()
    }

    fn render(s: &ProofSession, goals: &[Holed]) -> Vec<String> {
        goals
            .iter()
            .map(|g| g.render(&s.spec.signature, PrintMode::File, HoleStyle::Plain))
            .collect()
    }

    #[test]
    fn fresh_session() {
        let s = session();
        assert_eq!(s.goals(), vec![&t(&s, "impl(P,P)")]);
        assert!(!s.is_complete());
        assert!(s.history.is_empty());
    }

    #[test]
    fn modus_ponens_preview_without_bindings() {
        let s = session();
        let p = s.preview(&Application::new(0, 0)).unwrap();
        assert_eq!(p.report.substitution.get("y"), Some(&t(&s, "impl(P,P)")));
        assert_eq!(p.unbound, vec!["x"]);
        assert_eq!(render(&s, &p.goals), vec!["x?", "impl(x?,impl(P,P))"]);
    }

    #[test]
    fn modus_ponens_preview_with_binding() {
        let s = session();
        let app = Application::new(0, 0).bind("x", t(&s, "impl(P,impl(P,P))"));
        let p = s.preview(&app).unwrap();
        assert!(p.unbound.is_empty());
        assert_eq!(
            render(&s, &p.goals),
            vec!["impl(P,impl(P,P))", "impl(impl(P,impl(P,P)),impl(P,P))"]
        );
    }

    #[test]
    fn axiom_preview_removes_goal() {
        let mut s = session();
        s.apply(&Application::new(0, 0).bind("x", t(&s, "impl(P,impl(P,P))"))).unwrap();
        let p = s.preview(&Application::new(0, 1)).unwrap();
        let pairs: Vec<_> = p.report.substitution.iter().map(|(v, x)| (v.to_string(), x.clone())).collect();
        assert_eq!(pairs, vec![("x".into(), t(&s, "P")), ("y".into(), t(&s, "P"))]);
        assert_eq!(p.goals.len(), 1);
    }

    #[test]
    fn apply_errors_leave_session_untouched() {
        let mut s = session();
        let fresh = s.clone();
        assert_eq!(
            s.apply(&Application::new(0, 0)),
            Err(EngineError::UnresolvedVariables(vec!["x".into()]))
        );
        assert!(matches!(s.apply(&Application::new(0, 1)), Err(EngineError::NoMatch { .. })));
        assert!(matches!(s.apply(&Application::new(3, 0)), Err(EngineError::InvalidGoalPosition { .. })));
        assert!(matches!(s.apply(&Application::new(0, 9)), Err(EngineError::InvalidRuleIndex { .. })));
        let stray = Application::new(0, 0).bind("y", t(&s, "P"));
        assert_eq!(s.apply(&stray), Err(EngineError::UnexpectedBinding("y".into())));
        let open = Application::new(0, 0).bind("x", t(&s, "z"));
        assert_eq!(s.apply(&open), Err(EngineError::NonGroundBinding("x".into())));
        assert_eq!(s, fresh);
    }

    #[test]
    fn full_derivation_and_undo() {
        let mut s = session();
        let fresh = s.clone();
        let apps = vec![
            Application::new(0, 0).bind("x", t(&s, "impl(P,impl(P,P))")),
            Application::new(1, 0).bind("x", t(&s, "impl(P,impl(impl(P,P),P))")),
            Application::new(0, 1),
            Application::new(0, 1),
            Application::new(0, 2),
        ];
        for app in &apps {
            s.apply(app).unwrap();
        }
        assert!(s.is_complete());
        assert!(s.goals().is_empty());
        assert_eq!(ProofSession::replay(s.spec.clone(), &s.applications()).unwrap(), s);
        for _ in 0..apps.len() {
            s.undo().unwrap();
        }
        assert_eq!(s, fresh);
        assert_eq!(s.undo(), Err(EngineError::NothingToUndo));
    }

    #[test]
    fn replay_reports_failing_step() {
        let s = session();
        let apps = vec![
            Application::new(0, 0).bind("x", t(&s, "impl(P,impl(P,P))")),
            Application::new(0, 2),
        ];
        let err = ProofSession::replay(s.spec.clone(), &apps).unwrap_err();
        assert_eq!(err.step, 2);
        assert!(matches!(err.error, EngineError::NoMatch { .. }));
    }

    #[test]
    fn delta_is_untouched() {
        let spec = parse_problem("Function A 0\nFunction B 0\nFunction f 1\nProblem 3 f(A) B A\nRule 1 A f(A)\nRule 0 A").unwrap();
        let mut s = ProofSession::new(spec);
        let before: Vec<Term> = s.goals().into_iter().cloned().collect();
        s.apply(&Application::new(0, 0)).unwrap();
        let after: Vec<Term> = s.goals().into_iter().cloned().collect();
        assert_eq!(&after[1..], &before[1..]);
        s.apply(&Application::new(2, 1)).unwrap();
        assert_eq!(s.goals().len(), 2);
        s.apply(&Application::new(0, 1)).unwrap();
        assert_eq!(s.goals(), vec![&Term::constant("B")]);
    }

    #[test]
    fn ill_formed_premise_is_rejected() {
        let spec = parse_problem(
            "Function A 0\nVariable x\nVariable G\nProblem 1 |-(cons(A,eps),eps)\nRule 1 |-(cons(x,G),eps) |-(G,eps)",
        )
        .unwrap();
        let mut s = ProofSession::new(spec);
        let bad = Application::new(0, 0).bind("x", Term::list([Term::constant("A")]));
        assert!(matches!(s.apply(&bad), Err(EngineError::IllFormedPremise { index: 0, .. })));
        assert!(s.history.is_empty());
    }

    #[test]
    fn free_bindings_follow_prompting_order() {
        let spec = parse_problem(
            "Function A 0\nFunction g 2\nVariable x\nVariable y\nVariable z\nProblem 1 A\nRule 2 g(y,z) x A",
        )
        .unwrap();
        let mut s = ProofSession::new(spec);
        let a = Term::constant("A");
        let app = Application::new(0, 0)
            .bind("x", a.clone())
            .bind("z", a.clone())
            .bind("y", a.clone());
        let step = s.apply(&app).unwrap();
        let order: Vec<&str> = step.free_bindings.domain().collect();
        assert_eq!(order, vec!["y", "z", "x"]);
    }
}
