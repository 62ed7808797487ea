//! Shared test helpers: an exhaustive term enumerator, a brute-force
//! matching oracle, random proof traces and random problem generators.
#![allow(dead_code)]

use std::collections::BTreeMap;

use axolotl::engine::{Application, EngineError, ProofSession};
use axolotl::library::{builtin_library, LibraryEntry};
use axolotl::problem::{parse_problem, serialize_problem, ProblemSpec, Rule};
use axolotl::term::{
    match_pattern, parse_term, print_term, well_formed, PrintMode, Signature, Substitution, Term,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

// ---------------------------------------------------------------------------
// Exhaustive matching oracle

/// Every term of depth at most `depth` built from the given leaves and one
/// binary symbol `f`.
pub fn enumerate(leaves: &[Term], depth: usize) -> Vec<Term> {
    let mut all: Vec<Term> = leaves.to_vec();
    for _ in 1..depth {
        let mut next = leaves.to_vec();
        for l in &all {
            for r in &all {
                next.push(Term::app("f", vec![l.clone(), r.clone()]));
            }
        }
        all = next;
    }
    all
}

fn distinct_subterms(t: &Term) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for s in t.subterms() {
        if !out.contains(s) {
            out.push(s.clone());
        }
    }
    out
}

/// All substitutions with domain exactly vars(p), ranging over subterms of
/// `target`, that map `p` onto `target`.
pub fn brute_force(p: &Term, target: &Term) -> Vec<BTreeMap<String, Term>> {
    let vars: Vec<String> = p.vars().into_iter().map(String::from).collect();
    let pool = distinct_subterms(target);
    let mut found = Vec::new();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let sigma: Substitution = vars
            .iter()
            .zip(&idx)
            .map(|(v, &i)| (v.clone(), pool[i].clone()))
            .collect();
        if sigma.apply(p) == *target {
            found.push(vars.iter().cloned().zip(idx.iter().map(|&i| pool[i].clone())).collect());
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == idx.len() {
                return found;
            }
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub struct OracleSummary {
    pub pairs: usize,
    pub matches: usize,
    pub discrepancies: Vec<String>,
}

/// Compares `match_pattern` with the oracle on all patterns and ground
/// targets of depth at most 3 over {a, b, f/2, x, y}.
pub fn exhaustive_matching_check() -> OracleSummary {
    let consts = [Term::constant("a"), Term::constant("b")];
    let mut leaves = consts.to_vec();
    leaves.extend([Term::var("x"), Term::var("y")]);
    let patterns = enumerate(&leaves, 3);
    let targets = enumerate(&consts, 3);
    let mut summary = OracleSummary {
        pairs: 0,
        matches: 0,
        discrepancies: Vec::new(),
    };
    for p in &patterns {
        for t in &targets {
            summary.pairs += 1;
            let oracle = brute_force(p, t);
            let got = match_pattern(p, t).ok().map(|r| {
                r.substitution
                    .iter()
                    .map(|(v, x)| (v.to_string(), x.clone()))
                    .collect::<BTreeMap<_, _>>()
            });
            let agree = match (&got, oracle.as_slice()) {
                (None, []) => true,
                (Some(sigma), [only]) => sigma == only,
                _ => false,
            };
            if got.is_some() {
                summary.matches += 1;
            }
            if !agree {
                summary.discrepancies.push(format!("{p} vs {t}: engine {got:?}, oracle {oracle:?}"));
            }
        }
    }
    summary
}

// ---------------------------------------------------------------------------
// Random proof traces over the bundled problems

pub type Choice = (usize, usize, usize);

pub fn trace_strategy() -> impl Strategy<Value = (usize, Vec<Choice>)> {
    (
        0..builtin_library().len(),
        prop::collection::vec((any::<usize>(), any::<usize>(), any::<usize>()), 0..24),
    )
}

pub struct Event {
    pub before: ProofSession,
    pub app: Application,
    pub premises: usize,
    pub result: Result<ProofSession, EngineError>,
}

fn binding_pool(s: &ProofSession) -> Vec<Term> {
    let mut pool: Vec<Term> = Vec::new();
    for g in s.goals().into_iter().chain(s.spec.goals.iter()) {
        for t in distinct_subterms(g) {
            if !pool.contains(&t) {
                pool.push(t);
            }
        }
    }
    pool.sort();
    pool
}

fn choose_application(s: &ProofSession, (a, b, c): Choice) -> Application {
    let goals = s.goals().len().max(1);
    let rules = s.spec.rules.len();
    // Mostly pick among applications whose conclusion matches, sometimes an
    // arbitrary (possibly failing) one.
    let mut app = if c % 4 == 0 {
        Application::new(a % (goals + 1), b % (rules + 1))
    } else {
        let applicable: Vec<(usize, usize)> = (0..s.goals().len())
            .flat_map(|g| (0..rules).map(move |r| (g, r)))
            .filter(|&(g, r)| s.preview(&Application::new(g, r)).is_ok())
            .collect();
        match applicable.get(a % applicable.len().max(1)) {
            Some(&(g, r)) => Application::new(g, r),
            None => Application::new(a % goals, b % rules),
        }
    };
    if let Ok(rule) = s.rule(app.rule_index) {
        let pool = binding_pool(s);
        let mut k = b;
        for v in rule.free_variables() {
            app.bindings.bind(v, pool[k % pool.len()].clone());
            k = (k / pool.len()).wrapping_add(c);
        }
    }
    app
}

pub fn run_trace(entry: &LibraryEntry, choices: &[Choice]) -> Vec<Event> {
    let mut s = ProofSession::new(entry.spec.clone());
    let mut events = Vec::new();
    for &choice in choices {
        let app = choose_application(&s, choice);
        let premises = s.rule(app.rule_index).map(|r| r.premises.len()).unwrap_or(0);
        let before = s.clone();
        let result = match s.apply(&app) {
            Ok(_) => Ok(s.clone()),
            Err(e) => Err(e),
        };
        events.push(Event {
            before,
            app,
            premises,
            result,
        });
    }
    events
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn entry(i: usize) -> LibraryEntry {
    builtin_library().swap_remove(i)
}

pub fn open_count(s: &ProofSession) -> usize {
    s.roots.iter().map(|r| r.walk().iter().filter(|(_, n)| n.is_open()).count()).sum()
}

pub fn prop_groundness(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&trace_strategy(), |(i, choices)| {
            let e = entry(i);
            for ev in run_trace(&e, &choices) {
                let s = ev.result.as_ref().unwrap_or(&ev.before);
                for g in s.goals() {
                    prop_assert!(g.is_ground(), "non-ground goal {g}");
                    prop_assert!(well_formed(g, &s.spec.signature).is_ok(), "ill-formed goal {g}");
                }
                prop_assert_eq!(s.is_complete(), open_count(s) == 0);
                prop_assert_eq!(s.goals().len(), open_count(s));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn prop_goal_arithmetic(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&trace_strategy(), |(i, choices)| {
            let e = entry(i);
            for ev in run_trace(&e, &choices) {
                let before = ev.before.goals().len() as isize;
                if let Ok(after) = &ev.result {
                    {
                        let delta = after.goals().len() as isize - before;
                        prop_assert_eq!(delta, ev.premises as isize - 1);
                        // Goals other than the selected one are untouched.
                        let old = ev.before.goals();
                        let new = after.goals();
                        let p = ev.app.goal_position;
                        prop_assert_eq!(&old[..p], &new[..p]);
                        prop_assert_eq!(&old[p + 1..], &new[p + ev.premises..]);
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn prop_undo_apply(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&trace_strategy(), |(i, choices)| {
            let e = entry(i);
            for ev in run_trace(&e, &choices) {
                if let Ok(after) = &ev.result {
                    let mut s = after.clone();
                    s.undo().expect("history is nonempty");
                    prop_assert_eq!(&s, &ev.before);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn prop_replay(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&trace_strategy(), |(i, choices)| {
            let e = entry(i);
            let events = run_trace(&e, &choices);
            let last = match events.last() {
                None => ProofSession::new(e.spec.clone()),
                Some(ev) => ev.result.clone().unwrap_or_else(|_| ev.before.clone()),
            };
            let replayed = ProofSession::replay(e.spec.clone(), &last.applications()).expect("history replays");
            prop_assert_eq!(&replayed, &last);
            // failed applications never change the session
            for ev in &events {
                if ev.result.is_err() {
                    let mut s = ev.before.clone();
                    prop_assert!(s.apply(&ev.app).is_err());
                    prop_assert_eq!(&s, &ev.before);
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// Random terms and problems

pub fn term_signature() -> Signature {
    let mut sig = Signature::new();
    sig.declare_function("A", 0, false).unwrap();
    sig.declare_function("B", 0, false).unwrap();
    sig.declare_function("g", 1, false).unwrap();
    sig.declare_function("imp", 2, true).unwrap();
    sig.declare_function("h", 2, false).unwrap();
    sig.declare_variable("x").unwrap();
    sig.declare_variable("y").unwrap();
    sig.declare_variable("G").unwrap();
    sig
}

fn formula(depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![
        Just(Term::constant("A")),
        Just(Term::constant("B")),
        Just(Term::var("x")),
        Just(Term::var("y")),
    ];
    leaf.prop_recursive(depth, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Term::app("g", vec![a])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::app("imp", vec![a, b])),
            (inner.clone(), inner).prop_map(|(a, b)| Term::app("h", vec![a, b])),
        ]
    })
    .boxed()
}

fn list(depth: u32) -> BoxedStrategy<Term> {
    (
        prop::collection::vec(formula(depth), 0..4),
        prop_oneof![Just(Term::constant("eps")), Just(Term::var("G"))],
    )
        .prop_map(|(items, tail)| {
            items
                .into_iter()
                .rev()
                .fold(tail, |t, h| Term::app("cons", vec![h, t]))
        })
        .boxed()
}

/// Well-formed terms of depth at most 6.
pub fn well_formed_term() -> BoxedStrategy<Term> {
    prop_oneof![
        formula(5),
        list(2),
        (list(1), list(1)).prop_map(|(l, r)| Term::sequent(l, r)),
    ]
    .boxed()
}

pub fn prop_term_round_trip(cases: u32) -> Result<(), String> {
    let sig = term_signature();
    runner(cases)
        .run(&well_formed_term(), |t| {
            prop_assert!(t.depth() <= 6);
            prop_assert!(well_formed(&t, &sig).is_ok());
            let text = print_term(&t, &sig, PrintMode::File);
            prop_assert!(!text.contains(' '));
            let back = parse_term(&text, &sig).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, t);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
struct SigShape {
    constants: usize,
    functions: Vec<(usize, bool)>,
    variables: usize,
}

fn problem_strategy() -> impl Strategy<Value = String> {
    let shape = (
        1..4usize,
        prop::collection::vec((1..4usize, any::<bool>()), 0..4),
        0..4usize,
    )
        .prop_map(|(constants, functions, variables)| SigShape {
            constants,
            functions: functions
                .into_iter()
                .map(|(a, infix)| (a, infix && a == 2))
                .collect(),
            variables,
        });
    shape.prop_flat_map(|shape| {
        let mut sig = Signature::new();
        let mut ground_leaves = Vec::new();
        for i in 0..shape.constants {
            let name = format!("c{i}");
            sig.declare_function(&name, 0, false).unwrap();
            ground_leaves.push(Term::constant(name));
        }
        let mut funcs = Vec::new();
        for (i, &(arity, infix)) in shape.functions.iter().enumerate() {
            let name = format!("f{i}");
            sig.declare_function(&name, arity, infix).unwrap();
            funcs.push((name, arity));
        }
        let mut leaves = ground_leaves.clone();
        for i in 0..shape.variables {
            let name = format!("V{i}");
            sig.declare_variable(&name).unwrap();
            leaves.push(Term::var(name));
        }
        let terms = |leaves: Vec<Term>, funcs: Vec<(String, usize)>| {
            let leaf = prop::sample::select(leaves);
            leaf.prop_recursive(3, 16, 3, move |inner| {
                let funcs = funcs.clone();
                if funcs.is_empty() {
                    return inner.boxed();
                }
                (prop::sample::select(funcs), prop::collection::vec(inner, 3))
                    .prop_map(|((f, arity), mut args)| {
                        args.truncate(arity);
                        Term::app(f, args)
                    })
                    .boxed()
            })
        };
        let goals = prop::collection::vec(terms(ground_leaves, funcs.clone()), 1..3);
        let rule = (
            prop::collection::vec(terms(leaves.clone(), funcs.clone()), 0..3),
            terms(leaves, funcs),
            prop::option::of(prop::sample::select(vec!["ax", "MP", "→:r", "r_1", "weak-l", "⊃E"])),
        )
            .prop_map(|(premises, conclusion, name)| Rule {
                premises,
                conclusion,
                name: name.map(String::from),
            });
        let rules = prop::collection::vec(rule, 0..4);
        (Just(sig), goals, rules).prop_map(|(signature, goals, rules)| {
            serialize_problem(&ProblemSpec {
                signature,
                goals,
                rules,
                source_name: String::new(),
            })
        })
    })
}

pub fn prop_problem_round_trip(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&problem_strategy(), |text| {
            let spec = parse_problem(&text)
                .map_err(|d| TestCaseError::fail(format!("{text:?}: {:?}", d)))?;
            let again = serialize_problem(&spec);
            prop_assert_eq!(&again, &text);
            prop_assert_eq!(parse_problem(&again).unwrap(), spec);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
