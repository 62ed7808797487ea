//! Saves a half-finished proof as JSON, loads it back and finishes it.

use axolotl::engine::ProofSession;
use axolotl::export::{from_structured, to_structured};
use axolotl::library::builtin;

fn main() {
    let entry = builtin("natural-deduction/contrapositive").unwrap();
    let apps = entry.applications().unwrap();
    let half = ProofSession::replay(entry.spec.clone(), &apps[..4]).unwrap();
    let saved = to_structured(&half);
    println!("{saved}");

    let mut loaded = from_structured(&saved).unwrap();
    assert_eq!(loaded, half);
    for app in &apps[4..] {
        loaded.apply(app).unwrap();
    }
    println!("complete: {}", loaded.is_complete());
}
