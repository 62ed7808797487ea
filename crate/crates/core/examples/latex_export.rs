//! Replays the bundled transitivity proof and prints it as a LaTeX document.
//!
//! ```text
//! cargo run -p axolotl-core --example latex_export > transitivity.tex
//! ```

use axolotl::export::{to_latex, to_text};
use axolotl::library::builtin;

fn main() {
    let entry = builtin("sequent/transitivity").expect("bundled");
    let session = entry.solved().expect("script replays");
    eprint!("{}", to_text(&session));
    print!("{}", to_latex(&session).expect("at most five premises per rule"));
}
