//! One term under each evaluation strategy, with traces.

use vsc_lab::rewrite::{evaluate, Outcome, Strategy};
use vsc_lab::syntax::term;

fn show(label: &str, s: Strategy, o: &Outcome) {
    println!("{label} under {s}:");
    for st in o.trace().iter().take(6) {
        println!("  →{:<2} {}", st.rule.to_string(), st.reduct);
    }
    match o {
        Outcome::Normal { counts, .. } => println!("  normal after {} steps", counts.total()),
        Outcome::Cycle { loop_start, .. } => println!("  cycles back to the term after step {loop_start}"),
        Outcome::Exhausted { .. } => println!("  fuel exhausted"),
    }
}

fn main() {
    let pure = term(r"(\x.(\y.y) x) (\z.z) w");
    for s in Strategy::ALL {
        show("pure term", s, &evaluate(&pure, s, 50).unwrap());
    }
    // reduction under abstraction: only vsc and external enter the body
    let under = term(r"\w.(\x.x) w");
    for s in [Strategy::Open, Strategy::Vsc, Strategy::External] {
        show(r"\w.(\x.x) w", s, &evaluate(&under, s, 50).unwrap());
    }
    // Plotkin's rules refuse explicit substitutions
    println!("{}", evaluate(&term("x[x <- y]"), Strategy::Plotkin, 5).unwrap_err());
}
