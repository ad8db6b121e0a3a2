//! Replays the canned traces: divergence hidden from βv, erasure of inert
//! arguments, the strong separation example and contextual instability.

use vsc_lab::harness::{run_experiment, EXPERIMENTS};

fn main() {
    for name in EXPERIMENTS {
        print!("{}", run_experiment(name).unwrap().render());
        println!();
    }
}
