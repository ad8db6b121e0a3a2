//! Runs every property suite over small enumerated terms.
//! `cargo run --release --example property_suites -- 8` for a larger run.

use vsc_lab::harness::{run_suite, SUITES};
use vsc_lab::syntax::Ident;

fn main() {
    let max_size = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let pool = [Ident::new("y")];
    let mut ok = true;
    for name in SUITES {
        let r = run_suite(name, max_size, &pool, 200).unwrap();
        ok &= r.ok();
        println!("{}", r.summary());
    }
    println!("{}", if ok { "all suites pass" } else { "FAILURES" });
}
