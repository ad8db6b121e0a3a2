//! Local diamond checks, the length-invariance consequence, and a peak
//! where the full substitution calculus is not diamond.

use vsc_lab::harness::VSC_WITNESSES;
use vsc_lab::rewrite::{diamond_check, length_invariance, Strategy};
use vsc_lab::syntax::term;

fn main() {
    let t = term(r"(\x.x x) ((\a.a) (\b.b)) ((\c.c) (\d.d))");
    for s in [Strategy::Open, Strategy::External] {
        let r = diamond_check(&t, s).unwrap();
        println!("{s}: {} peaks, violation: {}", r.peaks, r.violation.is_some());
        println!("  lengths: {:?}", length_invariance(&t, s, 5000).unwrap());
    }

    let w = term(VSC_WITNESSES[0]);
    let peak = diamond_check(&w, Strategy::Vsc).unwrap().violation.expect("witness peak");
    println!("vsc peak from {w}");
    println!("  {} ← {}", peak.left.rule, peak.left.reduct);
    println!("  {} ← {}", peak.right.rule, peak.right.reduct);
    println!("  the two sides have no common one-step reduct");
}
