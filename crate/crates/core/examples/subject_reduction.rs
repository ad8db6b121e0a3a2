//! Transporting a derivation along every step of an evaluation, watching
//! its size drop, then expanding it back.

use vsc_lab::syntax::term;
use vsc_lab::transform::{infer, subject_expand, subject_reduce, Mode, TypedStep};
use vsc_lab::types::{check_derivation, deriv_size};

fn main() {
    let t = term(r"(\f.f (f (\z.z))) (\x.x)");
    let inf = infer(&t, Mode::Shrinking, 100).unwrap();
    let mut d = inf.derivation().unwrap().clone();
    println!("{:>3}  {}", deriv_size(&d), d.conclusion);

    let mut history = Vec::new();
    let mut cur = t;
    for st in inf.evaluation().trace() {
        let s = TypedStep::new(cur.clone(), st.clone());
        let next = subject_reduce(&d, &s).unwrap();
        check_derivation(&next).unwrap();
        assert!(deriv_size(&next) < deriv_size(&d));
        println!("{:>3}  {}  (after {})", deriv_size(&next), next.conclusion, st.rule);
        history.push((s, d));
        cur = st.reduct.clone();
        d = next;
    }

    for (s, before) in history.iter().rev() {
        d = subject_expand(&d, s).unwrap();
        assert_eq!(d.conclusion, before.conclusion);
    }
    println!("expanded back to {}", d.conclusion);
}
