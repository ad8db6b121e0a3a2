//! Derivation-level substitution and its inverse, plus value splitting.

use vsc_lab::syntax::{term, Ident};
use vsc_lab::transform::{
    anti_substitute, infer, merge_value_derivations, split_value_derivation, substitute_derivation, Mode,
};
use vsc_lab::types::{check_derivation, deriv_size, MultiType};

fn main() {
    let x = Ident::new("x");
    // shrinking types give x one arrow per occurrence
    let t = term(r"(x x)[x <- \y.y]");
    let d = infer(&t, Mode::Shrinking, 20).unwrap().derivation().unwrap().clone();
    let (phi, psi) = (&d.premises[0], &d.premises[1]);
    println!("Φ  {}  size {}", phi.conclusion, deriv_size(phi));
    println!("Ψ  {}  size {}", psi.conclusion, deriv_size(psi));

    let theta = substitute_derivation(phi, &x, psi).unwrap();
    check_derivation(&theta).unwrap();
    println!("Θ  {}  size {}", theta.conclusion, deriv_size(&theta));

    let (phi2, psi2) = anti_substitute(&theta, phi.subject(), &x, psi.subject()).unwrap();
    println!("anti-substitution recovers {} and {}", phi2.conclusion, psi2.conclusion);

    let items = psi.multi().unwrap().items();
    let (m1, m2) = (MultiType::single(items[0].clone()), MultiType::new(items[1..].to_vec()));
    let (a, b) = split_value_derivation(psi, &m1, &m2).unwrap();
    println!("split: {} + {}", a.conclusion, b.conclusion);
    let joined = merge_value_derivations(&a, &b).unwrap();
    assert_eq!(deriv_size(&joined), deriv_size(&a) + deriv_size(&b));
    println!("merged back: {}", joined.conclusion);
}
