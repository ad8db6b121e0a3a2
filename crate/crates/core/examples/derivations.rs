//! Building a derivation by hand with checked constructors, checking it,
//! and round-tripping it through JSON.

use vsc_lab::syntax::Ident;
use vsc_lab::types::{check_derivation, deriv_size, is_shrinking, Derivation, LinearType, MultiType, Rhs};

fn main() {
    let x = Ident::new("x");
    let y = Ident::new("y");
    let g = MultiType::ground();
    let id_ty = LinearType::arrow(g.clone(), g.clone());

    // ⊢ \x.x : [G] ⊸ [G]
    let id = Derivation::lam(&x, Derivation::var(&x, &g)).unwrap();
    // y:[[[G]⊸[G]] ⊸ [G]] ⊢ y (\x.x) : [G]
    let fun = Derivation::var(&y, &MultiType::single(LinearType::arrow(MultiType::single(id_ty), g.clone())));
    let arg = Derivation::many(id.subject().clone(), vec![id]).unwrap();
    let d = Derivation::app(fun, arg).unwrap();

    print!("{}", d.pretty());
    println!("checked: {}", check_derivation(&d).unwrap());
    println!("size {}, shrinking {}", deriv_size(&d), is_shrinking(&d));

    let json = serde_json::to_string(&d).unwrap();
    let back: Derivation = serde_json::from_str(&json).unwrap();
    assert_eq!(back, d);

    // a conclusion that does not follow from the premises is rejected
    let mut bad = back;
    bad.conclusion.rhs = Rhs::Multi(MultiType::empty());
    println!("tampered: {}", check_derivation(&bad).unwrap_err());
}
