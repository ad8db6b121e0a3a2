//! Parsing, printing, α-equivalence and capture-avoiding substitution.

use vsc_lab::syntax::{alpha_eq, canon, free_vars, parse, print, print_full, subst, term, Ident};

fn main() {
    let t = parse(r"(\x.\y.x y) (y z)[z <- \w.w]").expect("well-formed");
    println!("minimal parentheses: {}", print(&t));
    println!("fully parenthesised: {}", print_full(&t));
    println!("size {}, free variables {:?}", t.size(), free_vars(&t));
    println!("canonical binders:   {}", canon(&t));

    assert!(alpha_eq(&term(r"\a.\b.a b"), &term(r"\x.\y.x y")));
    assert!(!alpha_eq(&term(r"\a.\b.a b"), &term(r"\x.\y.y x")));

    // substituting y into \y.x y renames the binder
    let body = term(r"\y.x y");
    let out = subst(&body, &Ident::new("x"), &term("y"));
    println!("({body}){{x <- y}} = {out}");

    match parse(r"\x.") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
