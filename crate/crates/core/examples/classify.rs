//! Grammar classes: values, inert terms, fireballs and their strong variants.

use vsc_lab::classify::classify;
use vsc_lab::syntax::term;

fn main() {
    for s in [r"\x.x", r"y (\x.x)", r"y ((\x.x) z)", r"\x.y (\z.z)", r"(y y)[x <- \z.z]", r"x[x <- y y]"] {
        let t = term(s);
        let holds: Vec<&str> = classify(&t)
            .into_iter()
            .filter(|(_, v)| *v == Some(true))
            .map(|(c, _)| c.name())
            .collect();
        println!("{s:<22} {}", holds.join(", "));
    }
}
