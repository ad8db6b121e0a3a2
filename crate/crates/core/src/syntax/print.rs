use super::Term;

/// Prints with as few parentheses as the grammar allows, except that
/// abstractions in argument position are always parenthesized.
pub fn print(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

/// Every application, abstraction and explicit substitution wrapped in
/// parentheses. Meant for golden files.
pub fn print_full(t: &Term) -> String {
    match t {
        Term::Var(x) => x.to_string(),
        Term::Lam(x, b) => format!("(\\{x}.{})", print_full(b)),
        Term::App(f, a) => format!("({} {})", print_full(f), print_full(a)),
        Term::Es(b, x, s) => format!("({}[{x} <- {}])", print_full(b), print_full(s)),
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Lam(x, b) => {
            out.push('\\');
            out.push_str(x.as_str());
            out.push('.');
            write_term(b, out);
        }
        Term::App(f, a) => {
            write_head(f, out);
            out.push(' ');
            write_suffixed(a, out);
        }
        _ => write_suffixed(t, out),
    }
}

// Left operand of an application: abstractions need parentheses.
fn write_head(t: &Term, out: &mut String) {
    match t {
        Term::App(..) => write_term(t, out),
        _ => write_suffixed(t, out),
    }
}

fn write_suffixed(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x.as_str()),
        Term::Es(b, x, s) => {
            write_suffixed(b, out);
            out.push('[');
            out.push_str(x.as_str());
            out.push_str(" <- ");
            write_term(s, out);
            out.push(']');
        }
        _ => {
            out.push('(');
            write_term(t, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, term};

    #[test]
    fn printing_examples() {
        assert_eq!(print(&Term::lam("x", Term::var("x"))), r"\x.x");
        assert_eq!(
            print(&Term::es(Term::var("x"), "x", Term::lam("y", Term::var("y")))),
            r"x[x <- \y.y]"
        );
        assert_eq!(
            print(&Term::app(Term::lam("x", Term::var("x")), Term::lam("y", Term::var("y")))),
            r"(\x.x) (\y.y)"
        );
    }

    #[test]
    fn parenthesization() {
        for src in [
            "x (y z)",
            "x y z",
            r"(x x)[x <- \y.y]",
            r"x[x <- y] z",
            r"(\x.x)[y <- z]",
            r"\x.x[y <- z]",
            "x[y <- z][w <- x]",
            "(x y[w <- x])[y <- z]",
        ] {
            assert_eq!(print(&term(src)), src);
        }
    }

    #[test]
    fn full_mode_reparses() {
        let t = term(r"(\x.x x) (y[y <- \z.z]) w");
        assert_eq!(
            print_full(&t),
            r"(((\x.(x x)) (y[y <- (\z.z)])) w)"
        );
        assert_eq!(parse(&print_full(&t)).unwrap(), t);
    }
}
