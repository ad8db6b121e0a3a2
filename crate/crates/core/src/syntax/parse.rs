//! Recursive-descent parser for the concrete syntax
//!
//! ```text
//! term     ::= lam | app
//! lam      ::= ('\' | 'λ') ident '.' term
//! app      ::= app suffixed | suffixed
//! suffixed ::= atom | suffixed '[' ident '<-' term ']'
//! atom     ::= ident | '(' term ')'
//! ```
//!
//! As a convenience an abstraction may also close an application spine
//! without parentheses (`x \y.y` reads as `x (\y.y)`).

use std::sync::Arc;

use thiserror::Error;

use super::{Ident, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub fn parse(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(t)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error(format!("expected `{c}`, found `{d}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<Ident, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {}
            Some(c) => return Err(self.error(format!("expected identifier, found `{c}`"))),
            None => return Err(self.error("expected identifier, found end of input")),
        }
        let start = self.pos;
        self.pos += 1;
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        Ok(Ident::new(&name))
    }

    fn at_lambda(&mut self) -> bool {
        matches!(self.peek(), Some('\\') | Some('λ'))
    }

    fn at_atom(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_lowercase())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.at_lambda() {
            return self.lam();
        }
        let mut acc = self.suffixed()?;
        loop {
            if self.at_atom() {
                let arg = self.suffixed()?;
                acc = Term::App(Arc::new(acc), Arc::new(arg));
            } else if self.at_lambda() {
                let arg = self.lam()?;
                return Ok(Term::App(Arc::new(acc), Arc::new(arg)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn lam(&mut self) -> Result<Term, ParseError> {
        self.pos += 1; // '\' or 'λ'
        let x = self.ident()?;
        self.expect('.')?;
        let body = self.term()?;
        Ok(Term::Lam(x, Arc::new(body)))
    }

    fn suffixed(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some('[') {
            self.pos += 1;
            let x = self.ident()?;
            self.expect('<')?;
            if self.chars.get(self.pos) != Some(&'-') {
                return Err(self.error("expected `<-`"));
            }
            self.pos += 1;
            let u = self.term()?;
            self.expect(']')?;
            t = Term::Es(Arc::new(t), x, Arc::new(u));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_lowercase() => Ok(Term::Var(self.ident()?)),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(
            parse(r"\x.x x").unwrap(),
            Term::lam("x", Term::app(Term::var("x"), Term::var("x")))
        );
        assert_eq!(
            parse(r"(x x)[x <- \y.y]").unwrap(),
            Term::es(
                Term::app(Term::var("x"), Term::var("x")),
                "x",
                Term::lam("y", Term::var("y"))
            )
        );
        assert_eq!(
            parse(r"\x.\y.x y z").unwrap(),
            Term::lam(
                "x",
                Term::lam(
                    "y",
                    Term::app(Term::app(Term::var("x"), Term::var("y")), Term::var("z"))
                )
            )
        );
    }

    #[test]
    fn es_suffix_binds_to_its_atom() {
        assert_eq!(
            parse("a b[x <- c]").unwrap(),
            Term::app(Term::var("a"), Term::es(Term::var("b"), "x", Term::var("c")))
        );
        assert_eq!(
            parse("x[x <- y][y <- z]").unwrap(),
            Term::es(Term::es(Term::var("x"), "x", Term::var("y")), "y", Term::var("z"))
        );
        assert_eq!(parse("λx.x").unwrap(), parse(r"\x.x").unwrap());
        assert_eq!(parse("x \\y.y z").unwrap(), parse(r"x (\y.y z)").unwrap());
        assert_eq!(parse("x'_1").unwrap(), Term::var("x'_1"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("(x y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse("x\n  )").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse(r"\X.x").is_err());
        assert!(parse("x[y z]").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn unbound_names_are_fine() {
        assert_eq!(parse("free").unwrap(), Term::var("free"));
    }
}
