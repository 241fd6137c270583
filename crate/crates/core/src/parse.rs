//! Text syntax for terms.
//!
//! ```text
//! term ::= "id:" nat | "id(" word ")" | name | term ";" term | term "*" term | "(" term ")"
//! ```
//!
//! `;` is diagrammatic composition and binds looser than `*`; both associate
//! to the left. Printing is the `Display` impl of [`Term`].

use crate::error::{Error, Result};
use crate::signature::{Atom, EqTheory, TypeWord};
use crate::term::{compose, tensor, Term};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    theory: &'a EqTheory,
}

pub fn parse_term(theory: &EqTheory, text: &str) -> Result<Term> {
    let mut p = Parser {
        src: text,
        pos: 0,
        theory,
    };
    let t = p.composite()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn composite(&mut self) -> Result<Term> {
        let mut acc = self.product()?;
        while self.eat(';') {
            let at = self.pos;
            let rhs = self.product()?;
            acc = compose(acc, rhs).map_err(|e| match e {
                Error::Boundary { left, right, .. } => Error::Syntax {
                    pos: at,
                    msg: format!("type error: target {left} does not match source {right}"),
                },
                e => e,
            })?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Term> {
        let mut acc = self.atom()?;
        while self.eat('*') {
            let rhs = self.atom()?;
            acc = tensor(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("expected a term")),
            Some('(') => {
                self.pos += 1;
                let t = self.composite()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(t)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        self.pos += c.len_utf8();
                    } else {
                        break;
                    }
                }
                let name = &self.src[start..self.pos];
                if name == "id" {
                    return self.identity();
                }
                self.theory.gen(name).map_err(|_| Error::Syntax {
                    pos: start,
                    msg: format!("unknown generator `{name}`"),
                })
            }
            Some(_) => Err(self.err("expected a term")),
        }
    }

    fn identity(&mut self) -> Result<Term> {
        if self.peek() == Some(':') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let n: usize = self.src[start..self.pos]
                .parse()
                .map_err(|_| self.err("expected a natural number after `id:`"))?;
            if n == 0 {
                return Ok(Term::id(TypeWord::unit()));
            }
            return match self.theory.single_atom() {
                Some(a) => Ok(Term::id(TypeWord::repeat(a, n))),
                None => Err(self.err("`id:n` needs a single-sorted theory; use `id(WORD)`")),
            };
        }
        if self.peek() != Some('(') {
            return Err(self.err("expected `:` or `(` after `id`"));
        }
        self.pos += 1;
        let start = self.pos;
        let mut atoms = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                Some(c) if self.theory.atoms.contains(&Atom(c)) => {
                    atoms.push(Atom(c));
                    self.pos += c.len_utf8();
                }
                Some('I') if atoms.is_empty() => self.pos += 1,
                Some(c) => {
                    return Err(Error::Syntax {
                        pos: self.pos,
                        msg: format!("unknown atomic type `{c}` in identity at {start}"),
                    })
                }
                None => return Err(self.err("unterminated `id(`")),
            }
        }
        Ok(Term::id(TypeWord(atoms)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::builtin_theory;

    #[test]
    fn parses_the_documented_examples() {
        let b = builtin_theory("B").unwrap();
        let t = parse_term(&b, "(eta * id:1) ; mu").unwrap();
        let expected = compose(
            tensor(b.gen("eta").unwrap(), Term::id("1")),
            b.gen("mu").unwrap(),
        )
        .unwrap();
        assert_eq!(t, expected);

        let g = builtin_theory("G").unwrap();
        assert_eq!(parse_term(&g, "id(OP)").unwrap(), Term::id("OP"));
        assert_eq!(parse_term(&g, "id()").unwrap(), Term::id(""));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let b = builtin_theory("B").unwrap();
        match parse_term(&b, "mu ;") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_term(&b, "mu ; mu").is_err());
        assert!(matches!(parse_term(&b, "nope"), Err(Error::Syntax { pos: 0, .. })));
        assert!(parse_term(&b, "(mu").is_err());
        assert!(parse_term(&builtin_theory("G").unwrap(), "id:2").is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        let b = builtin_theory("B").unwrap();
        let t = parse_term(&b, "mu * eta ; gamma").unwrap();
        assert!(matches!(t, Term::Compose(..)));
        let t = parse_term(&b, "id:1 * id:1 * mu").unwrap();
        match t {
            Term::Tensor(l, _) => assert!(matches!(*l, Term::Tensor(..))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn printing_is_canonical() {
        let b = builtin_theory("B").unwrap();
        for s in [
            "eta * id:1 ; mu",
            "delta ; mu",
            "id:1 * (gamma ; gamma) ; mu * id:1",
            "id:1 * (id:1 * mu)",
            "id:0",
        ] {
            assert_eq!(parse_term(&b, s).unwrap().to_string(), s);
        }
    }
}
