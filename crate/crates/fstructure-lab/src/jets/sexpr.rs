//! Prefix s-expression form of [`ScalarField`].
//!
//! ```text
//! expr   := number
//!         | "(" "const" number ")"
//!         | "(" "coord" index ")"
//!         | "(" ("add" | "mul") expr expr+ ")"     ; folded left
//!         | "(" ("sub" | "div") expr expr ")"
//!         | "(" ("sin" | "cos" | "exp" | "sqrt") expr ")"
//!         | "(" "pow" expr number ")"
//! number := a Rust f64 literal (e.g. 2, -0.5, 1e-3)
//! index  := a non-negative integer, 0-based chart coordinate
//! ```
//!
//! Whitespace separates tokens and `;` starts a comment running to the end
//! of the line. Printing always emits the canonical binary form with
//! `(const ..)` wrappers, so `parse(print(e)) == e` for every tree.

use super::field::{Node, ScalarField};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(src: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    for line in src.lines() {
        let line = line.split(';').next().unwrap_or("");
        let bytes = line.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'(' => {
                    out.push(Tok::Open);
                    i += 1;
                }
                b')' => {
                    out.push(Tok::Close);
                    i += 1;
                }
                c if c.is_ascii_whitespace() => i += 1,
                _ => {
                    let start = i;
                    while i < bytes.len() && !matches!(bytes[i], b'(' | b')') && !bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    out.push(Tok::Atom(&line[start..i]));
                }
            }
        }
    }
    out
}

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Option<&Tok<'a>> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn number(&mut self) -> Result<f64> {
        match self.next() {
            Some(Tok::Atom(a)) => a
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse(format!("expected a finite number, found `{a}`"))),
            other => Err(Error::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.next() {
            Some(Tok::Close) => Ok(()),
            other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
        }
    }

    fn at_close(&self) -> bool {
        matches!(self.toks.get(self.pos), Some(Tok::Close))
    }

    fn expr(&mut self) -> Result<ScalarField> {
        match self.next() {
            Some(Tok::Atom(_)) => {
                self.pos -= 1;
                Ok(ScalarField::constant(self.number()?))
            }
            Some(Tok::Open) => {
                let head = match self.next() {
                    Some(Tok::Atom(a)) => *a,
                    other => return Err(Error::Parse(format!("expected an operator, found {other:?}"))),
                };
                let node = match head {
                    "const" => Node::Const(self.number()?),
                    "coord" => match self.next() {
                        Some(Tok::Atom(a)) => {
                            Node::Coord(a.parse::<usize>().map_err(|_| Error::Parse(format!("bad coordinate index `{a}`")))?)
                        }
                        other => return Err(Error::Parse(format!("expected an index, found {other:?}"))),
                    },
                    "add" | "mul" => {
                        let mut acc = self.expr()?;
                        let mut n = 1;
                        while !self.at_close() {
                            let rhs = self.expr()?;
                            acc = ScalarField::from_node(if head == "add" { Node::Add(acc, rhs) } else { Node::Mul(acc, rhs) });
                            n += 1;
                        }
                        if n < 2 {
                            return Err(Error::Parse(format!("`{head}` needs at least two operands")));
                        }
                        self.close()?;
                        return Ok(acc);
                    }
                    "sub" => Node::Sub(self.expr()?, self.expr()?),
                    "div" => Node::Div(self.expr()?, self.expr()?),
                    "sin" => Node::Sin(self.expr()?),
                    "cos" => Node::Cos(self.expr()?),
                    "exp" => Node::Exp(self.expr()?),
                    "sqrt" => Node::Sqrt(self.expr()?),
                    "pow" => {
                        let base = self.expr()?;
                        Node::Pow(base, self.number()?)
                    }
                    other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
                };
                self.close()?;
                Ok(ScalarField::from_node(node))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse one expression; trailing tokens are an error.
pub fn parse(src: &str) -> Result<ScalarField> {
    let mut p = Parser { toks: tokenize(src), pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input after expression in `{src}`")));
    }
    Ok(e)
}

impl std::str::FromStr for ScalarField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_canonical_and_shorthand() {
        let e = parse("(mul (coord 0) (sin (coord 1)))").unwrap();
        assert_eq!(e.to_string(), "(mul (coord 0) (sin (coord 1)))");
        let n = parse("(add 1 (coord 0) 2.5) ; comment").unwrap();
        assert_eq!(n.value_at(&[1.0]).unwrap(), 4.5);
        let p = parse("(pow (coord 0) -0.5)").unwrap();
        assert_eq!(p.value_at(&[4.0]).unwrap(), 0.5);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["(add 1)", "(foo 1 2)", "(coord x)", "(sin 1", "(sub 1 2) 3", "", "(const nan)"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
    }
}
