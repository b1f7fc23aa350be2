//! Parser for the field text grammar.
//!
//! Accepts integer literals, `z`, `u`, `+ - * / ^` and parentheses, with the
//! usual precedence. `^` takes a nonnegative integer exponent. The printers
//! emit a subset of this grammar, so output round-trips exactly.

use super::URationalFunction;
use crate::field::RationalFunction;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub msg: String,
    pub at: usize,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.at, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    U,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = vec![];
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, i));
                i += 1;
            }
            'z' => {
                out.push((Tok::Z, i));
                i += 1;
            }
            'u' => {
                out.push((Tok::U, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().map_err(|_| ParseError {
                    msg: "bad integer".into(),
                    at: start,
                })?;
                out.push((Tok::Int(n), start));
            }
            _ => {
                return Err(ParseError {
                    msg: format!("unexpected character {c:?}"),
                    at: i,
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn at(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, i)| *i)
            .unwrap_or(usize::MAX)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<URationalFunction, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<URationalFunction, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let t = self.unary()?;
                    acc = acc.mul(&t);
                }
                Some(Tok::Slash) => {
                    let at = self.at();
                    self.bump();
                    let t = self.unary()?;
                    acc = acc.div(&t).map_err(|e| ParseError {
                        msg: e.to_string(),
                        at,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<URationalFunction, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let v = self.unary()?;
                Ok(URationalFunction::zero().sub(&v))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<URationalFunction, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let at = self.at();
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        msg: "exponent out of range".into(),
                        at,
                    })?;
                    let mut acc = URationalFunction::one();
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    Ok(acc)
                }
                _ => Err(ParseError {
                    msg: "expected integer exponent after ^".into(),
                    at,
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<URationalFunction, ParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(URationalFunction::from_ratfn(RationalFunction::from_rat(
                super::BigRat::from_integer(n),
            ))),
            Some(Tok::Z) => Ok(URationalFunction::from_ratfn(RationalFunction::z())),
            Some(Tok::U) => Ok(URationalFunction::u()),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(ParseError {
                        msg: "expected )".into(),
                        at,
                    }),
                }
            }
            other => Err(ParseError {
                msg: format!("unexpected token {other:?}"),
                at,
            }),
        }
    }
}

/// Parses an element of Q(z)(u).
pub fn parse_uratfn(s: &str) -> Result<URationalFunction, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ParseError {
            msg: "trailing input".into(),
            at: p.at(),
        });
    }
    Ok(v)
}

/// Parses an element of Q(z); rejects expressions involving `u`.
pub fn parse_ratfn(s: &str) -> Result<RationalFunction, ParseError> {
    let v = parse_uratfn(s)?;
    if v.num().degree() == 0 && v.den().degree() == 0 {
        let c = v.num().coeff(0);
        let d = v.den().coeff(0);
        return c.div(&d).map_err(|e| ParseError {
            msg: e.to_string(),
            at: 0,
        });
    }
    Err(ParseError {
        msg: "expression contains the series variable u".into(),
        at: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expanded_and_factored() {
        let a = parse_ratfn("(z^2-3*z+1)/(z-1)^2").unwrap();
        let b = parse_ratfn("(z^2-3*z+1)/(z^2-2*z+1)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "0",
            "1",
            "-1",
            "z",
            "(z-1)/z",
            "(z^2-3*z+1)/(z^2-2*z+1)",
            "(z-1)/(2*z)",
            "(-z^2+2*z)/(z^2-2*z+1)",
            "1/2",
        ] {
            let v = parse_ratfn(s).unwrap();
            assert_eq!(parse_ratfn(&v.to_string()).unwrap(), v, "{s}");
        }
    }

    #[test]
    fn u_expressions() {
        let f = parse_uratfn("-(u+1+z/2)*(u-z/2)/(u+z/2)").unwrap();
        assert_eq!(f.num().degree(), 2);
        let g = parse_uratfn(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_ratfn("z +* 2").is_err());
        assert!(parse_ratfn("q").is_err());
        assert!(parse_ratfn("(z").is_err());
        assert!(parse_ratfn("u+1").is_err());
    }
}
