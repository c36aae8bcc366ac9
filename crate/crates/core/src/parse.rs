//! Recursive-descent parser for entire-function expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/") unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = atom { "^" integer } ;
//! atom    = number | "z" | "i" | func "(" expr ")" | "(" expr ")" ;
//! func    = "exp" | "sin" | "cos" | "beg" ;
//! number  = decimal [ "i" ] ;
//! decimal = digit { digit } [ "." { digit } ] | "." digit { digit } ;
//! ```
//!
//! Error offsets are 1-based byte columns into the source.

use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::Expr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
    #[error("exponent at offset {offset} must be a non-negative integer, found `{found}`")]
    BadExponent { offset: usize, found: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownIdentifier { offset, .. }
            | ParseError::BadExponent { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { text: String, imag: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num { text, imag } => format!("number `{text}{}`", if *imag { "i" } else { "" }),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                if text == "." {
                    return Err(ParseError::Syntax {
                        offset: start + 1,
                        message: "lone `.`".into(),
                    });
                }
                let imag = i < bytes.len()
                    && bytes[i] == b'i'
                    && !bytes
                        .get(i + 1)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
                if imag {
                    i += 1;
                }
                out.push((
                    start,
                    Tok::Num {
                        text: text.to_string(),
                        imag,
                    },
                ));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    offset: start + 1,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0 + 1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            message: format!("expected {wanted}, found {}", describe(self.peek())),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let offset = self.offset();
            if !matches!(self.peek(), Tok::Num { .. } | Tok::Minus) {
                return Err(self.unexpected("integer exponent"));
            }
            let n = match self.bump() {
                Tok::Num { text, imag: false } if !text.contains('.') => {
                    text.parse::<u32>().map_err(|_| ParseError::BadExponent {
                        offset,
                        found: text.clone(),
                    })?
                }
                Tok::Num { text, imag } => {
                    return Err(ParseError::BadExponent {
                        offset,
                        found: format!("{text}{}", if imag { "i" } else { "" }),
                    })
                }
                Tok::Minus => {
                    return Err(ParseError::BadExponent {
                        offset,
                        found: "-".into(),
                    })
                }
                _ => unreachable!(),
            };
            base = Expr::Pow(Box::new(base), n);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Num { text, imag } => {
                self.bump();
                let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset,
                    message: format!("bad number `{text}`"),
                })?;
                Ok(Expr::Const(if imag {
                    Complex64::new(0.0, v)
                } else {
                    Complex64::new(v, 0.0)
                }))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "z" => Ok(Expr::Var),
                    "i" => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
                    "exp" | "sin" | "cos" | "beg" => {
                        self.expect(Tok::LParen, "`(` after function name")?;
                        let inner = Box::new(self.expr()?);
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(match name.as_str() {
                            "exp" => Expr::Exp(inner),
                            "sin" => Expr::Sin(inner),
                            "cos" => Expr::Cos(inner),
                            _ => Expr::BeSeries {
                                order: 0,
                                arg: inner,
                            },
                        })
                    }
                    _ => Err(ParseError::UnknownIdentifier { offset, name }),
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, `z`, a function or `(`")),
        }
    }
}

/// Parse an expression in `z`.
pub fn parse(source: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(source)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(x: f64) -> Box<Expr> {
        Box::new(Expr::Const(Complex64::new(x, 0.0)))
    }

    #[test]
    fn product_of_exp() {
        let e = parse("2*exp(z^4)").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                k(2.0),
                Box::new(Expr::Exp(Box::new(Expr::Pow(Box::new(Expr::Var), 4))))
            )
        );
    }

    #[test]
    fn identity_and_whitespace() {
        assert_eq!(parse("z").unwrap(), Expr::Var);
        assert_eq!(
            parse(" 2 * exp ( z ^ 4 ) ").unwrap(),
            parse("2*exp(z^4)").unwrap()
        );
    }

    #[test]
    fn unbalanced_parenthesis_offset() {
        let err = parse("exp(sin(z)-z").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { .. }));
        assert_eq!(err.offset(), 13);
    }

    #[test]
    fn power_binds_tighter_than_minus() {
        assert_eq!(
            parse("-z^2").unwrap(),
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var), 2)))
        );
    }

    #[test]
    fn imaginary_literals() {
        assert_eq!(
            parse("2.5i").unwrap(),
            Expr::Const(Complex64::new(0.0, 2.5))
        );
        assert_eq!(parse("i").unwrap(), Expr::Const(Complex64::new(0.0, 1.0)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("foo(z)"),
            Err(ParseError::UnknownIdentifier { offset: 1, .. })
        ));
        assert!(matches!(
            parse("z^2.5"),
            Err(ParseError::BadExponent { offset: 3, .. })
        ));
        assert!(matches!(parse("z^-1"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(parse("z^2i"), Err(ParseError::BadExponent { .. })));
        assert!(matches!(
            parse("z^"),
            Err(ParseError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse("z z"),
            Err(ParseError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse("2 $ z"),
            Err(ParseError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            parse(""),
            Err(ParseError::Syntax { offset: 1, .. })
        ));
    }
}
