//! Parser for the polynomial text grammar.
//!
//! Grammar: variables `x0..x<n>`, integer or rational literals `a/b`,
//! operators `+ - * ^`, parentheses, explicit `*` required between factors,
//! whitespace insignificant. Example: `x2*x1^2 - x0^3 - x0^2*x2`.
//!
//! Errors carry the byte offset of the offending token.

use num::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{Int, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Int),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let at = self.pos;
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                    out.push((at, Tok::Plus));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((at, Tok::Minus));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((at, Tok::Star));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((at, Tok::Caret));
                }
                b'/' => {
                    self.pos += 1;
                    out.push((at, Tok::Slash));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((at, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((at, Tok::RParen));
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let value: Int = text.parse().map_err(|_| Error::Parse {
                        position: start,
                        message: format!("bad integer literal {:?}", text),
                    })?;
                    out.push((start, Tok::Int(value)));
                }
                b'x' => {
                    let start = self.pos;
                    self.pos += 1;
                    let digits_start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    if self.pos == digits_start {
                        return Err(Error::Parse {
                            position: start,
                            message: "expected a variable index after 'x'".into(),
                        });
                    }
                    let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
                    let index: usize = text.parse().map_err(|_| Error::Parse {
                        position: start,
                        message: format!("bad variable index {:?}", text),
                    })?;
                    out.push((start, Tok::Var(index)));
                }
                other => {
                    return Err(Error::Parse {
                        position: at,
                        message: format!("unexpected character {:?}", other as char),
                    });
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.cursor)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }


    fn err(&self, position: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        if let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Minus => {
                    negate = true;
                    self.cursor += 1;
                }
                Tok::Plus => {
                    self.cursor += 1;
                }
                _ => {}
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.cursor += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.cursor += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := factor ('*' factor)*
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some((pos, tok)) = self.peek().cloned() {
            match tok {
                Tok::Star => {
                    self.cursor += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                // adjacency like `x0 x1` or `2x0`: the grammar requires `*`
                Tok::Int(_) | Tok::Var(_) | Tok::LParen => {
                    return Err(self.err(pos, "missing '*' between factors"));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// factor := atom ['^' natural]
    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.cursor += 1;
            let (pos, tok) = self
                .next()
                .ok_or_else(|| self.err(self.end, "expected an exponent after '^'"))?;
            let exp = match tok {
                Tok::Int(v) => u32::try_from(&v)
                    .map_err(|_| self.err(pos, "exponent does not fit in 32 bits"))?,
                _ => return Err(self.err(pos, "exponent must be a non-negative integer")),
            };
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    /// atom := rational | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Poly> {
        let (pos, tok) = self
            .next()
            .ok_or_else(|| self.err(self.end, "expected a term"))?;
        match tok {
            Tok::Int(n) => {
                // rational literal a/b
                if let Some((_, Tok::Slash)) = self.peek() {
                    self.cursor += 1;
                    let (dpos, dtok) = self
                        .next()
                        .ok_or_else(|| self.err(self.end, "expected a denominator after '/'"))?;
                    match dtok {
                        Tok::Int(d) => {
                            if d.is_zero() {
                                return Err(self.err(dpos, "denominator is zero"));
                            }
                            Ok(Poly::constant(self.nvars, Rat::new(n, d)))
                        }
                        _ => Err(self.err(dpos, "denominator must be an integer")),
                    }
                } else {
                    Ok(Poly::constant(self.nvars, Rat::from_integer(n)))
                }
            }
            Tok::Var(index) => {
                if index >= self.nvars {
                    return Err(self.err(
                        pos,
                        format!(
                            "variable x{} exceeds the declared ring of {} variables",
                            index, self.nvars
                        ),
                    ));
                }
                Ok(Poly::variable(self.nvars, index))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((p, _)) => Err(self.err(p, "expected ')'")),
                    None => Err(self.err(self.end, "unbalanced '('")),
                }
            }
            _ => Err(self.err(pos, "expected a number, variable, or '('")),
        }
    }
}

/// Parses polynomial text. When `nvars` is `None` the ring size is inferred
/// as one more than the highest variable index seen (at least 1); passing it
/// explicitly keeps absent variables representable.
pub fn parse_poly(text: &str, nvars: Option<usize>) -> Result<Poly> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokenize()?;
    let inferred = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Var(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let nvars = nvars.unwrap_or(inferred);
    if nvars == 0 {
        return Err(Error::Parse {
            position: 0,
            message: "the ring needs at least one variable".into(),
        });
    }
    let mut parser = Parser {
        toks,
        cursor: 0,
        nvars,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if let Some((pos, _)) = parser.peek() {
        return Err(Error::Parse {
            position: *pos,
            message: "trailing input after the expression".into(),
        });
    }
    Ok(poly)
}
