//! Parser for polynomial expressions in `Q0..Q{n-1}`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'Q' digits | '(' expr ')'
//! ```

use dickson_milnor::budget::EXPONENT_LIMIT;
use dickson_milnor::{DicksonPoly, PrimeField};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
    End,
}

fn describe(t: Tok) -> String {
    match t {
        Tok::Int(v) => format!("integer {v}"),
        Tok::Gen(s) => format!("Q{s}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    let number = |start: usize, end: usize| {
        src[start..end].parse::<u64>().map_err(|_| ParseError {
            offset: start,
            message: "integer too large".into(),
        })
    };
    while k < bytes.len() {
        let c = bytes[k];
        let start = k;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                k += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'0'..=b'9' => {
                let end = digits(k);
                let v = number(k, end)?;
                k = end;
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'Q' | b'q' => {
                let end = digits(k + 1);
                if end == k + 1 {
                    return Err(ParseError {
                        offset: k + 1,
                        message: "expected generator index after 'Q'".into(),
                    });
                }
                let v = number(k + 1, end)?;
                k = end;
                out.push((start, Tok::Gen(v as usize)));
                continue;
            }
            _ => {
                let ch = src[k..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: k,
                    message: format!("unexpected character '{ch}'"),
                });
            }
        };
        out.push((start, tok));
        k += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: PrimeField,
    n: usize,
}

impl Parser {
    fn peek(&self) -> (usize, Tok) {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos];
        if t.1 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, (offset, t): (usize, Tok), wanted: &str) -> ParseError {
        ParseError {
            offset,
            message: format!("expected {wanted}, found {}", describe(t)),
        }
    }

    fn expr(&mut self) -> Result<DicksonPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().1 {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DicksonPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().1 == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<DicksonPoly, ParseError> {
        if self.peek().1 == Tok::Minus {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<DicksonPoly, ParseError> {
        let base = self.atom()?;
        if self.peek().1 != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (offset, Tok::Int(e)) => {
                if e > EXPONENT_LIMIT {
                    return Err(ParseError {
                        offset,
                        message: format!("exponent exceeds {EXPONENT_LIMIT}"),
                    });
                }
                Ok(base.pow(e))
            }
            t => Err(self.unexpected(t, "an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<DicksonPoly, ParseError> {
        match self.bump() {
            (_, Tok::Int(v)) => Ok(DicksonPoly::constant(
                self.field,
                self.n,
                i64::from(self.field.reduce_u64(v)),
            )),
            (offset, Tok::Gen(s)) => {
                if s >= self.n {
                    return Err(ParseError {
                        offset,
                        message: format!("Q{s} is out of range for n={}", self.n),
                    });
                }
                Ok(DicksonPoly::var(self.field, self.n, s))
            }
            (_, Tok::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    (_, Tok::Close) => Ok(inner),
                    t => Err(self.unexpected(t, "')'")),
                }
            }
            t => Err(self.unexpected(t, "an integer, a generator or '('")),
        }
    }
}

/// Parses `src` as an element of `F_p[Q0..Q{n-1}]`.
pub fn parse_dickson(field: PrimeField, n: usize, src: &str) -> Result<DicksonPoly, ParseError> {
    let mut parser = Parser {
        toks: tokenize(src)?,
        pos: 0,
        field,
        n,
    };
    let value = parser.expr()?;
    match parser.peek() {
        (_, Tok::End) => Ok(value),
        t => Err(parser.unexpected(t, "an operator or end of input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn err(src: &str) -> ParseError {
        parse_dickson(f(2), 2, src).unwrap_err()
    }

    #[test]
    fn parses_expressions() {
        let q0 = DicksonPoly::var(f(3), 2, 0);
        let q1 = DicksonPoly::var(f(3), 2, 1);
        let expected = &(&q0.pow(2) * &q1) - &DicksonPoly::constant(f(3), 2, 1);
        assert_eq!(parse_dickson(f(3), 2, "Q0^2*Q1 - 1").unwrap(), expected);
        assert_eq!(
            parse_dickson(f(3), 2, " ( Q0 ^2 ) * Q1+2").unwrap(),
            expected
        );
        assert_eq!(parse_dickson(f(3), 2, "-Q1").unwrap(), q1.scale(2));
        assert_eq!(
            parse_dickson(f(3), 2, "3*Q1").unwrap(),
            DicksonPoly::zero(f(3), 2)
        );
        assert_eq!(
            parse_dickson(f(3), 2, "(Q0+Q1)^3").unwrap(),
            &q0.pow(3) + &q1.pow(3)
        );
    }

    #[test]
    fn error_offsets() {
        assert_eq!(err("Q0^3 +").offset, 6);
        assert_eq!(err("Q0 ** Q1").offset, 4);
        assert_eq!(err("Q2").offset, 0);
        assert_eq!(err("Q0 + x").offset, 5);
        assert_eq!(err("(Q0").offset, 3);
        assert_eq!(err("Q0)").offset, 2);
        assert_eq!(err("Q^2").offset, 1);
        assert_eq!(err("").offset, 0);
    }
}
