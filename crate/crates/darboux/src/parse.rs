//! Parser for the system file format and its expression grammar.
//!
//! Expressions are sums of products of integer literals, `X`, `Y` and
//! parenthesized subexpressions, with explicit `*` (no juxtaposition)
//! and `^` followed by a nonnegative integer literal.  A system file
//! carries exactly one `A = <expr>` and one `B = <expr>` assignment.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::poly::BiPoly;

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    VarX,
    VarY,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn lex(text: &str, line_no: usize) -> std::result::Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, line: line_no, col });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, line: line_no, col });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, line: line_no, col });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, line: line_no, col });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, line: line_no, col });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, line: line_no, col });
                i += 1;
            }
            'X' => {
                out.push(Spanned { tok: Tok::VarX, line: line_no, col });
                i += 1;
            }
            'Y' => {
                out.push(Spanned { tok: Tok::VarY, line: line_no, col });
                i += 1;
            }
            'x' | 'y' => {
                return Err(err(
                    line_no,
                    col,
                    format!("variables are uppercase X and Y, found '{c}'"),
                ));
            }
            '/' => {
                return Err(err(
                    line_no,
                    col,
                    "rational coefficients are not supported; clear denominators first",
                ));
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n: BigInt = digits.parse().expect("digit string parses");
                out.push(Spanned { tok: Tok::Int(n), line: line_no, col });
            }
            _ => {
                return Err(err(line_no, col, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(s) => (s.line, s.col),
            None => (self.line, self.end_col),
        }
    }

    fn expr(&mut self) -> std::result::Result<BiPoly, ParseError> {
        let mut negate = false;
        if let Some(s) = self.peek() {
            match s.tok {
                Tok::Minus => {
                    negate = true;
                    self.pos += 1;
                }
                Tok::Plus => {
                    self.pos += 1;
                }
                _ => {}
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        while let Some(s) = self.peek() {
            match s.tok {
                Tok::Plus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> std::result::Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(s) if s.tok == Tok::Star => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(s)
                    if matches!(s.tok, Tok::Int(_) | Tok::VarX | Tok::VarY | Tok::LParen) =>
                {
                    return Err(err(
                        s.line,
                        s.col,
                        "missing '*' (implicit multiplication is not allowed)",
                    ));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<BiPoly, ParseError> {
        let base = self.primary()?;
        if let Some(s) = self.peek() {
            if s.tok == Tok::Caret {
                self.pos += 1;
                let (line, col) = self.here();
                match self.next() {
                    Some(Spanned { tok: Tok::Int(n), .. }) => {
                        let e: u32 = n
                            .try_into()
                            .map_err(|_| err(line, col, "exponent too large"))?;
                        if e > MAX_EXPONENT {
                            return Err(err(line, col, "exponent too large"));
                        }
                        return Ok(base.pow(e));
                    }
                    _ => {
                        return Err(err(
                            line,
                            col,
                            "'^' must be followed by a nonnegative integer literal",
                        ));
                    }
                }
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> std::result::Result<BiPoly, ParseError> {
        let (line, col) = self.here();
        match self.next() {
            Some(Spanned { tok: Tok::Int(n), .. }) => {
                Ok(BiPoly::constant(BigRational::from_integer(n)))
            }
            Some(Spanned { tok: Tok::VarX, .. }) => Ok(BiPoly::var_x()),
            Some(Spanned { tok: Tok::VarY, .. }) => Ok(BiPoly::var_y()),
            Some(Spanned { tok: Tok::LParen, .. }) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Spanned { tok: Tok::RParen, .. }) => Ok(inner),
                    Some(s) => Err(err(s.line, s.col, "expected ')'")),
                    None => Err(err(self.line, self.end_col, "expected ')'")),
                }
            }
            Some(s) => Err(err(
                s.line,
                s.col,
                "expected an integer, 'X', 'Y' or '('",
            )),
            None => Err(err(line, col, "unexpected end of expression")),
        }
    }
}

fn parse_expr_line(text: &str, line_no: usize) -> std::result::Result<BiPoly, ParseError> {
    let toks = lex(text, line_no)?;
    if toks.is_empty() {
        return Err(err(line_no, 1, "empty expression"));
    }
    let end_col = text.chars().count() + 1;
    let mut p = Parser {
        toks,
        pos: 0,
        line: line_no,
        end_col,
    };
    let poly = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(err(s.line, s.col, "unexpected trailing input"));
    }
    Ok(poly)
}

/// Parse a single polynomial expression.
pub fn parse_polynomial(text: &str) -> std::result::Result<BiPoly, ParseError> {
    parse_expr_line(text, 1)
}

/// Parsed system file: the derivation (reduce mode) plus the common
/// factor that was divided out, when any.
#[derive(Clone, Debug)]
pub struct ParsedSystem {
    pub derivation: Derivation,
    pub removed_common_factor: Option<BiPoly>,
}

/// Parse a system file: one `A = <expr>` line and one `B = <expr>` line
/// (any order, blank lines ignored).  The derivation is built in reduce
/// mode, dividing out a common factor of A and B when present.
pub fn parse_system(text: &str) -> Result<ParsedSystem> {
    let mut a: Option<BiPoly> = None;
    let mut b: Option<BiPoly> = None;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq_pos) = line.find('=') else {
            return Err(err(line_no, 1, "expected an assignment 'A = ...' or 'B = ...'").into());
        };
        let name = line[..eq_pos].trim();
        let target = match name {
            "A" => &mut a,
            "B" => &mut b,
            _ => {
                return Err(err(
                    line_no,
                    1,
                    format!("unknown assignment target '{name}' (expected A or B)"),
                )
                .into());
            }
        };
        if target.is_some() {
            return Err(err(line_no, 1, format!("duplicate assignment to {name}")).into());
        }
        // column offsets inside the expression part are relative to the
        // full line so messages point at the real position
        let expr_text = &line[eq_pos + 1..];
        let pad = " ".repeat(eq_pos + 1);
        let poly = parse_expr_line(&format!("{pad}{expr_text}"), line_no)?;
        *target = Some(poly);
    }
    let a = a.ok_or_else(|| Error::Parse(err(1, 1, "missing assignment 'A = ...'")))?;
    let b = b.ok_or_else(|| Error::Parse(err(1, 1, "missing assignment 'B = ...'")))?;
    let (derivation, removed) = Derivation::new_reduced(a, b)?;
    Ok(ParsedSystem {
        derivation,
        removed_common_factor: removed,
    })
}
