//! Recursive-descent parser for rational-function entries and matrix files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' unsigned-integer)?
//! atom   := 's' | unsigned-integer | '(' expr ')' | '-' factor
//! ```
//!
//! The minus sign may be written as ASCII `-` or as U+2212. Whitespace is
//! ignored. Offsets in errors count characters from the start of the entry.

use std::fmt;

use num_bigint::BigInt;
use wmp_core::{RatFun, RfMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for EntryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for EntryError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FileErrorKind {
    MissingHeader,
    BadHeader(String),
    /// A body line has the wrong number of `;`-separated entries.
    Arity { row: usize, expected: usize, found: usize },
    RowCount { expected: usize, found: usize },
    Entry { row: usize, col: usize, error: EntryError },
}

/// A matrix-file error. `line` is 1-based in the file text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub kind: FileErrorKind,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            FileErrorKind::MissingHeader => write!(f, "missing header \"matrix <rows> <cols>\""),
            FileErrorKind::BadHeader(h) => write!(f, "malformed header {h:?}"),
            FileErrorKind::Arity { row, expected, found } => {
                write!(f, "row {row}: expected {expected} entries, found {found}")
            }
            FileErrorKind::RowCount { expected, found } => {
                write!(f, "expected {expected} rows, found {found}")
            }
            FileErrorKind::Entry { row, col, error } => write!(f, "row {row}, column {col}: {error}"),
        }
    }
}

impl std::error::Error for FileError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    S,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::S => write!(f, "'s'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
        }
    }
}

fn err(offset: usize, message: impl Into<String>) -> EntryError {
    EntryError {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<(usize, Tok)>, usize), EntryError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let tok = match c {
            _ if c.is_whitespace() => {
                k += 1;
                continue;
            }
            's' => Tok::S,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                toks.push((start, Tok::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            other => return Err(err(k, format!("unexpected character {other:?}"))),
        };
        toks.push((k, tok));
        k += 1;
    }
    Ok((toks, chars.len()))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn unexpected(&self) -> EntryError {
        match self.peek() {
            Some(t) => err(self.offset(), format!("unexpected {t}")),
            None => err(self.end, "unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<RatFun, EntryError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun, EntryError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.checked_div(&rhs).map_err(|_| err(at, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFun, EntryError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let exp: u32 = n.try_into().map_err(|_| err(at, "exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(exp))
            }
            Some(_) => Err(err(at, "exponent must be an unsigned integer")),
            None => Err(err(at, "unexpected end of input, expected an exponent")),
        }
    }

    fn atom(&mut self) -> Result<RatFun, EntryError> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::S) => {
                self.pos += 1;
                Ok(RatFun::s())
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RatFun::from_rational(n.into()))
            }
            Some(Tok::LParen) => {
                let open = self.offset();
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(err(self.end, format!("unclosed '(' opened at offset {open}"))),
                    Some(_) => Err(self.unexpected()),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses one entry into its canonical rational function.
pub fn parse_entry(text: &str) -> Result<RatFun, EntryError> {
    let (toks, end) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let value = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected());
    }
    Ok(value)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut words = line.split_whitespace();
    if words.next()? != "matrix" {
        return None;
    }
    let rows = words.next()?.parse().ok()?;
    let cols = words.next()?.parse().ok()?;
    if words.next().is_some() || rows == 0 || cols == 0 {
        return None;
    }
    Some((rows, cols))
}

/// Parses a matrix file: optional `#` comment lines, a `matrix <rows> <cols>`
/// header, then one line per row with entries separated by `;`. Blank lines
/// are ignored.
pub fn parse_matrix_file(text: &str) -> Result<RfMatrix, FileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count().max(1);

    let (header_line, header) = lines.next().ok_or(FileError {
        line: last_line,
        kind: FileErrorKind::MissingHeader,
    })?;
    let (rows, cols) = parse_header(header).ok_or_else(|| FileError {
        line: header_line,
        kind: if header.starts_with("matrix") {
            FileErrorKind::BadHeader(header.to_string())
        } else {
            FileErrorKind::MissingHeader
        },
    })?;

    let body: Vec<(usize, &str)> = lines.collect();
    if body.len() != rows {
        let line = body.get(rows).map_or(last_line, |(n, _)| *n);
        return Err(FileError {
            line,
            kind: FileErrorKind::RowCount {
                expected: rows,
                found: body.len(),
            },
        });
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, (line, text)) in body.iter().enumerate() {
        let cells: Vec<&str> = text.split(';').collect();
        if cells.len() != cols {
            return Err(FileError {
                line: *line,
                kind: FileErrorKind::Arity {
                    row: r + 1,
                    expected: cols,
                    found: cells.len(),
                },
            });
        }
        for (c, cell) in cells.iter().enumerate() {
            let value = parse_entry(cell).map_err(|error| FileError {
                line: *line,
                kind: FileErrorKind::Entry {
                    row: r + 1,
                    col: c + 1,
                    error,
                },
            })?;
            data.push(value);
        }
    }
    Ok(RfMatrix::new(rows, cols, data).expect("entry count matches header"))
}
