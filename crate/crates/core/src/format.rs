//! Plain-text group specifications.
//!
//! ```text
//! # comment
//! cyclotomic_order 4
//! dimension 2
//! generator
//! z, 0
//! 0, z^3
//! end
//! ```
//!
//! After the two header lines come one or more `generator` … `end` blocks,
//! each holding `n` rows of `n` comma-separated entries. An entry is a sum
//! of terms `c`, `c*z^k` or `z^k` with rational `c` (`-3/4`) and `k ≥ 0`
//! folded modulo the order. `#` starts a comment; blank lines are ignored;
//! CRLF line endings are accepted and LF is emitted.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::group::FiniteMatrixGroup;
use crate::{CycMatrix, Cyclotomic, CyclotomicField};

/// Largest accepted cyclotomic order.
pub const MAX_ORDER: u64 = 10_000;
/// Largest accepted dimension.
pub const MAX_DIMENSION: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    /// Malformed token sequence inside an entry or header.
    Syntax(String),
    /// The first significant line is not `cyclotomic_order <m>`.
    MissingOrder,
    /// The second significant line is not `dimension <n>`.
    MissingDimension,
    OrderOutOfRange(String),
    DimensionOutOfRange(String),
    RowLengthMismatch { expected: usize, found: usize },
    /// A block ended before `n` rows were read.
    TooFewRows { expected: usize, found: usize },
    /// Something other than `end` followed the `n`-th row.
    MissingEnd,
    /// Input ended inside a generator block.
    UnterminatedGenerator,
    /// Content outside a block that is not `generator`.
    UnexpectedLine(String),
    EmptyGeneratorList,
    ZeroDenominator,
}

/// A rejected spec, positioned at a 1-based line and character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub kind: FormatErrorKind,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FormatErrorKind::*;
        let (line, col) = (self.line, self.column);
        match &self.kind {
            RowLengthMismatch { expected, found } => write!(
                f,
                "row length mismatch at line {line} (column {col}): expected {expected} entries, found {found}"
            ),
            kind => {
                write!(f, "line {line}, column {col}: ")?;
                match kind {
                    Syntax(msg) => write!(f, "syntax error: {msg}"),
                    MissingOrder => write!(f, "expected `cyclotomic_order <m>`"),
                    MissingDimension => write!(f, "expected `dimension <n>`"),
                    OrderOutOfRange(msg) => write!(f, "invalid cyclotomic order: {msg}"),
                    DimensionOutOfRange(msg) => write!(f, "invalid dimension: {msg}"),
                    TooFewRows { expected, found } => {
                        write!(f, "generator has {found} rows, expected {expected}")
                    }
                    MissingEnd => write!(f, "expected `end` after the last row"),
                    UnterminatedGenerator => write!(f, "input ends inside a generator block"),
                    UnexpectedLine(s) => write!(f, "expected `generator`, found `{s}`"),
                    EmptyGeneratorList => write!(f, "empty generator list"),
                    ZeroDenominator => write!(f, "zero denominator"),
                    RowLengthMismatch { .. } => unreachable!(),
                }
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// A parsed spec: the ambient order, the dimension and the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub cyclotomic_order: u64,
    pub dimension: usize,
    pub generators: Vec<CycMatrix>,
}

impl GroupSpec {
    /// Spec of a generator list, all over the same field.
    pub fn from_generators(generators: &[CycMatrix]) -> Result<Self> {
        let first = generators.first().ok_or(crate::Error::NoGenerators)?;
        let (m, n) = (first.ambient_order(), first.dim());
        for g in generators {
            if g.dim() != n || g.ambient_order() != m {
                return Err(crate::Error::DimensionMismatch(
                    "generators must share dimension and field".into(),
                ));
            }
        }
        Ok(GroupSpec { cyclotomic_order: m, dimension: n, generators: generators.to_vec() })
    }

    pub fn to_group(&self, cap: usize) -> Result<FiniteMatrixGroup<Cyclotomic>> {
        FiniteMatrixGroup::closure(&self.generators, cap)
    }
}

struct Line<'a> {
    number: usize,
    /// Content with the comment and line ending removed.
    text: &'a str,
}

impl Line<'_> {
    fn column_of(&self, byte: usize) -> usize {
        self.text[..byte].chars().count() + 1
    }

    fn first_column_byte(&self) -> usize {
        self.text.len() - self.text.trim_start().len()
    }

    fn err(&self, byte: usize, kind: FormatErrorKind) -> FormatError {
        FormatError { line: self.number, column: self.column_of(byte), kind }
    }
}

fn significant_lines(text: &str) -> Vec<Line<'_>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    text.split('\n')
        .enumerate()
        .filter_map(|(i, raw)| {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let text = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            (!text.trim().is_empty()).then_some(Line { number: i + 1, text })
        })
        .collect()
}

/// Parses `keyword <value>` header lines.
fn header_value<'a>(
    line: &Line<'a>,
    keyword: &str,
    missing: FormatErrorKind,
) -> std::result::Result<(&'a str, usize), FormatError> {
    let start = line.first_column_byte();
    let rest = &line.text[start..];
    let Some(after) = rest.strip_prefix(keyword) else {
        return Err(line.err(start, missing));
    };
    if !after.starts_with(char::is_whitespace) {
        return Err(line.err(start, missing));
    }
    let value = after.trim();
    let offset = start + keyword.len() + (after.len() - after.trim_start().len());
    if value.is_empty() {
        return Err(line.err(offset, missing));
    }
    Ok((value, offset))
}

fn parse_count(value: &str) -> Option<u64> {
    if !value.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    value.parse().ok()
}

pub fn parse_spec(text: &str) -> std::result::Result<GroupSpec, FormatError> {
    let lines = significant_lines(text);
    let end_line = text.split('\n').count();
    let eof = |kind| FormatError { line: end_line, column: 1, kind };
    let mut it = lines.iter();

    let line = it.next().ok_or_else(|| eof(FormatErrorKind::MissingOrder))?;
    let (value, off) = header_value(line, "cyclotomic_order", FormatErrorKind::MissingOrder)?;
    let m = match parse_count(value) {
        None => {
            return Err(line.err(off, FormatErrorKind::OrderOutOfRange(format!("`{value}` is not a positive integer"))))
        }
        Some(0) => return Err(line.err(off, FormatErrorKind::OrderOutOfRange("order must be at least 1".into()))),
        Some(m) if m > MAX_ORDER => {
            return Err(line.err(off, FormatErrorKind::OrderOutOfRange(format!("order {m} exceeds {MAX_ORDER}"))))
        }
        Some(m) => m,
    };

    let line = it.next().ok_or_else(|| eof(FormatErrorKind::MissingDimension))?;
    let (value, off) = header_value(line, "dimension", FormatErrorKind::MissingDimension)?;
    let n = match parse_count(value) {
        None => {
            return Err(line.err(
                off,
                FormatErrorKind::DimensionOutOfRange(format!("`{value}` is not a positive integer")),
            ))
        }
        Some(0) => {
            return Err(line.err(off, FormatErrorKind::DimensionOutOfRange("dimension must be at least 1".into())))
        }
        Some(n) if n > MAX_DIMENSION as u64 => {
            return Err(line.err(off, FormatErrorKind::DimensionOutOfRange(format!("dimension {n} exceeds {MAX_DIMENSION}"))))
        }
        Some(n) => n as usize,
    };

    let field = CyclotomicField::get(m);
    let mut generators = Vec::new();
    while let Some(line) = it.next() {
        let trimmed = line.text.trim();
        if trimmed != "generator" {
            return Err(line.err(line.first_column_byte(), FormatErrorKind::UnexpectedLine(trimmed.to_string())));
        }
        let mut rows = Vec::with_capacity(n);
        while rows.len() < n {
            let row_line = it.next().ok_or_else(|| eof(FormatErrorKind::UnterminatedGenerator))?;
            if row_line.text.trim() == "end" {
                return Err(row_line.err(
                    row_line.first_column_byte(),
                    FormatErrorKind::TooFewRows { expected: n, found: rows.len() },
                ));
            }
            rows.push(parse_row(row_line, n, m)?);
        }
        let end = it.next().ok_or_else(|| eof(FormatErrorKind::UnterminatedGenerator))?;
        if end.text.trim() != "end" {
            return Err(end.err(end.first_column_byte(), FormatErrorKind::MissingEnd));
        }
        let entries: Vec<Cyclotomic> = rows.into_iter().flatten().collect();
        generators.push(CycMatrix::from_fn(n, field, |i, j| entries[i * n + j].clone()));
    }
    if generators.is_empty() {
        return Err(eof(FormatErrorKind::EmptyGeneratorList));
    }
    Ok(GroupSpec { cyclotomic_order: m, dimension: n, generators })
}

fn parse_row(line: &Line<'_>, n: usize, m: u64) -> std::result::Result<Vec<Cyclotomic>, FormatError> {
    let mut entries = Vec::with_capacity(n);
    let mut start = 0;
    let pieces: Vec<&str> = line.text.split(',').collect();
    if pieces.len() != n {
        return Err(line.err(
            line.first_column_byte(),
            FormatErrorKind::RowLengthMismatch { expected: n, found: pieces.len() },
        ));
    }
    for piece in pieces {
        entries.push(parse_expr(line, start, piece, m)?);
        start += piece.len() + 1;
    }
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Plus,
    Minus,
    Slash,
    Star,
    Caret,
    Z,
}

fn tokenize(line: &Line<'_>, base: usize, s: &str) -> std::result::Result<Vec<(usize, Tok)>, FormatError> {
    let mut toks = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let j = i + bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
                let v: BigInt = s[i..j].parse().expect("digits");
                toks.push((base + i, Tok::Int(v)));
                i = j;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'/' => Tok::Slash,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'z' => Tok::Z,
            _ => {
                let ch = s[i..].chars().next().expect("in bounds");
                return Err(line.err(base + i, FormatErrorKind::Syntax(format!("unexpected character `{ch}`"))));
            }
        };
        toks.push((base + i, tok));
        i += 1;
    }
    Ok(toks)
}

struct ExprParser<'l, 'a> {
    line: &'l Line<'a>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Byte offset just past the entry, for errors at its end.
    end: usize,
    m: u64,
}

impl ExprParser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn syntax(&self, msg: &str) -> FormatError {
        self.line.err(self.offset(), FormatErrorKind::Syntax(msg.into()))
    }

    fn int(&mut self, what: &str) -> std::result::Result<BigInt, FormatError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = v.clone();
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax(&format!("expected {what}"))),
        }
    }

    /// `z [^ int]`, returning the exponent folded mod `m`.
    fn power(&mut self) -> std::result::Result<u64, FormatError> {
        debug_assert_eq!(self.peek(), Some(&Tok::Z));
        self.pos += 1;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1 % self.m);
        }
        self.pos += 1;
        let e = self.int("a non-negative exponent after `^`")?;
        Ok((e % BigInt::from(self.m)).to_u64().expect("reduced exponent fits"))
    }

    fn term(&mut self) -> std::result::Result<Cyclotomic, FormatError> {
        if self.peek() == Some(&Tok::Z) {
            let e = self.power()?;
            return Ok(Cyclotomic::zeta_pow(self.m, e as i64));
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let numer = self.int("a coefficient or `z`")?;
        let mut denom = BigInt::from(1);
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let at = self.offset();
            denom = self.int("a denominator after `/`")?;
            if denom.is_zero() {
                return Err(self.line.err(at, FormatErrorKind::ZeroDenominator));
            }
        }
        let mut c = BigRational::new(numer, denom);
        if negative {
            c = -c;
        }
        let mut e = 0;
        if self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            if self.peek() != Some(&Tok::Z) {
                return Err(self.syntax("expected `z` after `*`"));
            }
            e = self.power()?;
        }
        Ok(Cyclotomic::zeta_pow(self.m, e as i64).scale(&c))
    }

    fn expr(&mut self) -> std::result::Result<Cyclotomic, FormatError> {
        if self.toks.is_empty() {
            return Err(self.syntax("empty entry"));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                None => return Ok(acc),
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                Some(_) => return Err(self.syntax("expected `+`, `-` or the end of the entry")),
            }
        }
    }
}

fn parse_expr(line: &Line<'_>, base: usize, s: &str, m: u64) -> std::result::Result<Cyclotomic, FormatError> {
    let toks = tokenize(line, base, s)?;
    let end = base + s.trim_end().len();
    ExprParser { line, toks, pos: 0, end, m }.expr()
}

/// Parses one entry expression over `Q(ζ_m)`, for callers outside spec files.
pub fn parse_entry(s: &str, m: u64) -> std::result::Result<Cyclotomic, FormatError> {
    if m == 0 || m > MAX_ORDER {
        return Err(FormatError {
            line: 1,
            column: 1,
            kind: FormatErrorKind::OrderOutOfRange(format!("order {m} outside 1..={MAX_ORDER}")),
        });
    }
    let line = Line { number: 1, text: s };
    parse_expr(&line, 0, s, m)
}

/// Canonical text: headers, then each generator with entries joined by
/// `", "`, LF line endings and a trailing newline.
pub fn emit_spec(spec: &GroupSpec) -> String {
    let mut out = format!("cyclotomic_order {}\ndimension {}\n", spec.cyclotomic_order, spec.dimension);
    for g in &spec.generators {
        out.push_str("generator\n");
        for row in g.rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&cells.join(", "));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}
