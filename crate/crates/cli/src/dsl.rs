//! Loop-nest language:
//!
//! ```text
//! loop (i, j, k) {
//!     C[i, j];
//!     A[i, k];
//!     B[k, j];
//! }
//! ```
//!
//! Subscripts are integer linear combinations of the loop indices: `3x - y`,
//! `2*i + j`, `-k`. Constant offsets and products of indices are rejected.

use std::collections::BTreeSet;
use std::fmt;

use crate::document::{MapEntry, ProblemDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    NonlinearSubscript,
    UnknownIndex,
    DuplicateName,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DslErrorKind::Syntax => "syntax error",
            DslErrorKind::NonlinearSubscript => "nonlinear subscript",
            DslErrorKind::UnknownIndex => "unknown index",
            DslErrorKind::DuplicateName => "duplicate name",
        };
        write!(f, "{kind} at line {}, column {}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(kind: DslErrorKind, line: usize, col: usize, message: impl Into<String>) -> DslError {
    DslError { kind, line, col, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let n = s.parse().map_err(|_| err(DslErrorKind::Syntax, l0, c0, format!("integer `{s}` is too large")))?;
            out.push(Spanned { tok: Tok::Int(n), line: l0, col: c0 });
            continue;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        } else {
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' | '\u{b7}' => Tok::Star,
                other => return Err(err(DslErrorKind::Syntax, l0, c0, format!("unexpected character `{other}`"))),
            }
        };
        out.push(Spanned { tok, line: l0, col: c0 });
        i += 1;
        col += 1;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    indices: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned, DslError> {
        let t = self.bump();
        if t.tok == want {
            Ok(t)
        } else {
            Err(err(DslErrorKind::Syntax, t.line, t.col, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Spanned), DslError> {
        let t = self.bump();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(err(DslErrorKind::Syntax, t.line, t.col, format!("expected {what}, found {other}"))),
        }
    }

    fn header(&mut self) -> Result<(), DslError> {
        let (kw, at) = self.ident("`loop`")?;
        if kw != "loop" {
            return Err(err(DslErrorKind::Syntax, at.line, at.col, format!("expected `loop`, found `{kw}`")));
        }
        self.expect(Tok::LParen)?;
        loop {
            let (name, at) = self.ident("a loop index")?;
            if self.indices.contains(&name) {
                return Err(err(DslErrorKind::DuplicateName, at.line, at.col, format!("loop index `{name}` repeats")));
            }
            self.indices.push(name);
            match self.bump() {
                Spanned { tok: Tok::Comma, .. } => continue,
                Spanned { tok: Tok::RParen, .. } => break,
                t => {
                    return Err(err(DslErrorKind::Syntax, t.line, t.col, format!("expected `,` or `)`, found {}", t.tok)))
                }
            }
        }
        self.expect(Tok::LBrace)?;
        Ok(())
    }

    /// A product of integers and at most one index.
    fn term(&mut self, row: &mut [i64], sign: i64) -> Result<(), DslError> {
        let start = self.peek().clone();
        let mut coeff = sign;
        let mut index: Option<usize> = None;
        loop {
            let t = self.bump();
            match &t.tok {
                Tok::Int(n) => {
                    coeff = coeff
                        .checked_mul(*n)
                        .ok_or_else(|| err(DslErrorKind::Syntax, t.line, t.col, "coefficient overflows"))?;
                }
                Tok::Ident(name) => {
                    let Some(k) = self.indices.iter().position(|x| x == name) else {
                        return Err(err(
                            DslErrorKind::UnknownIndex,
                            t.line,
                            t.col,
                            format!("`{name}` is not a loop index"),
                        ));
                    };
                    if index.is_some() {
                        return Err(err(
                            DslErrorKind::NonlinearSubscript,
                            t.line,
                            t.col,
                            "product of loop indices",
                        ));
                    }
                    index = Some(k);
                }
                other => {
                    return Err(err(DslErrorKind::Syntax, t.line, t.col, format!("expected a term, found {other}")))
                }
            }
            // `3x` is an implicit product; `3 * x` an explicit one
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                }
                Tok::Ident(_) if matches!(t.tok, Tok::Int(_)) => {}
                _ => break,
            }
        }
        let Some(k) = index else {
            return Err(err(DslErrorKind::NonlinearSubscript, start.line, start.col, "constant offset in subscript"));
        };
        row[k] = row[k]
            .checked_add(coeff)
            .ok_or_else(|| err(DslErrorKind::Syntax, start.line, start.col, "coefficient overflows"))?;
        Ok(())
    }

    fn expr(&mut self) -> Result<Vec<i64>, DslError> {
        let mut row = vec![0i64; self.indices.len()];
        let mut sign = 1;
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                sign = -1;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        self.term(&mut row, sign)?;
        loop {
            sign = match self.peek().tok {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
            self.term(&mut row, sign)?;
        }
        Ok(row)
    }

    fn access(&mut self) -> Result<(String, Spanned, Vec<Vec<i64>>), DslError> {
        let (name, at) = self.ident("an array name")?;
        self.expect(Tok::LBracket)?;
        let mut rows = vec![self.expr()?];
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Comma => rows.push(self.expr()?),
                Tok::RBracket => break,
                other => {
                    return Err(err(DslErrorKind::Syntax, t.line, t.col, format!("expected `,` or `]`, found {other}")))
                }
            }
        }
        self.expect(Tok::Semi)?;
        Ok((name, at, rows))
    }
}

/// Parses a loop nest into one map per array access.
pub fn parse_loop_nest(text: &str) -> Result<ProblemDocument, DslError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, indices: Vec::new() };
    p.header()?;
    let mut maps = Vec::new();
    let mut seen = BTreeSet::new();
    while p.peek().tok != Tok::RBrace {
        if p.peek().tok == Tok::Eof {
            let t = p.peek();
            return Err(err(DslErrorKind::Syntax, t.line, t.col, "missing `}`"));
        }
        let (name, at, rows) = p.access()?;
        if !seen.insert(name.clone()) {
            return Err(err(DslErrorKind::DuplicateName, at.line, at.col, format!("array `{name}` is accessed twice")));
        }
        maps.push(MapEntry { name, rows });
    }
    p.bump();
    p.expect(Tok::Eof)?;
    if maps.is_empty() {
        let t = p.peek();
        return Err(err(DslErrorKind::Syntax, t.line, t.col, "the loop body has no array accesses"));
    }
    Ok(ProblemDocument { dimension: p.indices.len(), indices: Some(p.indices), maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_index() {
        let doc = parse_loop_nest("loop (i) { A[i]; }").unwrap();
        assert_eq!(doc.dimension, 1);
        assert_eq!(doc.maps, vec![MapEntry { name: "A".into(), rows: vec![vec![1]] }]);
    }

    #[test]
    fn rank_one_pair() {
        let doc = parse_loop_nest("loop (x,y) { A[3x\u{2212}y]; B[x-2*y]; }").unwrap();
        assert_eq!(doc.maps[0].rows, vec![vec![3, -1]]);
        assert_eq!(doc.maps[1].rows, vec![vec![1, -2]]);
    }

    #[test]
    fn four_dimensional_nest() {
        let text = "// four arrays\nloop (e1, e2, e3, e4) {\n  A1[e1, e3];\n  A2[e2, e4];\n  A3[e1, e2, e3 + e4];\n  A4[e1 + e2, e3, e4];\n}\n";
        let doc = parse_loop_nest(text).unwrap();
        assert_eq!(doc.maps[2].rows, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        assert_eq!(doc.maps[3].rows, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn repeated_index_accumulates() {
        let doc = parse_loop_nest("loop (i, j) { A[i + 2i - j]; }").unwrap();
        assert_eq!(doc.maps[0].rows, vec![vec![3, -1]]);
    }

    #[test]
    fn error_kinds_and_positions() {
        let e = parse_loop_nest("loop (i, j) {\n  A[i*j];\n}").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (DslErrorKind::NonlinearSubscript, 2, 7));
        let e = parse_loop_nest("loop (i) { A[i + 1]; }").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::NonlinearSubscript);
        let e = parse_loop_nest("loop (i) { A[k]; }").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (DslErrorKind::UnknownIndex, 1, 14));
        let e = parse_loop_nest("loop (i) { A[i] }").unwrap_err();
        assert_eq!((e.kind, e.col), (DslErrorKind::Syntax, 17));
        let e = parse_loop_nest("loop (i) { A[i]; A[2i]; }").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::DuplicateName);
        let e = parse_loop_nest("loop (i) { A[i]; } extra").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Syntax);
        let e = parse_loop_nest("loop (i) { A[i] ? }").unwrap_err();
        assert_eq!((e.kind, e.col), (DslErrorKind::Syntax, 17));
    }
}
