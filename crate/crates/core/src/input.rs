//! The fibration description format.
//!
//! Line oriented, `#` starts a comment running to the end of the line:
//!
//! ```text
//! genus = 1
//! base = disk
//! cycles = (1,3) (1,0) (1,-3) (0,1)
//! surface = 1 [1,0] [1,0]
//! ```
//!
//! Every key may appear at most once. Missing keys default to genus 1, the
//! disk, an empty cycle list and no surface block.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::certifier::SurfaceLogPair;
use crate::fibration::{Base, FibrationSpec, VanishingCycleWord};
use crate::mcg::CurveClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given more than once")]
    DuplicateKey(String),
    #[error("unsupported base `{0}`, only `disk` is accepted")]
    UnsupportedBase(String),
    #[error("cycle ({0},{1}) is not a primitive class")]
    NonPrimitive(BigInt, BigInt),
    #[error("genus {0} is out of range")]
    BadGenus(BigInt),
    #[error("surface vector has {len} entries, expected {expected} for genus {genus}")]
    BadVectorLength {
        len: usize,
        expected: usize,
        genus: u32,
    },
}

/// Closed base surface block: genus and the mod 2 classes of the curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceBlock {
    pub genus: u32,
    pub vectors: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationFile {
    pub genus: u32,
    pub base: Base,
    pub cycles: VanishingCycleWord,
    pub surface: Option<SurfaceBlock>,
}

impl Default for FibrationFile {
    fn default() -> Self {
        Self {
            genus: 1,
            base: Base::Disk,
            cycles: VanishingCycleWord::empty(),
            surface: None,
        }
    }
}

impl FibrationFile {
    pub fn spec(&self) -> FibrationSpec {
        FibrationSpec {
            fiber_genus: self.genus,
            base: self.base.clone(),
            word: self.cycles.clone(),
        }
    }

    pub fn surface_pair(&self) -> Option<SurfaceLogPair> {
        self.surface
            .as_ref()
            .map(|s| SurfaceLogPair::closed(s.genus, s.vectors.clone()))
    }
}

/// Canonical text form; parsing it yields the same value.
impl fmt::Display for FibrationFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus = {}", self.genus)?;
        match &self.base {
            Base::Disk => writeln!(f, "base = disk")?,
            other => writeln!(f, "# base {other:?} has no textual form")?,
        }
        if !self.cycles.is_empty() {
            writeln!(f, "cycles = {}", self.cycles)?;
        }
        if let Some(s) = &self.surface {
            write!(f, "surface = {}", s.genus)?;
            for v in &s.vectors {
                let entries: Vec<String> = v.iter().map(u8::to_string).collect();
                write!(f, " [{}]", entries.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: pos + 1,
            kind,
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error(ParseErrorKind::Syntax(msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(self.syntax(format!("expected `{c}`, found `{found}`"))),
            None => Err(self.syntax(format!("expected `{c}`, found end of line"))),
        }
    }

    fn word(&mut self) -> Result<(usize, String), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a word"));
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn int(&mut self) -> Result<(usize, BigInt), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            self.pos = start;
            return Err(self.syntax("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let value = text
            .parse::<BigInt>()
            .map_err(|e| self.error_at(start, ParseErrorKind::Syntax(e.to_string())))?;
        Ok((start, value))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_genus(cur: &mut Cursor<'_>) -> Result<u32, ParseError> {
    let (start, value) = cur.int()?;
    value
        .to_u32()
        .ok_or_else(|| cur.error_at(start, ParseErrorKind::BadGenus(value.clone())))
}

fn parse_cycles(cur: &mut Cursor<'_>) -> Result<Vec<CurveClass>, ParseError> {
    let mut cycles = Vec::new();
    while !cur.at_end() {
        let start = cur.pos;
        cur.expect('(')?;
        let (_, p) = cur.int()?;
        cur.expect(',')?;
        let (_, q) = cur.int()?;
        cur.expect(')')?;
        let class = CurveClass::new(p.clone(), q.clone())
            .map_err(|_| cur.error_at(start, ParseErrorKind::NonPrimitive(p, q)))?;
        cycles.push(class);
    }
    if cycles.is_empty() {
        return Err(cur.syntax("expected at least one pair `(p,q)`"));
    }
    Ok(cycles)
}

fn parse_surface(cur: &mut Cursor<'_>) -> Result<SurfaceBlock, ParseError> {
    let genus = parse_genus(cur)?;
    let expected = 2 * genus as usize;
    let mut vectors = Vec::new();
    while !cur.at_end() {
        let start = cur.pos;
        cur.expect('[')?;
        let mut entries = Vec::new();
        if cur.peek() == Some(']') {
            cur.pos += 1;
        } else {
            loop {
                let (pos, v) = cur.int()?;
                let bit = if v.is_zero() {
                    0
                } else if v == BigInt::from(1) {
                    1
                } else {
                    return Err(cur.error_at(
                        pos,
                        ParseErrorKind::Syntax("vector entries must be 0 or 1".into()),
                    ));
                };
                entries.push(bit);
                match cur.peek() {
                    Some(',') => cur.pos += 1,
                    Some(']') => {
                        cur.pos += 1;
                        break;
                    }
                    _ => return Err(cur.syntax("expected `,` or `]`")),
                }
            }
        }
        if entries.len() != expected {
            return Err(cur.error_at(
                start,
                ParseErrorKind::BadVectorLength {
                    len: entries.len(),
                    expected,
                    genus,
                },
            ));
        }
        vectors.push(entries);
    }
    Ok(SurfaceBlock { genus, vectors })
}

pub fn parse_fibration(text: &str) -> Result<FibrationFile, ParseError> {
    let mut file = FibrationFile::default();
    let mut seen: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut cur = Cursor::new(strip_comment(raw), idx + 1);
        if cur.at_end() {
            continue;
        }
        let (key_pos, key) = cur.word()?;
        if !matches!(key.as_str(), "genus" | "base" | "cycles" | "surface") {
            return Err(cur.error_at(key_pos, ParseErrorKind::UnknownKey(key)));
        }
        if seen.contains(&key) {
            return Err(cur.error_at(key_pos, ParseErrorKind::DuplicateKey(key)));
        }
        cur.expect('=')?;
        match key.as_str() {
            "genus" => file.genus = parse_genus(&mut cur)?,
            "base" => {
                let (pos, base) = cur.word()?;
                if base != "disk" {
                    return Err(cur.error_at(pos, ParseErrorKind::UnsupportedBase(base)));
                }
                file.base = Base::Disk;
            }
            "cycles" => file.cycles = VanishingCycleWord::new(parse_cycles(&mut cur)?),
            "surface" => file.surface = Some(parse_surface(&mut cur)?),
            _ => unreachable!(),
        }
        if !cur.at_end() {
            return Err(cur.syntax("unexpected trailing input"));
        }
        seen.push(key);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_file() {
        let f = parse_fibration("genus = 1\nbase = disk\ncycles = (0,1)\n").unwrap();
        assert_eq!(f.genus, 1);
        assert_eq!(f.base, Base::Disk);
        assert_eq!(f.cycles, VanishingCycleWord::from_pairs(&[(0, 1)]).unwrap());
        assert_eq!(f.surface, None);
    }

    #[test]
    fn non_primitive_is_positioned() {
        let err = parse_fibration("cycles = (2,2)").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 10);
        assert_eq!(err.kind, ParseErrorKind::NonPrimitive(2.into(), 2.into()));
        let err = parse_fibration("genus = 1\ncycles = (0,1)  (0, 0)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 17));
    }

    #[test]
    fn family_file_keeps_order() {
        let f = parse_fibration("cycles = (1,3) (1,0) (1,-3) (0,1) (0,1)").unwrap();
        assert_eq!(
            f.cycles,
            VanishingCycleWord::from_pairs(&[(1, 3), (1, 0), (-1, 3), (0, 1), (0, 1)]).unwrap()
        );
    }

    #[test]
    fn comments_whitespace_and_signs() {
        let f = parse_fibration("# header\n  genus=1 # trailing\n\ncycles = ( +1 , -3 )(0,1)\n")
            .unwrap();
        assert_eq!(f.cycles.len(), 2);
    }

    #[test]
    fn rejections() {
        let cases: &[(&str, (usize, usize))] = &[
            ("colour = red", (1, 1)),
            ("base = sphere", (1, 8)),
            ("genus = -1", (1, 9)),
            ("genus = 1\ngenus = 1", (2, 1)),
            ("cycles =", (1, 9)),
            ("cycles = (1,2", (1, 14)),
            ("genus 1", (1, 7)),
            ("genus = 1 2", (1, 11)),
            ("surface = 1 [1,0,1]", (1, 13)),
            ("surface = 1 [1,2]", (1, 16)),
        ];
        for (text, pos) in cases {
            let err = parse_fibration(text).unwrap_err();
            assert_eq!((err.line, err.column), *pos, "{text}: {err}");
        }
    }

    #[test]
    fn surface_block() {
        let f = parse_fibration("surface = 2 [1,0,0,1] [0,0,0,1]").unwrap();
        let s = f.surface.unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.vectors, vec![vec![1, 0, 0, 1], vec![0, 0, 0, 1]]);
        assert_eq!(
            parse_fibration("surface = 0")
                .unwrap()
                .surface
                .unwrap()
                .vectors
                .len(),
            0
        );
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "cycles = (1,-3) (2,5)\nsurface = 1 [1,1]\ngenus = 3";
        let f = parse_fibration(text).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_fibration(&printed).unwrap(), f);
        assert_eq!(
            printed,
            "genus = 3\nbase = disk\ncycles = (-1,3) (2,5)\nsurface = 1 [1,1]\n"
        );
    }
}
