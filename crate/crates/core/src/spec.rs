//! Textual group specifications such as `G(3,3,4)`, `E8`, `I2(5)` or `G24`.

use crate::error::{Error, Result};
use crate::groups::generators::{load_generator_file, SHIPPED};
use crate::groups::{build_coxeter, build_from_generators, build_series, CoxeterType, ReflectionGroupData};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Series { m: u32, p: u32, r: u32 },
    Coxeter(CoxeterType),
    /// Shephard-Todd index of a group given by generator data.
    Exceptional(u32),
}

/// Exceptional indices that are Coxeter groups.
pub const ALIASES: [(u32, CoxeterType); 6] = [
    (23, CoxeterType::H3),
    (28, CoxeterType::F4),
    (30, CoxeterType::H4),
    (35, CoxeterType::E6),
    (36, CoxeterType::E7),
    (37, CoxeterType::E8),
];

pub fn alias(k: u32) -> Option<CoxeterType> {
    ALIASES.iter().find(|a| a.0 == k).map(|a| a.1)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Series { m, p, r } => write!(f, "G({},{},{})", m, p, r),
            GroupSpec::Coxeter(t) => write!(f, "{}", t),
            GroupSpec::Exceptional(k) => write!(f, "G{}", k),
        }
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let v = text.parse::<u32>().map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })?;
        self.skip_ws();
        Ok(v)
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.s[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }
}

/// Syntax only; no semantic validation.
fn parse_syntax(text: &str) -> Result<GroupSpec> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
    };
    let spec = if c.keyword("G(") {
        let m = c.int()?;
        c.expect(b',')?;
        let p = c.int()?;
        c.expect(b',')?;
        let r = c.int()?;
        c.expect(b')')?;
        GroupSpec::Series { m, p, r }
    } else if c.keyword("I2(") {
        let e = c.int()?;
        c.expect(b')')?;
        GroupSpec::Coxeter(CoxeterType::I2(e))
    } else {
        let fixed = [
            ("H3", CoxeterType::H3),
            ("H4", CoxeterType::H4),
            ("F4", CoxeterType::F4),
            ("E6", CoxeterType::E6),
            ("E7", CoxeterType::E7),
            ("E8", CoxeterType::E8),
        ];
        match fixed.iter().find(|(kw, _)| text.as_bytes() == kw.as_bytes()) {
            Some(&(kw, t)) => {
                c.pos = kw.len();
                GroupSpec::Coxeter(t)
            }
            None => match c.peek() {
                Some(b'A') | Some(b'B') | Some(b'D') | Some(b'G') => {
                    let head = c.peek().unwrap();
                    c.pos += 1;
                    if !matches!(c.peek(), Some(b'0'..=b'9')) {
                        return c.err("expected integer");
                    }
                    let n = c.int()?;
                    match head {
                        b'A' => GroupSpec::Coxeter(CoxeterType::A(n)),
                        b'B' => GroupSpec::Coxeter(CoxeterType::B(n)),
                        b'D' => GroupSpec::Coxeter(CoxeterType::D(n)),
                        _ => GroupSpec::Exceptional(n),
                    }
                }
                _ => return c.err("expected G(, A, B, D, I2(, H3, H4, F4, E6, E7, E8 or G<k>"),
            },
        }
    };
    if c.pos != c.s.len() {
        return c.err("unexpected trailing input");
    }
    Ok(spec)
}

impl GroupSpec {
    /// Semantic checks; generator files in `data_dir` count as available data.
    pub fn validate(&self, data_dir: Option<&Path>) -> Result<()> {
        match *self {
            GroupSpec::Series { m, p, r } => crate::groups::series::validate(m, p, r),
            GroupSpec::Coxeter(t) => t.validate(),
            GroupSpec::Exceptional(k) => {
                let in_dir = data_dir.is_some_and(|d| d.join(format!("G{}.json", k)).exists());
                if SHIPPED.contains(&k) || in_dir {
                    Ok(())
                } else {
                    Err(Error::NoGeneratorData(k))
                }
            }
        }
    }

    pub fn build(&self, data_dir: Option<&Path>) -> Result<ReflectionGroupData> {
        self.validate(data_dir)?;
        match *self {
            GroupSpec::Series { m, p, r } => build_series(m, p, r),
            GroupSpec::Coxeter(t) => build_coxeter(t),
            GroupSpec::Exceptional(k) => {
                let mut g = build_from_generators(&load_generator_file(k, data_dir)?)?;
                g.name = self.to_string();
                Ok(g)
            }
        }
    }

    /// The Coxeter type, also for series members that are Coxeter groups.
    pub fn coxeter_type(&self) -> Option<CoxeterType> {
        match *self {
            GroupSpec::Coxeter(t) => Some(t),
            GroupSpec::Series { m: 1, p: 1, r } if r >= 2 => Some(CoxeterType::A(r - 1)),
            GroupSpec::Series { m: 2, p: 1, r } if r >= 2 => Some(CoxeterType::B(r)),
            GroupSpec::Series { m: 2, p: 2, r } if r >= 4 => Some(CoxeterType::D(r)),
            GroupSpec::Series { m, p, r: 2 } if m == p && m >= 3 => Some(CoxeterType::I2(m)),
            _ => None,
        }
    }
}

/// Parses and validates against the shipped data and `data_dir`.
pub fn parse_group_in(text: &str, data_dir: Option<&Path>) -> Result<GroupSpec> {
    let spec = match parse_syntax(text.trim())? {
        GroupSpec::Exceptional(k) => match alias(k) {
            Some(t) => GroupSpec::Coxeter(t),
            None => GroupSpec::Exceptional(k),
        },
        s => s,
    };
    spec.validate(data_dir)?;
    Ok(spec)
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    parse_group_in(text, None)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_group("G(3,3,4)").unwrap(), GroupSpec::Series { m: 3, p: 3, r: 4 });
        assert_eq!(parse_group("G23").unwrap(), GroupSpec::Coxeter(CoxeterType::H3));
        assert_eq!(parse_group("G37").unwrap().to_string(), "E8");
        assert_eq!(parse_group("I2(7)").unwrap(), GroupSpec::Coxeter(CoxeterType::I2(7)));
        assert_eq!(parse_group("G24").unwrap(), GroupSpec::Exceptional(24));
        assert_eq!(parse_group(" G( 4, 2, 3 ) ").unwrap().to_string(), "G(4,2,3)");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_group("G(6,2,3)"), Err(Error::UnsupportedSeries { m: 6, p: 2 }));
        assert!(parse_group("G(6,4,3)").unwrap_err().to_string().contains("divide"));
        assert_eq!(parse_group("G5"), Err(Error::NoGeneratorData(5)));
        assert!(matches!(parse_group("G(3,3"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_group("X7"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_group("A3x"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_group("H5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group("A0"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn coxeter_identification() {
        assert_eq!(parse_group("G(1,1,4)").unwrap().coxeter_type(), Some(CoxeterType::A(3)));
        assert_eq!(parse_group("G(5,5,2)").unwrap().coxeter_type(), Some(CoxeterType::I2(5)));
        assert_eq!(parse_group("G(3,3,3)").unwrap().coxeter_type(), None);
    }

    #[test]
    fn builds() {
        let g = parse_group("G12").unwrap().build(None).unwrap();
        assert_eq!(g.name, "G12");
        assert_eq!(g.len(), 12);
    }
}
