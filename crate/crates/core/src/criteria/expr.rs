use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Syntactic merging criterion built from the four atoms with meet (`.`) and
/// join (`+`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CriterionExpr {
    Left,
    Right,
    In,
    Out,
    Meet(Box<CriterionExpr>, Box<CriterionExpr>),
    Join(Box<CriterionExpr>, Box<CriterionExpr>),
}

impl CriterionExpr {
    pub fn meet(self, other: CriterionExpr) -> Self {
        CriterionExpr::Meet(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: CriterionExpr) -> Self {
        CriterionExpr::Join(Box::new(self), Box::new(other))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser { text, pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

impl FromStr for CriterionExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionExpr::parse(s)
    }
}

impl fmt::Display for CriterionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CriterionExpr::Left => f.write_str("left"),
            CriterionExpr::Right => f.write_str("right"),
            CriterionExpr::In => f.write_str("in"),
            CriterionExpr::Out => f.write_str("out"),
            CriterionExpr::Meet(a, b) => {
                let side = |e: &CriterionExpr| match e {
                    CriterionExpr::Join(..) => format!("({e})"),
                    _ => e.to_string(),
                };
                write!(f, "{}.{}", side(a), side(b))
            }
            CriterionExpr::Join(a, b) => {
                let right = match **b {
                    CriterionExpr::Join(..) => format!("({b})"),
                    _ => b.to_string(),
                };
                write!(f, "{a}+{right}")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Criterion {
            offset: self.pos,
            message: message.to_owned(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<CriterionExpr> {
        let mut e = self.product()?;
        while self.eat('+') {
            e = e.join(self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<CriterionExpr> {
        let mut e = self.atom()?;
        while self.eat('.') {
            e = e.meet(self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<CriterionExpr> {
        if self.eat('(') {
            let e = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        let word = rest[..len].to_ascii_lowercase();
        let e = match word.as_str() {
            "left" | "l" => CriterionExpr::Left,
            "right" | "r" => CriterionExpr::Right,
            "in" => CriterionExpr::In,
            "out" => CriterionExpr::Out,
            "" => return Err(self.error("expected a criterion")),
            _ => return Err(self.error(&format!("unknown criterion `{}`", &rest[..len]))),
        };
        self.pos += len;
        Ok(e)
    }
}
