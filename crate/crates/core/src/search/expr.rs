//! Protocol composition trees and their text form.
//!
//! Grammar:
//!
//! ```text
//! expr := "eps0"
//!       | "BK(" expr ")" | "MEK(" expr ")" | "BH[" k "](" expr ")"
//!       | "H1[" k "](" expr "," expr ")"
//!       | "ML[" t "][" n "](" expr "," expr ")"      (n = k + 4)
//! ```
//!
//! Two-source nodes list the logical input first, then the physical one.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::models::ProtocolKind;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProtocolExpr {
    Source,
    Single {
        kind: ProtocolKind,
        input: Arc<ProtocolExpr>,
    },
    Double {
        kind: ProtocolKind,
        logical: Arc<ProtocolExpr>,
        physical: Arc<ProtocolExpr>,
    },
}

impl ProtocolExpr {
    pub fn single(kind: ProtocolKind, input: Arc<ProtocolExpr>) -> Result<Self> {
        kind.validate()?;
        if kind.is_two_source() {
            return Err(Error::usage(format!("{kind} needs two inputs")));
        }
        Ok(ProtocolExpr::Single { kind, input })
    }

    pub fn double(
        kind: ProtocolKind,
        logical: Arc<ProtocolExpr>,
        physical: Arc<ProtocolExpr>,
    ) -> Result<Self> {
        kind.validate()?;
        if !kind.is_two_source() {
            return Err(Error::usage(format!("{kind} takes a single input")));
        }
        Ok(ProtocolExpr::Double {
            kind,
            logical,
            physical,
        })
    }

    /// Rounds from the raw source; both children of a two-source node count.
    pub fn depth(&self) -> usize {
        match self {
            ProtocolExpr::Source => 0,
            ProtocolExpr::Single { input, .. } => 1 + input.depth(),
            ProtocolExpr::Double {
                logical, physical, ..
            } => 1 + logical.depth().max(physical.depth()),
        }
    }

    pub fn kind(&self) -> Option<ProtocolKind> {
        match self {
            ProtocolExpr::Source => None,
            ProtocolExpr::Single { kind, .. } | ProtocolExpr::Double { kind, .. } => Some(*kind),
        }
    }
}

impl fmt::Display for ProtocolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProtocolExpr::Source => f.write_str("eps0"),
            ProtocolExpr::Single { kind, input } => write!(f, "{kind}({input})"),
            ProtocolExpr::Double {
                kind,
                logical,
                physical,
            } => write!(f, "{kind}({logical},{physical})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected {lit:?}"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map_or_else(|| self.err("number out of range"), Ok)
    }

    fn bracketed(&mut self) -> Result<u64> {
        self.expect("[")?;
        let n = self.number()?;
        self.expect("]")?;
        Ok(n)
    }

    fn expr(&mut self) -> Result<ProtocolExpr> {
        let at = self.pos;
        let wrap = |r: Result<ProtocolExpr>| {
            r.map_err(|e| match e {
                Error::Usage(msg) => Error::Parse { pos: at, msg },
                other => other,
            })
        };
        if self.eat("eps0") {
            return Ok(ProtocolExpr::Source);
        }
        if self.eat("BK(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return wrap(ProtocolExpr::single(ProtocolKind::Bk, Arc::new(inner)));
        }
        if self.eat("MEK(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return wrap(ProtocolExpr::single(ProtocolKind::Mek, Arc::new(inner)));
        }
        if self.eat("BH") {
            let k = self.bracketed()?;
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            return wrap(ProtocolExpr::single(
                ProtocolKind::Bh { k },
                Arc::new(inner),
            ));
        }
        let kind = if self.eat("H1") {
            ProtocolKind::H1 {
                k: self.bracketed()?,
            }
        } else if self.eat("ML") {
            let t = self.bracketed()?;
            let n = self.bracketed()?;
            if n < 4 || t > 8 {
                return self.err(format!("bad multilevel parameters [{t}][{n}]"));
            }
            ProtocolKind::Ml {
                t: t as u32,
                k: n - 4,
            }
        } else {
            return self.err("expected a protocol name or eps0");
        };
        self.expect("(")?;
        let logical = self.expr()?;
        self.expect(",")?;
        let physical = self.expr()?;
        self.expect(")")?;
        wrap(ProtocolExpr::double(
            kind,
            Arc::new(logical),
            Arc::new(physical),
        ))
    }
}

impl FromStr for ProtocolExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.pos != s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}
