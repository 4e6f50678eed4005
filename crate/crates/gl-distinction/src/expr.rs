//! The expression language of the command line.
//!
//! ```text
//! product := factor (('x' | '×') factor)*
//! factor  := segment | 'Ladder' '[' segment (',' segment)* ']'
//!          | 'Speh' '(' segment ',' int ')'
//!          | 'Pair' '(' 'Speh' '(' segment ',' int ')' ',' rat ')'
//! segment := 'eta*'? ('Seg' '(' id ',' rat ',' rat ')' | 'St' '(' id ',' int ')') ('@' rat)?
//! ```
//!
//! `St(rho,k)` is centred at 0 and `@c` shifts a segment by `c`. Printing
//! always uses the `Seg` form, so printed expressions re-parse to equal values.

use std::fmt;

use crate::error::{Error, Result};
use crate::ladders::{Multisegment, UnitaryFactor};
use crate::rat::{self, Rat};
use crate::segments::Segment;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Segment(Segment),
    Ladder(Multisegment),
    Speh(Segment, u32),
    Pair(Segment, u32, Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub factors: Vec<Factor>,
}

impl Factor {
    pub fn unitary(&self) -> Result<Option<UnitaryFactor>> {
        Ok(match self {
            Factor::Speh(d, k) => Some(UnitaryFactor::speh(d.clone(), *k)),
            Factor::Pair(d, k, a) => Some(UnitaryFactor::pair(d.clone(), *k, *a)?),
            _ => None,
        })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Segment(s) => write!(f, "{s}"),
            Factor::Ladder(m) => write!(f, "{m}"),
            Factor::Speh(d, k) => write!(f, "Speh({d},{k})"),
            Factor::Pair(d, k, a) => write!(f, "Pair(Speh({d},{k}),{})", rat::format(a)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn fail<T>(&self, expected: &str, message: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            expected: expected.to_string(),
            message: message.to_string(),
        })
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("{c:?}"));
            self.fail(&format!("{tok:?}"), &format!("found {found}"))
        }
    }

    fn take_while(&mut self, ok: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let len: usize = self.rest().chars().take_while(|&c| ok(c)).map(char::len_utf8).sum();
        self.pos += len;
        &self.src[start..self.pos]
    }

    fn ident(&mut self) -> Result<String> {
        let id = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if id.is_empty() {
            return self.fail("identifier", "missing cuspidal id");
        }
        Ok(id.to_string())
    }

    fn rational(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        let text = self.take_while(|c| c.is_ascii_digit() || c == '-' || c == '/');
        match rat::parse(text) {
            Some(r) => Ok(r),
            None => {
                self.pos = start;
                self.fail("rational p or p/q", "not a rational number")
            }
        }
    }

    fn positive(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let text = self.take_while(|c| c.is_ascii_digit());
        match text.parse::<u32>() {
            Ok(k) if k > 0 => Ok(k),
            _ => {
                self.pos = start;
                self.fail("positive integer", "not a positive integer")
            }
        }
    }

    fn segment(&mut self) -> Result<Segment> {
        let eta = u8::from(self.eat("eta*"));
        self.skip_ws();
        let at = self.pos;
        let seg = if self.eat("Seg") {
            self.expect("(")?;
            let id = self.ident()?;
            self.expect(",")?;
            let a = self.rational()?;
            self.expect(",")?;
            let b = self.rational()?;
            self.expect(")")?;
            Segment::new(&id, eta, a, b)
        } else if self.eat("St") {
            self.expect("(")?;
            let id = self.ident()?;
            self.expect(",")?;
            let k = self.positive()?;
            self.expect(")")?;
            Segment::steinberg(&id, eta, k, rat::int(0))
        } else {
            return self.fail("Seg or St", "expected a segment");
        };
        let seg = seg.map_err(|e| Error::Parse {
            pos: at,
            expected: "valid segment".into(),
            message: e.to_string(),
        })?;
        if self.eat("@") {
            let c = self.rational()?;
            return Ok(seg.shift(c));
        }
        Ok(seg)
    }

    fn speh_body(&mut self) -> Result<(Segment, u32)> {
        self.expect("(")?;
        let d = self.segment()?;
        self.expect(",")?;
        let k = self.positive()?;
        self.expect(")")?;
        Ok((d, k))
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        let at = self.pos;
        if self.eat("Ladder") {
            self.expect("[")?;
            let mut segs = vec![self.segment()?];
            while self.eat(",") {
                segs.push(self.segment()?);
            }
            self.expect("]")?;
            let ms = Multisegment::new(segs).map_err(|e| Error::Parse {
                pos: at,
                expected: "segments on one line".into(),
                message: e.to_string(),
            })?;
            return Ok(Factor::Ladder(ms));
        }
        if self.eat("Speh") {
            let (d, k) = self.speh_body()?;
            return Ok(Factor::Speh(d, k));
        }
        if self.eat("Pair") {
            self.expect("(")?;
            self.expect("Speh")?;
            let (d, k) = self.speh_body()?;
            self.expect(",")?;
            let a = self.rational()?;
            self.expect(")")?;
            return Ok(Factor::Pair(d, k, a));
        }
        Ok(Factor::Segment(self.segment()?))
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let mut factors = vec![p.factor()?];
    while p.eat("x") || p.eat("×") {
        factors.push(p.factor()?);
    }
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail("'x' or end of input", "trailing input");
    }
    Ok(Expr { factors })
}
