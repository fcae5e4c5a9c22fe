//! Word syntax: whitespace-separated letters `T[c..]^e`, `SEP{i,..}^e`,
//! `BP([c1],[c2],[c3])^e`. The leftmost letter is applied last.

use std::fmt;

use spinsurgery_core::mapping::Chain;
use spinsurgery_core::{Curve, Error, HomologyZ, Letter, TwistWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
    pub source: Option<Error>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos,
            message: message.into(),
            source: None,
        })
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            self.fail(format!("expected `{token}`"))
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail("expected an integer");
        }
        self.pos += sign + digits;
        self.text[start..self.pos].parse().map_err(|_| ParseError {
            position: start,
            message: "integer out of range".into(),
            source: None,
        })
    }

    fn list(&mut self, close: &str) -> Result<Vec<i64>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn class(&mut self, genus: usize) -> Result<HomologyZ, ParseError> {
        self.skip_ws();
        let at = self.pos;
        self.expect("[")?;
        let v = self.list("]")?;
        if v.len() != 2 * genus {
            return Err(ParseError {
                position: at,
                message: format!(
                    "class has {} coefficients, genus {genus} needs {}",
                    v.len(),
                    2 * genus
                ),
                source: None,
            });
        }
        let c = HomologyZ::new(v).map_err(|e| core_error(at, e))?;
        if !c.is_primitive() {
            return Err(core_error(at, Error::NonPrimitive(c.coeffs().to_vec())));
        }
        Ok(c)
    }
}

fn core_error(position: usize, e: Error) -> ParseError {
    ParseError {
        position,
        message: e.to_string(),
        source: Some(e),
    }
}

fn letter(s: &mut Scanner<'_>, genus: usize) -> Result<Letter, ParseError> {
    let start = s.pos;
    let curve = if s.eat("SEP") {
        s.expect("{")?;
        let handles = s.list("}")?;
        let handles = handles
            .into_iter()
            .map(|h| {
                usize::try_from(h).map_err(|_| ParseError {
                    position: start,
                    message: format!("handle {h} is negative"),
                    source: None,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Curve::Separating(handles)
    } else if s.eat("BP") {
        s.expect("(")?;
        let c1 = s.class(genus)?;
        s.expect(",")?;
        let c2 = s.class(genus)?;
        s.expect(",")?;
        let c3 = s.class(genus)?;
        s.expect(")")?;
        Curve::BoundingPair(Chain::new(c1, c2, c3).map_err(|e| core_error(start, e))?)
    } else if s.eat("T") {
        Curve::Nonseparating(s.class(genus)?)
    } else {
        return s.fail("expected a letter `T[..]`, `SEP{..}` or `BP(..)`");
    };
    let exponent = if s.text[s.pos..].starts_with('^') {
        s.pos += 1;
        let at = s.pos;
        let e = s.integer()?;
        if e == 0 {
            return Err(ParseError {
                position: at,
                message: "exponent must be nonzero".into(),
                source: None,
            });
        }
        e
    } else {
        1
    };
    let letter = Letter::new(curve, exponent);
    // validate the letter on its own so the error points at it
    TwistWord::new(genus, vec![letter.clone()]).map_err(|e| core_error(start, e))?;
    Ok(letter)
}

pub fn parse_word(text: &str, genus: usize) -> Result<TwistWord, ParseError> {
    let mut s = Scanner { text, pos: 0 };
    let mut letters = Vec::new();
    loop {
        s.skip_ws();
        if s.pos == text.len() {
            break;
        }
        if !letters.is_empty() && !text[..s.pos].ends_with(char::is_whitespace) {
            return s.fail("letters must be separated by whitespace");
        }
        letters.push(letter(&mut s, genus)?);
    }
    TwistWord::new(genus, letters).map_err(|e| core_error(0, e))
}
