//! Text syntax for elements.
//!
//! ```text
//! element := '0' | term ('+' term)*
//! term    := '1' | qfactor+
//! qfactor := 'Q' '^'? uint
//! ```
//!
//! Whitespace may appear between any two tokens. Repeated terms cancel.

use serde_json::json;

use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::seq::Sequence;

/// Largest superscript accepted by the parser.
pub const MAX_SUPERSCRIPT: u32 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Text,
    Json,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn uint(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a superscript"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        match digits.parse::<u32>() {
            Ok(v) if v <= MAX_SUPERSCRIPT => Ok(v),
            _ => Err(Error::Parse {
                pos: start,
                msg: format!("superscript {digits} exceeds {MAX_SUPERSCRIPT}"),
            }),
        }
    }

    fn term(&mut self) -> Result<Sequence> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(Sequence::empty())
            }
            Some(b'Q') => {
                let mut entries = Vec::new();
                while self.peek() == Some(b'Q') {
                    self.pos += 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                    }
                    entries.push(self.uint()?);
                }
                Ok(Sequence::new(entries))
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c as char))),
            None => Err(self.error("expected a term")),
        }
    }
}

pub fn parse_element(text: &str) -> Result<Element> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if cur.peek() == Some(b'0') {
        cur.pos += 1;
        return match cur.peek() {
            None => Ok(Element::zero()),
            Some(_) => Err(cur.error("trailing input after '0'")),
        };
    }
    let mut out = Element::zero();
    out.toggle(cur.term()?);
    while let Some(c) = cur.peek() {
        if c != b'+' {
            return Err(cur.error(format!("expected '+', found '{}'", c as char)));
        }
        cur.pos += 1;
        out.toggle(cur.term()?);
    }
    Ok(out)
}

/// Parses a comma-separated list of nonnegative integers, as in `4,2,1`.
pub fn parse_vector(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let trimmed = part.trim();
        let v = trimmed.parse::<u32>().map_err(|_| Error::Parse {
            pos: offset,
            msg: format!("expected a nonnegative integer, found {trimmed:?}"),
        })?;
        out.push(v);
        offset += part.len() + 1;
    }
    Ok(out)
}

pub fn format_sequence(s: &Sequence) -> String {
    if s.is_empty() {
        return "1".to_string();
    }
    s.entries()
        .iter()
        .map(|i| format!("Q^{i}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn element_json(x: &Element) -> serde_json::Value {
    let terms: Vec<&[u32]> = x.terms().map(Sequence::entries).collect();
    json!({ "terms": terms })
}

pub fn format_element(x: &Element, style: Style) -> String {
    match style {
        Style::Json => element_json(x).to_string(),
        Style::Text if x.is_zero() => "0".to_string(),
        Style::Text => x
            .terms()
            .map(format_sequence)
            .collect::<Vec<_>>()
            .join(" + "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(seqs: &[&[u32]]) -> Element {
        seqs.iter().map(|v| Sequence::new(v.to_vec())).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_element("Q3 Q2").unwrap(), el(&[&[3, 2]]));
        assert_eq!(parse_element("Q^1Q^1 + Q^1Q^1").unwrap(), Element::zero());
        assert_eq!(parse_element("1").unwrap(), Element::one());
        assert_eq!(parse_element(" 0 ").unwrap(), Element::zero());
        assert_eq!(parse_element("Q^2+Q1 Q1").unwrap(), el(&[&[2], &[1, 1]]));
        assert_eq!(parse_element("Q 0").unwrap(), el(&[&[0]]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let pos = |t: &str| match parse_element(t) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{t:?} gave {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("Q3 +"), 4);
        assert_eq!(pos("Q3 x"), 3);
        assert_eq!(pos("Q^"), 2);
        assert_eq!(pos("0 + Q1"), 2);
        assert_eq!(pos("Q1 Q2000000"), 4);
        assert!(parse_element("Q1048576").is_ok());
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_element(&el(&[&[3, 2]]), Style::Text), "Q^3 Q^2");
        assert_eq!(format_element(&Element::zero(), Style::Text), "0");
        assert_eq!(format_element(&Element::one(), Style::Text), "1");
        assert_eq!(
            format_element(&el(&[&[1, 1], &[2]]), Style::Text),
            "Q^2 + Q^1 Q^1"
        );
        assert_eq!(
            format_element(&el(&[&[1, 1], &[2]]), Style::Json),
            r#"{"terms":[[2],[1,1]]}"#
        );
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("4, 2,1").unwrap(), vec![4, 2, 1]);
        assert!(matches!(
            parse_vector("4,x"),
            Err(Error::Parse { pos: 2, .. })
        ));
    }
}
