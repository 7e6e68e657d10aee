//! Textual network description language.
//!
//! A document is a sequence of tokens. Each token is a wire list followed by
//! a terminator:
//!
//! ```text
//! document := token*
//! token    := wirelist ('-' | '=')
//! wirelist := digit{2,4}                   e.g. 24, 234, 1234 (wires 1..9)
//!           | '[' int (',' int){1,3} ']'   e.g. [3,12] (any order, needed above 9)
//! ```
//!
//! Two wires make a link, three a 2-op and four a 3-op. `=` appends the
//! element's mirror image (`w -> N+1-w`) directly after it, unless the element
//! is its own mirror. Whitespace between tokens is ignored.

use std::fmt;
use std::ops::Range;

use crate::network::{Element, Network, Wire};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnsupportedOrder(usize),
    UnexpectedChar(char),
    ZeroWire,
    WireOutOfRange {
        wire: Wire,
        order: usize,
    },
    DuplicateWire(Wire),
    /// A wire list has fewer than 2 or more than 4 wires.
    BadArity(usize),
    /// A wire list is not followed by `-` or `=`.
    MissingTerminator {
        found: Option<char>,
    },
    /// Malformed bracket list.
    BadBracket {
        found: Option<char>,
    },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnsupportedOrder(n) => write!(
                f,
                "order {n} outside supported range {MIN_ORDER}..={MAX_ORDER}"
            ),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::ZeroWire => write!(f, "wire 0 is not valid (wires are 1-based)"),
            ParseErrorKind::WireOutOfRange { wire, order } => {
                write!(f, "wire {wire} exceeds order {order}")
            }
            ParseErrorKind::DuplicateWire(w) => write!(f, "wire {w} repeated within a token"),
            ParseErrorKind::BadArity(n) => {
                write!(f, "token has {n} wires; expected 2, 3 or 4")
            }
            ParseErrorKind::MissingTerminator { found: Some(c) } => {
                write!(f, "expected '-' or '=' after wire list, found {c:?}")
            }
            ParseErrorKind::MissingTerminator { found: None } => {
                write!(f, "wire list without terminator at end of input")
            }
            ParseErrorKind::BadBracket { found: Some(c) } => {
                write!(f, "malformed bracket list at {c:?}")
            }
            ParseErrorKind::BadBracket { found: None } => {
                write!(f, "unterminated bracket list")
            }
        }
    }
}

/// One parsed token with its location in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Endpoints, sorted ascending.
    pub wires: Vec<Wire>,
    pub mirrored: bool,
    pub span: Range<usize>,
}

/// A parsed document prior to expansion into a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub order: usize,
    pub tokens: Vec<Token>,
}

impl Document {
    pub fn parse(text: &str, order: usize) -> Result<Document, ParseError> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(ParseError {
                offset: 0,
                kind: ParseErrorKind::UnsupportedOrder(order),
            });
        }
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            order,
        }
        .document()
    }

    /// Expands tokens into elements; `=` tokens add their mirror right after.
    pub fn to_network(&self) -> Network {
        let mut elements = Vec::with_capacity(self.tokens.len() * 2);
        for t in &self.tokens {
            let e = Element::from_wires(&t.wires).expect("arity checked by parser");
            elements.push(e);
            if t.mirrored {
                let m = e.mirror(self.order);
                if m != e {
                    elements.push(m);
                }
            }
        }
        Network::new(self.order, elements)
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    order: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn char_at(&self, pos: usize) -> Option<char> {
        self.text.get(pos..).and_then(|s| s.chars().next())
    }

    fn err(&self, offset: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { offset, kind }
    }

    fn document(mut self) -> Result<Document, ParseError> {
        let mut tokens = Vec::new();
        loop {
            while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
                self.pos += 1;
            }
            match self.peek() {
                None => break,
                Some(b'1'..=b'9') | Some(b'[') | Some(b'0') => tokens.push(self.token()?),
                Some(_) => {
                    let c = self.char_at(self.pos).unwrap_or('\u{fffd}');
                    return Err(self.err(self.pos, ParseErrorKind::UnexpectedChar(c)));
                }
            }
        }
        Ok(Document {
            order: self.order,
            tokens,
        })
    }

    fn token(&mut self) -> Result<Token, ParseError> {
        let start = self.pos;
        // (wire, offset of the wire in the source)
        let raw: Vec<(Wire, usize)> = if self.peek() == Some(b'[') {
            self.bracket_list()?
        } else {
            let mut v = Vec::new();
            while let Some(b @ b'0'..=b'9') = self.peek() {
                v.push(((b - b'0') as Wire, self.pos));
                self.pos += 1;
            }
            v
        };
        if !(2..=4).contains(&raw.len()) {
            return Err(self.err(start, ParseErrorKind::BadArity(raw.len())));
        }
        let mut wires: Vec<Wire> = Vec::with_capacity(4);
        for &(w, at) in &raw {
            if w == 0 {
                return Err(self.err(at, ParseErrorKind::ZeroWire));
            }
            if w > self.order {
                return Err(self.err(
                    at,
                    ParseErrorKind::WireOutOfRange {
                        wire: w,
                        order: self.order,
                    },
                ));
            }
            if wires.contains(&w) {
                return Err(self.err(at, ParseErrorKind::DuplicateWire(w)));
            }
            wires.push(w);
        }
        wires.sort_unstable();
        let mirrored = match self.peek() {
            Some(b'-') => false,
            Some(b'=') => true,
            None => {
                return Err(self.err(self.pos, ParseErrorKind::MissingTerminator { found: None }))
            }
            Some(_) => {
                return Err(self.err(
                    self.pos,
                    ParseErrorKind::MissingTerminator {
                        found: self.char_at(self.pos),
                    },
                ))
            }
        };
        self.pos += 1;
        Ok(Token {
            wires,
            mirrored,
            span: start..self.pos,
        })
    }

    fn bracket_list(&mut self) -> Result<Vec<(Wire, usize)>, ParseError> {
        self.pos += 1; // '['
        let mut out = Vec::new();
        loop {
            let at = self.pos;
            let mut value: Option<Wire> = None;
            while let Some(b @ b'0'..=b'9') = self.peek() {
                let d = (b - b'0') as Wire;
                // saturate rather than overflow; anything this large is out of range anyway
                value = Some(value.unwrap_or(0).saturating_mul(10).saturating_add(d));
                self.pos += 1;
            }
            match value {
                Some(v) => out.push((v, at)),
                None => {
                    return Err(self.err(
                        self.pos,
                        ParseErrorKind::BadBracket {
                            found: self.char_at(self.pos),
                        },
                    ))
                }
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => {
                    return Err(self.err(
                        self.pos,
                        ParseErrorKind::BadBracket {
                            found: self.char_at(self.pos),
                        },
                    ))
                }
            }
        }
    }
}

/// Parses `text` as an `order`-wire network.
pub fn parse(text: &str, order: usize) -> Result<Network, ParseError> {
    Ok(Document::parse(text, order)?.to_network())
}

/// Formats one element as a wire list (no terminator).
pub fn wirelist(element: &Element, order: usize) -> String {
    let w = element.wires();
    if order <= 9 {
        w.as_slice().iter().map(|x| x.to_string()).collect()
    } else {
        let inner: Vec<String> = w.as_slice().iter().map(|x| x.to_string()).collect();
        format!("[{}]", inner.join(","))
    }
}

/// Serializes a valid network, one `-`-terminated token per element.
pub fn serialize(network: &Network) -> String {
    let mut s = String::new();
    for e in network.elements() {
        s.push_str(&wirelist(e, network.order()));
        s.push('-');
    }
    s
}
