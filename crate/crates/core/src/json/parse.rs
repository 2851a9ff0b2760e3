//! RFC 8259 parser producing [`JsonValue`] trees.
//!
//! Hand-written rather than delegated to serde_json because the encoding
//! needs three things serde_json's `Value` drops: duplicate labels must be
//! rejected, number lexemes must survive, and errors must report the byte
//! offset and document index in all three collection modes.

use std::fmt;

use rayon::prelude::*;

use super::print::assign_object_ids;
use super::value::{JsonNumber, JsonObject, JsonValue};

const MAX_NESTING: usize = 1024;

/// How a byte stream is split into documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    /// The whole input is one document.
    #[default]
    Single,
    /// One document per non-blank line.
    NewlineDelimited,
    /// The input is a top-level array; each element is a document.
    ArrayOfDocuments,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Index of the document being parsed when the error occurred.
    pub document: usize,
    /// Byte offset into the input passed to the parser.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "document {}, byte {}: {}",
            self.document, self.offset, self.message
        )
    }
}

/// Parses exactly one JSON value from `text`; trailing non-whitespace is an
/// error. Object ids are not assigned.
pub fn parse_value(text: &str) -> Result<JsonValue, ParseError> {
    let mut p = Parser::new(text.as_bytes(), 0, 0);
    p.skip_ws();
    let v = p.value(0)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing characters after value"));
    }
    Ok(v)
}

/// Splits `text` into documents according to `mode`. Document indices start
/// at `first_document`; object ids are assigned per document.
pub fn parse_documents(
    text: &str,
    mode: InputMode,
    first_document: usize,
) -> Result<Vec<JsonValue>, ParseError> {
    let mut docs = match mode {
        InputMode::Single => {
            let mut p = Parser::new(text.as_bytes(), 0, first_document);
            p.skip_ws();
            let v = p.value(0)?;
            p.skip_ws();
            if p.pos != p.bytes.len() {
                return Err(p.error("trailing characters after document"));
            }
            vec![v]
        }
        InputMode::NewlineDelimited => {
            let mut lines = Vec::new();
            let mut offset = 0;
            for line in text.split_inclusive('\n') {
                if !line.trim().is_empty() {
                    lines.push((offset, line));
                }
                offset += line.len();
            }
            lines
                .par_iter()
                .enumerate()
                .map(|(i, (offset, line))| {
                    let mut p = Parser::new(line.as_bytes(), *offset, first_document + i);
                    p.skip_ws();
                    let v = p.value(0)?;
                    p.skip_ws();
                    if p.pos != p.bytes.len() {
                        return Err(p.error("trailing characters after document"));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        InputMode::ArrayOfDocuments => {
            let mut p = Parser::new(text.as_bytes(), 0, first_document);
            p.skip_ws();
            if p.peek() != Some(b'[') {
                return Err(p.error("expected a top-level array of documents"));
            }
            p.pos += 1;
            let mut docs = Vec::new();
            p.skip_ws();
            if p.peek() == Some(b']') {
                p.pos += 1;
            } else {
                loop {
                    p.document = first_document + docs.len();
                    p.skip_ws();
                    docs.push(p.value(1)?);
                    p.skip_ws();
                    match p.next_byte() {
                        Some(b',') => continue,
                        Some(b']') => break,
                        _ => return Err(p.error_before("expected ',' or ']'")),
                    }
                }
            }
            p.skip_ws();
            if p.pos != p.bytes.len() {
                return Err(p.error("trailing characters after array of documents"));
            }
            docs
        }
    };
    for (i, doc) in docs.iter_mut().enumerate() {
        assign_object_ids(doc, first_document + i);
    }
    Ok(docs)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    base: usize,
    document: usize,
}

impl<'a> Parser<'a> {
    fn new(bytes: &'a [u8], base: usize, document: usize) -> Self {
        Parser {
            bytes,
            pos: 0,
            base,
            document,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            document: self.document,
            offset: self.base + self.pos,
            message: message.into(),
        }
    }

    fn error_before(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            document: self.document,
            offset: self.base + self.pos.saturating_sub(1),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn next_byte(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn skip_ws(&mut self) {
        while let Some(b' ' | b'\t' | b'\n' | b'\r') = self.peek() {
            self.pos += 1;
        }
    }

    fn literal(&mut self, word: &str, value: JsonValue) -> Result<JsonValue, ParseError> {
        if self.bytes[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            Ok(value)
        } else {
            Err(self.error("invalid literal"))
        }
    }

    fn value(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        if depth > MAX_NESTING {
            return Err(self.error("nesting too deep"));
        }
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'n') => self.literal("null", JsonValue::Null),
            Some(b't') => self.literal("true", JsonValue::Bool(true)),
            Some(b'f') => self.literal("false", JsonValue::Bool(false)),
            Some(b'"') => Ok(JsonValue::String(self.string()?)),
            Some(b'[') => self.array(depth),
            Some(b'{') => self.object(depth),
            Some(b'-' | b'0'..=b'9') => self.number(),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn number(&mut self) -> Result<JsonValue, ParseError> {
        let start = self.pos;
        while let Some(b'-' | b'+' | b'.' | b'e' | b'E' | b'0'..=b'9') = self.peek() {
            self.pos += 1;
        }
        // the scanned range is ASCII
        let lexeme = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or_default();
        JsonNumber::from_lexeme(lexeme)
            .map(JsonValue::Number)
            .ok_or_else(|| ParseError {
                document: self.document,
                offset: self.base + start,
                message: format!("invalid number '{lexeme}'"),
            })
    }

    fn hex4(&mut self) -> Result<u32, ParseError> {
        let mut code = 0u32;
        for _ in 0..4 {
            let b = self
                .next_byte()
                .ok_or_else(|| self.error("unterminated unicode escape"))?;
            let digit = (b as char)
                .to_digit(16)
                .ok_or_else(|| self.error_before("invalid unicode escape"))?;
            code = code * 16 + digit;
        }
        Ok(code)
    }

    fn string(&mut self) -> Result<String, ParseError> {
        let open = self.pos;
        self.pos += 1;
        let mut out = String::new();
        loop {
            let run_start = self.pos;
            while let Some(b) = self.peek() {
                if b == b'"' || b == b'\\' || b < 0x20 {
                    break;
                }
                self.pos += 1;
            }
            // input comes from a &str and we only split at ASCII bytes
            out.push_str(std::str::from_utf8(&self.bytes[run_start..self.pos]).unwrap_or_default());
            match self.next_byte() {
                None => {
                    return Err(ParseError {
                        document: self.document,
                        offset: self.base + open,
                        message: "unterminated string".into(),
                    })
                }
                Some(b'"') => return Ok(out),
                Some(b'\\') => {
                    let esc = self
                        .next_byte()
                        .ok_or_else(|| self.error("unterminated escape"))?;
                    match esc {
                        b'"' => out.push('"'),
                        b'\\' => out.push('\\'),
                        b'/' => out.push('/'),
                        b'b' => out.push('\u{8}'),
                        b'f' => out.push('\u{c}'),
                        b'n' => out.push('\n'),
                        b'r' => out.push('\r'),
                        b't' => out.push('\t'),
                        b'u' => {
                            let hi = self.hex4()?;
                            let code = if (0xD800..0xDC00).contains(&hi) {
                                if self.bytes[self.pos..].starts_with(b"\\u") {
                                    self.pos += 2;
                                    let lo = self.hex4()?;
                                    if !(0xDC00..0xE000).contains(&lo) {
                                        return Err(self.error_before("invalid low surrogate"));
                                    }
                                    0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00)
                                } else {
                                    return Err(self.error("unpaired surrogate"));
                                }
                            } else if (0xDC00..0xE000).contains(&hi) {
                                return Err(self.error_before("unpaired surrogate"));
                            } else {
                                hi
                            };
                            out.push(
                                char::from_u32(code)
                                    .ok_or_else(|| self.error("invalid code point"))?,
                            );
                        }
                        _ => return Err(self.error_before("invalid escape")),
                    }
                }
                Some(_) => return Err(self.error_before("control character in string")),
            }
        }
    }

    fn array(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        self.pos += 1;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(JsonValue::Array(items));
        }
        loop {
            self.skip_ws();
            items.push(self.value(depth + 1)?);
            self.skip_ws();
            match self.next_byte() {
                Some(b',') => {}
                Some(b']') => return Ok(JsonValue::Array(items)),
                None => return Err(self.error("unexpected end of input in array")),
                _ => return Err(self.error_before("expected ',' or ']'")),
            }
        }
    }

    fn object(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        self.pos += 1;
        let mut members: Vec<(String, JsonValue)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(JsonValue::Object(JsonObject::new(members)));
        }
        loop {
            self.skip_ws();
            let label_at = self.pos;
            if self.peek() != Some(b'"') {
                return Err(self.error("expected property label"));
            }
            let label = self.string()?;
            if !seen.insert(label.clone()) {
                return Err(ParseError {
                    document: self.document,
                    offset: self.base + label_at,
                    message: format!("duplicate label '{label}'"),
                });
            }
            self.skip_ws();
            if self.next_byte() != Some(b':') {
                return Err(self.error_before("expected ':'"));
            }
            self.skip_ws();
            let value = self.value(depth + 1)?;
            members.push((label, value));
            self.skip_ws();
            match self.next_byte() {
                Some(b',') => {}
                Some(b'}') => return Ok(JsonValue::Object(JsonObject::new(members))),
                None => return Err(self.error("unexpected end of input in object")),
                _ => return Err(self.error_before("expected ',' or '}'")),
            }
        }
    }
}
