//! Line-based N-Triples reader and canonical writer.
//!
//! The reader covers the W3C grammar: IRI references, blank node labels,
//! plain/typed/language-tagged literals, `\uXXXX` / `\UXXXXXXXX` and string
//! escapes, comment lines, and blank lines. The first syntax error aborts
//! the parse and reports a 1-based line and column.
//!
//! The writer emits one triple per line, lines sorted lexicographically, so
//! equal stores always serialize to identical bytes.

use super::{Iri, Literal, LiteralQualifier, Term, Triple, TripleStore};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct NtParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses an N-Triples document, returning triples in file order
/// (duplicates included).
pub fn parse_ntriples(text: &str) -> Result<Vec<Triple>, NtParseError> {
    let mut triples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut cursor = Cursor::new(line, i + 1);
        if let Some(triple) = cursor.parse_line()? {
            triples.push(triple);
        }
    }
    Ok(triples)
}

/// Serializes a store as canonical N-Triples: one triple per line, sorted.
pub fn serialize_ntriples(store: &TripleStore) -> String {
    let mut lines: Vec<String> = store.iter().map(format_triple).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// One triple in N-Triples syntax, without the trailing newline.
pub fn format_triple(t: &Triple) -> String {
    format!(
        "{} <{}> {} .",
        format_term(&t.subject),
        escape_iri(t.predicate.as_str()),
        format_term(&t.object)
    )
}

pub fn format_term(term: &Term) -> String {
    match term {
        Term::Iri(iri) => format!("<{}>", escape_iri(iri.as_str())),
        Term::BlankNode(label) => format!("_:{label}"),
        Term::Literal(lit) => {
            let mut out = format!("\"{}\"", escape_literal(&lit.lexical));
            match &lit.qualifier {
                LiteralQualifier::Plain => {}
                LiteralQualifier::Language(tag) => {
                    out.push('@');
                    out.push_str(tag);
                }
                LiteralQualifier::Datatype(dt) => {
                    write!(out, "^^<{}>", escape_iri(dt.as_str())).unwrap();
                }
            }
            out
        }
    }
}

// Characters the IRIREF production cannot carry raw.
fn escape_iri(iri: &str) -> String {
    let mut out = String::with_capacity(iri.len());
    for c in iri.chars() {
        if c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            write!(out, "\\u{:04X}", c as u32).unwrap();
        } else {
            out.push(c);
        }
    }
    out
}

fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(line: &str, number: usize) -> Cursor {
        Cursor { chars: line.chars().collect(), pos: 0, line: number }
    }

    fn error(&self, message: impl Into<String>) -> NtParseError {
        NtParseError { line: self.line, column: self.pos + 1, message: message.into() }
    }

    fn error_at(&self, column: usize, message: impl Into<String>) -> NtParseError {
        NtParseError { line: self.line, column, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, wanted: char) -> Result<(), NtParseError> {
        match self.bump() {
            Some(c) if c == wanted => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("expected `{wanted}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{wanted}`, found end of line"))),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn at_comment_or_end(&self) -> bool {
        matches!(self.peek(), None | Some('#'))
    }

    fn parse_line(&mut self) -> Result<Option<Triple>, NtParseError> {
        self.skip_ws();
        if self.at_comment_or_end() {
            return Ok(None);
        }
        let subject = self.parse_subject()?;
        self.skip_ws();
        let predicate = self.parse_predicate()?;
        self.skip_ws();
        let object = self.parse_object()?;
        self.skip_ws();
        self.expect('.')?;
        self.skip_ws();
        if !self.at_comment_or_end() {
            return Err(self.error("unexpected content after `.`"));
        }
        Ok(Some(Triple { subject, predicate, object }))
    }

    fn parse_subject(&mut self) -> Result<Term, NtParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri_ref()?)),
            Some('_') => Ok(Term::BlankNode(self.parse_blank_label()?)),
            Some(c) => Err(self.error_at(self.pos + 1, format!("expected subject, found `{c}`"))),
            None => Err(self.error("expected subject, found end of line")),
        }
    }

    fn parse_predicate(&mut self) -> Result<Iri, NtParseError> {
        match self.peek() {
            Some('<') => self.parse_iri_ref(),
            Some(c) => Err(self.error_at(self.pos + 1, format!("expected predicate IRI, found `{c}`"))),
            None => Err(self.error("expected predicate, found end of line")),
        }
    }

    fn parse_object(&mut self) -> Result<Term, NtParseError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri_ref()?)),
            Some('_') => Ok(Term::BlankNode(self.parse_blank_label()?)),
            Some('"') => Ok(Term::Literal(self.parse_literal()?)),
            Some(c) => Err(self.error_at(self.pos + 1, format!("expected object, found `{c}`"))),
            None => Err(self.error("expected object, found end of line")),
        }
    }

    fn parse_iri_ref(&mut self) -> Result<Iri, NtParseError> {
        let start = self.pos + 1;
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => value.push(self.parse_uchar()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error_at(self.pos, format!("`{}` not allowed in IRI", c.escape_default())));
                }
                Some(c) => value.push(c),
                None => return Err(self.error("unterminated IRI reference")),
            }
        }
        Iri::new(value).map_err(|e| self.error_at(start, e.to_string()))
    }

    /// `\uXXXX` or `\UXXXXXXXX`; the leading backslash is already consumed.
    fn parse_uchar(&mut self) -> Result<char, NtParseError> {
        let digits = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            Some(c) => return Err(self.error_at(self.pos, format!("invalid IRI escape `\\{c}`"))),
            None => return Err(self.error("incomplete escape sequence")),
        };
        self.parse_hex_char(digits)
    }

    fn parse_hex_char(&mut self, digits: usize) -> Result<char, NtParseError> {
        let mut code: u32 = 0;
        for _ in 0..digits {
            let c = self.bump().ok_or_else(|| self.error("incomplete escape sequence"))?;
            let d = c
                .to_digit(16)
                .ok_or_else(|| self.error_at(self.pos, format!("`{c}` is not a hex digit")))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error(format!("U+{code:04X} is not a Unicode scalar value")))
    }

    fn parse_blank_label(&mut self) -> Result<String, NtParseError> {
        self.expect('_')?;
        self.expect(':')?;
        let mut label = String::new();
        match self.bump() {
            Some(c) if c.is_alphanumeric() || c == '_' => label.push(c),
            Some(c) => return Err(self.error_at(self.pos, format!("invalid blank node label start `{c}`"))),
            None => return Err(self.error("missing blank node label")),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                label.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        // a label may contain dots but not end with one
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
        }
        Ok(label)
    }

    fn parse_literal(&mut self) -> Result<Literal, NtParseError> {
        self.expect('"')?;
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => lexical.push(self.parse_string_escape()?),
                Some(c) => lexical.push(c),
                None => return Err(self.error("unterminated string literal")),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                Ok(Literal { lexical, qualifier: LiteralQualifier::Language(self.parse_langtag()?) })
            }
            Some('^') => {
                self.expect('^')?;
                self.expect('^')?;
                let datatype = self.parse_iri_ref()?;
                Ok(Literal { lexical, qualifier: LiteralQualifier::Datatype(datatype) })
            }
            _ => Ok(Literal { lexical, qualifier: LiteralQualifier::Plain }),
        }
    }

    fn parse_string_escape(&mut self) -> Result<char, NtParseError> {
        match self.bump() {
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{8}'),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('f') => Ok('\u{c}'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            Some('\\') => Ok('\\'),
            Some('u') => self.parse_hex_char(4),
            Some('U') => self.parse_hex_char(8),
            Some(c) => Err(self.error_at(self.pos, format!("invalid string escape `\\{c}`"))),
            None => Err(self.error("incomplete escape sequence")),
        }
    }

    fn parse_langtag(&mut self) -> Result<String, NtParseError> {
        let mut tag = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            tag.push(self.bump().unwrap());
        }
        if tag.is_empty() {
            return Err(self.error("empty language tag"));
        }
        while self.peek() == Some('-') {
            tag.push(self.bump().unwrap());
            let before = tag.len();
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                tag.push(self.bump().unwrap());
            }
            if tag.len() == before {
                return Err(self.error("empty language subtag"));
            }
        }
        Ok(tag)
    }
}
