//! Context specification language.
//!
//! A context file names the class whose instances are compared and the
//! relations whose targets form each instance's feature set:
//!
//! ```text
//! PREFIX skos: <http://www.w3.org/2004/02/skos/core#>
//! [skos:Concept]->{ },{(skos:relatedMatch, Inter)}
//! ```
//!
//! The first block lists attributes and the second block relation specs.
//! Attribute comparison is parsed but rejected at validation, and `Inter` is
//! the only relation operator accepted; both checks keep extension points
//! visible without widening the supported semantics.

use crate::rdf::{CurieError, Iri, PrefixMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: unbound prefix `{prefix}`")]
    UnboundPrefix { line: usize, column: usize, prefix: String },
    #[error("unsupported operator `{0}`")]
    UnsupportedOperator(String),
    #[error("attribute comparison unsupported (found `{0}`)")]
    AttributesUnsupported(String),
    #[error("context declares no relation specs")]
    NoRelations,
}

/// Relation operators. Only set intersection is defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Inter,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Inter")
    }
}

/// A relation spec after validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSpec {
    pub predicate: Iri,
    pub operator: Operator,
}

/// A relation spec as parsed, operator still unchecked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRelation {
    pub predicate: Iri,
    pub operator: String,
}

/// Output of [`parse_context`]: all references resolved to absolute IRIs,
/// attribute tokens kept verbatim, operators unchecked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextSpec {
    pub prefixes: PrefixMap,
    pub class_ref: Iri,
    pub attributes: Vec<String>,
    pub relations: Vec<RawRelation>,
}

impl fmt::Display for ContextSpec {
    /// Canonical form; parsing the output reproduces the spec exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (prefix, ns) in self.prefixes.iter() {
            writeln!(f, "PREFIX {prefix}: <{ns}>")?;
        }
        write!(f, "[<{}>]->{{ ", self.class_ref)?;
        for (i, attr) in self.attributes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{attr}")?;
        }
        write!(f, "}},{{")?;
        for (i, rel) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(<{}>, {})", rel.predicate, rel.operator)?;
        }
        write!(f, "}}")
    }
}

/// A context that passed [`validate_context`]: no attributes, at least one
/// relation, operators all known. Immutable and freely shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedContext {
    prefixes: PrefixMap,
    class_ref: Iri,
    relations: Vec<RelationSpec>,
}

impl ValidatedContext {
    /// Builds a context programmatically, bypassing the text syntax but not
    /// the validation rules.
    pub fn new(class_ref: Iri, relations: Vec<RelationSpec>) -> Result<ValidatedContext, ContextError> {
        if relations.is_empty() {
            return Err(ContextError::NoRelations);
        }
        Ok(ValidatedContext { prefixes: PrefixMap::new(), class_ref, relations })
    }

    pub fn class_ref(&self) -> &Iri {
        &self.class_ref
    }

    pub fn relations(&self) -> &[RelationSpec] {
        &self.relations
    }

    /// The prefix bindings of the source file, kept so callers can resolve
    /// CURIEs given on the command line against the same namespace table.
    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }
}

/// Rejects attribute comparison and unknown operators, and requires at
/// least one relation spec.
pub fn validate_context(raw: ContextSpec) -> Result<ValidatedContext, ContextError> {
    if let Some(attr) = raw.attributes.first() {
        return Err(ContextError::AttributesUnsupported(attr.clone()));
    }
    if raw.relations.is_empty() {
        return Err(ContextError::NoRelations);
    }
    let relations = raw
        .relations
        .into_iter()
        .map(|rel| match rel.operator.as_str() {
            "Inter" => Ok(RelationSpec { predicate: rel.predicate, operator: Operator::Inter }),
            other => Err(ContextError::UnsupportedOperator(other.to_owned())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ValidatedContext { prefixes: raw.prefixes, class_ref: raw.class_ref, relations })
}

/// Parses and validates in one step.
pub fn load_context(text: &str) -> Result<ValidatedContext, ContextError> {
    validate_context(parse_context(text)?)
}

/// Parses a context file. Whitespace between tokens is insignificant and
/// `#` starts a comment running to end of line.
pub fn parse_context(text: &str) -> Result<ContextSpec, ContextError> {
    Parser::new(lex(text)?).parse()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    IriRef(String),
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::IriRef(s) => write!(f, "`<{s}>`"),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, ':' | '_' | '.' | '-')
}

fn lex(text: &str) -> Result<Vec<Token>, ContextError> {
    let mut tokens = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let syntax = |message: String| ContextError::Syntax { line: li + 1, column: col, message };
            match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '[' | ']' | '{' | '}' | '(' | ')' | ',' => {
                    let tok = match c {
                        '[' => Tok::LBracket,
                        ']' => Tok::RBracket,
                        '{' => Tok::LBrace,
                        '}' => Tok::RBrace,
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        _ => Tok::Comma,
                    };
                    tokens.push(Token { tok, line: li + 1, col });
                    i += 1;
                }
                '<' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < chars.len() && chars[j] != '>' {
                        j += 1;
                    }
                    if j == chars.len() {
                        return Err(syntax("unterminated IRI reference".into()));
                    }
                    let iri: String = chars[start..j].iter().collect();
                    tokens.push(Token { tok: Tok::IriRef(iri), line: li + 1, col });
                    i = j + 1;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    tokens.push(Token { tok: Tok::Arrow, line: li + 1, col });
                    i += 2;
                }
                c if is_word_char(c) => {
                    let start = i;
                    while i < chars.len() && is_word_char(chars[i]) {
                        // stop before `->` so arrows never glue onto words
                        if chars[i] == '-' && chars.get(i + 1) == Some(&'>') {
                            break;
                        }
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    tokens.push(Token { tok: Tok::Word(word), line: li + 1, col: start + 1 });
                }
                other => return Err(syntax(format!("unexpected character `{other}`"))),
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: PrefixMap,
}

impl Parser {
    fn new(tokens: Vec<Token>) -> Parser {
        Parser { tokens, pos: 0, prefixes: PrefixMap::new() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn eof_error(&self, expected: &str) -> ContextError {
        let (line, column) = self
            .tokens
            .last()
            .map(|t| (t.line, t.col + 1))
            .unwrap_or((1, 1));
        ContextError::Syntax { line, column, message: format!("expected {expected}, found end of input") }
    }

    fn expect(&mut self, wanted: Tok) -> Result<Token, ContextError> {
        match self.next() {
            Some(token) if token.tok == wanted => Ok(token),
            Some(token) => Err(ContextError::Syntax {
                line: token.line,
                column: token.col,
                message: format!("expected {}, found {}", wanted, token.tok),
            }),
            None => Err(self.eof_error(&wanted.to_string())),
        }
    }

    fn parse(mut self) -> Result<ContextSpec, ContextError> {
        while matches!(self.peek(), Some(Token { tok: Tok::Word(w), .. }) if w == "PREFIX") {
            self.next();
            self.parse_prefix_decl()?;
        }
        self.expect(Tok::LBracket)?;
        let class_ref = self.parse_ref()?;
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Arrow)?;
        self.expect(Tok::LBrace)?;
        let attributes = self.parse_attr_list()?;
        self.expect(Tok::RBrace)?;
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBrace)?;
        let relations = self.parse_rel_list()?;
        self.expect(Tok::RBrace)?;
        if let Some(token) = self.peek() {
            return Err(ContextError::Syntax {
                line: token.line,
                column: token.col,
                message: format!("unexpected {} after the context", token.tok),
            });
        }
        Ok(ContextSpec { prefixes: self.prefixes, class_ref, attributes, relations })
    }

    /// `pname ":" "<" IRI ">"`, with the colon either fused to the prefix
    /// name (`skos:`) or standing alone.
    fn parse_prefix_decl(&mut self) -> Result<(), ContextError> {
        let token = self.next().ok_or_else(|| self.eof_error("prefix name"))?;
        let pname = match &token.tok {
            Tok::Word(w) if w == ":" => String::new(),
            Tok::Word(w) if w.ends_with(':') && w.matches(':').count() == 1 => {
                w[..w.len() - 1].to_owned()
            }
            Tok::Word(w) if !w.contains(':') => {
                let colon = self.next().ok_or_else(|| self.eof_error("`:`"))?;
                match &colon.tok {
                    Tok::Word(c) if c == ":" => w.clone(),
                    other => {
                        return Err(ContextError::Syntax {
                            line: colon.line,
                            column: colon.col,
                            message: format!("expected `:` after prefix name, found {other}"),
                        })
                    }
                }
            }
            other => {
                return Err(ContextError::Syntax {
                    line: token.line,
                    column: token.col,
                    message: format!("expected prefix name, found {other}"),
                })
            }
        };
        let iri_token = self.next().ok_or_else(|| self.eof_error("namespace IRI"))?;
        match iri_token.tok {
            Tok::IriRef(ns) => {
                let ns = Iri::new(ns).map_err(|e| ContextError::Syntax {
                    line: iri_token.line,
                    column: iri_token.col,
                    message: e.to_string(),
                })?;
                self.prefixes.bind(pname, ns);
                Ok(())
            }
            other => Err(ContextError::Syntax {
                line: iri_token.line,
                column: iri_token.col,
                message: format!("expected namespace IRI, found {other}"),
            }),
        }
    }

    /// CURIE or `<IRI>`, resolved to an absolute IRI.
    fn parse_ref(&mut self) -> Result<Iri, ContextError> {
        let token = self.next().ok_or_else(|| self.eof_error("CURIE or IRI reference"))?;
        match &token.tok {
            Tok::IriRef(iri) => Iri::new(iri.clone()).map_err(|e| ContextError::Syntax {
                line: token.line,
                column: token.col,
                message: e.to_string(),
            }),
            Tok::Word(word) => self.prefixes.resolve(word).map_err(|e| match e {
                CurieError::UnboundPrefix(prefix) => {
                    ContextError::UnboundPrefix { line: token.line, column: token.col, prefix }
                }
                other => ContextError::Syntax {
                    line: token.line,
                    column: token.col,
                    message: other.to_string(),
                },
            }),
            other => Err(ContextError::Syntax {
                line: token.line,
                column: token.col,
                message: format!("expected CURIE or IRI reference, found {other}"),
            }),
        }
    }

    /// Attribute tokens are consumed but kept verbatim and unresolved.
    fn parse_attr_list(&mut self) -> Result<Vec<String>, ContextError> {
        let mut attrs = Vec::new();
        if matches!(self.peek(), Some(Token { tok: Tok::RBrace, .. })) {
            return Ok(attrs);
        }
        loop {
            let token = self.next().ok_or_else(|| self.eof_error("attribute or `}`"))?;
            match &token.tok {
                Tok::Word(w) => attrs.push(w.clone()),
                Tok::IriRef(iri) => attrs.push(format!("<{iri}>")),
                other => {
                    return Err(ContextError::Syntax {
                        line: token.line,
                        column: token.col,
                        message: format!("expected attribute reference, found {other}"),
                    })
                }
            }
            if matches!(self.peek(), Some(Token { tok: Tok::Comma, .. })) {
                self.next();
            } else {
                return Ok(attrs);
            }
        }
    }

    fn parse_rel_list(&mut self) -> Result<Vec<RawRelation>, ContextError> {
        let mut relations = Vec::new();
        if matches!(self.peek(), Some(Token { tok: Tok::RBrace, .. })) {
            return Ok(relations);
        }
        loop {
            relations.push(self.parse_rel_spec()?);
            if matches!(self.peek(), Some(Token { tok: Tok::Comma, .. })) {
                self.next();
            } else {
                return Ok(relations);
            }
        }
    }

    /// `"(" ref "," ident ")"`
    fn parse_rel_spec(&mut self) -> Result<RawRelation, ContextError> {
        self.expect(Tok::LParen)?;
        let predicate = self.parse_ref()?;
        self.expect(Tok::Comma)?;
        let token = self.next().ok_or_else(|| self.eof_error("operator name"))?;
        let operator = match &token.tok {
            Tok::Word(w) if !w.contains(':') => w.clone(),
            other => {
                return Err(ContextError::Syntax {
                    line: token.line,
                    column: token.col,
                    message: format!("expected operator name, found {other}"),
                })
            }
        };
        self.expect(Tok::RParen)?;
        Ok(RawRelation { predicate, operator })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::vocab;

    const CONTEXT_1: &str = "PREFIX skos: <http://www.w3.org/2004/02/skos/core#>\n[skos:Concept]->{ },{(skos:relatedMatch, Inter)}\n";
    const CONTEXT_2: &str = "PREFIX skos: <http://www.w3.org/2004/02/skos/core#>\n[skos:Concept]->{ },{(skos:broader, Inter)}\n";

    #[test]
    fn parses_species_context() {
        let spec = parse_context(CONTEXT_1).unwrap();
        assert_eq!(spec.class_ref, Iri::new(vocab::SKOS_CONCEPT).unwrap());
        assert!(spec.attributes.is_empty());
        assert_eq!(spec.relations.len(), 1);
        assert_eq!(spec.relations[0].predicate, Iri::new(vocab::SKOS_RELATED_MATCH).unwrap());
        assert_eq!(spec.relations[0].operator, "Inter");
        let ctx = validate_context(spec).unwrap();
        assert_eq!(ctx.relations()[0].operator, Operator::Inter);
    }

    #[test]
    fn parses_taxonomy_context() {
        let ctx = load_context(CONTEXT_2).unwrap();
        assert_eq!(ctx.relations().len(), 1);
        assert_eq!(ctx.relations()[0].predicate, Iri::new(vocab::SKOS_BROADER).unwrap());
    }

    #[test]
    fn keeps_relation_order() {
        let ctx = load_context("[<urn:C>]->{ },{(<urn:p>, Inter),(<urn:q>, Inter)}").unwrap();
        let preds: Vec<&str> = ctx.relations().iter().map(|r| r.predicate.as_str()).collect();
        assert_eq!(preds, ["urn:p", "urn:q"]);
    }

    #[test]
    fn missing_relation_block_is_a_syntax_error() {
        let err = parse_context("[<urn:C>]->{ }").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { .. }), "{err}");
        let err = parse_context("PREFIX skos: <urn:skos:>\n[skos:Concept]->{ }").unwrap_err();
        assert!(matches!(err, ContextError::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_unknown_operator_by_name() {
        let spec = parse_context("[<urn:C>]->{ },{(<urn:p>, Union)}").unwrap();
        let err = validate_context(spec).unwrap_err();
        assert_eq!(err, ContextError::UnsupportedOperator("Union".into()));
        assert!(err.to_string().contains("Union"));
    }

    #[test]
    fn rejects_attributes_by_token() {
        let spec = parse_context(
            "PREFIX skos: <http://www.w3.org/2004/02/skos/core#>\n[skos:Concept]->{skos:prefLabel},{(skos:broader, Inter)}",
        )
        .unwrap();
        assert_eq!(spec.attributes, vec!["skos:prefLabel"]);
        let err = validate_context(spec).unwrap_err();
        assert_eq!(err, ContextError::AttributesUnsupported("skos:prefLabel".into()));
        assert!(err.to_string().contains("attribute comparison unsupported"));
    }

    #[test]
    fn rejects_empty_relation_list() {
        let spec = parse_context("[<urn:C>]->{ },{}").unwrap();
        assert_eq!(validate_context(spec).unwrap_err(), ContextError::NoRelations);
    }

    #[test]
    fn unbound_prefix_is_reported_with_position() {
        let err = parse_context("[foo:Concept]->{ },{(foo:p, Inter)}").unwrap_err();
        assert!(
            matches!(&err, ContextError::UnboundPrefix { prefix, line: 1, .. } if prefix == "foo"),
            "{err}"
        );
    }

    #[test]
    fn comments_and_spacing_are_insignificant() {
        let spread = "# header\nPREFIX skos : <http://www.w3.org/2004/02/skos/core#>  # inline\n[ skos:Concept ] -> { } , { ( skos:relatedMatch , Inter ) }\n";
        assert_eq!(parse_context(spread).unwrap(), parse_context(CONTEXT_1).unwrap());
        let tight = "PREFIX skos:<http://www.w3.org/2004/02/skos/core#>\n[skos:Concept]->{},{(skos:relatedMatch,Inter)}";
        assert_eq!(parse_context(tight).unwrap(), parse_context(CONTEXT_1).unwrap());
    }

    #[test]
    fn pretty_print_parse_is_a_fixed_point() {
        for text in [CONTEXT_1, CONTEXT_2, "[<urn:C>]->{a:b,<urn:attr>},{(<urn:p>, Inter),(<urn:q>, Custom)}"] {
            let prefixed = format!("PREFIX a: <urn:ns:>\n{text}");
            let once = parse_context(&prefixed).unwrap();
            let again = parse_context(&once.to_string()).unwrap();
            assert_eq!(once, again);
        }
    }

    #[test]
    fn trailing_content_is_rejected() {
        assert!(parse_context("[<urn:C>]->{ },{(<urn:p>, Inter)} extra").is_err());
    }
}
