//! RDF data model: terms, triples, and an indexed in-memory triple store.
//!
//! The store is mutable during load and closure materialization, then frozen
//! and shared read-only by the similarity engine.

mod ntriples;

pub use ntriples::{parse_ntriples, serialize_ntriples, NtParseError};

use indexmap::{IndexMap, IndexSet};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Well-known IRIs used throughout the pipeline.
pub mod vocab {
    use super::Iri;

    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const SKOS_NS: &str = "http://www.w3.org/2004/02/skos/core#";
    pub const SKOS_CONCEPT: &str = "http://www.w3.org/2004/02/skos/core#Concept";
    pub const SKOS_BROADER: &str = "http://www.w3.org/2004/02/skos/core#broader";
    pub const SKOS_RELATED_MATCH: &str = "http://www.w3.org/2004/02/skos/core#relatedMatch";

    pub fn rdf_type() -> Iri {
        Iri::new(RDF_TYPE).unwrap()
    }

    pub fn skos_concept() -> Iri {
        Iri::new(SKOS_CONCEPT).unwrap()
    }

    pub fn skos_broader() -> Iri {
        Iri::new(SKOS_BROADER).unwrap()
    }

    pub fn skos_related_match() -> Iri {
        Iri::new(SKOS_RELATED_MATCH).unwrap()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid IRI `{iri}`: {reason}")]
pub struct InvalidIri {
    pub iri: String,
    pub reason: &'static str,
}

/// An absolute IRI. The stored string never contains raw `<`, `>`, `"`,
/// whitespace, or control characters; such characters must stay escaped in
/// the serialized forms instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(String);

impl Iri {
    pub fn new(iri: impl Into<String>) -> Result<Iri, InvalidIri> {
        let iri = iri.into();
        if iri.is_empty() {
            return Err(InvalidIri { iri, reason: "empty" });
        }
        if let Some(c) = iri.chars().find(|&c| matches!(c, '<' | '>' | '"') || c.is_whitespace() || c.is_control()) {
            let reason = match c {
                '<' | '>' | '"' => "contains an unescaped delimiter",
                _ => "contains whitespace or a control character",
            };
            return Err(InvalidIri { iri, reason });
        }
        Ok(Iri(iri))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Whether the IRI starts with a `scheme:` part, i.e. is absolute.
    pub fn is_absolute(&self) -> bool {
        match self.0.split_once(':') {
            Some((scheme, _)) => {
                let mut chars = scheme.chars();
                matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
                    && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
            }
            None => false,
        }
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// A literal's datatype or language tag; a literal never carries both.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralQualifier {
    Plain,
    Datatype(Iri),
    Language(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lexical: String,
    pub qualifier: LiteralQualifier,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Literal {
        Literal { lexical: lexical.into(), qualifier: LiteralQualifier::Plain }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Literal {
        Literal { lexical: lexical.into(), qualifier: LiteralQualifier::Datatype(datatype) }
    }

    pub fn tagged(lexical: impl Into<String>, language: impl Into<String>) -> Literal {
        Literal { lexical: lexical.into(), qualifier: LiteralQualifier::Language(language.into()) }
    }
}

/// One node of an RDF graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    BlankNode(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Result<Term, InvalidIri> {
        Ok(Term::Iri(Iri::new(iri)?))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Term {
        Term::Iri(iri)
    }
}

impl fmt::Display for Term {
    /// N-Triples token form, e.g. `<urn:x>`, `_:b0`, `"text"@en`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ntriples::format_term(self))
    }
}

/// A single RDF statement. Predicates are IRIs by construction; subjects
/// must be IRIs or blank nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    /// Panics if `subject` is a literal, which the RDF model forbids.
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Triple {
        assert!(!subject.is_literal(), "literal subjects are not allowed");
        Triple { subject, predicate, object }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ntriples::format_triple(self))
    }
}

/// In-memory triple set with subject, predicate, and object lookup indexes.
#[derive(Debug, Clone, Default)]
pub struct TripleStore {
    triples: IndexSet<Triple>,
    by_subject: HashMap<Term, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
}

impl TripleStore {
    pub fn new() -> TripleStore {
        TripleStore::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> TripleStore {
        let mut store = TripleStore::new();
        store.extend(triples);
        store
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (idx, inserted) = self.triples.insert_full(triple);
        if inserted {
            let t = self.triples.get_index(idx).expect("just inserted");
            self.by_subject.entry(t.subject.clone()).or_default().push(idx);
            self.by_predicate.entry(t.predicate.clone()).or_default().push(idx);
            self.by_object.entry(t.object.clone()).or_default().push(idx);
        }
        inserted
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    /// All triples matching the bound positions; unbound positions match
    /// anything.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> Vec<Triple> {
        // Fully bound patterns are a containment test.
        if let (Some(s), Some(p), Some(o)) = (subject, predicate, object) {
            let t = Triple { subject: s.clone(), predicate: p.clone(), object: o.clone() };
            return if self.triples.contains(&t) { vec![t] } else { Vec::new() };
        }
        let candidates: Option<&Vec<usize>> = if let Some(s) = subject {
            Some(self.by_subject.get(s).unwrap_or(&EMPTY))
        } else if let Some(o) = object {
            Some(self.by_object.get(o).unwrap_or(&EMPTY))
        } else if let Some(p) = predicate {
            Some(self.by_predicate.get(p).unwrap_or(&EMPTY))
        } else {
            None
        };
        let matches = |t: &Triple| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        };
        match candidates {
            Some(idxs) => idxs
                .iter()
                .map(|&i| &self.triples[i])
                .filter(|t| matches(t))
                .cloned()
                .collect(),
            None => self.triples.iter().cloned().collect(),
        }
    }

    /// Objects of all `(subject, predicate, ?)` triples.
    pub fn objects_of(&self, subject: &Term, predicate: &Iri) -> Vec<Term> {
        match self.by_subject.get(subject) {
            Some(idxs) => idxs
                .iter()
                .map(|&i| &self.triples[i])
                .filter(|t| &t.predicate == predicate)
                .map(|t| t.object.clone())
                .collect(),
            None => Vec::new(),
        }
    }

    /// Subjects typed `rdf:type class_iri`.
    pub fn instances_of(&self, class_iri: &Iri) -> Vec<Term> {
        let rdf_type = vocab::rdf_type();
        match self.by_object.get(&Term::Iri(class_iri.clone())) {
            Some(idxs) => idxs
                .iter()
                .map(|&i| &self.triples[i])
                .filter(|t| t.predicate == rdf_type)
                .map(|t| t.subject.clone())
                .collect(),
            None => Vec::new(),
        }
    }
}

static EMPTY: Vec<usize> = Vec::new();

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurieError {
    #[error("unbound prefix `{0}`")]
    UnboundPrefix(String),
    #[error("`{0}` is neither a CURIE nor an IRI reference")]
    Malformed(String),
    #[error(transparent)]
    InvalidIri(#[from] InvalidIri),
}

/// Prefix-label to namespace bindings; rebinding a prefix replaces the
/// previous namespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    bindings: IndexMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> PrefixMap {
        PrefixMap::default()
    }

    pub fn bind(&mut self, prefix: impl Into<String>, namespace: Iri) {
        self.bindings.insert(prefix.into(), namespace);
    }

    pub fn namespace(&self, prefix: &str) -> Option<&Iri> {
        self.bindings.get(prefix)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.bindings.iter().map(|(p, ns)| (p.as_str(), ns))
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Expands `prefix:local` against the bindings, or unwraps an `<IRI>`
    /// reference.
    pub fn resolve(&self, token: &str) -> Result<Iri, CurieError> {
        if let Some(inner) = token.strip_prefix('<') {
            let inner = inner
                .strip_suffix('>')
                .ok_or_else(|| CurieError::Malformed(token.to_owned()))?;
            return Ok(Iri::new(inner)?);
        }
        match token.split_once(':') {
            Some((prefix, local)) => {
                let ns = self
                    .bindings
                    .get(prefix)
                    .ok_or_else(|| CurieError::UnboundPrefix(prefix.to_owned()))?;
                Ok(Iri::new(format!("{}{}", ns.as_str(), local))?)
            }
            None => Err(CurieError::Malformed(token.to_owned())),
        }
    }
}
