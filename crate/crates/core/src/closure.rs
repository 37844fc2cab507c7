//! Materializes transitive, reflexive, and symmetric closures of one
//! predicate as explicit triples.
//!
//! Closures are deliberate preprocessing steps, not something the similarity
//! engine does implicitly: a taxonomy context needs the broader-closure
//! while a link-based context must run without it, so the store a matrix is
//! computed over should always be inspectable.

use crate::rdf::{Iri, Term, Triple, TripleStore};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("closure request enables no operation")]
    NoOperation,
}

/// Which nodes receive a self-loop during reflexive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReflexiveScope {
    /// Every node occurring as subject or object of the predicate.
    PredicateNodes,
    /// Every instance of the given class.
    Class(Iri),
}

/// A closure run over one predicate. At least one operation must be set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureRequest {
    pub predicate: Iri,
    pub transitive: bool,
    pub reflexive: Option<ReflexiveScope>,
    pub symmetric: bool,
}

impl ClosureRequest {
    /// Applies the requested closures; returns the number of triples added.
    ///
    /// Symmetric runs first and reflexive last, which yields the joint
    /// fixpoint of the enabled rules in a single pass each.
    pub fn apply(&self, store: &mut TripleStore) -> Result<usize, ClosureError> {
        if !self.transitive && self.reflexive.is_none() && !self.symmetric {
            return Err(ClosureError::NoOperation);
        }
        let mut added = 0;
        if self.symmetric {
            added += symmetric_closure(store, &self.predicate);
        }
        if self.transitive {
            added += transitive_closure(store, &self.predicate);
        }
        if let Some(scope) = &self.reflexive {
            added += reflexive_closure(store, &self.predicate, scope);
        }
        Ok(added)
    }
}

/// Adds `(x, p, z)` for every pair connected by a directed p-path of length
/// ≥ 1. Terminates on cyclic graphs; returns the number of triples added.
pub fn transitive_closure(store: &mut TripleStore, predicate: &Iri) -> usize {
    let mut successors: HashMap<Term, Vec<Term>> = HashMap::new();
    for t in store.match_pattern(None, Some(predicate), None) {
        successors.entry(t.subject).or_default().push(t.object);
    }
    let mut added = 0;
    let sources: Vec<Term> = successors.keys().cloned().collect();
    for source in sources {
        let mut seen: HashSet<&Term> = HashSet::new();
        let mut queue: VecDeque<&Term> = successors[&source].iter().collect();
        while let Some(node) = queue.pop_front() {
            if !seen.insert(node) {
                continue;
            }
            if let Some(next) = successors.get(node) {
                queue.extend(next.iter());
            }
        }
        for target in seen {
            let triple = Triple::new(source.clone(), predicate.clone(), target.clone());
            if store.insert(triple) {
                added += 1;
            }
        }
    }
    added
}

/// Adds `(n, p, n)` for every node in scope. Literal objects are skipped in
/// `PredicateNodes` scope since a literal cannot be a subject.
pub fn reflexive_closure(store: &mut TripleStore, predicate: &Iri, scope: &ReflexiveScope) -> usize {
    let nodes: Vec<Term> = match scope {
        ReflexiveScope::PredicateNodes => {
            let mut nodes: HashSet<Term> = HashSet::new();
            for t in store.match_pattern(None, Some(predicate), None) {
                nodes.insert(t.subject);
                if !t.object.is_literal() {
                    nodes.insert(t.object);
                }
            }
            nodes.into_iter().collect()
        }
        ReflexiveScope::Class(class_iri) => store.instances_of(class_iri),
    };
    let mut added = 0;
    for node in nodes {
        let triple = Triple::new(node.clone(), predicate.clone(), node);
        if store.insert(triple) {
            added += 1;
        }
    }
    added
}

/// Adds `(y, p, x)` for every `(x, p, y)`; triples with a literal object
/// cannot be reversed and are skipped.
pub fn symmetric_closure(store: &mut TripleStore, predicate: &Iri) -> usize {
    let mut added = 0;
    for t in store.match_pattern(None, Some(predicate), None) {
        if t.object.is_literal() {
            continue;
        }
        if store.insert(Triple::new(t.object, predicate.clone(), t.subject)) {
            added += 1;
        }
    }
    added
}
