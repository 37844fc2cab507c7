//! Context-dependent, asymmetric semantic similarity for SKOS-style RDF graphs.
//!
//! The library compares resources by the feature sets a *context* selects for
//! them: a context names a class whose instances are compared and the
//! relations whose (predicate, object) pairs form each instance's features.
//! Similarity is the exact fraction of the first argument's features that the
//! second argument also holds, so `SIM(X, Y) = 1` means Y's features contain
//! X's and the matrix asymmetry reads as containment.
//!
//! The pipeline is: load N-Triples into a [`rdf::TripleStore`], optionally
//! materialize predicate closures ([`closure`]), parse and validate a context
//! ([`context`]), compute the matrix ([`engine`]), then interpret or export
//! it ([`analysis`], [`export`]). [`synth`] and [`bench`] generate synthetic
//! taxonomies and time the phases.

pub mod analysis;
pub mod bench;
pub mod closure;
pub mod context;
pub mod engine;
pub mod export;
pub mod rational;
pub mod rdf;
pub mod synth;

pub use analysis::{ContainmentRelation, Population, RankEntry};
pub use context::{ContextSpec, Operator, RelationSpec, ValidatedContext};
pub use engine::{EmptyPolicy, FeatureSet, FeatureTable, SimilarityMatrix};
pub use rational::Rational;
pub use rdf::{Iri, PrefixMap, Term, Triple, TripleStore};
