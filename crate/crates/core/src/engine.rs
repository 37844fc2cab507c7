//! Feature extraction, interning, and the asymmetric similarity matrix.
//!
//! A context selects, for each resource X, the feature set
//! `F(X) = { (p, o) | (X, p, o) in the store, p named by the context }`.
//! The similarity of X to Y is `|F(X) ∩ F(Y)| / |F(X)|` as an exact
//! rational, so `SIM(X, Y) = 1` exactly when Y's features contain X's.
//!
//! Feature pairs are interned to dense integer ids and each resource's set
//! is extracted once and memoized; cells then reduce to sorted-id
//! intersections, which keeps the n×n sweep cheap and lets rows be
//! distributed across workers without changing a single bit of the result.

use crate::context::ValidatedContext;
use crate::rational::Rational;
use crate::rdf::{Iri, Term, TripleStore};
use indexmap::IndexSet;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("population is empty")]
    EmptyPopulation,
    #[error("duplicate population entry `{0}`")]
    DuplicateResource(Iri),
    #[error("worker count must be at least 1")]
    ZeroWorkers,
    #[error("expected {expected} values for a population of {population}, got {actual}")]
    ShapeMismatch { population: usize, expected: usize, actual: usize },
    #[error("similarity value {0} is outside [0, 1]")]
    ValueOutOfRange(Rational),
}

/// How to score a resource with an empty feature set as the first argument.
///
/// `One` preserves the containment reading (an empty set is contained in
/// everything); `Zero` is available because an all-black row for a
/// data-poor resource can mislead ranking users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyPolicy {
    #[default]
    One,
    Zero,
}

/// Sorted set of interned feature ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureSet {
    ids: Vec<u32>,
}

impl FeatureSet {
    pub fn from_ids(mut ids: Vec<u32>) -> FeatureSet {
        ids.sort_unstable();
        ids.dedup();
        FeatureSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// Merge-style intersection count over the two sorted id lists.
    pub fn intersection_size(&self, other: &FeatureSet) -> usize {
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < self.ids.len() && j < other.ids.len() {
            match self.ids[i].cmp(&other.ids[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        shared
    }

    pub fn is_subset_of(&self, other: &FeatureSet) -> bool {
        self.intersection_size(other) == self.len()
    }
}

/// Interns (predicate, object) pairs to dense ids and memoizes each
/// resource's extracted feature set.
#[derive(Debug, Default)]
pub struct FeatureTable {
    features: IndexSet<(Iri, Term)>,
    sets: HashMap<Iri, FeatureSet>,
    extraction_counts: HashMap<Iri, usize>,
}

impl FeatureTable {
    pub fn new() -> FeatureTable {
        FeatureTable::default()
    }

    /// The context-selected feature set of `resource`, extracting it from
    /// the store on first use and serving the memoized set afterwards.
    /// Extraction reads the whole store, not just any population.
    pub fn features_of(
        &mut self,
        store: &TripleStore,
        context: &ValidatedContext,
        resource: &Iri,
    ) -> &FeatureSet {
        if !self.sets.contains_key(resource) {
            *self.extraction_counts.entry(resource.clone()).or_insert(0) += 1;
            let mut ids = Vec::new();
            let subject = Term::Iri(resource.clone());
            for relation in context.relations() {
                for object in store.objects_of(&subject, &relation.predicate) {
                    let (id, _) = self.features.insert_full((relation.predicate.clone(), object));
                    ids.push(id as u32);
                }
            }
            self.sets.insert(resource.clone(), FeatureSet::from_ids(ids));
        }
        &self.sets[resource]
    }

    /// The memoized set, if `resource` has been extracted already.
    pub fn cached(&self, resource: &Iri) -> Option<&FeatureSet> {
        self.sets.get(resource)
    }

    /// How many times `resource` was actually extracted (not served from
    /// cache); at most 1 per matrix computation.
    pub fn extraction_count(&self, resource: &Iri) -> usize {
        self.extraction_counts.get(resource).copied().unwrap_or(0)
    }

    /// Total extraction operations performed.
    pub fn total_extractions(&self) -> usize {
        self.extraction_counts.values().sum()
    }

    /// Number of distinct interned (predicate, object) pairs.
    pub fn feature_count(&self) -> usize {
        self.features.len()
    }
}

/// `|fx ∩ fy| / |fx|` in lowest terms; an empty `fx` scores per `policy`.
pub fn sim_ratio(fx: &FeatureSet, fy: &FeatureSet, policy: EmptyPolicy) -> Rational {
    if fx.is_empty() {
        return match policy {
            EmptyPolicy::One => Rational::ONE,
            EmptyPolicy::Zero => Rational::ZERO,
        };
    }
    Rational::new(fx.intersection_size(fy) as u64, fx.len() as u64)
}

/// The class and relation IRIs a matrix was computed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextFingerprint {
    pub class: Iri,
    pub relations: Vec<Iri>,
}

impl From<&ValidatedContext> for ContextFingerprint {
    fn from(context: &ValidatedContext) -> ContextFingerprint {
        ContextFingerprint {
            class: context.class_ref().clone(),
            relations: context.relations().iter().map(|r| r.predicate.clone()).collect(),
        }
    }
}

/// Dense n×n matrix of exact similarity values over an ordered population.
/// Cell (r, c) is `SIM(population[r], population[c])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityMatrix {
    population: Vec<Iri>,
    values: Vec<Rational>,
    empty_policy: EmptyPolicy,
    fingerprint: ContextFingerprint,
}

impl SimilarityMatrix {
    /// Assembles a matrix from row-major values, checking the shape and the
    /// [0, 1] range.
    pub fn from_parts(
        population: Vec<Iri>,
        values: Vec<Rational>,
        empty_policy: EmptyPolicy,
        fingerprint: ContextFingerprint,
    ) -> Result<SimilarityMatrix, MatrixError> {
        check_population(&population)?;
        let n = population.len();
        if values.len() != n * n {
            return Err(MatrixError::ShapeMismatch {
                population: n,
                expected: n * n,
                actual: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| **v > Rational::ONE) {
            return Err(MatrixError::ValueOutOfRange(*v));
        }
        Ok(SimilarityMatrix { population, values, empty_policy, fingerprint })
    }

    pub fn len(&self) -> usize {
        self.population.len()
    }

    pub fn is_empty(&self) -> bool {
        self.population.is_empty()
    }

    pub fn population(&self) -> &[Iri] {
        &self.population
    }

    pub fn index_of(&self, resource: &Iri) -> Option<usize> {
        self.population.iter().position(|iri| iri == resource)
    }

    /// `SIM(population[row], population[col])`.
    pub fn value(&self, row: usize, col: usize) -> Rational {
        self.values[row * self.population.len() + col]
    }

    pub fn empty_policy(&self) -> EmptyPolicy {
        self.empty_policy
    }

    pub fn fingerprint(&self) -> &ContextFingerprint {
        &self.fingerprint
    }
}

fn check_population(population: &[Iri]) -> Result<(), MatrixError> {
    if population.is_empty() {
        return Err(MatrixError::EmptyPopulation);
    }
    let mut seen = HashSet::new();
    for iri in population {
        if !seen.insert(iri) {
            return Err(MatrixError::DuplicateResource(iri.clone()));
        }
    }
    Ok(())
}

/// Computes the full matrix with a fresh feature table.
pub fn similarity_matrix(
    store: &TripleStore,
    context: &ValidatedContext,
    population: &[Iri],
    policy: EmptyPolicy,
    workers: usize,
) -> Result<SimilarityMatrix, MatrixError> {
    let mut table = FeatureTable::new();
    similarity_matrix_with_table(store, context, population, policy, workers, &mut table)
}

/// Computes the full matrix, reusing (and populating) the given feature
/// table. Rows are distributed across `workers` threads; the result is
/// bit-identical for every worker count, and each resource is extracted at
/// most once.
pub fn similarity_matrix_with_table(
    store: &TripleStore,
    context: &ValidatedContext,
    population: &[Iri],
    policy: EmptyPolicy,
    workers: usize,
    table: &mut FeatureTable,
) -> Result<SimilarityMatrix, MatrixError> {
    check_population(population)?;
    if workers == 0 {
        return Err(MatrixError::ZeroWorkers);
    }
    // Extraction is a sequential warm-up pass: at-most-once per resource by
    // construction, and the parallel sweep below only reads the table.
    for resource in population {
        table.features_of(store, context, resource);
    }
    let sets: Vec<&FeatureSet> = population
        .iter()
        .map(|r| table.cached(r).expect("extracted above"))
        .collect();
    let n = population.len();
    let compute_row = |r: usize| -> Vec<Rational> {
        (0..n).map(|c| sim_ratio(sets[r], sets[c], policy)).collect()
    };
    let rows: Vec<Vec<Rational>> = if workers == 1 {
        (0..n).map(compute_row).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(|| (0..n).into_par_iter().map(compute_row).collect())
    };
    Ok(SimilarityMatrix {
        population: population.to_vec(),
        values: rows.concat(),
        empty_policy: policy,
        fingerprint: ContextFingerprint::from(context),
    })
}
