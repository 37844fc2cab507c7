//! Benchmark harness: generate, close, extract, compute, and time each
//! phase.
//!
//! There are no absolute timing targets; reports are meant for comparing
//! worker counts and verifying the cache contract at growing sizes.

use crate::closure::{transitive_closure, reflexive_closure, ReflexiveScope};
use crate::context::{Operator, RelationSpec, ValidatedContext};
use crate::engine::{similarity_matrix_with_table, EmptyPolicy, FeatureTable};
use crate::export::{export_csv, ValueMode};
use crate::rdf::vocab;
use crate::synth::{concept_population, generate_links, generate_taxonomy, SynthParams};
use sha2::{Digest, Sha256};
use std::fmt;
use std::time::{Duration, Instant};

/// Per-phase wall times and cache statistics of one benchmark run.
#[derive(Debug, Clone)]
pub struct BenchReport {
    pub n_concepts: usize,
    pub workers: usize,
    pub load: Duration,
    pub closure: Duration,
    pub extraction: Duration,
    pub matrix: Duration,
    /// Feature extractions actually performed.
    pub extractions: usize,
    /// Distinct resources whose features the matrix needed.
    pub distinct_resources: usize,
    /// Distinct interned (predicate, object) features.
    pub features: usize,
    /// SHA-256 of the rational CSV; worker-count invariant.
    pub checksum: String,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        writeln!(f, "concepts:    {}", self.n_concepts)?;
        writeln!(f, "workers:     {}", self.workers)?;
        writeln!(f, "load:        {:.3} ms", ms(self.load))?;
        writeln!(f, "closure:     {:.3} ms", ms(self.closure))?;
        writeln!(f, "extraction:  {:.3} ms", ms(self.extraction))?;
        writeln!(f, "matrix:      {:.3} ms", ms(self.matrix))?;
        writeln!(
            f,
            "cache:       {} extractions / {} resources / {} features",
            self.extractions, self.distinct_resources, self.features
        )?;
        write!(f, "checksum:    {}", self.checksum)
    }
}

/// Generates a taxonomy with links, closes `skos:broader`, and computes the
/// matrix over all concepts under a context pooling ancestors and links.
/// The matrix itself is discarded after checksumming.
pub fn bench_matrix(params: &SynthParams, workers: usize) -> BenchReport {
    let started = Instant::now();
    let mut store = generate_taxonomy(params);
    generate_links(&mut store, params);
    let load = started.elapsed();

    let started = Instant::now();
    transitive_closure(&mut store, &vocab::skos_broader());
    reflexive_closure(
        &mut store,
        &vocab::skos_broader(),
        &ReflexiveScope::Class(vocab::skos_concept()),
    );
    let closure = started.elapsed();

    let context = ValidatedContext::new(
        vocab::skos_concept(),
        vec![
            RelationSpec { predicate: vocab::skos_broader(), operator: Operator::Inter },
            RelationSpec { predicate: vocab::skos_related_match(), operator: Operator::Inter },
        ],
    )
    .expect("non-empty relation list");
    let population = concept_population(params);

    let mut table = FeatureTable::new();
    let started = Instant::now();
    for resource in &population {
        table.features_of(&store, &context, resource);
    }
    let extraction = started.elapsed();

    let started = Instant::now();
    let matrix = similarity_matrix_with_table(
        &store,
        &context,
        &population,
        EmptyPolicy::One,
        workers,
        &mut table,
    )
    .expect("valid benchmark population");
    let matrix_time = started.elapsed();

    let checksum = {
        let csv = export_csv(&matrix, ValueMode::Rational);
        let mut hasher = Sha256::new();
        hasher.update(csv.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect::<String>()
    };

    BenchReport {
        n_concepts: params.n_concepts,
        workers,
        load,
        closure,
        extraction,
        matrix: matrix_time,
        extractions: table.total_extractions(),
        distinct_resources: population.len(),
        features: table.feature_count(),
        checksum,
    }
}
