//! Synthetic taxonomy and link generation for benchmarking.
//!
//! Generation is deterministic for a fixed seed within one build; it is a
//! benchmark substrate, not an oracle, so cross-build bit-identity is not
//! promised.

use crate::rdf::{vocab, Iri, Term, Triple, TripleStore};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthParams {
    /// Number of concepts in the generated taxonomy.
    pub n_concepts: usize,
    /// Maximum children per taxonomy node.
    pub branching: usize,
    /// Size of the pool of link targets.
    pub n_targets: usize,
    /// Expected number of links per concept.
    pub link_density: f64,
    pub seed: u64,
}

impl SynthParams {
    fn check(&self) {
        assert!(self.n_concepts >= 1, "n_concepts must be positive");
        assert!(self.branching >= 1, "branching must be positive");
        assert!(self.n_targets >= 1, "n_targets must be positive");
        assert!(self.link_density >= 0.0, "link_density must be nonnegative");
    }
}

pub fn concept_iri(index: usize) -> Iri {
    Iri::new(format!("urn:synth:concept:{index}")).unwrap()
}

pub fn target_iri(index: usize) -> Iri {
    Iri::new(format!("urn:synth:target:{index}")).unwrap()
}

/// All concept IRIs of a taxonomy, in generation order. This is the
/// canonical benchmark population.
pub fn concept_population(params: &SynthParams) -> Vec<Iri> {
    (0..params.n_concepts).map(concept_iri).collect()
}

/// A rooted tree of `n_concepts` nodes under `skos:broader` (child points
/// to parent, fan-out at most `branching`), every node typed
/// `skos:Concept`. Node i's parent is node (i-1)/branching, which makes the
/// tree complete and the layout deterministic.
pub fn generate_taxonomy(params: &SynthParams) -> TripleStore {
    params.check();
    let mut store = TripleStore::new();
    let rdf_type = vocab::rdf_type();
    let concept = Term::Iri(vocab::skos_concept());
    let broader = vocab::skos_broader();
    for i in 0..params.n_concepts {
        let node = Term::Iri(concept_iri(i));
        store.insert(Triple::new(node.clone(), rdf_type.clone(), concept.clone()));
        if i > 0 {
            let parent = Term::Iri(concept_iri((i - 1) / params.branching));
            store.insert(Triple::new(node, broader.clone(), parent));
        }
    }
    store
}

/// Adds `skos:relatedMatch` links from each concept into the target pool,
/// each target drawn independently with probability `link_density /
/// n_targets`, so a concept carries `link_density` links in expectation.
/// Returns the number of links added.
pub fn generate_links(store: &mut TripleStore, params: &SynthParams) -> usize {
    params.check();
    let mut rng = StdRng::seed_from_u64(params.seed);
    let probability = (params.link_density / params.n_targets as f64).clamp(0.0, 1.0);
    let related = vocab::skos_related_match();
    let mut added = 0;
    for i in 0..params.n_concepts {
        let subject = Term::Iri(concept_iri(i));
        for j in 0..params.n_targets {
            if rng.gen_bool(probability) {
                let link = Triple::new(subject.clone(), related.clone(), Term::Iri(target_iri(j)));
                if store.insert(link) {
                    added += 1;
                }
            }
        }
    }
    added
}
