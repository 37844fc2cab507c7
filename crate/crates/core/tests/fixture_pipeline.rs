//! End-to-end runs over the shipped EUNIS coastal-shingle fixture: the
//! species-based and taxonomy-based matrices, their interpretation, and the
//! figure-convention exports.

use skosim::analysis::{classify_pair, containment_report, rank_by_similarity, ContainmentRelation, Population, RankDirection};
use skosim::closure::{reflexive_closure, symmetric_closure, transitive_closure, ReflexiveScope};
use skosim::context::load_context;
use skosim::engine::{similarity_matrix, similarity_matrix_with_table, EmptyPolicy, FeatureTable, SimilarityMatrix};
use skosim::export::{export_csv, render_pgm, ValueMode};
use skosim::rdf::{parse_ntriples, vocab, Iri, Term, TripleStore};
use skosim::Rational;
use std::fs;
use std::path::PathBuf;

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()))
}

fn fixture_store() -> TripleStore {
    TripleStore::from_triples(parse_ntriples(&fixture("eunis.nt")).unwrap())
}

fn habitat(code: &str) -> Iri {
    Iri::new(format!("urn:eunis:habitat:{code}")).unwrap()
}

fn species(slug: &str) -> Iri {
    Iri::new(format!("urn:eunis:species:{slug}")).unwrap()
}

fn habitats() -> Vec<Iri> {
    Population::parse(&fixture("habitats.txt")).unwrap().entries().to_vec()
}

fn species_population() -> Vec<Iri> {
    Population::parse(&fixture("species.txt")).unwrap().entries().to_vec()
}

/// Habitat matrix under the species-based context, no closure needed.
fn species_based_matrix() -> (SimilarityMatrix, FeatureTable) {
    let store = fixture_store();
    let context = load_context(&fixture("context1.ctx")).unwrap();
    let mut table = FeatureTable::new();
    let matrix = similarity_matrix_with_table(
        &store,
        &context,
        &habitats(),
        EmptyPolicy::One,
        1,
        &mut table,
    )
    .unwrap();
    (matrix, table)
}

/// Habitat matrix under the taxonomy context, after the transitive +
/// class-scoped reflexive closure of skos:broader.
fn taxonomy_matrix() -> SimilarityMatrix {
    let mut store = fixture_store();
    transitive_closure(&mut store, &vocab::skos_broader());
    reflexive_closure(&mut store, &vocab::skos_broader(), &ReflexiveScope::Class(vocab::skos_concept()));
    let context = load_context(&fixture("context2.ctx")).unwrap();
    similarity_matrix(&store, &context, &habitats(), EmptyPolicy::One, 1).unwrap()
}

/// Species matrix under the species-based context, after symmetric closure
/// of relatedMatch.
fn species_matrix() -> SimilarityMatrix {
    let mut store = fixture_store();
    symmetric_closure(&mut store, &vocab::skos_related_match());
    let context = load_context(&fixture("context1.ctx")).unwrap();
    similarity_matrix(&store, &context, &species_population(), EmptyPolicy::One, 1).unwrap()
}

#[test]
fn fixture_loads_with_expected_shape() {
    let store = fixture_store();
    assert_eq!(store.len(), 198);
    assert_eq!(store.instances_of(&vocab::skos_concept()).len(), 57);
    assert_eq!(habitats().len(), 11);
    assert_eq!(species_population().len(), 46);
}

#[test]
fn pattern_queries_reflect_the_table() {
    let store = fixture_store();
    // B2.1's sole broader parent is B2
    let parents = store.match_pattern(
        Some(&Term::Iri(habitat("B2.1"))),
        Some(&vocab::skos_broader()),
        None,
    );
    assert_eq!(parents.len(), 1);
    assert_eq!(parents[0].object, Term::Iri(habitat("B2")));
    // valeriana salina is linked from exactly one habitat, B2.31
    let hosts = store.match_pattern(
        None,
        Some(&vocab::skos_related_match()),
        Some(&Term::Iri(species("valeriana-salina"))),
    );
    assert_eq!(hosts.len(), 1);
    assert_eq!(hosts[0].subject, Term::Iri(habitat("B2.31")));
    // B2 row says "None.", B2.3 lists three species
    assert!(store.objects_of(&Term::Iri(habitat("B2")), &vocab::skos_related_match()).is_empty());
    assert_eq!(store.objects_of(&Term::Iri(habitat("B2.3")), &vocab::skos_related_match()).len(), 3);
}

#[test]
fn species_based_worked_cells() {
    let (matrix, table) = species_based_matrix();
    let b21 = matrix.index_of(&habitat("B2.1")).unwrap();
    let b231 = matrix.index_of(&habitat("B2.31")).unwrap();
    assert_eq!(matrix.value(b21, b231), Rational::new(3, 11));
    assert_eq!(matrix.value(b231, b21), Rational::new(1, 6));
    // the shared trio behind both cells
    let fx = table.cached(&habitat("B2.1")).unwrap();
    let fy = table.cached(&habitat("B2.31")).unwrap();
    assert_eq!(fx.intersection_size(fy), 3);
    assert_eq!(fx.len(), 11);
    assert_eq!(fy.len(), 18);
    // habitats without species data score 1 everywhere under policy one
    let b2 = matrix.index_of(&habitat("B2")).unwrap();
    assert!(table.cached(&habitat("B2")).unwrap().is_empty());
    assert!((0..matrix.len()).all(|c| matrix.value(b2, c) == Rational::ONE));
}

#[test]
fn species_based_empty_policy_zero_flips_dataless_rows() {
    let store = fixture_store();
    let context = load_context(&fixture("context1.ctx")).unwrap();
    let matrix = similarity_matrix(&store, &context, &habitats(), EmptyPolicy::Zero, 1).unwrap();
    let b2 = matrix.index_of(&habitat("B2")).unwrap();
    assert!((0..matrix.len()).all(|c| matrix.value(b2, c) == Rational::ZERO));
    // rows with data are untouched by the policy
    let b21 = matrix.index_of(&habitat("B2.1")).unwrap();
    let b231 = matrix.index_of(&habitat("B2.31")).unwrap();
    assert_eq!(matrix.value(b21, b231), Rational::new(3, 11));
}

#[test]
fn taxonomy_closure_produces_ancestor_sets() {
    let mut store = fixture_store();
    let added = transitive_closure(&mut store, &vocab::skos_broader());
    // each leaf gains its grandparent edge: 4 under B2.1, 4 under B2.3
    assert_eq!(added, 8);
    for code in ["B2.11", "B2.12", "B2.13", "B2.14", "B2.31", "B2.32", "B2.33", "B2.34"] {
        let ancestors = store.objects_of(&Term::Iri(habitat(code)), &vocab::skos_broader());
        assert_eq!(ancestors.len(), 2, "{code} should reach parent and root");
        assert!(ancestors.contains(&Term::Iri(habitat("B2"))));
    }
    let added = reflexive_closure(
        &mut store,
        &vocab::skos_broader(),
        &ReflexiveScope::Class(vocab::skos_concept()),
    );
    // every typed concept gains a self-loop, including the root B2
    assert_eq!(added, 57);
    assert!(store.contains(&skosim::rdf::Triple::new(
        Term::Iri(habitat("B2")),
        vocab::skos_broader(),
        Term::Iri(habitat("B2")),
    )));
}

#[test]
fn taxonomy_matrix_shows_containment_along_the_hierarchy() {
    let matrix = taxonomy_matrix();
    let b2 = matrix.index_of(&habitat("B2")).unwrap();
    // the root's single ancestor {B2} is contained in every ancestor set
    for c in 0..matrix.len() {
        assert_eq!(matrix.value(b2, c), Rational::ONE, "SIM(B2, {})", matrix.population()[c]);
    }
    let b21 = matrix.index_of(&habitat("B2.1")).unwrap();
    for code in ["B2.11", "B2.12", "B2.13", "B2.14"] {
        let d = matrix.index_of(&habitat(code)).unwrap();
        assert_eq!(matrix.value(b21, d), Rational::ONE, "SIM(B2.1, {code})");
    }
    // three ancestors {B2.11, B2.1, B2}, two shared with {B2.1, B2}
    let b211 = matrix.index_of(&habitat("B2.11")).unwrap();
    assert_eq!(matrix.value(b211, b21), Rational::new(2, 3));
    // disjoint branches share only the root
    let b231 = matrix.index_of(&habitat("B2.31")).unwrap();
    assert_eq!(matrix.value(b231, b21), Rational::new(1, 3));
}

#[test]
fn species_matrix_containment_cells() {
    let matrix = species_matrix();
    let longipes = matrix.index_of(&species("atriplex-longipes")).unwrap();
    let glabriuscula = matrix.index_of(&species("atriplex-glabriuscula")).unwrap();
    assert_eq!(matrix.value(longipes, glabriuscula), Rational::ONE);
    assert_eq!(matrix.value(glabriuscula, longipes), Rational::new(1, 2));
    // valeriana salina characterizes a single habitat: its row is 0/1-valued
    let valeriana = matrix.index_of(&species("valeriana-salina")).unwrap();
    let mut ones = 0;
    for c in 0..matrix.len() {
        let v = matrix.value(valeriana, c);
        assert!(v.is_zero() || v.is_one(), "SIM(valeriana, {}) = {v}", matrix.population()[c]);
        if v.is_one() {
            ones += 1;
        }
    }
    // exactly the species sharing B2.31
    assert_eq!(ones, 18);
}

#[test]
fn species_features_are_habitats_outside_the_population() {
    let mut store = fixture_store();
    symmetric_closure(&mut store, &vocab::skos_related_match());
    let relations = store.match_pattern(None, Some(&vocab::skos_related_match()), None);
    assert_eq!(relations.len(), 148); // 74 links, doubled
    let hosts = store.objects_of(&Term::Iri(species("atriplex-longipes")), &vocab::skos_related_match());
    assert_eq!(hosts, vec![Term::Iri(habitat("B2.11"))]);
    assert!(!species_population().contains(&habitat("B2.11")));
}

#[test]
fn containment_reports_match_the_table() {
    let (matrix, _) = species_based_matrix();
    let report = containment_report(&matrix);
    // identical species lists
    assert!(report.contains(&(habitat("B2.3"), habitat("B2.32"), ContainmentRelation::Equivalent)));
    // the worked pair only overlaps
    assert!(report.contains(&(habitat("B2.1"), habitat("B2.31"), ContainmentRelation::Overlap)));

    let taxonomy = containment_report(&taxonomy_matrix());
    // B2 comes first in population order and is contained in each descendant
    for code in ["B2.1", "B2.11", "B2.3", "B2.34"] {
        assert!(
            taxonomy.contains(&(habitat("B2"), habitat(code), ContainmentRelation::FirstContainedInSecond)),
            "B2 should be contained in {code}"
        );
    }
    assert_eq!(classify_pair(Rational::new(3, 11), Rational::new(1, 6)), ContainmentRelation::Overlap);
}

#[test]
fn taxonomy_ranking_from_a_leaf() {
    let matrix = taxonomy_matrix();
    let ranked = rank_by_similarity(&matrix, &habitat("B2.11"), RankDirection::FromQuery).unwrap();
    assert_eq!(ranked.len(), 10);
    // 2/3 group: the parent and its other children (they share {B2.1, B2});
    // ties resolve by IRI, so B2.1 leads
    assert_eq!(ranked[0].resource, habitat("B2.1"));
    assert_eq!(ranked[0].value, Rational::new(2, 3));
    for entry in &ranked[1..4] {
        assert_eq!(entry.value, Rational::new(2, 3));
    }
    // 1/3 group: everything sharing only the root, led by B2 itself
    assert_eq!(ranked[4].resource, habitat("B2"));
    assert_eq!(ranked[4].value, Rational::new(1, 3));
    for entry in &ranked[5..] {
        assert_eq!(entry.value, Rational::new(1, 3));
    }
}

#[test]
fn taxonomy_pgm_has_black_ancestor_columns() {
    let matrix = taxonomy_matrix();
    let pgm = render_pgm(&matrix);
    let rows: Vec<Vec<u32>> = pgm
        .lines()
        .skip(3)
        .map(|line| line.split(' ').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    let b2 = matrix.index_of(&habitat("B2")).unwrap();
    for row in &rows {
        assert_eq!(row[b2], 0, "B2's column must be all black");
    }
    // every (descendant row, ancestor column) pixel is black
    let ancestors: &[(&str, &[&str])] = &[
        ("B2", &["B2.1", "B2.11", "B2.12", "B2.13", "B2.14", "B2.3", "B2.31", "B2.32", "B2.33", "B2.34"]),
        ("B2.1", &["B2.11", "B2.12", "B2.13", "B2.14"]),
        ("B2.3", &["B2.31", "B2.32", "B2.33", "B2.34"]),
    ];
    for (ancestor, descendants) in ancestors {
        let col = matrix.index_of(&habitat(ancestor)).unwrap();
        for descendant in *descendants {
            let row = matrix.index_of(&habitat(descendant)).unwrap();
            assert_eq!(rows[row][col], 0, "pixel ({descendant}, {ancestor}) must be black");
        }
    }
}

#[test]
fn single_feature_species_renders_only_black_and_white() {
    let matrix = species_matrix();
    let pgm = render_pgm(&matrix);
    let rows: Vec<Vec<u32>> = pgm
        .lines()
        .skip(3)
        .map(|line| line.split(' ').map(|v| v.parse().unwrap()).collect())
        .collect();
    for slug in ["valeriana-salina", "cakile-edentula"] {
        let col = matrix.index_of(&species(slug)).unwrap();
        for (j, row) in rows.iter().enumerate() {
            assert!(
                row[col] == 0 || row[col] == 255,
                "pixel at row {j}, column {slug} is gray: {}",
                row[col]
            );
        }
    }
}

#[test]
fn rational_csv_round_trips_exactly() {
    let (matrix, _) = species_based_matrix();
    let csv = export_csv(&matrix, ValueMode::Rational);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "sim");
    let population: Vec<Iri> = header[1..].iter().map(|s| Iri::new(*s).unwrap()).collect();
    assert_eq!(population, matrix.population());
    for (r, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[0], matrix.population()[r].as_str());
        for (c, cell) in cells[1..].iter().enumerate() {
            assert_eq!(Rational::parse(cell).unwrap(), matrix.value(r, c), "cell ({r},{c})");
        }
    }
}

#[test]
fn fixture_serialization_is_stable() {
    let store = fixture_store();
    let first = skosim::rdf::serialize_ntriples(&store);
    let reparsed = TripleStore::from_triples(parse_ntriples(&first).unwrap());
    assert_eq!(reparsed.len(), store.len());
    assert_eq!(skosim::rdf::serialize_ntriples(&reparsed), first);
}
