//! Matrix interpretation: containment classification and ranking.
//!
//! The asymmetry of the matrix carries the information. Reading the ordered
//! pair `(SIM(X,Y), SIM(Y,X))` tells whether Y holds the same features as X,
//! strictly more, strictly fewer, none, or some.

use crate::engine::SimilarityMatrix;
use crate::rational::Rational;
use crate::rdf::{InvalidIri, Iri};
use std::fmt;
use thiserror::Error;

/// How the feature sets of an ordered pair relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContainmentRelation {
    Equivalent,
    FirstContainedInSecond,
    SecondContainedInFirst,
    Disjoint,
    Overlap,
}

impl fmt::Display for ContainmentRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContainmentRelation::Equivalent => "equivalent",
            ContainmentRelation::FirstContainedInSecond => "first-contained-in-second",
            ContainmentRelation::SecondContainedInFirst => "second-contained-in-first",
            ContainmentRelation::Disjoint => "disjoint",
            ContainmentRelation::Overlap => "overlap",
        })
    }
}

/// Classifies `(SIM(X,Y), SIM(Y,X))`. The checks apply in order:
/// both 1 → equivalent; SIM(X,Y) = 1 → X contained in Y; SIM(Y,X) = 1 →
/// Y contained in X; both 0 → disjoint; anything else overlaps.
pub fn classify_pair(sim_xy: Rational, sim_yx: Rational) -> ContainmentRelation {
    if sim_xy.is_one() && sim_yx.is_one() {
        ContainmentRelation::Equivalent
    } else if sim_xy.is_one() {
        ContainmentRelation::FirstContainedInSecond
    } else if sim_yx.is_one() {
        ContainmentRelation::SecondContainedInFirst
    } else if sim_xy.is_zero() && sim_yx.is_zero() {
        ContainmentRelation::Disjoint
    } else {
        ContainmentRelation::Overlap
    }
}

/// One classification per unordered pair, the earlier population member
/// first.
pub fn containment_report(matrix: &SimilarityMatrix) -> Vec<(Iri, Iri, ContainmentRelation)> {
    let population = matrix.population();
    let mut report = Vec::with_capacity(population.len() * (population.len().saturating_sub(1)) / 2);
    for r in 0..population.len() {
        for c in r + 1..population.len() {
            report.push((
                population[r].clone(),
                population[c].clone(),
                classify_pair(matrix.value(r, c), matrix.value(c, r)),
            ));
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankDirection {
    /// Sort by `SIM(query, candidate)`: how much of the query each
    /// candidate covers.
    FromQuery,
    /// Sort by `SIM(candidate, query)`.
    ToQuery,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub resource: Iri,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RankError {
    #[error("query `{0}` is not in the population")]
    QueryNotInPopulation(Iri),
}

/// Ranks every other population member against the query, best first, ties
/// broken by IRI.
pub fn rank_by_similarity(
    matrix: &SimilarityMatrix,
    query: &Iri,
    direction: RankDirection,
) -> Result<Vec<RankEntry>, RankError> {
    let q = matrix
        .index_of(query)
        .ok_or_else(|| RankError::QueryNotInPopulation(query.clone()))?;
    let mut entries: Vec<RankEntry> = matrix
        .population()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != q)
        .map(|(i, iri)| {
            let value = match direction {
                RankDirection::FromQuery => matrix.value(q, i),
                RankDirection::ToQuery => matrix.value(i, q),
            };
            RankEntry { resource: iri.clone(), value }
        })
        .collect();
    entries.sort_by(|a, b| b.value.cmp(&a.value).then_with(|| a.resource.cmp(&b.resource)));
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PopulationError {
    #[error("empty population")]
    Empty,
    #[error("line {line}: duplicate population entry `{iri}`")]
    Duplicate { line: usize, iri: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: InvalidIri },
    #[error("line {line}: `{iri}` is not an absolute IRI")]
    NotAbsolute { line: usize, iri: String },
}

/// Ordered, duplicate-free list of resources forming a matrix's rows and
/// columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Population {
    entries: Vec<Iri>,
}

impl Population {
    /// One absolute IRI per non-empty, non-comment line, order preserved.
    pub fn parse(text: &str) -> Result<Population, PopulationError> {
        let mut entries: Vec<Iri> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let iri = Iri::new(line).map_err(|source| PopulationError::Invalid { line: i + 1, source })?;
            if !iri.is_absolute() {
                return Err(PopulationError::NotAbsolute { line: i + 1, iri: line.to_owned() });
            }
            if entries.contains(&iri) {
                return Err(PopulationError::Duplicate { line: i + 1, iri: line.to_owned() });
            }
            entries.push(iri);
        }
        if entries.is_empty() {
            return Err(PopulationError::Empty);
        }
        Ok(Population { entries })
    }

    pub fn entries(&self) -> &[Iri] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
