//! Matrix serialization: CSV tables and plain-PGM heatmaps.
//!
//! CSV is row-major by the first argument: row X lists how much of X each
//! column Y covers. The PGM image is the transpose — the pixel at image row
//! j, column i encodes `SIM(pop[i], pop[j])` — so a resource contained in
//! every other shows up as a black *column*, matching the convention the
//! matrices are usually read with. Darker means more similar.

use crate::engine::SimilarityMatrix;
use crate::rational::Rational;
use std::fmt::Write as _;

/// How matrix cells are rendered in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueMode {
    /// Exactly six fractional digits, rounding half away from zero.
    #[default]
    Decimal,
    /// `num/den` in lowest terms; re-parsing reconstructs the exact matrix.
    Rational,
}

/// CSV with header `sim,<iri_0>,...` and one row per population member.
/// Cell (r, c) is `SIM(pop[r], pop[c])`. Separator `,`, terminator LF.
pub fn export_csv(matrix: &SimilarityMatrix, mode: ValueMode) -> String {
    let n = matrix.len();
    let mut out = String::new();
    out.push_str("sim");
    for iri in matrix.population() {
        out.push(',');
        out.push_str(iri.as_str());
    }
    out.push('\n');
    for r in 0..n {
        out.push_str(matrix.population()[r].as_str());
        for c in 0..n {
            out.push(',');
            let value = matrix.value(r, c);
            match mode {
                ValueMode::Decimal => out.push_str(&value.to_decimal6()),
                ValueMode::Rational => write!(out, "{value}").unwrap(),
            }
        }
        out.push('\n');
    }
    out
}

/// Plain PGM (`P2`), n×n, maxval 255. The pixel at image row j, column i is
/// `round(255 × (1 − SIM(pop[i], pop[j])))`, rounding half away from zero:
/// similarity 1 is black, 0 is white.
pub fn render_pgm(matrix: &SimilarityMatrix) -> String {
    let n = matrix.len();
    let mut out = format!("P2\n{n} {n}\n255\n");
    for j in 0..n {
        for i in 0..n {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{}", gray_level(matrix.value(i, j))).unwrap();
        }
        out.push('\n');
    }
    out
}

fn gray_level(similarity: Rational) -> u64 {
    let complement = Rational::new(
        similarity.denominator() - similarity.numerator(),
        similarity.denominator(),
    );
    complement.scale_rounded(255)
}
