//! Helpers shared by the CLI and acceptance test targets.

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn skosim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skosim"))
        .args(args)
        .output()
        .expect("failed to spawn skosim")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is not UTF-8")
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is not UTF-8")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process was killed by a signal")
}

/// Runs a subcommand that is expected to succeed and returns its stdout.
pub fn run_ok(args: &[&str]) -> String {
    let output = skosim(args);
    assert_eq!(
        exit_code(&output),
        0,
        "skosim {args:?} failed:\n{}",
        stderr_of(&output)
    );
    stdout_of(&output)
}

/// A parsed similarity CSV: population order plus raw cell strings.
pub struct Csv {
    pub population: Vec<String>,
    cells: Vec<Vec<String>>,
}

impl Csv {
    pub fn parse(text: &str) -> Csv {
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().expect("empty CSV").split(',').collect();
        assert_eq!(header[0], "sim", "unexpected CSV header");
        let population: Vec<String> = header[1..].iter().map(|s| s.to_string()).collect();
        let mut cells = Vec::new();
        for (r, line) in lines.enumerate() {
            let row: Vec<&str> = line.split(',').collect();
            assert_eq!(row[0], population[r], "row label out of order");
            assert_eq!(row.len(), population.len() + 1, "ragged row {r}");
            cells.push(row[1..].iter().map(|s| s.to_string()).collect());
        }
        assert_eq!(cells.len(), population.len(), "missing rows");
        Csv { population, cells }
    }

    pub fn index_of(&self, iri: &str) -> usize {
        self.population
            .iter()
            .position(|p| p == iri)
            .unwrap_or_else(|| panic!("{iri} not in population"))
    }

    /// Raw cell text for `SIM(x, y)`.
    pub fn cell(&self, x: &str, y: &str) -> &str {
        &self.cells[self.index_of(x)][self.index_of(y)]
    }

    pub fn row(&self, x: &str) -> &[String] {
        &self.cells[self.index_of(x)]
    }
}

pub fn habitat(code: &str) -> String {
    format!("urn:eunis:habitat:{code}")
}

pub fn species(slug: &str) -> String {
    format!("urn:eunis:species:{slug}")
}
