//! `skosim` command line: ingest and close RDF graphs, validate contexts,
//! and compute, rank, and export similarity matrices.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or parse error. Diagnostics
//! go to stderr; data goes to stdout or `--out`.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use skosim::analysis::{containment_report, rank_by_similarity, Population, RankDirection};
use skosim::closure::{ClosureRequest, ReflexiveScope};
use skosim::context::{load_context, parse_context};
use skosim::engine::{similarity_matrix, EmptyPolicy, SimilarityMatrix};
use skosim::export::{export_csv, render_pgm, ValueMode};
use skosim::rdf::{parse_ntriples, serialize_ntriples, CurieError, Iri, PrefixMap, TripleStore};
use skosim::synth::SynthParams;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "skosim",
    version,
    about = "Context-dependent asymmetric similarity over SKOS-style RDF graphs",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse N-Triples files and write their canonical serialization.
    Ingest {
        #[command(flatten)]
        data: DataArgs,
        /// Output file (defaults to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a context file; exits 2 with a diagnostic if it is invalid.
    ValidateContext {
        /// Context file (.ctx).
        #[arg(long)]
        context: PathBuf,
    },
    /// Materialize transitive/reflexive/symmetric closures of a predicate.
    Closure {
        #[command(flatten)]
        data: DataArgs,
        /// Predicate as `prefix:local`, `<iri>`, or a bare `://` IRI.
        #[arg(long)]
        predicate: String,
        /// Add (x,p,z) for every directed p-path from x to z.
        #[arg(long)]
        transitive: bool,
        /// Add a self-loop to every node in scope.
        #[arg(long)]
        reflexive: bool,
        /// `predicate-nodes` or `class:<curie-or-iri>`. Defaults to the
        /// class of the --prefixes context, or predicate-nodes without one.
        #[arg(long, value_name = "SCOPE")]
        reflexive_scope: Option<String>,
        /// Add (y,p,x) for every (x,p,y).
        #[arg(long)]
        symmetric: bool,
        /// Context file whose PREFIX lines resolve CURIEs in flags.
        #[arg(long)]
        prefixes: Option<PathBuf>,
        /// Output file for the augmented store.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute the similarity matrix for a population.
    Matrix {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Cell rendering for CSV output.
        #[arg(long, value_enum, default_value_t)]
        values: ValuesArg,
        #[arg(long, value_enum, default_value_t)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank all population members against one query resource.
    Rank {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Query resource (bare IRI or `<iri>`); must be in the population.
        #[arg(long)]
        query: String,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value_t)]
        values: ValuesArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify containment for every population pair (TSV: X, Y, relation).
    Report {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic taxonomy and time the pipeline phases.
    Bench {
        #[arg(long, default_value_t = 1000, value_parser = positive_usize)]
        concepts: usize,
        #[arg(long, default_value_t = 4, value_parser = positive_usize)]
        branching: usize,
        #[arg(long, default_value_t = 200, value_parser = positive_usize)]
        targets: usize,
        /// Expected links per concept.
        #[arg(long, default_value_t = 10.0, value_parser = nonnegative_f64)]
        density: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = positive_usize)]
        threads: usize,
    },
}

#[derive(Args)]
struct DataArgs {
    /// N-Triples file; repeat to merge several files into one store.
    #[arg(long = "data", value_name = "FILE", required = true)]
    data: Vec<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Context file (.ctx).
    #[arg(long)]
    context: PathBuf,
    /// Population file: one absolute IRI per line.
    #[arg(long)]
    population: PathBuf,
    /// Score for an empty feature set as first argument.
    #[arg(long, value_enum, default_value_t)]
    empty_policy: EmptyPolicyArg,
    #[arg(long, default_value_t = 1, value_parser = positive_usize)]
    threads: usize,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ValuesArg {
    #[default]
    Decimal,
    Rational,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum FormatArg {
    #[default]
    Csv,
    Pgm,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum EmptyPolicyArg {
    #[default]
    One,
    Zero,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    FromQuery,
    ToQuery,
}

fn positive_usize(raw: &str) -> Result<usize, String> {
    match raw.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        Ok(_) => Err("must be at least 1".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn nonnegative_f64(raw: &str) -> Result<f64, String> {
    match raw.parse::<f64>() {
        Ok(x) if x >= 0.0 => Ok(x),
        Ok(_) => Err("must be nonnegative".into()),
        Err(e) => Err(e.to_string()),
    }
}

struct CliError {
    message: String,
}

fn data_error(e: impl std::fmt::Display) -> CliError {
    CliError { message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest { data, out } => {
            let store = load_store(&data.data)?;
            write_output(out.as_deref(), &serialize_ntriples(&store))
        }
        Command::ValidateContext { context } => {
            let ctx = load_context(&read_file(&context)?).map_err(data_error)?;
            println!(
                "valid context: class <{}>, {} relation spec(s)",
                ctx.class_ref(),
                ctx.relations().len()
            );
            Ok(())
        }
        Command::Closure {
            data,
            predicate,
            transitive,
            reflexive,
            reflexive_scope,
            symmetric,
            prefixes,
            out,
        } => {
            let (prefix_map, context_class) = match prefixes {
                Some(path) => {
                    let spec = parse_context(&read_file(&path)?).map_err(data_error)?;
                    (spec.prefixes, Some(spec.class_ref))
                }
                None => (PrefixMap::new(), None),
            };
            let predicate = resolve_ref(&prefix_map, &predicate)?;
            let scope = match (reflexive, reflexive_scope) {
                (false, _) => None,
                (true, None) => Some(match context_class {
                    Some(class) => ReflexiveScope::Class(class),
                    None => ReflexiveScope::PredicateNodes,
                }),
                (true, Some(raw)) => Some(parse_scope(&prefix_map, &raw)?),
            };
            let request = ClosureRequest { predicate, transitive, reflexive: scope, symmetric };
            let mut store = load_store(&data.data)?;
            let added = request.apply(&mut store).map_err(data_error)?;
            eprintln!("added {added} triple(s); store now holds {}", store.len());
            fs::write(&out, serialize_ntriples(&store))
                .map_err(|e| data_error(format!("cannot write {}: {e}", out.display())))
        }
        Command::Matrix { matrix, values, format, out } => {
            let computed = compute_matrix(&matrix)?;
            let rendered = match format {
                FormatArg::Csv => export_csv(&computed, value_mode(values)),
                FormatArg::Pgm => render_pgm(&computed),
            };
            write_output(out.as_deref(), &rendered)
        }
        Command::Rank { matrix, query, direction, values, out } => {
            let computed = compute_matrix(&matrix)?;
            let query = parse_iri_arg(&query)?;
            let direction = match direction {
                DirectionArg::FromQuery => RankDirection::FromQuery,
                DirectionArg::ToQuery => RankDirection::ToQuery,
            };
            let ranked = rank_by_similarity(&computed, &query, direction).map_err(data_error)?;
            let mut rendered = String::new();
            for entry in ranked {
                let value = match values {
                    ValuesArg::Decimal => entry.value.to_decimal6(),
                    ValuesArg::Rational => entry.value.to_string(),
                };
                writeln!(rendered, "{}\t{}", entry.resource, value).unwrap();
            }
            write_output(out.as_deref(), &rendered)
        }
        Command::Report { matrix, out } => {
            let computed = compute_matrix(&matrix)?;
            let mut rendered = String::new();
            for (x, y, relation) in containment_report(&computed) {
                writeln!(rendered, "{x}\t{y}\t{relation}").unwrap();
            }
            write_output(out.as_deref(), &rendered)
        }
        Command::Bench { concepts, branching, targets, density, seed, threads } => {
            let params = SynthParams {
                n_concepts: concepts,
                branching,
                n_targets: targets,
                link_density: density,
                seed,
            };
            let report = skosim::bench::bench_matrix(&params, threads);
            println!("{report}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| data_error(format!("cannot read {}: {e}", path.display())))
}

fn load_store(paths: &[PathBuf]) -> Result<TripleStore, CliError> {
    let mut store = TripleStore::new();
    for path in paths {
        let triples = parse_ntriples(&read_file(path)?)
            .map_err(|e| data_error(format!("{}: {e}", path.display())))?;
        store.extend(triples);
    }
    Ok(store)
}

fn compute_matrix(args: &MatrixArgs) -> Result<SimilarityMatrix, CliError> {
    let store = load_store(&args.data.data)?;
    let context = load_context(&read_file(&args.context)?).map_err(data_error)?;
    let population = Population::parse(&read_file(&args.population)?)
        .map_err(|e| data_error(format!("{}: {e}", args.population.display())))?;
    let policy = match args.empty_policy {
        EmptyPolicyArg::One => EmptyPolicy::One,
        EmptyPolicyArg::Zero => EmptyPolicy::Zero,
    };
    similarity_matrix(&store, &context, population.entries(), policy, args.threads)
        .map_err(data_error)
}

fn value_mode(values: ValuesArg) -> ValueMode {
    match values {
        ValuesArg::Decimal => ValueMode::Decimal,
        ValuesArg::Rational => ValueMode::Rational,
    }
}

/// `<iri>`, bound CURIE, or bare `scheme://` IRI, in that order.
fn resolve_ref(prefixes: &PrefixMap, token: &str) -> Result<Iri, CliError> {
    match prefixes.resolve(token) {
        Ok(iri) => Ok(iri),
        Err(CurieError::UnboundPrefix(_)) if token.contains("://") => {
            Iri::new(token).map_err(data_error)
        }
        Err(e) => Err(data_error(e)),
    }
}

fn parse_scope(prefixes: &PrefixMap, raw: &str) -> Result<ReflexiveScope, CliError> {
    if raw == "predicate-nodes" {
        return Ok(ReflexiveScope::PredicateNodes);
    }
    match raw.strip_prefix("class:") {
        Some(reference) => Ok(ReflexiveScope::Class(resolve_ref(prefixes, reference)?)),
        None => Err(data_error(format!(
            "invalid reflexive scope `{raw}`: expected `predicate-nodes` or `class:<curie-or-iri>`"
        ))),
    }
}

fn parse_iri_arg(token: &str) -> Result<Iri, CliError> {
    let inner = token
        .strip_prefix('<')
        .and_then(|rest| rest.strip_suffix('>'))
        .unwrap_or(token);
    Iri::new(inner).map_err(data_error)
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| data_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
