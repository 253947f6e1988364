//! `lienil`: analyse matrix algebras, tabulate `M(l, n)`, build extremal
//! algebras and fuzz the dimension bound.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lienil_core::bound::balanced_composition;
use lienil_core::document::parse_document;
use lienil_core::extremal::type_generators;
use lienil_core::fuzz::{run_fuzz, FuzzConfig};
use lienil_core::pipeline::{analyze, chain_for_document, AnalyzeOptions, Status};
use lienil_core::tables::{mtable, region, region_tsv};
use lienil_core::{AlgebraDocument, ComplementStrategy, Composition, Error, FieldSpec, ParsedDocument};

#[derive(Parser)]
#[command(
    name = "lienil",
    version,
    about = "Lie nilpotent matrix algebras and their dimension bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Close a generator document and check every bound.
    Analyze(AnalyzeArgs),
    /// Print the M(l, n) table.
    Mtable {
        #[arg(long)]
        lmax: u64,
        #[arg(long)]
        nmax: u64,
        /// Brute-force every cell and compare with the closed form.
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Compare the equality-region predicate with M(l, n) = floor bound.
    Region {
        #[arg(long)]
        lmax: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Emit the generators of a block triangular type algebra.
    Construct(ConstructArgs),
    /// Random unital subalgebras of U_n^*(GF(p)) against the bounds.
    Fuzz(FuzzArgs),
    /// Dump the chain decomposition of a document.
    Chain(ChainArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Split along central idempotents and analyse each factor.
    #[arg(long)]
    peirce: bool,
    /// Include the triangularizing conjugator in the report.
    #[arg(long)]
    triangularize: bool,
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("shape").required(true).args(["parts", "balanced"])))]
struct ConstructArgs {
    /// Composition such as 2,3.
    #[arg(long = "type", value_name = "PARTS")]
    parts: Option<String>,
    #[arg(long, num_args = 2, value_names = ["L", "N"])]
    balanced: Option<Vec<u64>>,
    /// q, gfP or gfP^K.
    #[arg(long)]
    field: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    field: String,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    density: usize,
    /// Where to write the first violating document.
    #[arg(long, default_value = "fuzz-violation.json")]
    dump: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Det,
    Seeded,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Det)]
    strategy: Strategy,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
}

enum Failure {
    Violation(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_document(path: &Path) -> std::result::Result<ParsedDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn cmd_analyze(args: &AnalyzeArgs) -> Outcome {
    let doc = read_document(&args.input)?;
    let opts = AnalyzeOptions {
        peirce: args.peirce,
        triangularize: args.triangularize,
        timing: args.timing,
    };
    let report = analyze(&doc, opts)?;
    emit(&to_json(&report), args.output.as_deref())?;
    if report.status == Status::Violation {
        return Err(Failure::Violation("BOUND VIOLATED: see the report".into()));
    }
    Ok(())
}

fn cmd_mtable(lmax: u64, nmax: u64, check: bool) -> Outcome {
    let table = mtable(lmax, nmax, check)?;
    print!("{}", table.to_tsv());
    if !table.mismatches.is_empty() {
        let cells: Vec<String> = table
            .mismatches
            .iter()
            .map(|(l, n, c, b)| format!("M({l},{n}): closed form {c}, brute force {b}"))
            .collect();
        return Err(Failure::Violation(cells.join("; ")));
    }
    Ok(())
}

fn cmd_region(lmax: u64, nmax: u64) -> Outcome {
    let rows = region(lmax, nmax)?;
    print!("{}", region_tsv(&rows));
    let bad = rows.iter().filter(|r| !r.agrees()).count();
    if bad > 0 {
        return Err(Failure::Violation(format!(
            "{bad} rows where the predicate and M disagree"
        )));
    }
    Ok(())
}

fn cmd_construct(args: &ConstructArgs) -> Outcome {
    let field: FieldSpec = args.field.parse()?;
    let k: Composition = match (&args.parts, &args.balanced) {
        (Some(parts), _) => parts.parse()?,
        (None, Some(ln)) => balanced_composition(ln[0], ln[1])?,
        (None, None) => unreachable!("clap requires one of --type and --balanced"),
    };
    let gens = type_generators(&field, &k)?;
    let doc = AlgebraDocument::from_matrices(&field, k.n() as usize, &gens, Some(format!("type {k}")));
    emit(&doc.to_json(), args.output.as_deref())
}

fn cmd_fuzz(args: &FuzzArgs) -> Outcome {
    let cfg = FuzzConfig {
        n: args.n,
        field: args.field.parse()?,
        trials: args.trials,
        seed: args.seed,
        density: args.density,
    };
    let summary = run_fuzz(&cfg)?;
    println!("{}", to_json(&summary));
    if let Some(v) = summary.violations.first() {
        fs::write(&args.dump, v.document.to_json())
            .map_err(|e| Failure::Input(format!("{}: {e}", args.dump.display())))?;
        return Err(Failure::Violation(format!(
            "{} BOUND VIOLATIONS; trial {} written to {}",
            summary.violations.len(),
            v.trial,
            args.dump.display()
        )));
    }
    Ok(())
}

fn cmd_chain(args: &ChainArgs) -> Outcome {
    let doc = read_document(&args.input)?;
    let strategy = match args.strategy {
        Strategy::Det => ComplementStrategy::Deterministic,
        Strategy::Seeded => ComplementStrategy::Seeded { seed: args.seed },
    };
    let run = chain_for_document(&doc, strategy, args.trials)?;
    println!("{}", to_json(&run));
    let failed: Vec<&str> = run
        .trace
        .checks
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    if !failed.is_empty() {
        return Err(Failure::Violation(format!(
            "chain checks failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Mtable {
            lmax,
            nmax,
            check_bruteforce,
        } => cmd_mtable(*lmax, *nmax, *check_bruteforce),
        Command::Region { lmax, nmax } => cmd_region(*lmax, *nmax),
        Command::Construct(a) => cmd_construct(a),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Chain(a) => cmd_chain(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("lienil: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("lienil: error: {msg}");
            ExitCode::from(2)
        }
    }
}
