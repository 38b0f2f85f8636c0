use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use superid::document::AlgebraDocument;
use superid::report::{self, FamilySpec, Report, Status, Theorem};
use superid::LieSuperalgebra;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;

/// Superderivations, ID*(L) and its upper bound for Lie superalgebras
/// given by exact rational structure constants.
#[derive(Parser)]
#[command(name = "superid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Lie superalgebra axioms of an algebra document.
    Validate { path: PathBuf },
    /// Invariants, derivation spaces and the ID* bound.
    Invariants {
        #[command(flatten)]
        input: Inputs,
        /// Print basis matrices of every derivation space.
        #[arg(long)]
        matrices: bool,
        /// Write the machine-readable report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Check one theorem on each input.
    Verify {
        #[command(flatten)]
        input: Inputs,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Random class-2 central extensions: axioms, chain and bound.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Inputs {
    /// Algebra documents (JSON).
    paths: Vec<PathBuf>,
    /// filiform:n,m | heisenberg:m,n,m1,n1 | abelian:p,q
    #[arg(long = "family", value_name = "SPEC")]
    families: Vec<FamilySpec>,
}

enum Source {
    File(PathBuf),
    Family(FamilySpec),
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Family(f) => f.to_string(),
        }
    }

    fn load(&self) -> Result<LieSuperalgebra, String> {
        match self {
            Source::File(p) => AlgebraDocument::read(p)
                .and_then(|d| d.to_algebra())
                .map_err(|e| e.to_string()),
            Source::Family(f) => f.build(),
        }
    }
}

fn sources(input: Inputs) -> Vec<Source> {
    let mut out: Vec<Source> = input.paths.into_iter().map(Source::File).collect();
    out.extend(input.families.into_iter().map(Source::Family));
    out
}

fn write_json(path: &Path, text: &str) -> Result<(), u8> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn validate(path: &Path) -> u8 {
    let l = match AlgebraDocument::read(path).and_then(|d| d.to_algebra()) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    };
    let d = l.validate();
    match d.first() {
        None => {
            println!(
                "{}: valid Lie superalgebra, sdim {}",
                path.display(),
                l.sdim()
            );
            EXIT_PASS
        }
        Some(v) => {
            println!("{}: {v}", path.display());
            for other in &d.violations[1..] {
                println!("  also: {other}");
            }
            EXIT_FAIL
        }
    }
}

/// Runs every input in parallel and prints in input order.
fn run_reports(
    input: Inputs,
    json: Option<PathBuf>,
    theorem: Option<Theorem>,
    matrices: bool,
) -> u8 {
    let sources = sources(input);
    if sources.is_empty() {
        eprintln!("error: give at least one document path or --family");
        return EXIT_INPUT;
    }
    let results: Vec<Result<Report, String>> = sources
        .par_iter()
        .map(|src| {
            let l = src.load()?;
            let (mut r, tower) = report::full_report(&src.label(), &l);
            if !r.algebra.valid {
                return Ok(r);
            }
            if let Some(t) = theorem {
                let family = match src {
                    Source::Family(f) => Some(f),
                    Source::File(_) => None,
                };
                r.verifications
                    .push(report::verify(&l, tower.as_ref(), family, t));
            }
            Ok(r)
        })
        .collect();

    let mut statuses = Vec::new();
    let mut reports = Vec::new();
    let mut input_error = false;
    for (src, result) in sources.iter().zip(results) {
        match result {
            Err(e) => {
                eprintln!("error: {}: {e}", src.label());
                input_error = true;
            }
            Ok(r) => {
                print!("{}", r.render_text(matrices));
                if !r.algebra.valid && theorem.is_none() {
                    input_error = true;
                }
                statuses.push(r.status());
                reports.push(r);
            }
        }
    }
    if let Some(path) = json {
        let text = if reports.len() == 1 {
            reports[0].to_json()
        } else {
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        };
        if let Err(c) = write_json(&path, &text) {
            return c;
        }
    }
    if input_error {
        EXIT_INPUT
    } else if statuses.contains(&Status::Fail) {
        EXIT_FAIL
    } else if statuses.contains(&Status::Inapplicable) {
        EXIT_INAPPLICABLE
    } else {
        EXIT_PASS
    }
}

fn fuzz(count: usize, max_dim: usize, seed: u64, json: Option<PathBuf>) -> u8 {
    if count > 0 && max_dim < 2 {
        eprintln!("error: --max-dim must be at least 2 for class-2 samples");
        return EXIT_INPUT;
    }
    let summary = report::run_fuzz(count, max_dim, seed);
    print!("{}", summary.render_text());
    if let Some(path) = json {
        if let Err(c) = write_json(&path, &summary.to_json()) {
            return c;
        }
    }
    if summary.failed == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            });
        }
    };
    let code = match cli.command {
        Command::Validate { path } => validate(&path),
        Command::Invariants {
            input,
            matrices,
            json,
        } => run_reports(input, json, None, matrices),
        Command::Verify {
            input,
            theorem,
            json,
        } => run_reports(input, json, Some(theorem), false),
        Command::Fuzz {
            count,
            max_dim,
            seed,
            json,
        } => fuzz(count, max_dim, seed, json),
    };
    ExitCode::from(code)
}
