use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use reptor_cli::regress::{default_corpus, run_corpus};
use reptor_cli::{
    execute_file, Command, FieldChoice, Outcome, Overrides, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "reptor",
    version,
    about = "Biquotient conditions and Tor groups of representation rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the pair and report the intersection rank and vanishing bound
    Check(RunArgs),
    /// Compute Tor and check it against the vanishing bound
    Tor(RunArgs),
    /// K-theory of the biquotient (strict pairs only)
    Ktheory(RunArgs),
    /// Enlarge the first subtorus to maximal rank
    Enlarge(RunArgs),
    /// Run every spec in a regression corpus and compare with its expectations
    Regress {
        /// Corpus directory (defaults to the bundled corpus)
        dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(required = true)]
    specs: Vec<PathBuf>,
    /// q or fp:<p>
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_spairs: Option<u64>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Worker threads for independent spec files
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file, or a directory when several specs are given
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check every Gröbner basis
    #[arg(long)]
    certify: bool,
    /// Include wall-clock time (reports are then not reproducible)
    #[arg(long)]
    timing: bool,
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(1).max(1))
        .build()
        .map_err(|e| e.to_string())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn write_reports(
    command: Command,
    specs: &[PathBuf],
    outcomes: &[Outcome],
    out: Option<&Path>,
) -> Result<(), String> {
    match out {
        None if outcomes.len() == 1 => print!("{}", pretty(&outcomes[0].report)),
        None => print!(
            "{}",
            pretty(&Value::Array(
                outcomes.iter().map(|o| o.report.clone()).collect()
            ))
        ),
        Some(path) if outcomes.len() == 1 && !path.is_dir() => {
            fs::write(path, pretty(&outcomes[0].report))
                .map_err(|e| format!("{}: {e}", path.display()))?
        }
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            for (spec, o) in specs.iter().zip(outcomes) {
                let stem = spec
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let target = dir.join(format!("{stem}.{command}.json"));
                fs::write(&target, pretty(&o.report))
                    .map_err(|e| format!("{}: {e}", target.display()))?;
            }
        }
    }
    Ok(())
}

fn run(command: Command, args: RunArgs) -> Result<i32, String> {
    let field = args.field.as_deref().map(FieldChoice::parse).transpose()?;
    let overrides = Overrides {
        field,
        seed: args.seed,
        max_spairs: args.max_spairs,
        max_degree: args.max_degree,
        certify: args.certify,
        timing: args.timing,
    };
    let outcomes: Vec<Outcome> = pool(args.jobs)?.install(|| {
        use rayon::prelude::*;
        args.specs
            .par_iter()
            .map(|p| execute_file(command, p, &overrides))
            .collect()
    });
    write_reports(command, &args.specs, &outcomes, args.out.as_deref())?;
    Ok(outcomes
        .iter()
        .map(|o| o.exit_code)
        .max()
        .unwrap_or(EXIT_OK))
}

fn regress(dir: Option<PathBuf>, jobs: Option<usize>) -> Result<i32, String> {
    let dir = dir.unwrap_or_else(default_corpus);
    let results = pool(jobs)?.install(|| run_corpus(&dir))?;
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        if r.passed {
            println!("PASS {} ({})", r.name, r.detail);
        } else {
            println!("FAIL {}: {}", r.name, r.detail);
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match cli.command {
        Cmd::Check(a) => run(Command::Check, a),
        Cmd::Tor(a) => run(Command::Tor, a),
        Cmd::Ktheory(a) => run(Command::Ktheory, a),
        Cmd::Enlarge(a) => run(Command::Enlarge, a),
        Cmd::Regress { dir, jobs } => regress(dir, jobs),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(message) => {
            eprintln!("reptor: {message}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
