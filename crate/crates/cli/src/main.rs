//! Batch front-end over the decision library.
//!
//! Reads a prime-decomposition JSON (or a group spec for `ring`), runs the
//! requested command, and prints a deterministic report to stdout as text or
//! JSON. Wall-clock timing goes to stderr only, so stdout can be diffed.
//!
//! Exit codes: 0 when the question was decided, 1 when a verification check
//! failed, 2 on input errors, 3 when a check was skipped for budget reasons
//! and --strict was set.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pi1iso::report::{
    classify_report, cover_report, homology_report, ring_report, verify_report, Report,
};
use pi1iso::{FiniteGroupTable, PrimeDecomposition, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(
    name = "pi1iso",
    version,
    about = "Decides whether a closed orientable 3-manifold admits a pi_1-isomorphic map to \
             (or bounding inclusion in) a compact orientable 4-manifold, with chain-level \
             verification of every homological ingredient"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Print the report as JSON instead of text
    #[arg(long)]
    json: bool,
    /// Cell budget for bar-complex verification passes
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Exit with code 3 when any check is skipped for budget reasons
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide both questions and print verdicts with certificates
    Classify {
        /// Path to a decomposition JSON file, or - for stdin
        input: String,
        /// Also run the oracle-vs-closed-form check battery
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run the oracle-vs-closed-form check battery on the input
    Verify {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Mod-p cohomology ring of a finite group (dims and product tensors)
    Ring {
        /// Group spec: q8, c<n>, or a path to a multiplication-table JSON
        group: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(usize))]
        max_degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Covering-space data for an all-2-power decomposition
    Cover {
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Homology tables of the classifying-space skeleton and the manifold
    Homology {
        input: String,
        /// Primes for mod-p fundamental-class images, comma separated
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
}

struct UsageError(String);

fn read_decomposition(path: &str) -> Result<PrimeDecomposition, UsageError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| UsageError(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("reading {path}: {e}")))?
    };
    PrimeDecomposition::from_json_str(&text).map_err(|e| UsageError(format!("parsing {path}: {e}")))
}

fn read_group(spec: &str) -> Result<FiniteGroupTable, UsageError> {
    if spec == "q8" {
        return Ok(FiniteGroupTable::quaternion());
    }
    if let Some(num) = spec.strip_prefix('c') {
        if let Ok(n) = num.parse::<usize>() {
            if n >= 1 {
                return Ok(FiniteGroupTable::cyclic(n));
            }
        }
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| UsageError(format!("group spec {spec}: not q8 or c<n>, and {e}")))?;
    let name = std::path::Path::new(spec)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("table")
        .to_string();
    FiniteGroupTable::from_json_str(name, &text)
        .map_err(|e| UsageError(format!("parsing group table {spec}: {e}")))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn emit(report: &Report, common: &Common) -> ExitCode {
    if common.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.render_text());
    }
    for (phase, ms) in &report.timing_ms {
        eprintln!("timing: {phase} {ms}ms");
    }
    if report.has_failures() {
        ExitCode::from(1)
    } else if common.strict && report.has_budget_skips() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Classify { input, verify, common } => {
            let m = read_decomposition(&input)?;
            Ok(emit(&classify_report(&m, verify, common.budget), &common))
        }
        Command::Verify { input, common } => {
            let m = read_decomposition(&input)?;
            Ok(emit(&verify_report(&m, common.budget), &common))
        }
        Command::Ring { group, prime, max_degree, common } => {
            if !is_prime(prime) {
                return Err(UsageError(format!("--prime {prime} is not prime")));
            }
            if max_degree > 5 {
                return Err(UsageError("--max-degree is capped at 5".to_string()));
            }
            let g = read_group(&group)?;
            let report = ring_report(&g, prime, max_degree, common.budget)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok(emit(&report, &common))
        }
        Command::Cover { input, common } => {
            let m = read_decomposition(&input)?;
            let report = cover_report(&m).map_err(|e| UsageError(e.to_string()))?;
            Ok(emit(&report, &common))
        }
        Command::Homology { input, primes, common } => {
            let m = read_decomposition(&input)?;
            for &p in &primes {
                if !is_prime(p) {
                    return Err(UsageError(format!("--primes entry {p} is not prime")));
                }
            }
            Ok(emit(&homology_report(&m, &primes), &common))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
