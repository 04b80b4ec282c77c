use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elliquot::report::{batch_sweep, run, Mode, RunConfig, SigmaSource};
use elliquot::SigmaSubgroup;

#[derive(Parser)]
#[command(
    name = "elliquot",
    version,
    about = "Quotients of powers of an elliptic curve by simple transpositions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,

    /// Include wall-clock time in the output (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Negative continued fraction of n/k and the resulting Σ.
    Decompose { n: i64, k: i64 },
    /// Bundle structure and Galois group of E^g/Σ.
    Structure(Source),
    /// Check fibers of the étale cover against deck-group orbits.
    VerifyCover(Verify),
    /// Check the lift of a translation automorphism.
    VerifyLift {
        #[command(flatten)]
        verify: Verify,
        /// `random`, or g+1 points `a/b,c/d;...` constant on every Σ-orbit.
        #[arg(long = "t", default_value = "random")]
        translation: String,
    },
    /// Structure, cover check and lift check together.
    Report {
        #[command(flatten)]
        verify: Verify,
        #[arg(long = "t", default_value = "random")]
        translation: String,
    },
    /// Structure descriptors for every coprime pair with n <= n-max.
    Sweep {
        #[arg(long)]
        n_max: i64,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long = "g-plus-1")]
    g_plus_1: Option<usize>,
    /// Comma-separated indices i of the transpositions (i, i+1).
    #[arg(long, value_delimiter = ',')]
    generators: Vec<usize>,
}

#[derive(Args)]
struct Verify {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 2)]
    torsion_level: i64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn source(s: &Source) -> Result<SigmaSource, String> {
    match (s.n, s.k, s.g_plus_1) {
        (Some(n), Some(k), None) if s.generators.is_empty() => Ok(SigmaSource::Pair { n, k }),
        (None, None, Some(g1)) => SigmaSubgroup::new(g1, s.generators.iter().copied())
            .map(SigmaSource::Explicit)
            .map_err(|e| e.to_string()),
        _ => Err("give exactly one of `--n N --k K` or `--g-plus-1 G [--generators i,j,..]`".into()),
    }
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    let (mode, src, verify, translation) = match &cli.command {
        Command::Decompose { n, k } => (Mode::Decompose, SigmaSource::Pair { n: *n, k: *k }, None, None),
        Command::Structure(s) => (Mode::Structure, source(s)?, None, None),
        Command::VerifyCover(v) => (Mode::VerifyCover, source(&v.source)?, Some(v), None),
        Command::VerifyLift { verify, translation } => (
            Mode::VerifyLift,
            source(&verify.source)?,
            Some(verify),
            Some(translation),
        ),
        Command::Report { verify, translation } => {
            (Mode::Report, source(&verify.source)?, Some(verify), Some(translation))
        }
        Command::Sweep { .. } => unreachable!("handled separately"),
    };
    let mut c = RunConfig::new(mode, src);
    if let Some(v) = verify {
        c.torsion_level = v.torsion_level;
        c.samples = v.samples;
        c.seed = v.seed;
    }
    if let Some(t) = translation {
        c.translation = t.clone();
    }
    c.output_path = cli.output.clone();
    c.timing = cli.timing;
    Ok(c)
}

fn emit(json: &serde_json::Value, output: Option<&str>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(json).map_err(|e| e.to_string())? + "\n";
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Sweep { n_max } = cli.command {
        return match batch_sweep(n_max).map_err(|e| e.to_string()).and_then(|rows| {
            emit(
                &serde_json::to_value(rows).expect("rows serialize"),
                cli.output.as_deref(),
            )
        }) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let report = config(&cli).and_then(|c| run(&c).map_err(|e| e.to_string()));
    match report {
        Ok(r) => {
            if let Err(e) = emit(&r.to_json(), cli.output.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if !r.pass {
                eprintln!("verification failed; see the report for witnesses");
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
