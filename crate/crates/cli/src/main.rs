//! `bruhat`: enumerate higher Bruhat orders, check suspension-lemma
//! instances, and certify sphericity through exact homology.
//!
//! Exit codes: 0 pass, 1 a mathematical check failed, 2 a resource limit was
//! hit, 3 usage or input error.

mod commands;
mod error;
mod instance;

use std::path::PathBuf;
use std::process::ExitCode;

use bruhat_core::homology::DEFAULT_MAX_SIMPLICES;
use bruhat_core::{BruhatOrderKind, EnumerationLimits, Exec, GroundParams};
use clap::{Args, Parser, Subcommand};

use commands::{Budgets, Outcome};
use error::{CliError, EXIT_PASS, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "bruhat",
    version,
    about = "Higher Bruhat orders, suspension-lemma checks and exact homology"
)]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest C(n, k+1) accepted for enumeration.
    #[arg(long, global = true, default_value_t = 64)]
    max_subsets: u64,

    /// Largest order complex (nonempty simplices) accepted for homology.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIMPLICES)]
    max_simplices: u64,

    /// Carrier cones are checked on every chain up to this many, else on a sample.
    #[arg(long, global = true, default_value_t = 20_000)]
    max_chains: usize,

    /// Seed for the carrier-chain sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads; 1 runs everything sequentially, 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Instance file (schema 1).
    #[arg(long)]
    instance: Option<PathBuf>,

    /// A Bruhat instance: N K ORDER, ORDER being single_step or inclusion.
    #[arg(long, num_args = 3, value_names = ["N", "K", "ORDER"])]
    bruhat: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate B(n, k) and summarise it.
    Enumerate {
        n: u32,
        k: u32,
        #[arg(long, default_value = "bfs", value_parser = ["bfs", "bruteforce", "both"])]
        method: String,
        /// Include every element in the report.
        #[arg(long)]
        dump: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the lemma's hypotheses, proof maps and carrier cones.
    CheckLemma {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the reduced homology of the proper part of B(n, k).
    VerifySphericity {
        #[arg(long, num_args = 3, value_names = ["N", "K", "ORDER"], required = true)]
        bruhat: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count comparable pairs under single-step and inclusion order.
    CompareOrders {
        n: u32,
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an instance as JSON (schema 1) or as a DOT cover diagram.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_bruhat(args: &[String]) -> Result<(GroundParams, BruhatOrderKind), CliError> {
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| CliError::Usage(format!("expected a non-negative integer, got {s:?}")))
    };
    let params = GroundParams::new(num(&args[0])?, num(&args[1])?)?;
    Ok((params, BruhatOrderKind::parse(&args[2])?))
}

fn load_source(source: &Source, b: &Budgets) -> Result<(String, instance::Loaded), CliError> {
    let (label, file) = match (&source.instance, &source.bruhat) {
        (Some(path), _) => (
            format!(
                "instance {}",
                path.file_name()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
            ),
            instance::read(path)?,
        ),
        (None, Some(args)) => {
            let (params, kind) = parse_bruhat(args)?;
            (
                format!("B{params} {kind}"),
                instance::InstanceFile {
                    schema: instance::SCHEMA_VERSION,
                    bruhat: Some(instance::BruhatSpec {
                        n: params.n(),
                        k: params.k(),
                        order: kind.as_str().to_string(),
                    }),
                    p: None,
                    q: None,
                    green: None,
                    f: None,
                    i: None,
                    j: None,
                },
            )
        }
        (None, None) => return Err(CliError::Usage("give --instance or --bruhat".into())),
    };
    Ok((label, instance::load(&file, b.limits, b.exec)?))
}

fn write_out(path: &Option<PathBuf>, contents: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, contents)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let exec = if cli.jobs == 1 {
        Exec::Sequential
    } else {
        Exec::default()
    };
    #[cfg(feature = "parallel")]
    if cli.jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    let budgets = Budgets {
        limits: EnumerationLimits {
            bfs: cli.max_subsets,
            bruteforce: cli.max_subsets.min(EnumerationLimits::default().bruteforce),
        },
        max_simplices: cli.max_simplices,
        max_chains: cli.max_chains,
        seed: cli.seed,
        exec,
    };

    let (outcome, out): (Outcome, Option<PathBuf>) = match cli.command {
        Command::Enumerate {
            n,
            k,
            method,
            dump,
            out,
        } => (
            commands::enumerate(GroundParams::new(n, k)?, &method, dump, budgets)?,
            out,
        ),
        Command::CheckLemma { source, out } => {
            let (label, loaded) = load_source(&source, &budgets)?;
            let inst = loaded.instance.ok_or_else(|| {
                CliError::Input(
                    "check-lemma needs q, green, f, i and j (Bruhat instances need n >= k + 2)"
                        .into(),
                )
            })?;
            (commands::check_lemma(&label, &inst, budgets)?, out)
        }
        Command::VerifySphericity { bruhat, out } => {
            let (params, kind) = parse_bruhat(&bruhat)?;
            (commands::verify_sphericity(params, kind, budgets)?, out)
        }
        Command::CompareOrders { n, k, out } => {
            (commands::compare(GroundParams::new(n, k)?, budgets)?, out)
        }
        Command::Export {
            source,
            format,
            out,
        } => {
            let (_, loaded) = load_source(&source, &budgets)?;
            let body = match format.as_str() {
                "json" => commands::export_json(&loaded)?,
                "dot" => commands::to_dot(&loaded),
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown format {other:?}; use json or dot"
                    )))
                }
            };
            match &out {
                Some(_) => write_out(&out, &body)?,
                None => print!("{body}"),
            }
            return Ok(EXIT_PASS);
        }
    };

    let json = commands::render_json(&outcome.json);
    write_out(&out, &json)?;
    if cli.json {
        print!("{json}");
    } else {
        print!("{}", outcome.text);
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
