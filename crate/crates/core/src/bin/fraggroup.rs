use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fraggroup::graphs::build_chain_i;
use fraggroup::growth::{growth_ball, kappa_numeric, NuTable, DEFAULT_BUDGET};
use fraggroup::subshift::{factor_csv, factor_table, iota_example, thue_morse, thue_morse_fragmented, Substitution};
use fraggroup::suites::DEFAULT_SEED;
use fraggroup::{run_suite, Error, Order, Point, RunManifest, Suite, SystemConfig};

#[derive(Parser)]
#[command(name = "fraggroup", version, about = "Exact computations in fragmented dihedral groups")]
struct Cli {
    /// Seed for randomized suites and sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of a product of generators (first name applied last).
    Order {
        #[arg(long, default_value = "f")]
        system: String,
        #[arg(long, default_value_t = 1 << 14)]
        max: u64,
        /// Generator names; an empty string stands for the identity.
        words: Vec<String>,
    },
    /// Ball sizes γ(n) for n up to the radius.
    Growth {
        #[arg(long, default_value = "f")]
        system: String,
        #[arg(long)]
        radius: u32,
        /// Comma-separated generator subset.
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// CSV path; a manifest is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The chain I_n of the golden-mean group.
    Chain {
        n: u32,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Maximal inverted-orbit sizes ν(n).
    Nu {
        #[arg(long, default_value = "f")]
        system: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 6)]
        exact_to: u32,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complexity and repetitivity of a substitution.
    Factors {
        #[arg(long, value_enum, default_value_t = Builtin::ThueMorse, conflicts_with = "file")]
        builtin: Builtin,
        /// JSON substitution {alphabet, rules, involution?}.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Numeric value of the circle coding of a golden-mean sequence.
    Kappa {
        point: String,
        #[arg(long, default_value_t = 60)]
        iterations: usize,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    ThueMorse,
    TauPrime,
    Iota,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Relations,
    Returns,
    Models,
    Frag,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Relations => Suite::Relations,
            SuiteArg::Returns => Suite::Returns,
            SuiteArg::Models => Suite::Models,
            SuiteArg::Frag => Suite::Frag,
        }
    }
}

enum Failure {
    Check(String),
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownGenerator(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownLetter(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Runtime(e),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Write to `out` with a manifest beside it, or print.
fn emit(out: Option<&Path>, contents: &str, manifest: RunManifest) -> Outcome {
    let Some(path) = out else {
        print!("{contents}");
        return Ok(());
    };
    let mut manifest = manifest;
    manifest.write_output(path, contents)?;
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    std::fs::write(path.with_file_name(name), manifest.to_json()).map_err(Error::from)?;
    Ok(())
}

fn cmd_order(system: &str, max: u64, words: &[String]) -> Outcome {
    let sys = SystemConfig::load(system)?;
    let names: Vec<&str> = words.iter().map(String::as_str).filter(|w| !w.is_empty()).collect();
    let g = sys.word(&names)?;
    match g.order(max)? {
        Order::Finite(k) => {
            println!("{k}");
            Ok(())
        }
        Order::ExceedsBound => {
            println!("exceeds {max}");
            Err(Failure::Check(format!("order exceeds {max}")))
        }
    }
}

fn cmd_growth(system: &str, radius: u32, generators: Option<&[String]>, budget: usize, out: Option<&Path>, seed: u64) -> Outcome {
    let sys = SystemConfig::load(system)?;
    let subset: Option<Vec<&str>> = generators.map(|g| g.iter().map(String::as_str).collect());
    let table = growth_ball(&sys, subset.as_deref(), radius, budget)?;
    if table.partial {
        eprintln!("budget of {budget} elements exhausted at radius {}", table.gamma.len() - 1);
    }
    let manifest = RunManifest::new("growth", sys.name(), seed)
        .param("radius", radius)
        .param("generators", table.generators.join(","))
        .param("budget", budget)
        .param("partial", table.partial);
    emit(out, &table.to_csv(), manifest)
}

fn cmd_nu(system: &str, base: Option<&str>, exact_to: u32, max_n: u32, samples: u32, out: Option<&Path>, seed: u64) -> Outcome {
    let sys = SystemConfig::load(system)?;
    let base: Point = match base {
        Some(b) => b.parse()?,
        None => sys.singular_points()[0].clone(),
    };
    let table = NuTable::compute(&sys, &base, None, exact_to, max_n, samples, seed)?;
    let report = table.check(&sys)?;
    let manifest = RunManifest::new("nu", sys.name(), seed)
        .param("base", &base)
        .param("exact_to", exact_to)
        .param("max_n", max_n)
        .param("samples", samples);
    emit(out, &table.to_csv(), manifest)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(report.to_string()))
    }
}

fn cmd_factors(builtin: Builtin, file: Option<&Path>, max_n: usize, out: Option<&Path>, seed: u64) -> Outcome {
    let (name, sub) = match file {
        Some(path) => (path.display().to_string(), Substitution::from_json(&std::fs::read_to_string(path).map_err(Error::from)?)?),
        None => match builtin {
            Builtin::ThueMorse => ("thue-morse".to_string(), thue_morse()),
            Builtin::TauPrime => ("tau-prime".to_string(), thue_morse_fragmented()),
            Builtin::Iota => ("iota".to_string(), iota_example()),
        },
    };
    let rows = factor_table(&sub, max_n)?;
    emit(out, &factor_csv(&rows), RunManifest::new("factors", &name, seed).param("max_n", max_n))
}

fn cmd_verify(suite: Suite, verbose: bool, seed: u64) -> Outcome {
    let report = run_suite(suite, seed)?;
    let failed = report.failures().count();
    if verbose {
        print!("{report}");
    } else {
        for item in report.failures() {
            println!("FAIL {}: {}", item.label, item.detail);
        }
    }
    println!("suite {suite}: {} checks, {failed} failed", report.items.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} checks failed")))
    }
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::Order { system, max, words } => cmd_order(&system, max, &words),
        Command::Growth { system, radius, generators, budget, out } => {
            cmd_growth(&system, radius, generators.as_deref(), budget, out.as_deref(), seed)
        }
        Command::Chain { n, dot, json } => {
            let chain = build_chain_i(n);
            if dot {
                print!("{}", chain.to_dot());
            } else if json {
                println!("{}", chain.to_json());
            } else {
                let names: Vec<String> = chain.vertices.iter().map(|v| if v.is_empty() { "ε".into() } else { v.to_string() }).collect();
                println!("{}", names.join(" "));
            }
            Ok(())
        }
        Command::Nu { system, base, exact_to, max_n, samples, out } => {
            cmd_nu(&system, base.as_deref(), exact_to, max_n, samples, out.as_deref(), seed)
        }
        Command::Factors { builtin, file, max_n, out } => cmd_factors(builtin, file.as_deref(), max_n, out.as_deref(), seed),
        Command::Kappa { point, iterations } => {
            let v = kappa_numeric(&point.parse()?, iterations)?;
            println!("{:.12} ± {:.1e}", v.value, v.width / 2.0);
            Ok(())
        }
        Command::Verify { suite, verbose } => cmd_verify(suite.into(), verbose, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
