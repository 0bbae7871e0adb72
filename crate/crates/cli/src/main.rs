use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lpi_groups::corpus::{self, format::parse_generators, parse_group};
use lpi_groups::harness::{self, HarnessOptions, ReportFormat};
use lpi_groups::lattice::NormalLattice;
use lpi_groups::props::{explain, satisfies_l_pi, satisfies_pi};
use lpi_groups::structure::{p_supersoluble_obstruction, structure_report, z_u};
use lpi_groups::{is_prime, Error, Group, Limits};

#[derive(Parser)]
#[command(name = "lpi", version, about = "Permutation-group embedding properties and p-supersolubility")]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Caps {
    /// Largest group whose elements may be enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().element_cap)]
    element_cap: usize,
    /// Largest index of a coset-action quotient.
    #[arg(long, global = true, default_value_t = Limits::default().quotient_degree_cap)]
    quotient_cap: usize,
    /// Largest 2-group accepted by the quaternion-free test.
    #[arg(long, global = true, default_value_t = Limits::default().quaternion_free_cap)]
    qf_cap: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            element_cap: self.element_cap,
            quotient_degree_cap: self.quotient_cap,
            quaternion_free_cap: self.qf_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Order, chief factors, minimal normal subgroups and per-prime structure.
    Info { file: PathBuf },
    /// Test a subgroup for the ℒ-Π-property or the Π-property.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        prop: Prop,
        /// Generators in cycle notation separated by `;`.
        #[arg(long)]
        subgroup: String,
    },
    /// Decide p-supersolubility.
    Psuper {
        file: PathBuf,
        #[arg(short)]
        p: u64,
    },
    /// Run verification campaigns over a corpus.
    Verify(VerifyArgs),
    /// Write the bundled corpus as group files plus a manifest.
    Corpus {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 200)]
        max_order: u64,
        /// Extra group files to copy into the corpus.
        #[arg(long)]
        import: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Lpi,
    Pi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    TheoremA,
    Lemmas,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Corpus directory; the bundled corpus when absent.
    #[arg(long)]
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    max_order: u64,
    /// Machine report (one JSON object per line).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Human-readable report; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = HarnessOptions::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = HarnessOptions::default().subgroup_bound)]
    subgroup_bound: usize,
}

/// Failure to even run the command: exit status 2.
struct ConfigError(String);

impl From<Error> for ConfigError {
    fn from(e: Error) -> Self {
        ConfigError(e.to_string())
    }
}

type Outcome = Result<bool, ConfigError>;

fn load(file: &Path, limits: Limits) -> Result<(String, Group), ConfigError> {
    let text = fs::read_to_string(file)
        .map_err(|e| ConfigError(format!("{}: {e}", file.display())))?;
    let (name, g) = parse_group(&text).map_err(|e| ConfigError(format!("{}: {e}", file.display())))?;
    Ok((name, g.with_limits(limits)))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_info(file: &Path, limits: Limits) -> Outcome {
    let (name, g) = load(file, limits)?;
    let lat = NormalLattice::new(&g)?;
    let report = structure_report(&name, &lat)?;
    println!("{name}");
    println!(
        "order {}; chief factors {}; Z_U order {}",
        report.order,
        if report.chief_factor_orders.is_empty() {
            "none".to_string()
        } else {
            join(&report.chief_factor_orders)
        },
        z_u(&lat).order()
    );
    println!("normal subgroups: {}", lat.len());
    println!("minimal normal subgroups:");
    let minimal = if g.order() == 1 { Vec::new() } else { lat.minimal_normal_subgroups()? };
    for m in minimal {
        let gens = m.gens().iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ");
        println!("  order {}: {}", m.order(), gens);
    }
    for r in &report.primes {
        println!(
            "p={}: |P|={} O_p={} O_p'={} O_p'p={} Z_Up={} p-soluble={} p-supersoluble={}",
            r.p,
            r.sylow_order,
            r.o_p_order,
            r.o_p_prime_order,
            r.o_p_prime_p_order,
            r.z_u_p_order,
            r.p_soluble,
            r.p_supersoluble
        );
    }
    Ok(true)
}

fn cmd_check(file: &Path, prop: Prop, subgroup: &str, limits: Limits) -> Outcome {
    let (_, g) = load(file, limits)?;
    let gens = parse_generators(g.degree(), subgroup)?;
    let h = g.subgroup(gens)?;
    let lat = NormalLattice::new(&g)?;
    let verdict = match prop {
        Prop::Lpi => satisfies_l_pi(&lat, &h)?,
        Prop::Pi => satisfies_pi(&lat, &h)?,
    };
    println!("{}", explain(&verdict));
    Ok(verdict.holds)
}

fn cmd_psuper(file: &Path, p: u64, limits: Limits) -> Outcome {
    if !is_prime(p) {
        return Err(ConfigError(format!("p = {p} is not prime")));
    }
    let (_, g) = load(file, limits)?;
    let lat = NormalLattice::new(&g)?;
    match p_supersoluble_obstruction(&lat, p) {
        None => {
            println!("YES");
            Ok(true)
        }
        Some(f) => {
            println!("NO (chief factor of order {f})");
            Ok(false)
        }
    }
}

fn cmd_verify(args: &VerifyArgs, limits: Limits) -> Outcome {
    let mut entries = match &args.corpus {
        Some(dir) => corpus::load_corpus(dir)?,
        None => corpus::bundled_corpus(args.max_order)?,
    };
    entries.retain(|e| e.group.order() <= args.max_order);
    let options = HarnessOptions {
        seed: args.seed,
        subgroup_bound: args.subgroup_bound,
        jobs: args.jobs,
        limits: Some(limits),
        socle_landmarks: args.corpus.is_none(),
        ..HarnessOptions::default()
    };
    let report = match args.suite {
        SuiteArg::TheoremA => harness::verify_theorem_a(&entries, &options)?,
        SuiteArg::Lemmas => harness::verify_lemma_suite(&entries, &options)?,
        SuiteArg::All => harness::verify_all(&entries, &options)?,
    };
    if let Some(path) = &args.json {
        harness::emit_report(&report, path, ReportFormat::Jsonl)?;
    }
    match &args.report {
        Some(path) => harness::emit_report(&report, path, ReportFormat::Text)?,
        None => print!("{}", harness::render_text(&report)),
    }
    Ok(report.exit_code() == 0)
}

fn cmd_corpus(out: &Path, max_order: u64, import: Option<&Path>) -> Outcome {
    let manifest = corpus::generate_corpus(max_order, out, import)?;
    println!("wrote {} groups to {}", manifest.records.len(), out.display());
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = cli.caps.limits();
    let outcome = match &cli.command {
        Command::Info { file } => cmd_info(file, limits),
        Command::Check { file, prop, subgroup } => cmd_check(file, *prop, subgroup, limits),
        Command::Psuper { file, p } => cmd_psuper(file, *p, limits),
        Command::Verify(args) => cmd_verify(args, limits),
        Command::Corpus { out, max_order, import } => cmd_corpus(out, *max_order, import.as_deref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
