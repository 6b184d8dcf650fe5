//! `wiretap` command-line tool.
//!
//! Machine-readable JSON goes to stdout (or files under `--out`), a short human
//! summary to stderr. Exit codes: 0 success (including an empty region, flagged in
//! the output), 1 internal failure, 2 malformed input, 3 enumeration budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use wiretap::codec::{
    exact_fault_probabilities, monte_carlo_fault_probabilities, optimal_list_attack_with_budget,
    overlap_statistics_with_delta, sample_random_code, Mmi,
};
use wiretap::exponents::{exponent_report, ExponentOptions};
use wiretap::io::{read_json, to_json_pretty, AuxFile, ChannelsFile, OverlapSpec, ProblemSpec};
use wiretap::measures::Alphabet;
use wiretap::polytope::{LinearSystem, Polytope};
use wiretap::region::{hull_containment_check, rate_region};
use wiretap::types::{enumerate_type_class, enumerate_types, type_class_size, TypeVector};
use wiretap::{demos, Error};

#[derive(Parser)]
#[command(name = "wiretap", version, about = "Secrecy and reliability tradeoffs for discrete memoryless wiretap channels")]
struct Cli {
    /// Report information quantities in bits in the human summary (JSON stays in nats).
    #[arg(long, global = true)]
    bits: bool,

    /// Enumeration budget for exact computations.
    #[arg(long, global = true, env = "WIRETAP_BUDGET")]
    budget: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate polytopes over (R_M, R_L, R_lambda) for a list or sweep of auxiliary structures.
    Region(RegionArgs),
    /// Lower bounds on the error and success exponents.
    Exponents(ExponentArgs),
    /// Exact (or Monte-Carlo) fault probabilities of a sampled random code.
    Simulate(SimulateArgs),
    /// Shell-overlap statistics of random satellite sets.
    Overlap(OverlapArgs),
    /// Fourier-Motzkin projection of a linear system.
    Project(ProjectArgs),
    /// Type enumeration and type-class sizes.
    Types {
        #[command(subcommand)]
        command: TypesCommand,
    },
    /// Built-in worked instances.
    Examples {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

#[derive(Args)]
struct RegionArgs {
    /// JSON with W_b and W_e.
    #[arg(long)]
    channels: PathBuf,
    /// JSON with one aux spec, {"aux": [...]} or {"sweep": {...}}.
    #[arg(long)]
    aux: PathBuf,
    /// Directory for per-aux facets JSON, vertices CSV and gnuplot data.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also run the sampled hull-containment check with this many points per aux.
    #[arg(long)]
    hull_samples: Option<usize>,
}

#[derive(Args)]
struct ExponentArgs {
    /// Problem spec with W_b, W_e, aux and rates.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 1.0 / 32.0)]
    grid_step: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Problem spec with W_b, W_e, optional prefix and code parameters.
    #[arg(long)]
    spec: PathBuf,
    /// Estimate by sampling instead of exact enumeration.
    #[arg(long)]
    monte_carlo: Option<u64>,
    /// Write per-message fault probabilities as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct OverlapArgs {
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args)]
struct ProjectArgs {
    /// Linear system JSON.
    #[arg(long)]
    system: PathBuf,
    /// Variables to keep, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    keep: Vec<String>,
    /// Also enumerate vertices inside the box [0, CAP]^d.
    #[arg(long)]
    vertices: Option<f64>,
}

#[derive(Subcommand)]
enum TypesCommand {
    /// Every type of an n-sequence over an indexed alphabet, with class sizes.
    Enumerate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alphabet: usize,
    },
    /// Size of one type class, optionally listing its members.
    Class {
        #[arg(long, value_delimiter = ',', required = true)]
        counts: Vec<u64>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Junkdata,
    Perfect,
    Prefixdmc,
    Region,
}

type CliResult = std::result::Result<(), Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Lp(_) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> CliResult {
    let units = Units(cli.bits);
    let budget = cli.budget;
    match &cli.command {
        Command::Region(a) => region(a, units),
        Command::Exponents(a) => exponents(a, units),
        Command::Simulate(a) => simulate(a, budget),
        Command::Overlap(a) => overlap(a),
        Command::Project(a) => project(a),
        Command::Types { command } => types(command, budget),
        Command::Examples { name } => examples(*name, units),
    }
}

#[derive(Clone, Copy)]
struct Units(bool);

impl Units {
    fn show(self, nats: f64) -> String {
        if self.0 {
            format!("{:.6} bits", nats / std::f64::consts::LN_2)
        } else {
            format!("{nats:.6} nats")
        }
    }
}

fn emit(value: &impl serde::Serialize) -> CliResult {
    print!("{}", to_json_pretty(value)?);
    Ok(())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult {
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

fn region(a: &RegionArgs, units: Units) -> CliResult {
    let channels: ChannelsFile = read_json(&a.channels)?;
    let aux_file: AuxFile = read_json(&a.aux)?;
    let auxes = aux_file.expand(channels.w_b.input())?;
    let region = rate_region(&channels.w_b, &channels.w_e, &auxes)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir)?;
    }
    let mut summaries = Vec::new();
    for (i, r) in region.regions.iter().enumerate() {
        let vertices = r.vertices()?;
        if let Some(dir) = &a.out {
            write_file(dir, &format!("aux_{i:03}_facets.json"), &to_json_pretty(r)?)?;
            write_file(dir, &format!("aux_{i:03}_vertices.csv"), &vertices.to_csv())?;
            write_file(dir, &format!("aux_{i:03}_region.dat"), &r.gnuplot_facets()?)?;
        }
        let hull = match a.hull_samples {
            Some(n) => Some(hull_containment_check(&channels.w_b, &channels.w_e, &auxes[i], n, i as u64)?),
            None => None,
        };
        let q = &r.quantities;
        eprintln!(
            "aux {i}: I(X~;Y|U) = {}, I(X~;Z|U) = {}, I(U;Y) = {}, I(U;Z) = {}, {} vertices, facets: {}{}",
            units.show(q.i_xt_y_given_u),
            units.show(q.i_xt_z_given_u),
            units.show(q.i_u_y),
            units.show(q.i_u_z),
            vertices.points.len(),
            if r.irredundant.is_empty() { "none".to_string() } else { r.irredundant.join(", ") },
            if r.empty { " (empty)" } else { "" },
        );
        summaries.push(json!({
            "index": i,
            "quantities": q,
            "empty": r.empty,
            "open_empty": r.open_empty,
            "families": r.families(),
            "vertices": vertices.points.len(),
            "hull_check": hull,
        }));
    }
    emit(&json!({ "empty": region.is_empty(), "regions": summaries }))
}

fn exponents(a: &ExponentArgs, units: Units) -> CliResult {
    let spec: ProblemSpec = read_json(&a.spec)?;
    let aux = spec.aux.as_ref().ok_or_else(|| Error::Parse("spec needs an `aux` entry".into()))?;
    let rates = spec.rates.as_ref().ok_or_else(|| Error::Parse("spec needs a `rates` entry".into()))?;
    let opts = ExponentOptions { grid_step: a.grid_step, ..ExponentOptions::default() };
    let report = exponent_report(&spec.w_b, &spec.w_e, aux, rates, &opts)?;
    let e = report.exponents;
    eprintln!("E_b >= {}, E_e >= {}, S_e >= {}", units.show(e.e_b), units.show(e.e_e), units.show(e.s_e));
    emit(&report)
}

fn simulate(a: &SimulateArgs, budget: Option<u128>) -> CliResult {
    let spec: ProblemSpec = read_json(&a.spec)?;
    let code = spec.code.as_ref().ok_or_else(|| Error::Parse("spec needs a `code` entry".into()))?;
    let budget = budget.unwrap_or(spec.budget());
    let (q0, q1) = spec.code_types(code)?;
    let cb = sample_random_code(&q0, &q1, code.junk, code.secrets, code.messages, spec.seed)?;
    let (w_b, w_e) = spec.effective_channels()?;
    let attack = optimal_list_attack_with_budget(&cb, &w_e, code.lambda, budget)?;
    if let Some(samples) = a.monte_carlo.or(spec.samples) {
        let mc = monte_carlo_fault_probabilities(&cb, &w_b, &w_e, &attack, &Mmi, &Mmi, samples, spec.seed)?;
        eprintln!(
            "e_b ~ {:.6} ± {:.6}, e_e ~ {:.6} ± {:.6}, s_e ~ {:.6} ± {:.6}",
            mc.e_b.mean, mc.e_b.std_err, mc.e_e.mean, mc.e_e.std_err, mc.s_e.mean, mc.s_e.std_err
        );
        return emit(&json!({ "code": cb, "monte_carlo": mc }));
    }
    let report = if budget == wiretap::codec::DEFAULT_BUDGET {
        exact_fault_probabilities(&cb, &w_b, &w_e, &attack)?
    } else {
        wiretap::codec::exact_fault_probabilities_with(&cb, &w_b, &w_e, &attack, &Mmi, &Mmi, budget)?
    };
    if let Some(path) = &a.csv {
        std::fs::write(path, report.to_csv())?;
    }
    eprintln!("e_b = {}, e_e = {}, s_e = {}", report.e_b, report.e_e, report.s_e);
    emit(&json!({ "code": cb, "faults": report }))
}

fn overlap(a: &OverlapArgs) -> CliResult {
    let spec: OverlapSpec = read_json(&a.spec)?;
    let (q0, q1, v) = spec.types()?;
    let report = overlap_statistics_with_delta(&q0, &q1, &v, spec.junk, spec.samples, spec.seed, spec.delta)?;
    eprintln!(
        "mean max overlap {:.4}; probe mean {:.4} ± {:.4} vs expected {}",
        report.mean_max, report.probe_mean, report.probe_std_err, report.probe_expected
    );
    emit(&report)
}

fn project(a: &ProjectArgs) -> CliResult {
    let sys: LinearSystem = read_json(&a.system)?;
    let keep: Vec<&str> = a.keep.iter().map(String::as_str).collect();
    let projected = sys.project(&keep)?;
    eprint!("{projected}");
    let vertices = match a.vertices {
        Some(cap) => Some(Polytope::from_system(&projected, Some(cap)).vertices()?),
        None => None,
    };
    let empty = projected.is_empty_closed()?;
    emit(&json!({ "system": projected, "empty": empty, "vertices": vertices }))
}

fn types(cmd: &TypesCommand, budget: Option<u128>) -> CliResult {
    match cmd {
        TypesCommand::Enumerate { n, alphabet } => {
            if *alphabet == 0 {
                return Err(Error::InvalidAlphabet("alphabet must be non-empty".into()));
            }
            let all = enumerate_types(*n, &Alphabet::indexed(*alphabet))?;
            eprintln!("{} types", all.len());
            let rows: Vec<_> = all
                .iter()
                .map(|t| json!({ "counts": t.counts(), "class_size": type_class_size(t).to_string() }))
                .collect();
            emit(&rows)
        }
        TypesCommand::Class { counts, list } => {
            let t = TypeVector::from_counts(counts)?;
            let size = type_class_size(&t);
            eprintln!("|T| = {size}");
            let members = if *list {
                let limit = budget.unwrap_or(wiretap::codec::DEFAULT_BUDGET);
                let needed: u128 = size.to_string().parse().unwrap_or(u128::MAX);
                if needed > limit {
                    return Err(Error::BudgetExceeded { needed, budget: limit });
                }
                Some(enumerate_type_class(&t).map(|s| s.to_string()).collect::<Vec<_>>())
            } else {
                None
            };
            emit(&json!({ "counts": counts, "class_size": size.to_string(), "members": members }))
        }
    }
}

fn examples(name: ExampleName, units: Units) -> CliResult {
    match name {
        ExampleName::Junkdata => {
            let d = demos::junk_data()?;
            eprintln!("XOR decoder for Bob, optimal single guess for Eve:");
            eprintln!("e_b = {}, s_e = {}", d.xor_bob.e_b, d.xor_bob.s_e);
            eprintln!("MMI decoder for Bob: e_b = {}", d.mmi_bob.e_b);
            emit(&d)
        }
        ExampleName::Perfect => {
            let d = demos::perfect_secrecy()?;
            for (k, without, with) in &d.success {
                eprintln!("{k} guess(es): success {without} without Z, {with} with Z");
            }
            emit(&d)
        }
        ExampleName::Prefixdmc => {
            let d = demos::prefix_dmc()?;
            eprintln!(
                "with prefix: I(X~;Y) = {}, I(X~;Z) = {}",
                units.show(d.with_prefix.i_xt_y_given_u),
                units.show(d.with_prefix.i_xt_z_given_u)
            );
            eprintln!(
                "without prefix: I(X;Y) = {}, I(X;Z) = {}",
                units.show(d.without_prefix.i_xt_y_given_u),
                units.show(d.without_prefix.i_xt_z_given_u)
            );
            emit(&d)
        }
        ExampleName::Region => {
            let d = demos::korner_style_region()?;
            for f in d.region.families() {
                eprintln!("{:<20} {}", f.label, if f.irredundant { "facet" } else { "redundant" });
            }
            let vertices = d.region.vertices()?;
            emit(&json!({ "region": d.region, "vertices": vertices }))
        }
    }
}
