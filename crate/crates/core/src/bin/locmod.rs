use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use locmod::report::{self, Command, ModeChoice, RunConfig};

#[derive(Parser)]
#[command(name = "locmod", version, about = "Point-level verification of unitary local models")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the special fiber of the resolution and compare with Z1 ∪ Z2.
    VerifyComponents(Flags),
    /// Frobenius traces on nearby cycles against the closed forms.
    TraceTable(Flags),
    /// Fit the growth exponent of |M_s(F_q)| in q.
    DimEstimate(Flags),
    /// Fuzz the chart equations over F_p[t]/(t^N).
    ChartFuzz(Flags),
    /// Round trips through the generic fiber over F_p(t).
    GenericRoundtrip(Flags),
}

#[derive(Args)]
struct Flags {
    /// n (trace-table accepts several)
    #[arg(long, num_args = 1..)]
    n: Vec<usize>,
    /// Residue field orders
    #[arg(long, num_args = 1..)]
    q: Vec<u64>,
    /// Signature r s
    #[arg(long, num_args = 2, value_names = ["R", "S"])]
    rs: Vec<usize>,
    #[arg(long)]
    p: Option<u64>,
    /// Truncation order of k[t]/(t^N)
    #[arg(long = "N")]
    truncation: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// naive, stratified or both
    #[arg(long)]
    mode: Option<ModeChoice>,
    /// Off-y samples per trace-table row
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value = "locmod-out")]
    out: PathBuf,
    #[arg(long)]
    workers: Option<usize>,
    /// Maximum Grassmannian candidates for naive enumeration
    #[arg(long)]
    budget: Option<u128>,
    /// Maximum tuples for brute-force quadric counts
    #[arg(long)]
    max_tuples: Option<u128>,
}

fn config(cmd: Cmd) -> locmod::Result<RunConfig> {
    let (command, f) = match cmd {
        Cmd::VerifyComponents(f) => (Command::VerifyComponents, f),
        Cmd::TraceTable(f) => (Command::TraceTable, f),
        Cmd::DimEstimate(f) => (Command::DimEstimate, f),
        Cmd::ChartFuzz(f) => (Command::ChartFuzz, f),
        Cmd::GenericRoundtrip(f) => (Command::GenericRoundtrip, f),
    };
    let mut c = RunConfig::defaults(command);
    c.apply_env()?;
    if !f.n.is_empty() {
        c.n = f.n;
    }
    if !f.q.is_empty() {
        c.q = f.q;
    }
    if let [r, s] = f.rs[..] {
        c.rs = Some((r, s));
    }
    c.p = f.p.unwrap_or(c.p);
    c.truncation = f.truncation.unwrap_or(c.truncation);
    c.trials = f.trials.unwrap_or(c.trials);
    c.seed = f.seed.unwrap_or(c.seed);
    c.mode = f.mode.unwrap_or(c.mode);
    c.samples = f.samples.unwrap_or(c.samples);
    c.max_subspaces = f.budget.unwrap_or(c.max_subspaces);
    c.max_tuples = f.max_tuples.unwrap_or(c.max_tuples);
    c.workers = f.workers.or(c.workers);
    c.out = Some(f.out);
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(cli.command).and_then(|c| {
        let out = report::run(&c)?;
        let dir = c.out.clone().expect("set from flags");
        for path in out.write(&dir)? {
            eprintln!("wrote {}", path.display());
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            for check in &out.report.checks {
                let mark = if check.pass { "pass" } else { "FAIL" };
                println!("{mark}  {}", check.id);
            }
            println!(
                "{}",
                if out.report.passed {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            );
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
