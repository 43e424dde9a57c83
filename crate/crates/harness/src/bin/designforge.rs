use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use designforge::report::{any_refuted, VerificationReport};
use designforge::search::MAX_RANK_DEFAULT;
use designforge::{bound, intersection, lemmas, nonexist, table1, theorem1, theorem2, verify};

#[derive(Parser)]
#[command(name = "designforge", version, about = "Verify flag-transitive design claims on concrete instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Largest C(v, k) the subset scan may visit.
    #[arg(long, global = true, default_value_t = MAX_RANK_DEFAULT)]
    max_rank: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive coset actions with dihedral stabilizers.
    Table1 {
        #[arg(long, value_delimiter = ',', default_values_t = table1::DEFAULT_Q)]
        q: Vec<u64>,
        /// Permit q above the default limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Split and nonsplit torus normalizers in PGL2(q) always intersect.
    Intersect {
        #[arg(long, value_delimiter = ',', default_values_t = intersection::DEFAULT_Q)]
        q: Vec<u64>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Construct the point-primitive designs with dihedral stabilizers.
    Theorem2,
    /// The symmetric 2-(16,6,2) and 2-(15,8,4) examples.
    Theorem1,
    /// Exhaustive searches that must come back empty.
    Nonexist,
    /// Order bound excluding the Suzuki groups.
    Bound,
    /// Property scans over every constructed instance.
    Lemmas,
    /// Check a user-supplied design and group.
    Verify {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
}

fn q_list(qs: Vec<u64>, allow_large: bool) -> Result<Vec<u64>, String> {
    let limit = if allow_large { table1::Q_HARD_LIMIT } else { table1::Q_LIMIT };
    match qs.iter().find(|&&q| q > limit) {
        Some(q) if allow_large => Err(format!("q = {q} exceeds the hard limit {limit}")),
        Some(q) => Err(format!("q = {q} exceeds {limit}; pass --allow-large to permit it")),
        None => Ok(qs),
    }
}

fn run(command: Command, max_rank: u64) -> Result<Vec<VerificationReport>, String> {
    Ok(match command {
        Command::Table1 { q, allow_large } => table1::verify_table1(&q_list(q, allow_large)?),
        Command::Intersect { q, allow_large } => intersection::verify_intersection(&q_list(q, allow_large)?),
        Command::Theorem2 => theorem2::construct_theorem2_designs(max_rank),
        Command::Theorem1 => theorem1::verify_theorem1_examples(),
        Command::Nonexist => nonexist::nonexistence_searches(max_rank),
        Command::Bound => vec![bound::order_bound_scan(&bound::DEFAULT_EXPONENTS)],
        Command::Lemmas => lemmas::lemma_scans(),
        Command::Verify { design, group } => verify::verify_files(&design, &group).map_err(|e| format!("{e:#}"))?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Common { jobs, json_out, max_rank } = cli.common;
    let reports = match designforge_core::par::with_jobs(jobs, || run(cli.command, max_rank)) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("designforge: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
    println!("{text}");
    if let Some(path) = json_out {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("designforge: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if any_refuted(&reports) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
