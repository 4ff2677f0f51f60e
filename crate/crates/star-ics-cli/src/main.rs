//! Command-line surface: build trees and orientations, dump distributions,
//! and run the verification battery against the BFS oracle.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use star_ics::oracle::{self, VerificationReport};
use star_ics::{dist, export, lambda, threading, Error};

#[derive(Parser)]
#[command(
    name = "star-ics",
    version,
    about = "Class trees, threaded orientations and exact distance distributions of star graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build the class tree for ST_n
    Tree {
        #[arg(long)]
        n: usize,
        /// text | json | dot
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Emit the axiom-generated tree instead of the pruned one
        #[arg(long)]
        unpruned: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the pruning scan and print its ledger
    Ledger {
        #[arg(long)]
        n: usize,
        /// text | json
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Build the threaded orientation of ST_n
    Gamma {
        #[arg(long)]
        n: usize,
        /// dot | json
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Exact weight distribution (classes and vertices per weight)
    Dist {
        #[arg(long)]
        n: usize,
        /// csv | json
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Weight distribution of the efficient dominating set C_i
    Eset {
        #[arg(long)]
        n: usize,
        /// The fixed first symbol naming the set
        #[arg(long)]
        i: usize,
        /// csv | json
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Weight table: mhdp rows over weight columns
    Table {
        #[arg(long)]
        n: usize,
        /// text | json
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Diameter of ST_n
    Diameter {
        #[arg(long)]
        n: usize,
    },
    /// Check the tree machinery against the BFS oracle
    Verify {
        /// Largest n to verify (default 8, or 9 under --deep)
        #[arg(long)]
        max_n: Option<usize>,
        /// Escalate the BFS comparisons to n = 9
        #[arg(long)]
        deep: bool,
        /// text | json
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ResourceGuard(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit(output: Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => fs::write(&path, content)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn bad_format(cmd: &str, allowed: &str) -> Error {
    Error::InvalidArgument(format!("{cmd} supports --format {allowed}"))
}

fn env_threads() -> usize {
    std::env::var("STAR_ICS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Tree {
            n,
            format,
            unpruned,
            output,
        } => {
            let tree = if unpruned {
                lambda::generate_unpruned(n)?
            } else {
                lambda::generate_pruned(n)?
            };
            let content = match format {
                Format::Json => export::tree_to_json(&tree),
                Format::Dot => export::tree_to_dot(&tree),
                Format::Text => tree_listing(&tree),
                Format::Csv => return Err(bad_format("tree", "text|json|dot")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ledger { n, format, output } => {
            let rows = lambda::ledger(n)?;
            let content = match format {
                Format::Text => export::ledger_to_text(&rows),
                Format::Json => export::ledger_to_json(&rows),
                _ => return Err(bad_format("ledger", "text|json")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { n, format, output } => {
            let gamma = threading::build_gamma(n)?;
            let content = match format {
                Format::Dot => export::gamma_to_dot(&gamma),
                Format::Json => export::gamma_to_json(&gamma),
                _ => return Err(bad_format("gamma", "dot|json")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dist { n, format, output } => {
            let classes = dist::class_weight_distribution(n)?;
            let vertices = dist::vertex_weight_distribution_with_threads(n, env_threads())?;
            let content = match format {
                Format::Csv => export::dist_to_csv(&classes, &vertices),
                Format::Json => export::dist_to_json(&classes, &vertices),
                _ => return Err(bad_format("dist", "csv|json")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eset {
            n,
            i,
            format,
            output,
        } => {
            let e = dist::eset_distribution(n, i)?;
            let content = match format {
                Format::Csv => export::eset_to_csv(&e),
                Format::Json => export::eset_to_json(&e),
                _ => return Err(bad_format("eset", "csv|json")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { n, format, output } => {
            let table = lambda::table_t(n)?;
            let content = match format {
                Format::Text => export::table_to_text(&table),
                Format::Json => export::table_to_json(&table),
                _ => return Err(bad_format("table", "text|json")),
            };
            emit(output, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Diameter { n } => {
            println!("{}", dist::diameter(n)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_n,
            deep,
            format,
            output,
        } => {
            let cap = if deep { 9 } else { 8 };
            let max_n = max_n.unwrap_or(cap);
            if max_n < 2 {
                return Err(Error::InvalidArgument(format!(
                    "--max-n must be at least 2, got {max_n}"
                )));
            }
            if max_n > cap {
                return Err(Error::ResourceGuard(format!(
                    "verify caps at n={cap}{}; asked for {max_n}",
                    if deep { "" } else { " (pass --deep for 9)" }
                )));
            }
            let report = run_verification(max_n)?;
            let content = match format {
                Format::Text => report_to_text(&report),
                Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
                _ => return Err(bad_format("verify", "text|json")),
            };
            emit(output, &content)?;
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn tree_listing(tree: &lambda::LambdaTree) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let kind = if tree.is_pruned() {
        "pruned"
    } else {
        "unpruned"
    };
    let _ = writeln!(
        out,
        "{} tree for ST_{}: {} nodes, {} arcs",
        kind,
        tree.n(),
        tree.node_count(),
        tree.arcs().len()
    );
    for node in tree.nodes() {
        let _ = writeln!(
            out,
            "{:<10} w={:<3} ell={:<3} m={:<3} a={:<2} b={:<2} c={:<12} {}",
            node.id.compact(),
            node.weight,
            node.ell,
            node.mult,
            node.a,
            node.b,
            node.card,
            node.sigma.ledger_shorthand()
        );
    }
    out
}

fn run_verification(max_n: usize) -> Result<VerificationReport, Error> {
    let mut report = VerificationReport::default();

    for n in 2..=max_n {
        let bfs = oracle::bfs(n)?;
        let vertices = dist::vertex_weight_distribution(n)?;
        let histogram_matches = bfs.histogram.len() == vertices.counts().len()
            && bfs
                .histogram
                .iter()
                .zip(vertices.counts())
                .all(|(h, c)| &num_bigint::BigUint::from(*h) == c);
        report.push(
            format!("bfs_histogram_n{n}"),
            histogram_matches,
            "BFS distance histogram equals the tree distribution",
        );
        report.push(
            format!("diameter_n{n}"),
            bfs.max_distance == dist::diameter(n)?,
            format!(
                "max BFS distance {} equals the closed form",
                bfs.max_distance
            ),
        );

        let tree = lambda::generate_pruned(n)?;
        let classes = oracle::class_histogram(n)?;
        let mut classes_ok = classes.len() == tree.node_count();
        for (key, info) in &classes {
            let node = tree.node(&key.index_string());
            match node {
                Some(node) => {
                    if node.weight != info.distance
                        || node.card != num_bigint::BigUint::from(info.size)
                    {
                        classes_ok = false;
                    }
                }
                None => classes_ok = false,
            }
        }
        report.push(
            format!("classes_n{n}"),
            classes_ok,
            format!(
                "{} oracle classes match the tree's (weight, cardinality) pairs",
                classes.len()
            ),
        );

        if n >= 3 {
            let mut esets_ok = true;
            let filtered = oracle::eset_histograms(n)?;
            for i in 1..=n {
                let formula = dist::eset_distribution(n, i)?;
                let same = formula.counts().len() == filtered[i - 1].len()
                    && formula
                        .counts()
                        .iter()
                        .zip(&filtered[i - 1])
                        .all(|(c, h)| c == &num_bigint::BigUint::from(*h));
                if !same {
                    esets_ok = false;
                }
            }
            report.push(
                format!("esets_n{n}"),
                esets_ok,
                "every dominating-set distribution matches the oracle filter",
            );
        }

        if n <= 8 {
            let gamma = threading::build_gamma(n)?;
            let mut quotient = oracle::verify_quotient(n, &gamma)?;
            for check in &mut quotient.checks {
                check.name = format!("{}_n{n}", check.name);
            }
            report.merge(quotient);
        }
    }

    // no BFS involved: closing each thread tail's representative must land
    // in the thread head's class
    report.merge(oracle::thread_spot_check(&threading::build_gamma(9)?));

    // closed-form experiment: the per-length counting formulas diverge from
    // enumeration; document rather than assert
    let rows = dist::closed_form_comparison(12, 4);
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    let pinned = rows
        .iter()
        .find(|r| r.omega == 6 && r.k == 2)
        .map(|r| (r.closed.to_string(), r.enumerated.to_string()));
    report.push(
        "closed_form_divergence_documented",
        pinned == Some(("27".into(), "4".into())) && mismatches > 0,
        format!(
            "closed form vs enumeration over a 12x4 grid: {mismatches} rows diverge \
             (weight 6, length 2: 27 vs 4); enumeration is ground truth"
        ),
    );
    for row in rows.iter().filter(|r| !r.matches).take(5) {
        report.diagnostics.push(format!(
            "closed-form divergence at (omega={}, k={}): closed {} vs enumerated {}",
            row.omega, row.k, row.closed, row.enumerated
        ));
    }
    let restricted = dist::restricted_form_comparison(9)?;
    let agreeing = restricted.iter().filter(|r| r.matches).count();
    report.diagnostics.push(format!(
        "subtraction form vs bounded enumeration at n=9: {agreeing}/{} rows agree \
         (logged only)",
        restricted.len()
    ));
    Ok(report)
}

fn report_to_text(report: &VerificationReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    for check in &report.checks {
        let _ = writeln!(
            out,
            "{} {:<28} {}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.details
        );
    }
    for note in &report.diagnostics {
        let _ = writeln!(out, "note: {note}");
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "{} checks, {} failed", report.checks.len(), failed);
    out
}
