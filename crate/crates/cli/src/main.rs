//! Command-line front end: exact model counting, weighted MaxSAT, ps-width
//! measurement, interval-ordering tools, and per-cut induced-matching
//! reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse error, 3 invalid
//! decomposition or ordering, 4 refused size guard.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pswsat::decomposition::elements_of;
use pswsat::interval::DEFAULT_SEARCH_LIMIT;
use pswsat::{
    mim_of_decomposition, order_to_decomposition, parse_decomposition, parse_dimacs, ps_width,
    solve, solve_degenerate, verify_interval_ordering, Answer, AutoStrategy, BranchDecomposition,
    Element, Formula, OrderingError, Task,
};

#[derive(Parser)]
#[command(
    name = "pswsat",
    version,
    about = "Exact #SAT and weighted MaxSAT via ps-width"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count satisfying assignments exactly
    Count {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        #[command(flatten)]
        source: DecompSource,
        /// Count over all declared variables, not only the occurring ones
        #[arg(long)]
        all_vars: bool,
        /// Also print per-node statistics
        #[arg(long)]
        verbose: bool,
    },
    /// Maximize the total weight of satisfied clauses
    Maxsat {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        #[command(flatten)]
        source: DecompSource,
        /// Also print per-node statistics
        #[arg(long)]
        verbose: bool,
    },
    /// Measure the ps-width of a given decomposition or ordering
    Psw {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        /// Decomposition file
        #[arg(long, conflicts_with = "order")]
        decomp: Option<PathBuf>,
        /// Interval ordering file
        #[arg(long)]
        order: Option<PathBuf>,
        /// Also print the per-node family sizes
        #[arg(long)]
        verbose: bool,
    },
    /// Interval-ordering tools
    Order {
        #[command(subcommand)]
        command: OrderCommand,
    },
    /// Per-node maximum induced matchings of both cut subformulas
    Mim {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        /// Decomposition file
        #[arg(long)]
        decomp: PathBuf,
    },
}

#[derive(Subcommand)]
enum OrderCommand {
    /// Check an ordering file against the betweenness conditions
    Verify {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        /// Ordering file (whitespace-separated `v<i>`/`c<j>` tokens)
        ordering: PathBuf,
    },
    /// Search exhaustively for an interval ordering
    Find {
        /// DIMACS CNF or WCNF file
        file: PathBuf,
        /// Element limit for the exhaustive search
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
}

#[derive(Args)]
struct DecompSource {
    /// Decomposition file
    #[arg(long, conflicts_with_all = ["order", "auto"])]
    decomp: Option<PathBuf>,
    /// Interval ordering file used as the leaf order
    #[arg(long, conflicts_with = "auto")]
    order: Option<PathBuf>,
    /// Automatic linear decomposition strategy: file-order or greedy-ps
    #[arg(long, value_parser = parse_strategy)]
    auto: Option<AutoStrategy>,
}

fn parse_strategy(s: &str) -> Result<AutoStrategy, String> {
    s.parse()
        .map_err(|_| format!("unknown strategy `{s}`, expected file-order or greedy-ps"))
}

enum CliError {
    Usage(String),
    Parse(String),
    Invalid(String),
    Refused(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Refused(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::Invalid(m)
            | CliError::Refused(m) => m,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))
}

fn load_formula(path: &Path) -> Result<Formula, CliError> {
    let text = read_file(path)?;
    parse_dimacs(&text).map_err(|e| CliError::Parse(format!("{}: {}", path.display(), e)))
}

fn load_ordering(path: &Path) -> Result<Vec<Element>, CliError> {
    let text = read_file(path)?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<Element>().map_err(|_| {
                CliError::Parse(format!(
                    "{}: `{}` is not a v<i> or c<j> token",
                    path.display(),
                    tok
                ))
            })
        })
        .collect()
}

fn ordering_error(e: OrderingError) -> CliError {
    match e {
        OrderingError::TooManyElements { .. } => CliError::Refused(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    }
}

fn load_decomposition(f: &Formula, source: &DecompSource) -> Result<BranchDecomposition, CliError> {
    match (&source.decomp, &source.order, source.auto) {
        (Some(path), None, None) => {
            let text = read_file(path)?;
            parse_decomposition(&text, f)
                .map_err(|e| CliError::Invalid(format!("{}: {}", path.display(), e)))
        }
        (None, Some(path), None) => {
            let order = load_ordering(path)?;
            order_to_decomposition(f, &order).map_err(ordering_error)
        }
        (None, None, auto) => {
            let strategy = auto.unwrap_or(AutoStrategy::GreedyPs);
            pswsat::auto_decomposition(f, strategy).map_err(|e| CliError::Invalid(e.to_string()))
        }
        _ => Err(CliError::Usage(
            "choose exactly one of --decomp, --order, --auto".into(),
        )),
    }
}

fn run_solve(
    file: &Path,
    source: &DecompSource,
    task: Task,
    verbose: bool,
) -> Result<(), CliError> {
    let f = load_formula(file)?;
    // fewer than two elements: no tree exists, answer directly
    let solution = match solve_degenerate(&f, task) {
        Some(solution) => solution,
        None => {
            let d = load_decomposition(&f, source)?;
            solve(&f, &d, task).map_err(|e| CliError::Invalid(e.to_string()))?
        }
    };
    match solution.answer {
        Answer::Count(n) => println!("{}", n),
        Answer::MaxSat { weight, witness } => {
            println!("o {}", weight);
            let lits: Vec<String> = (1..=f.declared_vars())
                .map(|v| match witness.value(v) {
                    Some(true) => format!("{}", v),
                    _ => format!("-{}", v),
                })
                .collect();
            if lits.is_empty() {
                println!("v");
            } else {
                println!("v {}", lits.join(" "));
            }
        }
    }
    if verbose {
        eprintln!("psw\t{}", solution.stats.ps_width);
        for n in &solution.stats.nodes {
            eprintln!(
                "node {}\tinner {}\touter {}\tpairs {}/{}\ttriples {}",
                n.node,
                n.inner_family,
                n.outer_family,
                n.join_pairs,
                n.complement_pairs,
                n.merge_triples
            );
        }
    }
    Ok(())
}

fn run_psw(
    file: &Path,
    decomp: Option<&PathBuf>,
    order: Option<&PathBuf>,
    verbose: bool,
) -> Result<(), CliError> {
    let f = load_formula(file)?;
    let d = match (decomp, order) {
        (Some(path), None) => {
            let text = read_file(path)?;
            parse_decomposition(&text, &f)
                .map_err(|e| CliError::Invalid(format!("{}: {}", path.display(), e)))?
        }
        (None, Some(path)) => {
            let elements = load_ordering(path)?;
            order_to_decomposition(&f, &elements).map_err(ordering_error)?
        }
        _ => {
            return Err(CliError::Usage(
                "psw needs exactly one of --decomp or --order".into(),
            ))
        }
    };
    let (width, report) = ps_width(&f, &d);
    println!("{}", width);
    if verbose {
        for r in &report {
            println!("{}\t{}\t{}", r.node, r.inner_size, r.outer_size);
        }
    }
    Ok(())
}

fn run_order_verify(file: &Path, ordering: &Path) -> Result<(), CliError> {
    let f = load_formula(file)?;
    let order = load_ordering(ordering)?;
    match verify_interval_ordering(&f, &order).map_err(ordering_error)? {
        None => {
            println!("VALID");
            Ok(())
        }
        Some(v) => {
            println!("VIOLATION v{} c{} {}", v.var, v.clause, v.witness);
            Err(CliError::Invalid(format!(
                "betweenness fails for variable v{} and clause c{} (witness {})",
                v.var, v.clause, v.witness
            )))
        }
    }
}

fn run_order_find(file: &Path, limit: usize) -> Result<(), CliError> {
    let f = load_formula(file)?;
    match pswsat::find_interval_ordering(&f, Some(limit)).map_err(ordering_error)? {
        Some(ordering) => {
            let tokens: Vec<String> = ordering.sequence().iter().map(|e| e.to_string()).collect();
            println!("{}", tokens.join(" "));
        }
        None => println!("NONE"),
    }
    Ok(())
}

fn run_mim(file: &Path, decomp: &Path) -> Result<(), CliError> {
    let f = load_formula(file)?;
    let text = read_file(decomp)?;
    let d = parse_decomposition(&text, &f)
        .map_err(|e| CliError::Invalid(format!("{}: {}", decomp.display(), e)))?;
    if elements_of(&f).len() > 24 {
        eprintln!(
            "warning: {} elements; exact induced-matching search may be slow",
            elements_of(&f).len()
        );
    }
    let report = mim_of_decomposition(&f, &d);
    for n in &report.per_node {
        println!("{}\t{}\t{}", n.node, n.inner, n.outer);
    }
    println!("max {}", report.max);
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Count {
            file,
            source,
            all_vars,
            verbose,
        } => run_solve(&file, &source, Task::Count { all_vars }, verbose),
        Command::Maxsat {
            file,
            source,
            verbose,
        } => run_solve(&file, &source, Task::MaxSat, verbose),
        Command::Psw {
            file,
            decomp,
            order,
            verbose,
        } => run_psw(&file, decomp.as_ref(), order.as_ref(), verbose),
        Command::Order { command } => match command {
            OrderCommand::Verify { file, ordering } => run_order_verify(&file, &ordering),
            OrderCommand::Find { file, limit } => run_order_find(&file, limit),
        },
        Command::Mim { file, decomp } => run_mim(&file, &decomp),
    }
}

fn main() -> ExitCode {
    // behave like a unix filter when the downstream pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprint!("{}", e);
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
