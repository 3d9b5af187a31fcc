use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qgroup::expr::{parse_element_with, ExprError};
use qgroup::pbw::{render_term, Element, PbwError, Rules};
use qgroup::repn::{eval_tensor, fundamental_rep, RepMatrix};
use qgroup::ribbon::{u_element, v_element};
use qgroup::rmatrix::r_matrix_with;
use qgroup::suites::{run_suite, Report, SuiteError, SuiteOptions, SUITES};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NO_RULE: u8 = 3;

#[derive(Parser)]
#[command(name = "qgroup", version, about = "Exact computations in U_h(sl_{n+1})")]
struct Cli {
    /// Rank n of sl_{n+1}
    #[arg(long, global = true, default_value_t = 1)]
    rank: usize,
    /// Truncation degree D for series elements
    #[arg(long, global = true, default_value_t = 6)]
    trunc: u32,
    /// Resolve pairs without a listed rule by expanding interval generators
    #[arg(long, global = true)]
    expand: bool,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its PBW normal form
    Straighten { expr: String },
    /// Universal R-matrix truncated at degree D
    Rmatrix {
        /// Evaluate on V (x) V for the fundamental representation V instead
        #[arg(long)]
        rep: bool,
    },
    /// Ribbon elements and their checks
    Ribbon { which: RibbonCmd },
    /// Evaluate an expression in tensor powers of the fundamental representation
    Eval { expr: String },
    /// Run a verification suite and print its JSON report
    Verify {
        suite: String,
        /// Restrict rank-indexed suites to one rank
        #[arg(long)]
        n: Option<usize>,
        /// Seed for randomized cases
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// List the published suites
    Suites,
}

#[derive(Clone, Copy, ValueEnum)]
enum RibbonCmd {
    U,
    V,
    Check,
}

#[derive(Serialize)]
struct TermOut {
    coefficient: String,
    monomial: String,
}

#[derive(Serialize)]
struct ElementOut {
    rank: usize,
    slots: usize,
    trunc: Option<u32>,
    text: String,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct MatrixOut {
    rank: usize,
    dim: usize,
    matrix: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CaseOut {
    case: String,
    status: &'static str,
    note: String,
}

#[derive(Serialize)]
struct ReportOut {
    suite: String,
    cases: usize,
    passed: usize,
    failed: usize,
    details: Vec<CaseOut>,
}

enum Failure {
    Usage(String),
    NoRule(String),
    Runtime(String),
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Algebra(p) => p.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<PbwError> for Failure {
    fn from(e: PbwError) -> Self {
        match e {
            PbwError::NoApplicableRule(_) => Failure::NoRule(e.to_string()),
            PbwError::IndexOutOfRank(..) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn element_out(e: &Element) -> ElementOut {
    ElementOut {
        rank: e.rank(),
        slots: e.slots(),
        trunc: e.trunc(),
        text: e.to_string(),
        terms: e
            .terms()
            .map(|(t, c)| TermOut { coefficient: c.to_string(), monomial: render_term(t, e.rank()) })
            .collect(),
    }
}

fn matrix_out(rank: usize, m: &RepMatrix) -> MatrixOut {
    let dim = m.dim();
    MatrixOut { rank, dim, matrix: (0..dim).map(|i| (0..dim).map(|j| m.get(i, j).to_string()).collect()).collect() }
}

fn report_out(r: &Report) -> ReportOut {
    ReportOut {
        suite: r.suite.clone(),
        cases: r.cases(),
        passed: r.passed(),
        failed: r.failed(),
        details: r
            .details
            .iter()
            .map(|c| CaseOut { case: c.case.clone(), status: if c.pass { "pass" } else { "fail" }, note: c.note.clone() })
            .collect(),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn print_element(cli: &Cli, e: &Element) {
    if cli.json {
        println!("{}", json(&element_out(e)));
    } else {
        println!("{e}");
    }
}

fn print_matrix(cli: &Cli, m: &RepMatrix) {
    if cli.json {
        println!("{}", json(&matrix_out(cli.rank, m)));
    } else {
        print!("{m}");
    }
}

/// Prints the report; true when every case passed.
fn print_report(r: &Report) -> bool {
    println!("{}", json(&report_out(r)));
    r.all_passed()
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if cli.rank == 0 {
        return Err(Failure::Usage("--rank must be at least 1".into()));
    }
    let rules = if cli.expand { Rules::expansion() } else { Rules::default() };
    match &cli.command {
        Command::Straighten { expr } => {
            let e = parse_element_with(expr, cli.rank, 1, &rules)?;
            print_element(cli, &e);
        }
        Command::Rmatrix { rep } => {
            let r = r_matrix_with(cli.rank, cli.trunc, &rules)?;
            if *rep {
                let v = fundamental_rep(cli.rank);
                print_matrix(cli, &eval_tensor(&r, &[&v, &v]));
            } else {
                print_element(cli, &r);
            }
        }
        Command::Ribbon { which } => {
            if cli.rank != 1 {
                return Err(Failure::Usage("ribbon elements are implemented for rank 1".into()));
            }
            match which {
                RibbonCmd::U => print_element(cli, &u_element(cli.trunc)),
                RibbonCmd::V => print_element(cli, &v_element(cli.trunc)),
                RibbonCmd::Check => {
                    let opts = SuiteOptions { trunc: cli.trunc, ..Default::default() };
                    return Ok(print_report(&run_suite("ribbon", &opts)?));
                }
            }
        }
        Command::Eval { expr } => {
            let e = parse_element_with(expr, cli.rank, 1, &rules)?;
            let v = fundamental_rep(cli.rank);
            let reps: Vec<_> = (0..e.slots()).map(|_| &v).collect();
            print_matrix(cli, &eval_tensor(&e, &reps));
        }
        Command::Verify { suite, n, seed } => {
            let opts = SuiteOptions { n: *n, trunc: cli.trunc, seed: *seed };
            return Ok(print_report(&run_suite(suite, &opts)?));
        }
        Command::Suites => {
            for (id, about) in SUITES {
                println!("{id:<18} {about}");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NoRule(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_NO_RULE)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
