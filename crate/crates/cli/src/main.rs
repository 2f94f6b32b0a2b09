//! `hdisc`: command-line front end for discrepancy thresholds of perfect
//! `H`-factors.
//!
//! Every subcommand writes one JSON document (or a short text summary with
//! `--summary`). Exit codes: 0 success, 1 I/O failure, 2 malformed input,
//! 3 violated precondition or refused construction, 4 LP and oracle
//! disagree.

mod summary;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hdisc_core::graph::{parse_colored_edge_list, parse_edge_list, write_colored_edge_list};
use hdisc_core::oracle::{
    cross_check_template, discrepancy_multiset, verify_factor, DEFAULT_BUDGET,
};
use hdisc_core::template::{delta0, frame_catalog, is_template, FrameSpec};
use hdisc_core::threshold::delta_star;
use hdisc_core::witness::{
    blowup, build_h_star, lower_bound_construction, template_witness, BlowupSpec, ExplicitFactor,
    LowerBoundCase, Recipe,
};
use hdisc_core::{ColoredGraph, Error, Graph, Rational};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hdisc", version, about = "Exact discrepancy thresholds for perfect H-factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "summary")]
    json: bool,
    /// Emit a short human-readable summary instead of JSON.
    #[arg(long, global = true)]
    summary: bool,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge list of H (`.el`).
    #[arg(short = 'i', long = "input", visible_alias = "h", value_name = "PATH")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Threshold δ*(H) with chromatic parameters and the deciding case.
    Analyze(GraphArg),
    /// δ₀(H), its witness and the non-template colorings of K_r.
    Delta0(GraphArg),
    /// Decide whether a frame is a template for H.
    Template {
        #[command(flatten)]
        h: GraphArg,
        /// Frame, e.g. `butterfly:3`, `star:3,+`, `kr:3,5`, `clique_pair:3,2,+++--`.
        #[arg(long)]
        frame: FrameSpec,
        /// Also search blowups up to this order with the brute-force oracle.
        #[arg(long, value_name = "N")]
        cross_check: Option<usize>,
    },
    /// Two perfect factors of one blowup with different discrepancies.
    Witness {
        #[command(flatten)]
        h: GraphArg,
        #[arg(long)]
        frame: FrameSpec,
        /// One of components, shared-facet, degree-split, unbalanced,
        /// non-uniform, c4-violation, structured.
        #[arg(long)]
        recipe: Recipe,
    },
    /// A colored host certifying a lower bound on δ*(H).
    Lowerbound {
        #[command(flatten)]
        h: GraphArg,
        /// e.g. `regular-star`, `butterfly:3`, `circulant:5`, `structured-triangle`.
        #[arg(long = "case")]
        case: LowerBoundCase,
        /// Scale of the construction.
        #[arg(short, long)]
        m: usize,
        /// Also emit the host as a colored edge list at this path.
        #[arg(long, value_name = "PATH")]
        host_out: Option<PathBuf>,
    },
    /// The auxiliary complete r-partite graph H*(H, η).
    Hstar {
        #[command(flatten)]
        h: GraphArg,
        /// η in (0, 1], as `P/Q`.
        #[arg(long)]
        eta: Rational,
    },
    /// Expand a blowup of a frame into a colored edge list.
    Blowup {
        #[arg(long)]
        frame: FrameSpec,
        /// Cluster sizes `a,b,c,…` in frame vertex order.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Brute-force checks on explicit hosts.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Check that a factor is perfect and report its discrepancy.
    Verify {
        #[command(flatten)]
        h: GraphArg,
        /// Colored edge list of the host (`.cel`).
        #[arg(long)]
        host: PathBuf,
        /// JSON factor `{"copies": [[...], ...]}`.
        #[arg(long)]
        factor: PathBuf,
    },
    /// Discrepancies of all perfect factors of a host.
    Enumerate {
        #[command(flatten)]
        h: GraphArg,
        #[arg(long)]
        host: PathBuf,
        /// Search-node budget; the report is marked truncated beyond it.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// Failures of the driver: library errors keep their category.
enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Lib(Error::Parse { .. }) => 2,
            Failure::Lib(Error::Contract(_) | Error::Structural(_) | Error::Refused(_)) => 3,
            Failure::Lib(Error::Contradiction(_)) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(arg: &GraphArg) -> Result<Graph, Failure> {
    Ok(parse_edge_list(&read(&arg.input)?)?)
}

fn read_host(path: &Path) -> Result<ColoredGraph, Failure> {
    Ok(parse_colored_edge_list(&read(path)?)?)
}

fn read_factor(path: &Path) -> Result<ExplicitFactor, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| {
        let line = e.line();
        Failure::Lib(hdisc_core::Error::Parse {
            line,
            msg: format!("{}: {e}", path.display()),
        })
    })
}

/// A rendered report: JSON always, with an optional text summary.
struct Report {
    json: String,
    summary: String,
}

fn report<T: Serialize>(value: &T, summary: String) -> Report {
    let mut json = serde_json::to_string_pretty(value).expect("reports serialize");
    json.push('\n');
    Report { json, summary }
}

fn run(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Analyze(h) => {
            let h = read_graph(h)?;
            let rep = delta_star(&h)?;
            Ok(report(&rep, summary::threshold(&h, &rep)))
        }
        Command::Delta0(h) => {
            let h = read_graph(h)?;
            let res = delta0(&h)?;
            Ok(report(&res, summary::delta0(&res)))
        }
        Command::Template { h, frame, cross_check } => {
            let h = read_graph(h)?;
            let f = frame_catalog(frame)?;
            match cross_check {
                Some(max_total) => {
                    let x = cross_check_template(&f, &h, *max_total)?;
                    let text = summary::cross_check(frame, &x);
                    Ok(report(&x, text))
                }
                None => {
                    let d = is_template(&f, &h)?;
                    Ok(report(&d, summary::template(frame, &d)))
                }
            }
        }
        Command::Witness { h, frame, recipe } => {
            let h = read_graph(h)?;
            let w = template_witness(*recipe, &h, &frame_catalog(frame)?)?;
            if !w.verify(&h)? {
                return Err(Error::Contradiction(format!("{recipe} witness failed verification")).into());
            }
            Ok(report(&w, summary::witness(&w)))
        }
        Command::Lowerbound { h, case, m, host_out } => {
            let h = read_graph(h)?;
            let con = lower_bound_construction(&h, *case, *m)?;
            if let Some(path) = host_out {
                write(Some(path), &write_colored_edge_list(&con.colored_graph))?;
            }
            Ok(report(&con, summary::lower_bound(&con)))
        }
        Command::Hstar { h, eta } => {
            let h = read_graph(h)?;
            let res = build_h_star(&h, eta)?;
            Ok(report(&res, summary::h_star(&res)))
        }
        Command::Blowup { frame, sizes } => {
            let spec = BlowupSpec::new(frame_catalog(frame)?, sizes.clone())?;
            let text = write_colored_edge_list(&blowup(&spec)?);
            Ok(Report {
                json: text.clone(),
                summary: text,
            })
        }
        Command::Oracle(OracleCommand::Verify { h, host, factor }) => {
            let h = read_graph(h)?;
            let host = read_host(host)?;
            let f = read_factor(factor)?;
            let check = verify_factor(&h, &host, &f);
            Ok(report(&check, summary::factor_check(&check)))
        }
        Command::Oracle(OracleCommand::Enumerate { h, host, budget }) => {
            let h = read_graph(h)?;
            let host = read_host(host)?;
            let s = discrepancy_multiset(&h, &host, *budget)?;
            Ok(report(&s, summary::multiset(&s)))
        }
    }
}

fn write(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Cap the worker pool when `HDISC_THREADS` is set.
fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("HDISC_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure::Lib(Error::Parse { line: 0, msg: format!("HDISC_THREADS={v:?} is not a count") }))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| {
        let rep = run(&cli.command)?;
        let text = if cli.output.summary { &rep.summary } else { &rep.json };
        write(cli.output.output.as_ref(), text)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hdisc: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
