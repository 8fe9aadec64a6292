//! `twobridge` command-line tool.
//!
//! Exit codes: 0 ok, 1 a verify suite failed, 2 bad input or usage,
//! 3 improper link, 4 resource limit, 5 I/O.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twobridge::bounds::{all_bounds, BoundFamily};
use twobridge::diagram::{svg, SvgOptions};
use twobridge::search::SearchStatus;
use twobridge::sweep::{self, Budget, Suite};
use twobridge::{ConwayWord, Orientation, PlanarDiagram};

mod report;

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IMPROPER: u8 = 3;
const EXIT_RESOURCE: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "twobridge", version, about = "Region crossing change on 2-bridge knots and links")]
struct Cli {
    /// Run on a single thread so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Command {
    /// Classification, bounds and optionally exact search and Arf invariants.
    Info {
        /// Conway word, e.g. "C(8,5,3)" or "8 5 3".
        word: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        arf: bool,
        #[arg(long)]
        json: bool,
        /// Orientation of the second component for links.
        #[arg(long, value_enum, default_value = "a")]
        orientation: OrientationArg,
        /// Largest selection tried by the search.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Draw the standard diagram as SVG.
    Render {
        word: String,
        /// Output file; standard output when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Shade the certificate of a bound family, e.g. even-horizontal.
        #[arg(long)]
        highlight: Option<BoundFamily>,
        #[arg(long)]
        no_labels: bool,
    },
    /// Run a verification sweep.
    Verify {
        suite: Suite,
        #[arg(long)]
        max_crossings: Option<u32>,
        #[arg(long)]
        param_max: Option<u32>,
    },
}

fn parse_word(text: &str) -> Result<ConwayWord, ExitCode> {
    text.parse().map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_INPUT)
    })
}

fn write_out(path: Option<&PathBuf>, body: &str) -> Result<(), ExitCode> {
    let res = match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().write_all(body.as_bytes()),
    };
    res.map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_IO)
    })
}

fn info(
    text: &str,
    opts: report::InfoOptions,
    json: bool,
) -> Result<ExitCode, ExitCode> {
    let w = parse_word(text)?;
    let r = report::build(&w, &opts).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_RESOURCE)
    })?;
    let body = if json {
        serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
    } else {
        report::render_text(&r)
    };
    write_out(None, &body)?;
    if !r.classification.admits_region_unknotting() {
        eprintln!("{w} is an improper link; no region selection unknots it");
        return Ok(ExitCode::from(EXIT_IMPROPER));
    }
    if r.exact.as_ref().is_some_and(|e| e.result.status == SearchStatus::LimitExceeded) {
        eprintln!("search stopped at the size limit without finding a certificate");
        return Ok(ExitCode::from(EXIT_RESOURCE));
    }
    Ok(ExitCode::SUCCESS)
}

fn render(text: &str, out: Option<PathBuf>, highlight: Option<BoundFamily>, labels: bool) -> Result<ExitCode, ExitCode> {
    let w = parse_word(text)?;
    let highlight = match highlight {
        None => None,
        Some(family) => {
            let found = all_bounds(&w).unwrap_or_default().into_iter().find(|r| r.family == family);
            match found {
                Some(r) => Some(r.certificate),
                None => {
                    eprintln!("error: no {family} bound applies to {w}");
                    return Err(ExitCode::from(EXIT_INPUT));
                }
            }
        }
    };
    let d = PlanarDiagram::from_word(&w);
    let options = SvgOptions { highlight, title: Some(w.to_string()), show_labels: labels };
    write_out(out.as_ref(), &svg(&d, &options))?;
    Ok(ExitCode::SUCCESS)
}

fn verify(suite: Suite, max_crossings: Option<u32>, param_max: Option<u32>) -> Result<ExitCode, ExitCode> {
    let default = suite.default_budget();
    let budget = Budget {
        max_crossings: max_crossings.unwrap_or(default.max_crossings),
        param_max: param_max.unwrap_or(default.param_max),
    };
    let r = sweep::run(suite, budget).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_RESOURCE)
    })?;
    let mut body = String::new();
    for f in &r.failures {
        body.push_str(f);
        body.push('\n');
    }
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    body.push_str(&format!("{suite}: {verdict}, {} checked, {} failures\n", r.checked, r.failures.len()));
    write_out(None, &body)?;
    Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.deterministic {
        rayon::ThreadPoolBuilder::new().num_threads(1).build_global().expect("pool not yet built");
    }
    let result = match cli.command {
        Command::Info { word, exact, arf, json, orientation, max_size } => {
            let orientation = match orientation {
                OrientationArg::A => Orientation::A,
                OrientationArg::B => Orientation::B,
            };
            let opts = report::InfoOptions { exact, arf, orientation, max_size, timings: !cli.deterministic };
            info(&word, opts, json)
        }
        Command::Render { word, out, highlight, no_labels } => render(&word, out, highlight, !no_labels),
        Command::Verify { suite, max_crossings, param_max } => verify(suite, max_crossings, param_max),
    };
    result.unwrap_or_else(|code| code)
}
