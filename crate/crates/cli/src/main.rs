//! `seqcube`: linear complexity, k-error spectra, cube decompositions and
//! cube counts for binary sequences with period `2^n`.

mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use seqcube_core::{Error, Format, PeriodicSequence, SearchBudget};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "seqcube", version, about = "Analyse 2^n-periodic binary sequences")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on the number of error patterns or supports examined.
    #[arg(long, global = true, value_name = "COUNT")]
    budget_patterns: Option<u128>,
    /// Cap on the error-pattern weight.
    #[arg(long, global = true, value_name = "WEIGHT")]
    budget_weight: Option<u32>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "SEQCUBE_THREADS")]
    threads: Option<usize>,
    /// Include wall-clock time in the output. Makes output non-reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

/// One of `--bits`, `--hex` or `--positions`.
#[derive(Args, Clone)]
#[group(skip)]
#[command(group = clap::ArgGroup::new("sequence").required(true).multiple(false))]
pub struct SeqInput {
    /// Period as a 0/1 string; its length must be a power of two.
    #[arg(long, group = "sequence")]
    bits: Option<String>,
    /// Period in hex, 4 positions per digit, first position in the high bit.
    #[arg(long, group = "sequence", requires = "n")]
    hex: Option<String>,
    /// Comma-separated positions of the ones.
    #[arg(long, group = "sequence", requires = "n", allow_hyphen_values = true)]
    positions: Option<String>,
    /// Period exponent for `--hex` and `--positions`.
    #[arg(long)]
    n: Option<u32>,
}

impl SeqInput {
    fn parse(&self) -> seqcube_core::Result<(PeriodicSequence, Value)> {
        let (format, text) = match (&self.bits, &self.hex, &self.positions) {
            (Some(t), _, _) => (Format::Bits, t),
            (_, Some(t), _) => (Format::Hex, t),
            (_, _, Some(t)) => (Format::Positions, t),
            _ => unreachable!("clap enforces one input form"),
        };
        let s = PeriodicSequence::parse(text, format, self.n)?;
        let name = match format {
            Format::Bits => "bits",
            Format::Hex => "hex",
            Format::Positions => "positions",
        };
        let echo = json!({ "format": name, "text": text, "n": s.exponent(), "weight": s.hamming_weight() });
        Ok((s, echo))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Linear complexity, cross-checked against the polynomial method.
    Lc {
        #[command(flatten)]
        input: SeqInput,
    },
    /// k-error linear complexity by exhaustive search.
    Klc {
        #[command(flatten)]
        input: SeqInput,
        #[arg(long)]
        k: usize,
    },
    /// Smallest k at which the k-error linear complexity drops.
    Kmin {
        #[command(flatten)]
        input: SeqInput,
    },
    /// Critical points of the k-error linear complexity.
    Spectrum {
        #[command(flatten)]
        input: SeqInput,
    },
    /// Standard cube decomposition, ascending by linear complexity.
    Decompose {
        #[command(flatten)]
        input: SeqInput,
    },
    /// Whether the support is a single cube.
    Recognize {
        #[command(flatten)]
        input: SeqInput,
    },
    /// Builds the cube anchor + sum of offsets[t] * 2^edges[t].
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<u32>,
        #[arg(long, default_value_t = 0)]
        anchor: usize,
        /// Odd multipliers, one per edge (default: all 1).
        #[arg(long, value_delimiter = ',')]
        offsets: Vec<u64>,
    },
    /// Largest k-error linear complexity over all sequences of period 2^n.
    Maxklc {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    /// Number of sequences made of 1 to 3 cubes with the given edges.
    Census {
        #[arg(long)]
        n: u32,
        /// Comma-separated edge exponents of one cube; repeat for each cube.
        #[arg(long, action = clap::ArgAction::Append, required = true)]
        edges: Vec<String>,
        /// Also count by enumerating every support of the total weight.
        #[arg(long)]
        verify: bool,
    },
    /// Compares the four-element closed form with the true complexity.
    QuadAudit {
        #[arg(long)]
        n: u32,
    },
    /// Compares predicted critical points with exhaustive spectra.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "prop32_unique")]
        filter: String,
        /// Visit only even weights up to this cap.
        #[arg(long)]
        max_weight: Option<usize>,
    },
}

/// Result of a command: the JSON payload, its text rendering, and whether the
/// run should end with the budget exit code despite producing output.
pub struct Report {
    pub input: Value,
    pub result: Value,
    pub text: Vec<String>,
    pub patterns_examined: Option<u128>,
    pub incomplete: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::BudgetExceeded { .. } => 4,
        Error::Invariant(_) => 5,
        _ => 3,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lc { .. } => "lc",
        Command::Klc { .. } => "klc",
        Command::Kmin { .. } => "kmin",
        Command::Spectrum { .. } => "spectrum",
        Command::Decompose { .. } => "decompose",
        Command::Recognize { .. } => "recognize",
        Command::Construct { .. } => "construct",
        Command::Maxklc { .. } => "maxklc",
        Command::Census { .. } => "census",
        Command::QuadAudit { .. } => "quad-audit",
        Command::Scan { .. } => "scan",
    }
}

fn run(cli: &Cli, budget: &SearchBudget) -> seqcube_core::Result<Report> {
    match &cli.command {
        Command::Lc { input } => commands::lc(input.parse()?),
        Command::Klc { input, k } => commands::klc(input.parse()?, *k, budget),
        Command::Kmin { input } => commands::kmin(input.parse()?),
        Command::Spectrum { input } => commands::spectrum(input.parse()?, budget),
        Command::Decompose { input } => commands::decompose(input.parse()?),
        Command::Recognize { input } => commands::recognize(input.parse()?),
        Command::Construct { n, edges, anchor, offsets } => commands::construct(*n, edges, *anchor, offsets),
        Command::Maxklc { n, k } => commands::maxklc(*n, *k),
        Command::Census { n, edges, verify } => commands::census(*n, edges, *verify, budget),
        Command::QuadAudit { n } => commands::quad_audit(*n),
        Command::Scan { n, filter, max_weight } => commands::scan(*n, filter, *max_weight, budget),
    }
}

/// Prints `message` as one line on stderr, dropping clap's usage footer.
fn fail(code: u8, message: &str) -> ExitCode {
    let body: Vec<&str> = message
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .filter(|l| !l.is_empty())
        .collect();
    let line = body.join(" ");
    eprintln!("seqcube: {}", line.trim_start_matches("error: "));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(2, &e.to_string()),
    };
    let defaults = SearchBudget::default();
    let budget = match SearchBudget::new(
        cli.budget_patterns.unwrap_or(defaults.max_patterns),
        cli.budget_weight.unwrap_or(defaults.max_weight),
    ) {
        Ok(b) => b,
        Err(e) => return fail(exit_code(&e), &e.to_string()),
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return fail(3, "--threads must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            return fail(3, &e.to_string());
        }
    }

    let start = Instant::now();
    let report = match run(&cli, &budget) {
        Ok(r) => r,
        Err(e) => return fail(exit_code(&e), &e.to_string()),
    };
    let elapsed = start.elapsed();
    let name = command_name(&cli.command);

    let mut out = String::new();
    if cli.json {
        let mut budget_doc = json!({
            "max_patterns": budget.max_patterns.to_string(),
            "max_weight": budget.max_weight,
        });
        if let Some(p) = report.patterns_examined {
            budget_doc["patterns_examined"] = json!(p.to_string());
        }
        let mut doc = json!({
            "command": name,
            "input": report.input,
            "result": report.result,
            "budget": budget_doc,
        });
        if cli.timing {
            doc["timing_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
        }
        out.push_str(&serde_json::to_string_pretty(&doc).expect("document serialises"));
        out.push('\n');
    } else {
        for line in &report.text {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(p) = report.patterns_examined {
            out.push_str(&format!("patterns examined: {p}\n"));
        }
        if cli.timing {
            out.push_str(&format!("time: {:.3} ms\n", elapsed.as_secs_f64() * 1000.0));
        }
    }
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    if report.incomplete {
        eprintln!("seqcube: incomplete: some sequences exceeded the search budget");
        return ExitCode::from(4);
    }
    ExitCode::SUCCESS
}
