//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O,
//! 4 overflow or capacity, 5 ledger mismatch.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use revbcd_core::adders::{AdderKind, DecimalAdder, Design};
use revbcd_core::bcd::DigitVector;
use revbcd_core::cost::{Metric, TABLE_SIZES};
use revbcd_core::metrics::{metric_decomposition, structural_metrics};
use revbcd_core::sim::{self, BitState};
use revbcd_core::{BcdError, LedgerError, Netlist};

use crate::batch::par_sum_ledger;
use crate::ledger_csv::{ingest_csv, IngestConfig, IngestError, SignPolicy};
use crate::netlist_file::{read_netlist, to_json, write_netlist, FormatError};
use crate::report::{self, TableFormat};
use crate::synth::{synthetic_csv, SynthConfig};
use crate::verify::{self, Scope};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_OVERFLOW: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "revbcd",
    version,
    about = "Reversible BCD adders: build, simulate, verify and compare"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a design and write its netlist.
    Build(BuildArgs),
    /// Add two decimal numbers on a simulated adder.
    Simulate(SimulateArgs),
    /// Run self-checks.
    Verify(VerifyArgs),
    /// Print structural metrics of a design or netlist file.
    Metrics(MetricsArgs),
    /// Cost comparison tables against the published designs.
    Compare(CompareArgs),
    /// Pareto front of (quantum cost, delay) per digit size.
    Pareto(ParetoArgs),
    /// Sum a CSV ledger per group through a simulated adder.
    Ledger(LedgerArgs),
    /// Write a synthetic transaction CSV.
    SynthLedger(SynthArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Design to build (rca4, scl, correction, pdfa, skip-gen, skip-block, dec-rca, dec-csk).
    #[arg(long, conflicts_with = "netlist")]
    pub design: Option<String>,
    /// Digit count for multi-digit designs.
    #[arg(long)]
    pub digits: Option<usize>,
    /// Netlist JSON file instead of a built-in design.
    #[arg(long)]
    pub netlist: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub design: String,
    #[arg(long, default_value_t = 1)]
    pub digits: usize,
    /// Output file; without it the netlist goes to stdout and metrics to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, required_unless_present = "raw_bits")]
    pub a: Option<String>,
    #[arg(long, required_unless_present = "raw_bits")]
    pub b: Option<String>,
    #[arg(long)]
    pub cin: bool,
    /// Primary-input bits in line order (`0`/`1`), bypassing decimal operands.
    #[arg(long, conflicts_with_all = ["a", "b", "cin"])]
    pub raw_bits: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub scope: String,
    #[arg(long, env = "REVBCD_SEED", default_value_t = 7)]
    pub seed: u64,
    /// Random vectors per digit size.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub source: Source,
    /// Include the per-stage breakdown.
    #[arg(long)]
    pub stages: bool,
    #[arg(long, default_value = "md")]
    pub format: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricChoice {
    Qc,
    Delay,
    Both,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value_t = MetricChoice::Both)]
    pub metric: MetricChoice,
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_SIZES)]
    pub digits: Vec<u64>,
    #[arg(long, default_value = "md")]
    pub format: String,
    /// Also list structural metrics of the built adders against their formulas.
    #[arg(long)]
    pub structural: bool,
}

#[derive(Args, Debug)]
pub struct ParetoArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [16u64, 32, 64])]
    pub digits: Vec<u64>,
    /// Directory for one `pareto-N.svg` per size.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LedgerArgs {
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, default_value = "user")]
    pub group_col: String,
    #[arg(long, default_value = "amount")]
    pub amount_col: String,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
    #[arg(long, default_value = "dec-csk")]
    pub design: String,
    #[arg(long, default_value_t = 16)]
    pub width: usize,
    /// debit-magnitude, skip-negative or reject-negative.
    #[arg(long, default_value = "debit-magnitude")]
    pub sign: String,
    /// Skip malformed rows instead of aborting.
    #[arg(long)]
    pub lenient: bool,
    #[arg(long, default_value = "md")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 2000)]
    pub rows: usize,
    #[arg(long, default_value_t = 820)]
    pub groups: usize,
    #[arg(long, env = "REVBCD_SEED", default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new(EXIT_USAGE, message)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let code = if matches!(e, FormatError::Io { .. }) {
            EXIT_IO
        } else {
            EXIT_USAGE
        };
        CliError::new(code, e.to_string())
    }
}

impl From<BcdError> for CliError {
    fn from(e: BcdError) -> Self {
        let code = match e {
            BcdError::Capacity { .. } => EXIT_OVERFLOW,
            _ => EXIT_USAGE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::new(EXIT_IO, e.to_string())
    }
}

type Outcome = Result<u8, CliError>;

fn table_format(s: &str) -> Result<TableFormat, CliError> {
    s.parse().map_err(CliError::usage)
}

fn adder_kind(s: &str) -> Result<AdderKind, CliError> {
    match s {
        "dec-rca" | "pdfa" => Ok(AdderKind::DecRca),
        "dec-csk" => Ok(AdderKind::DecCsk),
        _ => Err(CliError::usage(format!(
            "`{s}` is not a multi-digit adder (dec-rca, dec-csk)"
        ))),
    }
}

fn build_design(name: &str, digits: usize) -> Result<Netlist, CliError> {
    let design: Design = name.parse().map_err(CliError::usage)?;
    if design.is_multi_digit() && digits == 0 {
        return Err(CliError::usage("--digits must be at least 1"));
    }
    design.build(digits).map_err(|e| CliError::usage(e.to_string()))
}

fn load(source: &Source, default_digits: usize) -> Result<Netlist, CliError> {
    match (&source.design, &source.netlist) {
        (_, Some(path)) => Ok(read_netlist(path)?),
        (Some(d), None) => build_design(d, source.digits.unwrap_or(default_digits)),
        (None, None) => Err(CliError::usage("give --design or --netlist")),
    }
}

/// Parses arguments and runs; the process exit code is returned.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    match cli.command {
        Command::Build(a) => build(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Verify(a) => verify_cmd(a, out),
        Command::Metrics(a) => metrics(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Pareto(a) => pareto(a, out),
        Command::Ledger(a) => ledger(a, out),
        Command::SynthLedger(a) => synth(a, out),
    }
}

fn build(args: BuildArgs, out: &mut dyn Write) -> Outcome {
    let netlist = build_design(&args.design, args.digits)?;
    let m = structural_metrics(&netlist).map_err(|e| CliError::usage(e.to_string()))?;
    match &args.out {
        Some(path) => {
            write_netlist(path, &netlist)?;
            writeln!(out, "{}", report::metrics_line(&m))?;
        }
        None => {
            out.write_all(to_json(&netlist).as_bytes())?;
            eprintln!("{}", report::metrics_line(&m));
        }
    }
    Ok(0)
}

fn bit_string(state: &BitState) -> String {
    state.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Outcome {
    if let Some(bits) = &args.raw_bits {
        let netlist = load(&args.source, 1)?;
        return simulate_raw(&netlist, bits, out);
    }
    let (a, b) = (args.a.as_deref().unwrap_or("0"), args.b.as_deref().unwrap_or("0"));
    let adder = match (&args.source.design, &args.source.netlist) {
        (_, Some(path)) => DecimalAdder::from_netlist(read_netlist(path)?)
            .ok_or_else(|| CliError::usage("netlist has no a/b/cin/s/cout adder labels"))?,
        (design, None) => {
            let kind = adder_kind(design.as_deref().unwrap_or("dec-csk"))?;
            let width = args
                .source
                .digits
                .unwrap_or_else(|| a.trim().len().max(b.trim().len()).max(1));
            DecimalAdder::new(kind, width).map_err(|e| CliError::usage(e.to_string()))?
        }
    };
    let width = adder.digits();
    let da = DigitVector::parse(a, width)?;
    let db = DigitVector::parse(b, width)?;
    let result = adder.add_digits(da.digits(), db.digits(), args.cin);
    let sum = DigitVector::new(result.digits.clone())?;
    let decimal = if result.carry {
        format!("1{sum}")
    } else {
        sum.to_decimal()
    };
    writeln!(out, "sum: {decimal}")?;
    writeln!(out, "digits: {sum}")?;
    writeln!(out, "carry: {}", result.carry as u8)?;
    let nibbles: Vec<String> = result.digits.iter().rev().map(|d| format!("{d:04b}")).collect();
    writeln!(out, "sum bits: {}", nibbles.join(" "))?;
    writeln!(out, "terminal: {}", bit_string(&result.terminal))?;
    Ok(0)
}

fn simulate_raw(netlist: &Netlist, bits: &str, out: &mut dyn Write) -> Outcome {
    let inputs: Vec<(usize, &str)> = netlist.input_lines().collect();
    if bits.len() != inputs.len() || !bits.bytes().all(|c| c == b'0' || c == b'1') {
        return Err(CliError::usage(format!(
            "--raw-bits needs {} characters of 0/1, one per primary input",
            inputs.len()
        )));
    }
    let assignment: sim::Assignment = inputs
        .iter()
        .zip(bits.bytes())
        .map(|(&(_, label), c)| (label.to_string(), c == b'1'))
        .collect();
    let result = sim::run(netlist, &assignment).map_err(|e| CliError::usage(e.to_string()))?;
    for (name, value) in &result.named {
        writeln!(out, "{name}: {}", *value as u8)?;
    }
    writeln!(out, "restored: {}", result.restored_ok)?;
    writeln!(out, "terminal: {}", bit_string(&result.terminal))?;
    Ok(0)
}

fn verify_cmd(args: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let scope: Scope = args.scope.parse().map_err(CliError::usage)?;
    let checks = verify::run(scope, args.seed, args.samples);
    writeln!(out, "seed {} samples {}", args.seed, args.samples)?;
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.ok()).count();
    writeln!(out, "{} checks, {failed} failed", checks.len())?;
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
}

fn metrics(args: MetricsArgs, out: &mut dyn Write) -> Outcome {
    let format = table_format(&args.format)?;
    let netlist = load(&args.source, 1)?;
    let m = structural_metrics(&netlist).map_err(|e| CliError::usage(e.to_string()))?;
    let stages = if args.stages {
        Some(metric_decomposition(&netlist).map_err(|e| CliError::usage(e.to_string()))?)
    } else {
        None
    };
    write!(
        out,
        "{}",
        report::metrics_table(&m, stages.as_deref()).render(format)
    )?;
    Ok(0)
}

fn compare(args: CompareArgs, out: &mut dyn Write) -> Outcome {
    let format = table_format(&args.format)?;
    if args.digits.is_empty() || args.digits.contains(&0) {
        return Err(CliError::usage("--digits needs positive sizes"));
    }
    let metrics: &[Metric] = match args.metric {
        MetricChoice::Qc => &[Metric::Qc],
        MetricChoice::Delay => &[Metric::Delay],
        MetricChoice::Both => &[Metric::Qc, Metric::Delay],
    };
    for (i, &m) in metrics.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let c = report::comparison(m, &args.digits).map_err(|e| CliError::usage(e.to_string()))?;
        write!(out, "{}", c.render(format))?;
    }
    if args.structural {
        let t = report::structural_deltas(&args.digits).map_err(|e| CliError::usage(e.to_string()))?;
        writeln!(out)?;
        if format == TableFormat::Markdown {
            writeln!(out, "### Structural metrics of the built adders\n")?;
        }
        write!(out, "{}", t.render(format))?;
    }
    Ok(0)
}

fn pareto(args: ParetoArgs, out: &mut dyn Write) -> Outcome {
    if args.digits.is_empty() || args.digits.contains(&0) {
        return Err(CliError::usage("--digits needs positive sizes"));
    }
    let rows = report::pareto_rows(&args.digits).map_err(|e| CliError::usage(e.to_string()))?;
    write!(out, "{}", report::pareto_tsv(&rows))?;
    if let Some(dir) = &args.svg {
        fs::create_dir_all(dir)?;
        for &n in &args.digits {
            fs::write(dir.join(format!("pareto-{n}.svg")), report::pareto_svg(n, &rows))?;
        }
    }
    Ok(0)
}

fn ledger(args: LedgerArgs, out: &mut dyn Write) -> Outcome {
    let format = table_format(&args.format)?;
    let kind = adder_kind(&args.design)?;
    let sign: SignPolicy = args.sign.parse().map_err(CliError::usage)?;
    if args.width == 0 {
        return Err(CliError::usage("--width must be at least 1"));
    }
    let delimiter = u8::try_from(args.delimiter)
        .ok()
        .filter(u8::is_ascii)
        .ok_or_else(|| CliError::usage("--delimiter must be a single ASCII character"))?;
    let config = IngestConfig {
        group_column: args.group_col,
        amount_column: args.amount_col,
        delimiter,
        sign,
        strict: !args.lenient,
    };
    let ingested = ingest_csv(&args.csv, &config).map_err(|e| match e {
        IngestError::Io { .. } => CliError::new(EXIT_IO, e.to_string()),
        _ => CliError::usage(e.to_string()),
    })?;
    for issue in &ingested.issues {
        eprintln!("skipped {issue}");
    }
    let report = par_sum_ledger(&ingested.records, kind, args.width).map_err(|e| match e {
        LedgerError::Overflow { .. } | LedgerError::AmountTooWide { .. } => {
            CliError::new(EXIT_OVERFLOW, e.to_string())
        }
        _ => CliError::usage(e.to_string()),
    })?;
    write!(out, "{}", report::ledger_table(&report).render(format))?;
    writeln!(out, "{}", report::ledger_summary(&report))?;
    if !ingested.issues.is_empty() || ingested.skipped_negative > 0 {
        eprintln!(
            "{} malformed rows skipped, {} negative rows skipped",
            ingested.issues.len(),
            ingested.skipped_negative
        );
    }
    Ok(if report.mismatches == 0 { 0 } else { EXIT_MISMATCH })
}

fn synth(args: SynthArgs, out: &mut dyn Write) -> Outcome {
    let text = synthetic_csv(&SynthConfig {
        rows: args.rows,
        groups: args.groups,
        seed: args.seed,
        ..SynthConfig::default()
    });
    match &args.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}
