//! Command-line front end: `salagean extremal | sample | verify`.
//!
//! Exit codes: `0` success, `1` at least one failing check, `2` usage error,
//! `3` I/O failure.

pub mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::caratheodory::{p_from_measure, random_measure, HerglotzMeasure};
use crate::classes::{extremal, member_from_p};
use crate::inequalities::{successive_gap_report, DEFAULT_SLACK_TOL};
use crate::report::{GapRecord, ReportRow};
use crate::salagean::SalageanOrder;
use crate::series::{TruncatedSeries, DEFAULT_ORDER};
use crate::sweep::{self, Execution, Summary};
use crate::unit::UnitModulus;

pub use config::{OutputFormat, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "salagean",
    version,
    about = "Coefficient inequalities for the Salagean classes S_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the extremal function I_n{z/((1 - nu z)(1 - gamma z))} and its successive gaps at nu.
    Extremal(ExtremalArgs),
    /// Print one random member of S_n with the measure and p that generate it.
    Sample(SampleArgs),
    /// Run the full checker suite and write one report row per check.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ExtremalArgs {
    /// Class order n.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Argument of nu (degrees unless --radians).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nu: f64,
    /// Argument of gamma (degrees unless --radians).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma: f64,
    /// Truncation order.
    #[arg(long = "N", visible_alias = "order", default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Read the angles as radians.
    #[arg(long)]
    radians: bool,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
    #[arg(long, default_value_t = DEFAULT_SLACK_TOL)]
    tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long = "N", visible_alias = "order", default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, default_value_t = 8)]
    max_atoms: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// JSON file with RunConfig fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "N", visible_alias = "order")]
    order: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    /// Comma-separated class orders, e.g. 0,1,2,3.
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<u32>>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    tolerance_slack: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    tolerance_identity: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Output file; `-` for standard output.
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    max_atoms: Option<usize>,
    /// Also emit rows for the unsquared exponentiated-series bound.
    #[arg(long)]
    include_unsquared: bool,
    /// Run on a single thread.
    #[arg(long)]
    sequential: bool,
}

impl VerifyArgs {
    fn resolve(&self) -> Result<RunConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::from_json_str(&text)
                    .map_err(|e| Failure::usage(format!("cannot parse {}: {e}", path.display())))?
            }
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($field:ident, $flag:expr) => {
                if let Some(v) = $flag.clone() {
                    cfg.$field = v;
                }
            };
        }
        take!(order, self.order);
        take!(max_k, self.max_k);
        take!(n_values, self.n_values);
        take!(samples, self.samples);
        take!(seed, self.seed);
        take!(grid, self.grid);
        take!(tolerance_slack, self.tolerance_slack);
        take!(tolerance_identity, self.tolerance_identity);
        take!(output_format, self.format);
        take!(output_path, self.output);
        take!(max_atoms, self.max_atoms);
        if self.include_unsquared {
            cfg.include_unsquared = true;
        }
        cfg.validate().map_err(Failure::usage)?;
        Ok(cfg)
    }
}

/// Parses `args` (including the program name) and runs the chosen subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Extremal(args) => cmd_extremal(&args, stdout),
        Command::Sample(args) => cmd_sample(&args, stdout),
        Command::Verify(args) => cmd_verify(&args, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn io(message: impl ToString) -> Self {
        Self {
            code: EXIT_IO,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::io(e)
    }
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure::usage(e)
    }
}

fn angle(value: f64, radians: bool) -> Result<UnitModulus, Failure> {
    if !value.is_finite() {
        return Err(Failure::usage(format!("angle {value} is not a finite number")));
    }
    let unit = if radians {
        UnitModulus::from_angle(value)
    } else {
        UnitModulus::from_degrees(value)
    };
    unit.map_err(Failure::usage)
}

#[derive(Serialize)]
struct ExtremalOutput<'a> {
    n: u32,
    nu: UnitModulus,
    gamma: UnitModulus,
    series: &'a TruncatedSeries,
    reports: Vec<GapRecord>,
}

fn cmd_extremal(args: &ExtremalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let nu = angle(args.nu, args.radians)?;
    let gamma = angle(args.gamma, args.radians)?;
    let n = SalageanOrder(args.n);
    let f = extremal(n, nu, gamma, args.order)?;
    let reports = (1..args.order)
        .map(|k| successive_gap_report(&f, n, k, nu, args.tolerance).map(GapRecord::from))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let all_pass = reports.iter().all(|r| r.pass);

    match args.format {
        TextOrJson::Json => {
            let payload = ExtremalOutput {
                n: args.n,
                nu,
                gamma,
                series: &f,
                reports,
            };
            serde_json::to_writer_pretty(&mut *out, &payload)?;
            writeln!(out)?;
        }
        TextOrJson::Text => {
            let unit = if args.radians { "rad" } else { "deg" };
            writeln!(
                out,
                "# extremal n={} nu={}{unit} gamma={}{unit} N={}",
                args.n, args.nu, args.gamma, args.order
            )?;
            writeln!(out, "k,re,im")?;
            for (k, c) in f.coeffs().iter().enumerate().skip(1) {
                writeln!(out, "{k},{},{}", c.re, c.im)?;
            }
            writeln!(out)?;
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// JSON document printed by `salagean sample`.
#[derive(Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct SampleOutput {
    pub seed: u64,
    pub n: u32,
    pub measure: HerglotzMeasure,
    pub p: TruncatedSeries,
    pub f: TruncatedSeries,
}

/// The member of `S_n` that `salagean sample` prints for `seed`.
pub fn sample(seed: u64, n: SalageanOrder, order: usize, max_atoms: usize) -> crate::error::Result<SampleOutput> {
    let measure = random_measure(seed, max_atoms)?;
    let p = p_from_measure(&measure, order)?;
    let f = member_from_p(&p, n, order)?;
    Ok(SampleOutput {
        seed,
        n: n.get(),
        measure,
        p,
        f,
    })
}

fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let doc = sample(args.seed, SalageanOrder(args.n), args.order, args.max_atoms)?;
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

enum RowWriter<'a> {
    Csv(Box<csv::Writer<Box<dyn Write + 'a>>>),
    Json { out: Box<dyn Write + 'a>, first: bool },
}

impl<'a> RowWriter<'a> {
    fn new(format: OutputFormat, mut out: Box<dyn Write + 'a>) -> io::Result<Self> {
        Ok(match format {
            OutputFormat::Csv => RowWriter::Csv(Box::new(csv::Writer::from_writer(out))),
            OutputFormat::Json => {
                out.write_all(b"[")?;
                RowWriter::Json { out, first: true }
            }
        })
    }

    fn write(&mut self, row: &ReportRow) -> Result<(), Failure> {
        match self {
            RowWriter::Csv(w) => w.serialize(row)?,
            RowWriter::Json { out, first } => {
                out.write_all(if *first { b"\n" } else { b",\n" })?;
                serde_json::to_writer(&mut *out, row)?;
                *first = false;
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<(), Failure> {
        match self {
            RowWriter::Csv(mut w) => w.flush()?,
            RowWriter::Json { mut out, .. } => {
                out.write_all(b"\n]\n")?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn summary_line(summary: &Summary) -> String {
    let mut line = format!("{} checks, {} failed", summary.rows, summary.failures);
    if !summary.failures_by_label.is_empty() {
        let parts: Vec<String> = summary
            .failures_by_label
            .iter()
            .map(|(label, count)| format!("{label}: {count}"))
            .collect();
        line.push_str(&format!(" ({})", parts.join(", ")));
    }
    line.push_str(&format!(
        "; unsquared exponentiated-series bound violated on {} of {} checks (known false, not gating)",
        summary.unsquared_violations, summary.unsquared_checks
    ));
    line
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = args.resolve()?;
    let sink: Box<dyn Write + '_> = if cfg.output_path == "-" || cfg.output_path.is_empty() {
        Box::new(BufWriter::new(stdout))
    } else {
        let file = File::create(&cfg.output_path)
            .map_err(|e| Failure::io(format!("cannot create {}: {e}", cfg.output_path)))?;
        Box::new(BufWriter::new(file))
    };
    let mut writer = RowWriter::new(cfg.output_format, sink)?;
    let execution = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let summary = sweep::run::<Failure, _>(&cfg, execution, |row| writer.write(row))?;
    writer.finish()?;
    writeln!(stderr, "{}", summary_line(&summary))?;
    Ok(if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
