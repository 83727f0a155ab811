//! The `convfib` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or benchmark cross-check
//! fails (or output cannot be written), 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{self, BenchGrid};
use crate::convolved::{conv_fib_row, CoeffTriangle, RisingFactorialPoly};
use crate::exact::text::{integer_to_string, rational_to_string};
use crate::fibonacci::FibTable;
use crate::identities::{self, Identity, Overrides, VerificationReport};

#[derive(Debug, Parser)]
#[command(
    name = "convfib",
    version,
    about = "Convolved Fibonacci numbers and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Values,
    Triangle,
    Poly,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format; tables default to csv, reports to json.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for grid checks (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fibonacci numbers F_n (F_0 = F_1 = 1) for n in a signed range.
    Fib {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Value grids p_n(r), the coefficient triangle a_i(N), or p_N(x).
    Table {
        #[arg(long, value_enum)]
        mode: Mode,
        /// First (or only) integer argument r for `values`.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        r: i64,
        /// Last integer argument for `values`; defaults to --r.
        #[arg(long, allow_hyphen_values = true)]
        r_to: Option<i64>,
        /// Largest n (values), N (triangle) or N (poly, all rows).
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// A single polynomial p_N(x) for `poly`.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Check identities exactly over parameter grids.
    Verify {
        /// Identity name or `all`.
        identity: String,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        r_max: Option<u32>,
        #[arg(long = "N-max")]
        big_n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        /// Truncation order for series-based checks.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Time competing algorithms after checking they agree.
    Bench {
        /// Values of n for p_n(r+1); pass the flag with no values for none.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Option<Vec<usize>>,
        /// Fold counts r.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        r: Option<Vec<u32>>,
        /// Triangle rows N.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        triangle_n: Option<Vec<usize>>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(format!("write failed: {e}"))
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("convfib: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("convfib: {msg}");
            1
        }
    }
}

fn open(output: &Output) -> Result<Box<dyn Write>, Failure> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Runtime(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Runtime(format!("cannot start worker pool: {e}")))
}

fn write_csv(
    out: &mut dyn Write,
    header: &str,
    lines: impl IntoIterator<Item = String>,
) -> io::Result<()> {
    writeln!(out, "{header}")?;
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("plain json value");
    writeln!(out, "{text}")
}

fn execute(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Fib { from, to, output } => cmd_fib(from, to, &output),
        Command::Table {
            mode,
            r,
            r_to,
            n_max,
            n,
            output,
        } => cmd_table(mode, r, r_to.unwrap_or(r), n_max, n, &output),
        Command::Verify {
            identity,
            n_max,
            r_max,
            big_n_max,
            k_max,
            order,
            x_min,
            x_max,
            output,
        } => {
            let overrides = Overrides {
                n_max,
                r_max,
                big_n_max,
                k_max,
                order,
                x_min,
                x_max,
            };
            cmd_verify(&identity, &overrides, &output)
        }
        Command::Bench {
            n,
            r,
            triangle_n,
            samples,
            output,
        } => {
            let defaults = BenchGrid::default();
            let grid = BenchGrid {
                n_values: n.unwrap_or(defaults.n_values),
                r_values: r.unwrap_or(defaults.r_values),
                triangle_rows: triangle_n.unwrap_or(defaults.triangle_rows),
                samples,
                min_sample: defaults.min_sample,
            };
            cmd_bench(&grid, &output)
        }
    }
}

fn cmd_fib(from: i64, to: i64, output: &Output) -> Result<i32, Failure> {
    if from > to {
        return Err(Failure::Usage(format!(
            "empty range --from {from} --to {to}"
        )));
    }
    let table = FibTable::with_range(from, to);
    let rows = (from..=to).map(|n| (n, table.get(n).expect("range ensured")));
    let mut out = open(output)?;
    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_csv(
            &mut out,
            "n,F",
            rows.map(|(n, f)| format!("{n},{}", integer_to_string(f))),
        )?,
        Format::Json => write_json(
            &mut out,
            &Value::Array(
                rows.map(|(n, f)| json!({ "n": n, "F": integer_to_string(f) }))
                    .collect(),
            ),
        )?,
    }
    out.flush()?;
    Ok(0)
}

fn poly_json(poly: &RisingFactorialPoly) -> Value {
    json!({
        "N": poly.degree(),
        "rising": poly.rising().iter().map(integer_to_string).collect::<Vec<_>>(),
        "monomial": poly.monomial().coeffs().iter().map(rational_to_string).collect::<Vec<_>>(),
    })
}

fn cmd_table(
    mode: Mode,
    r_from: i64,
    r_to: i64,
    n_max: usize,
    single: Option<usize>,
    output: &Output,
) -> Result<i32, Failure> {
    let format = output.format.unwrap_or(Format::Csv);
    let mut out = open(output)?;
    match mode {
        Mode::Values => {
            if r_from > r_to {
                return Err(Failure::Usage(format!(
                    "empty range --r {r_from} --r-to {r_to}"
                )));
            }
            let rows: Vec<(i64, usize, String)> = (r_from..=r_to)
                .flat_map(|r| {
                    conv_fib_row(r, n_max)
                        .into_iter()
                        .enumerate()
                        .map(move |(n, p)| (r, n, integer_to_string(&p)))
                })
                .collect();
            match format {
                Format::Csv => write_csv(
                    &mut out,
                    "r,n,p",
                    rows.into_iter().map(|(r, n, p)| format!("{r},{n},{p}")),
                )?,
                Format::Json => write_json(
                    &mut out,
                    &Value::Array(
                        rows.into_iter()
                            .map(|(r, n, p)| json!({ "r": r, "n": n, "p": p }))
                            .collect(),
                    ),
                )?,
            }
        }
        Mode::Triangle => {
            let triangle = CoeffTriangle::by_recurrence(n_max);
            let entries = triangle
                .entries()
                .map(|(n, i, a)| (n, i, integer_to_string(a)));
            match format {
                Format::Csv => write_csv(
                    &mut out,
                    "N,i,a",
                    entries.map(|(n, i, a)| format!("{n},{i},{a}")),
                )?,
                Format::Json => write_json(
                    &mut out,
                    &Value::Array(
                        entries
                            .map(|(n, i, a)| json!({ "N": n, "i": i, "a": a }))
                            .collect(),
                    ),
                )?,
            }
        }
        Mode::Poly => {
            let top = single.unwrap_or(n_max);
            let triangle = CoeffTriangle::by_recurrence(top);
            let degrees: Vec<usize> = match single {
                Some(n) => vec![n],
                None => (0..=n_max).collect(),
            };
            let polys: Vec<RisingFactorialPoly> = degrees
                .into_iter()
                .map(|n| RisingFactorialPoly::from_triangle(&triangle, n).expect("row computed"))
                .collect();
            match format {
                Format::Json => {
                    let value = if single.is_some() {
                        poly_json(&polys[0])
                    } else {
                        Value::Array(polys.iter().map(poly_json).collect())
                    };
                    write_json(&mut out, &value)?
                }
                Format::Csv => {
                    let mut lines = Vec::new();
                    for p in &polys {
                        for (k, a) in p.rising().iter().enumerate() {
                            lines.push(format!(
                                "{},rising,{k},{}",
                                p.degree(),
                                integer_to_string(a)
                            ));
                        }
                        for (k, c) in p.monomial().coeffs().iter().enumerate() {
                            lines.push(format!(
                                "{},monomial,{k},{}",
                                p.degree(),
                                rational_to_string(c)
                            ));
                        }
                    }
                    write_csv(&mut out, "N,form,k,c", lines)?
                }
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn describe_failure(report: &VerificationReport) -> String {
    match &report.counterexample {
        None => String::new(),
        Some(ce) => {
            let params = ce
                .params
                .as_object()
                .map(|m| {
                    m.iter()
                        .map(|(k, v)| {
                            format!(
                                "{k}={}",
                                v.as_str().map(str::to_owned).unwrap_or(v.to_string())
                            )
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default();
            format!("{params} lhs={} rhs={}", ce.lhs, ce.rhs)
        }
    }
}

fn cmd_verify(selector: &str, overrides: &Overrides, output: &Output) -> Result<i32, Failure> {
    let selected: Vec<Identity> = if selector == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![selector.parse().map_err(|_| {
            let names: Vec<&str> = Identity::ALL.iter().map(|id| id.name()).collect();
            Failure::Usage(format!(
                "unknown identity {selector:?}; expected `all` or one of {}",
                names.join(", ")
            ))
        })?]
    };
    let workers = pool(output.jobs)?;
    let reports = workers
        .install(|| {
            selected
                .iter()
                .map(|&id| identities::run(id, overrides))
                .collect::<crate::Result<Vec<_>>>()
        })
        .map_err(|e| Failure::Usage(e.to_string()))?;

    let mut out = open(output)?;
    match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            for report in &reports {
                writeln!(out, "{}", report.to_json())?;
            }
        }
        Format::Csv => write_csv(
            &mut out,
            "identity,cells,status,counterexample",
            reports.iter().map(|r| {
                let status = if r.passed() { "pass" } else { "fail" };
                format!(
                    "{},{},{},{}",
                    r.identity,
                    r.cells,
                    status,
                    describe_failure(r)
                )
            }),
        )?,
    }
    out.flush()?;
    Ok(if reports.iter().all(VerificationReport::passed) {
        0
    } else {
        1
    })
}

fn cmd_bench(grid: &BenchGrid, output: &Output) -> Result<i32, Failure> {
    let rows =
        bench::run(grid).map_err(|e| Failure::Runtime(format!("cross-check failed: {e}")))?;
    let mut out = open(output)?;
    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => write_csv(
            &mut out,
            bench::CSV_HEADER,
            rows.iter().map(bench::csv_line),
        )?,
        Format::Json => write_json(
            &mut out,
            &Value::Array(
                rows.iter()
                    .map(|row| {
                        json!({
                            "algorithm": row.algorithm,
                            "n": row.n,
                            "r": row.r,
                            "nanos": row.nanos.to_string(),
                        })
                    })
                    .collect(),
            ),
        )?,
    }
    out.flush()?;
    Ok(0)
}
