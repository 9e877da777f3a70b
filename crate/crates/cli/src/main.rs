use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use fractal_tutte::graph::{build_psw_copy_merge, build_psw_edge_expansion, build_sierpinski};
use fractal_tutte::numeric::{parse_rational, ratio_to_f64};
use fractal_tutte::oracle::{run_oracle, CheckKind};
use fractal_tutte::reliability::{self, compare_curves, parse_grid, to_csv, to_csv_single};
use fractal_tutte::{invariants, recursion, Error, Family, Mode};

#[derive(Parser)]
#[command(name = "fractal-tutte", version, about = "Tutte polynomials and reliability of self-similar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Expansion,
    Merge,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Write the edge list of G(n) or SG(n)
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        /// PSW only
        #[arg(long, value_enum, default_value = "expansion")]
        construction: Construction,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symbolic Tutte polynomial of G(n)
    Tutte {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: PolyFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T_n(x, y) at one point
    Eval {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "exact")]
        mode: Mode,
    },
    /// Spanning trees, forests and related counts of G(n) as JSON
    Invariants {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All-terminal reliability over a grid of edge probabilities, as CSV
    Reliability {
        #[arg(long, value_delimiter = ',', default_value = "psw,sg")]
        families: Vec<Family>,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0.01:0.99:0.01")]
        p_grid: String,
        #[arg(long, default_value = "log")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the recursions with brute force on a small graph
    Oracle {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    /// Output was written but the oracle reported a failed check.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial file behind.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = out else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| Failure::Compute(format!("writing stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Compute(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn eval(n: u32, x: &str, y: &str, mode: Mode) -> Result<String, Failure> {
    let (x, y) = (parse_rational(x)?, parse_rational(y)?);
    let value = match mode {
        Mode::Exact => {
            if x.is_integer() && y.is_integer() {
                invariants::eval_tutte_integer(n, &x.to_integer(), &y.to_integer())?.to_string()
            } else {
                format_rational(&invariants::eval_tutte_exact(n, &x, &y)?)
            }
        }
        Mode::Float => {
            let (xf, yf) = (ratio_to_f64(&x), ratio_to_f64(&y));
            format!("{:e}", invariants::eval_tutte_float(n, xf, yf)?)
        }
        Mode::Log => {
            let (xf, yf) = (ratio_to_f64(&x), ratio_to_f64(&y));
            format!("{:.12e}", invariants::eval_tutte_log(n, xf, yf)?)
        }
    };
    Ok(value + "\n")
}

fn reliability_csv(families: &[Family], n: u32, grid: &str, mode: Mode) -> Result<String, Failure> {
    let grid = parse_grid(grid)?;
    match families {
        [Family::Psw, Family::Sierpinski] => Ok(to_csv(&compare_curves(n, &grid, mode)?)),
        [Family::Sierpinski, Family::Psw] => Ok(to_csv(&compare_curves(n, &grid, mode)?)),
        [family] => {
            let rows = grid
                .iter()
                .map(|p| {
                    let r = match family {
                        Family::Psw => reliability::psw_reliability(n, p, mode)?.r,
                        Family::Sierpinski => reliability::sg_reliability(n, p, mode)?.rs,
                    };
                    Ok((p.clone(), r))
                })
                .collect::<fractal_tutte::Result<Vec<_>>>()?;
            Ok(to_csv_single(&rows, family.name()))
        }
        _ => Err(Failure::Usage("--families takes psw, sg or psw,sg".into())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { family, n, construction, out } => {
            let g = match (family, construction) {
                (Family::Psw, Construction::Expansion) => build_psw_edge_expansion(n)?,
                (Family::Psw, Construction::Merge) => build_psw_copy_merge(n)?,
                (Family::Sierpinski, Construction::Expansion) => build_sierpinski(n)?,
                (Family::Sierpinski, Construction::Merge) => {
                    return Err(Failure::Usage("--construction merge applies to psw only".into()))
                }
            };
            emit(out.as_deref(), &g.to_edge_list())
        }
        Command::Tutte { n, format, out } => {
            let poly = recursion::tutte_psw(n)?;
            let text = match format {
                PolyFormat::Text => format!("{poly}\n"),
                PolyFormat::Json => {
                    let doc = serde_json::json!({ "family": "psw", "n": n, "polynomial": poly.to_json() });
                    serde_json::to_string_pretty(&doc).expect("json") + "\n"
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Eval { n, x, y, mode } => emit(None, &eval(n, &x, &y, mode)?),
        Command::Invariants { n, out } => {
            let report = invariants::invariant_report(n)?;
            report.check()?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&report).expect("json") + "\n"))
        }
        Command::Reliability { families, n, p_grid, mode, out } => {
            emit(out.as_deref(), &reliability_csv(&families, n, &p_grid, mode)?)
        }
        Command::Oracle { family, n, check, format, out } => {
            let checks = CheckKind::parse_list(&check)?;
            let report = run_oracle(family, n, &checks)?;
            let text = match format {
                ReportFormat::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
                ReportFormat::Text => report.to_text(),
            };
            emit(out.as_deref(), &text)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => {
            eprintln!("error: oracle checks failed");
            ExitCode::from(1)
        }
    }
}
