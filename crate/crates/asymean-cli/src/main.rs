//! Command-line front end for the integral-mean expansion library.
//!
//! Four subcommands: `expand` prints the asymptotic expansion of an
//! integral mean, `solve` inverts `B(A(x)) = C(x)` on series files,
//! `verify` measures truncations against the interval oracle, and
//! `catalog` lists the built-in function families. All output is
//! deterministic byte-for-byte for fixed inputs, so it can be pinned by
//! golden tests; errors map onto exit codes 1 (parse), 2 (validation),
//! 3 (precision).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigRational, Signed};

use asymean::catalog::{self, CatalogEntry};
use asymean::coeffield::{Coefficient, SymbolTable};
use asymean::intmean::{DisplayMode, MeanSpec};
use asymean::series::{self, AsymptoticSeries};
use asymean::solver;
use asymean::verify::{self, ErrorReport};
use asymean::{Error, Result};

#[derive(Parser)]
#[command(name = "asymean", version, about = "Asymptotic expansions of integral means")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand the integral mean I_f(x+s, x+t) of a catalog entry
    Expand(ExpandArgs),
    /// Solve B(A(x)) = C(x) for A on truncated series files
    Solve(SolveArgs),
    /// Compare truncated mean values against the interval oracle
    Verify(VerifyArgs),
    /// List the catalog entries
    Catalog,
}

#[derive(clap::Args)]
struct ExpandArgs {
    /// Entry spec: `log`, `power:r=1/2`, `digamma`, `polygamma:m=2`,
    /// `ratpoly:[1,1]@u=-2`, `wallis_ratio:s=0,t=1/2`, or `file:<path>`
    /// (a series JSON document, re-emitted as stored)
    #[arg(long)]
    f: String,
    /// Lower endpoint offset as a rational (default: the symbol `s`)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Upper endpoint offset as a rational (default: the symbol `t`)
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Keep the endpoints symbolic (the default when --s/--t are absent)
    #[arg(long)]
    symbolic: bool,
    /// Highest coefficient index to compute: a_0 … a_order (default 6)
    #[arg(long)]
    order: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(clap::Args)]
struct SolveArgs {
    /// Series JSON file for the outer function B
    #[arg(long = "B", value_name = "FILE")]
    b: PathBuf,
    /// Series JSON file for the right-hand side C
    #[arg(long = "C", value_name = "FILE")]
    c: PathBuf,
    /// Solution branch
    #[arg(long, value_enum)]
    branch: Branch,
    /// Number of solved coefficients a_0 … a_order
    #[arg(long)]
    order: usize,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Entry spec, as in expand (catalog entries only)
    #[arg(long)]
    f: String,
    /// Expansion point (rational)
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Lower endpoint offset (rational)
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Upper endpoint offset (rational)
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Truncation orders to measure, comma separated
    #[arg(long, value_delimiter = ',', default_value = "4,5,6")]
    orders: Vec<usize>,
    /// Interval precision in bits (falls back to ASYMEAN_PRECISION_BITS,
    /// then 256)
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Branch {
    Asc,
    Desc,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            // malformed flags are parse errors: exit 1
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("asymean: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<String> {
    match cmd {
        Command::Expand(args) => run_expand(args),
        Command::Solve(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
        Command::Catalog => Ok(render_catalog()),
    }
}

fn parse_rational(text: &str, flag: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim()).map_err(|_| {
        Error::Parse(format!(
            "{flag}: expected a rational like 105 or -1/2, got `{text}`"
        ))
    })
}

fn read_series(path: &Path) -> Result<AsymptoticSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    series::from_json_str(&text)
}

/// Slice or zero-pad a stored series to `a_0 … a_order`.
fn truncate_series(s: &AsymptoticSeries, order: usize) -> Result<AsymptoticSeries> {
    let have = s.coeffs().len();
    if order + 1 <= have {
        let exact = s.exact() && s.coeffs()[order + 1..].iter().all(|c| c.is_zero());
        return Ok(AsymptoticSeries::new(
            s.table(),
            s.log_coeff().clone(),
            s.exponent().clone(),
            s.coeffs()[..=order].to_vec(),
            exact,
        ));
    }
    if s.exact() {
        let mut coeffs = s.coeffs().to_vec();
        coeffs.resize(order + 1, Coefficient::zero(s.table()));
        return Ok(AsymptoticSeries::new(
            s.table(),
            s.log_coeff().clone(),
            s.exponent().clone(),
            coeffs,
            true,
        ));
    }
    Err(Error::Validation(format!(
        "the stored series carries a_0…a_{}; --order {order} would invent terms",
        have - 1
    )))
}

fn render_series(s: &AsymptoticSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{s}\n"),
        Format::Json => format!("{}\n", series::to_json_string(s)),
        Format::Latex => format!("{}\n", series::to_latex(s)),
    }
}

fn run_expand(args: ExpandArgs) -> Result<String> {
    if let Some(path) = args.f.strip_prefix("file:") {
        if args.s.is_some() || args.t.is_some() || args.symbolic {
            return Err(Error::Validation(
                "a file entry is re-emitted as stored; endpoint flags apply to catalog entries"
                    .into(),
            ));
        }
        let stored = read_series(Path::new(path))?;
        let stored = match args.order {
            None => stored,
            Some(n) => truncate_series(&stored, n)?,
        };
        return Ok(render_series(&stored, args.format));
    }
    let entry = CatalogEntry::parse(&args.f)?;
    let order = args.order.unwrap_or(6);
    if order < 1 {
        return Err(Error::Validation("--order must be at least 1".into()));
    }
    let table = SymbolTable::standard();
    let spec = match (&args.s, &args.t) {
        (None, None) => MeanSpec::symbolic(&table, DisplayMode::AlphaBeta),
        (Some(s), Some(t)) => {
            if args.symbolic {
                return Err(Error::Validation(
                    "--symbolic conflicts with numeric --s/--t".into(),
                ));
            }
            MeanSpec::numeric(
                &table,
                parse_rational(s, "--s")?,
                parse_rational(t, "--t")?,
                DisplayMode::St,
            )?
        }
        _ => {
            return Err(Error::Validation(
                "--s and --t must be given together".into(),
            ))
        }
    };
    let mean = entry.mean_of(&spec, order)?;
    Ok(render_series(&mean.display_series(), args.format))
}

fn run_solve(args: SolveArgs) -> Result<String> {
    if args.order < 1 {
        return Err(Error::Validation("--order must be at least 1".into()));
    }
    let b = read_series(&args.b)?;
    let c = read_series(&args.c)?;
    let outcome = match args.branch {
        Branch::Asc => solver::solve_ascending(&b, &c, args.order)?,
        Branch::Desc => solver::solve_descending(&b, &c, args.order)?,
    };
    Ok(format!("{}\n", outcome.series))
}

fn run_verify(args: VerifyArgs) -> Result<String> {
    if args.f.starts_with("file:") {
        return Err(Error::Validation(
            "verify needs a catalog entry; file series carry no oracle".into(),
        ));
    }
    let entry = CatalogEntry::parse(&args.f)?;
    let x = parse_rational(&args.x, "--x")?;
    let s = parse_rational(&args.s, "--s")?;
    let t = parse_rational(&args.t, "--t")?;
    let bits = verify::resolve_bits(args.precision)?;
    let report = verify::error_report(&entry, &x, &s, &t, &args.orders, bits, true)?;
    Ok(render_report(&report))
}

fn render_report(r: &ErrorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "entry: {}", r.entry);
    let _ = writeln!(
        out,
        "mean over [x+s, x+t]: x = {}, s = {}, t = {}",
        r.x, r.s, r.t
    );
    let _ = writeln!(out, "precision: {} bits", r.bits);
    let method = r.rows.first().map(|row| row.method);
    let _ = writeln!(
        out,
        "oracle ({}): {}",
        method.expect("report rows are never empty"),
        r.oracle.to_decimal(24)
    );
    let _ = writeln!(out);
    for row in &r.rows {
        let _ = writeln!(
            out,
            "order {}: mean = {}  rel err {}",
            row.order,
            asymean::verify::decimal_directed(&row.truncated, 21, row.truncated.is_negative()),
            row.rel_error.to_decimal(7)
        );
    }
    if let Some(cols) = &r.simpson {
        let _ = writeln!(out);
        for (panels, rel) in cols {
            let _ = writeln!(out, "simpson {panels} panels: rel err {}", rel.to_decimal(7));
        }
    }
    out
}

fn render_catalog() -> String {
    let entries = catalog::list_entries();
    let rows: Vec<(String, String, String)> = entries
        .iter()
        .map(|e| {
            let params = if e.parameters.is_empty() {
                "-".to_string()
            } else {
                e.parameters.to_string()
            };
            let max = match e.max_order {
                Some(n) => n.to_string(),
                None => "unbounded".to_string(),
            };
            (e.id.to_string(), params, max)
        })
        .collect();
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(2);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(10);
    let mut out = String::new();
    let _ = writeln!(out, "{:<w0$}  {:<w1$}  max_order", "id", "parameters");
    for (id, params, max) in &rows {
        let _ = writeln!(out, "{id:<w0$}  {params:<w1$}  {max}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational(" -1/2 ", "--s").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert_eq!(
            parse_rational("105", "--x").unwrap(),
            BigRational::from_integer(105.into())
        );
        assert!(matches!(
            parse_rational("0.5", "--s"),
            Err(Error::Parse(_))
        ));
    }
}
