use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qselberg::characters::CauchyIdentity;
use qselberg::harness::{self, Check, CrossExponent, GridSpec, PointStyle, GUARD};
use qselberg::jackson::{bruteforce_trunc, partition_sum_trunc, IntegrandSpec};
use qselberg::report::VerifyReport;
use qselberg::youngbooks::{build_poset, enumerate_young_books, maj_gf, maj_gf_trunc, BookJson};
use qselberg::{Composition, Partition};

#[derive(Parser)]
#[command(name = "qselberg", version, about = "Exact checks of q-Selberg type identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format; reports default to JSON.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest staircase (in cells) for enumeration-backed work.
    #[arg(long = "guard-n", global = true, default_value_t = GUARD)]
    guard_n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Young books of a staircase.
    Yb {
        #[command(subcommand)]
        cmd: YbCmd,
    },
    /// Evaluate a Jackson integral.
    Integral {
        #[command(subcommand)]
        cmd: IntegralCmd,
    },
    /// Check one identity at one parameter point.
    Verify(VerifyArgs),
    /// Check every point of a parameter grid.
    VerifyGrid {
        /// Grid spec JSON; the bundled default grid when omitted.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Shape {
    #[arg(long)]
    n: usize,
    /// One entry per page, e.g. `1,2`.
    #[arg(long, value_parser = parse_composition)]
    r: Composition,
    #[arg(long, value_parser = parse_composition)]
    s: Composition,
}

#[derive(Subcommand)]
enum YbCmd {
    /// List the books as JSON.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Stop after this many books.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Generating function of the major index.
    Majgf {
        #[command(flatten)]
        shape: Shape,
        /// Truncate after `q^K`.
        #[arg(long = "K")]
        k: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Qko,
    Single,
    Variant,
    Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    PartitionSum,
    Bruteforce,
}

#[derive(Subcommand)]
enum IntegralCmd {
    /// Print the integral modulo `q^{K+1}` as JSON.
    Eval {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, value_parser = parse_composition, default_value = "0")]
        r: Composition,
        #[arg(long, value_parser = parse_composition, default_value = "0")]
        s: Composition,
        /// Variant number 1 to 4.
        #[arg(long, default_value_t = 1)]
        which: u8,
        #[arg(long = "K", default_value_t = 20)]
        k: u32,
        #[arg(long, value_enum, default_value = "partition-sum")]
        method: Method,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the identity names, e.g. `qko`, `eval2`, `cauchy-bs`.
    identity: String,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, value_parser = parse_composition, default_value = "0")]
    r: Composition,
    #[arg(long, value_parser = parse_composition, default_value = "0")]
    s: Composition,
    /// Profile for `ppar-profile`, e.g. `2,1`.
    #[arg(long, value_parser = parse_partition, default_value = "")]
    mu: Partition,
    /// Number of x points for the Cauchy-type identities.
    #[arg(long = "N", default_value_t = 2)]
    big_n: usize,
    #[arg(long, value_enum, default_value = "half")]
    points: PointsArg,
    /// Use `1 - q^l x y` in the two-block integrand.
    #[arg(long)]
    plain_cross: bool,
    #[arg(long = "K", default_value_t = 20)]
    k: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PointsArg {
    Half,
    Int,
}

fn parse_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|x| x.parse::<u32>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

fn parse_composition(s: &str) -> Result<Composition, String> {
    let v = parse_list(s)?;
    if v.is_empty() {
        return Err("empty composition".into());
    }
    Ok(Composition::new(v))
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    Partition::new(parse_list(s)?).map_err(|e| e.to_string())
}

/// Exit status 2.
struct Usage(String);

impl From<qselberg::Error> for Usage {
    fn from(e: qselberg::Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<std::io::Error> for Usage {
    fn from(e: std::io::Error) -> Self {
        Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Usage {
    fn from(e: serde_json::Error) -> Self {
        Usage(e.to_string())
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Usage> {
    match &cli.out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    Ok(())
}

fn single(v: &Composition, what: &str) -> Result<u32, Usage> {
    match v.parts() {
        [x] => Ok(*x),
        _ => Err(Usage(format!("--{what} takes a single value here"))),
    }
}

fn build_check(a: &VerifyArgs) -> Result<Check, Usage> {
    let k = a.k;
    let style = match a.points {
        PointsArg::Half => PointStyle::Half,
        PointsArg::Int => PointStyle::Int,
    };
    let id = a.identity.as_str();
    Ok(match id {
        "qko" => Check::Qko { n: a.n, r: a.r.clone(), s: a.s.clone(), k },
        "schur-form" => Check::SchurForm { n: a.n, r: a.r.clone(), s: a.s.clone(), k },
        "ppar" => Check::Ppar { n: a.n, r: a.r.clone(), s: a.s.clone(), k },
        "qselberg" => Check::Qselberg { n: a.n, r: single(&a.r, "r")?, s: single(&a.s, "s")?, m: a.m as u32, k },
        "ppar-profile" => Check::PparProfile { l: a.n, r: single(&a.r, "r")?, mu: a.mu.clone(), k },
        "eval1" | "eval2" | "eval3" => {
            Check::Eval { which: id.as_bytes()[4] - b'0', n: a.n, r: single(&a.r, "r")?, s: single(&a.s, "s")?, k }
        }
        "variant1" | "variant2" | "variant3" | "variant4" => {
            Check::Variant { which: id.as_bytes()[7] - b'0', n: a.n, r: single(&a.r, "r")?, s: single(&a.s, "s")?, k }
        }
        "rational" => Check::Rational {
            n: a.n,
            m: a.m,
            l: a.l,
            r: single(&a.r, "r")?,
            s: single(&a.s, "s")?,
            k,
            cross: if a.plain_cross { CrossExponent::Plain } else { CrossExponent::Shifted },
        },
        other => {
            let which = CauchyIdentity::from_id(other).ok_or_else(|| {
                Usage(format!("unknown identity {other:?}; expected one of {}", harness::IDENTITIES[..19].join(", ")))
            })?;
            let m = if which == CauchyIdentity::Rational { a.m } else { 0 };
            Check::Cauchy { which, big_n: a.big_n, n: a.n, m, k, style }
        }
    })
}

fn report_text(cli: &Cli, reports: &[VerifyReport], array: bool) -> Result<String, Usage> {
    Ok(match cli.format.unwrap_or(Format::Json) {
        Format::Json if !array => serde_json::to_string_pretty(&reports[0])?,
        Format::Json => serde_json::to_string_pretty(reports)?,
        Format::Table => reports.iter().map(VerifyReport::summary).collect::<Vec<_>>().join("\n"),
    })
}

fn run(cli: &Cli) -> Result<bool, Usage> {
    match &cli.cmd {
        Cmd::Yb { cmd: YbCmd::Enumerate { shape, limit } } => {
            let poset = build_poset(shape.n, &shape.r, &shape.s)?;
            let books: Vec<_> = enumerate_young_books(&poset, cli.guard_n)?.take(limit.unwrap_or(usize::MAX)).collect();
            let text = match cli.format {
                Some(Format::Table) => books.iter().map(|b| format!("maj {}\n{b}", b.maj())).collect::<Vec<_>>().join("\n"),
                _ => serde_json::to_string_pretty(&books.iter().map(|b| b.to_json()).collect::<Vec<BookJson>>())?,
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Cmd::Yb { cmd: YbCmd::Majgf { shape, k } } => {
            let poset = build_poset(shape.n, &shape.r, &shape.s)?;
            let gf = match k {
                Some(k) => maj_gf_trunc(&poset, cli.guard_n, *k as usize)?,
                None => maj_gf(&poset, cli.guard_n)?,
            };
            let text = match cli.format {
                Some(Format::Json) => serde_json::to_string(&gf)?,
                _ => gf.to_string(),
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Cmd::Integral { cmd: IntegralCmd::Eval { family, n, m, l, r, s, which, k, method } } => {
            let f = match family {
                FamilyArg::Qko => IntegrandSpec::qko(*n, r, s)?,
                FamilyArg::Single => IntegrandSpec::single(*n, single(r, "r")?, single(s, "s")?, (*m).max(1) as u32),
                FamilyArg::Variant => IntegrandSpec::variant(*which, *n, single(r, "r")?, single(s, "s")?)?,
                FamilyArg::Rational => {
                    IntegrandSpec::rational(*n, *m, *l, single(r, "r")?, single(s, "s")?, CrossExponent::Shifted.twice(*l))
                }
            };
            let trunc = 2 * (*k as i64 + 1);
            let value = match method {
                Method::PartitionSum if *family != FamilyArg::Variant => partition_sum_trunc(&f, trunc)?,
                _ => bruteforce_trunc(&f, trunc)?,
            };
            let text = match cli.format {
                Some(Format::Table) => value.to_string(),
                _ => serde_json::to_string_pretty(&value)?,
            };
            emit(cli, &text)?;
            Ok(true)
        }
        Cmd::Verify(args) => {
            let report = build_check(args)?.run(cli.guard_n)?;
            let pass = report.pass;
            emit(cli, &report_text(cli, &[report], false)?)?;
            Ok(pass)
        }
        Cmd::VerifyGrid { spec } => {
            let spec: GridSpec = match spec {
                Some(path) => serde_json::from_str(&fs::read_to_string(path)?)?,
                None => harness::default_grid(),
            };
            let outcome = harness::run_grid(&spec, cli.guard_n)?;
            for e in &outcome.errors {
                eprintln!("error: {:?}: {}", e.check, e.error);
            }
            let mut text = report_text(cli, &outcome.reports, true)?;
            if cli.format == Some(Format::Table) {
                for (id, (pass, fail)) in harness::tally(&outcome) {
                    text.push_str(&format!("\n{id}: {pass} passed, {fail} failed"));
                }
            }
            emit(cli, &text)?;
            Ok(outcome.all_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
