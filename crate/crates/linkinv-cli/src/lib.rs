//! The `linkinv` command line, kept in a library so tests can drive it in process.

pub mod catalog;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linkinv::verify::{resummation_check, Report};
use linkinv::{burau, rmatrix, u1rc, BraidWord, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "linkinv", about = "Exact invariants of braid closures", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Alexander-Conway function from the Burau representation
    Alexander(Common),
    /// Colored Jones polynomial
    Jones(Common),
    /// Melvin-Morton coefficients as polynomials in the colors
    Mm(Common),
    /// U(1)-reducible-connection series
    U1rc(Common),
    /// Resum the series at integer colors and compare with the colored Jones polynomial
    ResumCheck(Common),
    /// Root-of-unity symmetry of the colored Jones polynomial
    SymmetryCheck(Common),
    /// List the built-in links, or show one with --catalog
    Catalog(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Braid word "N: i j ..." with signed generator indices
    #[arg(long)]
    braid: Option<String>,
    /// Use a catalog entry instead of --braid
    #[arg(long)]
    catalog: Option<String>,
    /// One color per component, space or comma separated
    #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
    colors: Vec<i64>,
    #[arg(long, default_value_t = 4)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Decimal digits for symmetry-check
    #[arg(long, default_value_t = 50)]
    precision: u32,
    /// Component whose color is reflected, counted from 1
    #[arg(long, default_value_t = 1)]
    component: usize,
    /// Root of unity order for symmetry-check
    #[arg(long = "K", default_value_t = 5)]
    k: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let text = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion => Outcome::ok(text, EXIT_OK),
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => Outcome::fail(EXIT_USAGE, m),
        Err(Failure::Compute(e @ Error::NegativePowersSurvive { .. })) => Outcome::fail(EXIT_VERIFY, e),
        Err(Failure::Compute(e @ (Error::ColorCountMismatch { .. } | Error::NonPositiveColor))) => {
            Outcome::fail(EXIT_USAGE, e)
        }
        Err(Failure::Compute(e)) => Outcome::fail(EXIT_COMPUTE, e),
    }
}

fn braid_of(c: &Common) -> Result<BraidWord, Failure> {
    match (&c.braid, &c.catalog) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --braid or --catalog, not both".into())),
        (Some(s), None) => BraidWord::parse(s).map_err(|e| Failure::Usage(e.to_string())),
        (None, Some(n)) => {
            catalog::lookup(n).map(|e| e.braid()).ok_or_else(|| Failure::Usage(format!("unknown catalog entry {n:?}")))
        }
        (None, None) => Err(Failure::Usage("missing --braid or --catalog".into())),
    }
}

/// Explicit colors, or 2 on every component when none are given.
fn colors_of(c: &Common, b: &BraidWord) -> Vec<i64> {
    if c.colors.is_empty() {
        vec![2; b.close().components]
    } else {
        c.colors.clone()
    }
}

fn emit(fmt: Format, json: &Value, text: String) -> String {
    match fmt {
        Format::Json => format!("{json}\n"),
        Format::Text => text,
    }
}

fn report_outcome(fmt: Format, r: &Report) -> Outcome {
    let mut text = format!("{}: {}\n", r.check, if r.pass { "pass" } else { "FAIL" });
    for s in &r.residuals {
        text += &format!("  residual {s}\n");
    }
    Outcome::ok(emit(fmt, &r.to_json(), text), if r.pass { EXIT_OK } else { EXIT_VERIFY })
}

fn dispatch(cmd: Cmd) -> Result<Outcome, Failure> {
    match cmd {
        Cmd::Alexander(c) => {
            let b = braid_of(&c)?;
            let a = burau::alexander_conway(&b)?;
            let mut text = format!("L = {}\n", a.components);
            if let Some(n) = &a.conway {
                text += &format!("nabla = {n}\n");
            }
            if let Some(d) = &a.delta {
                text += &format!("Delta = {d}\n");
            }
            let v = json!({"braid": b.to_json(), "alexander": a.to_json()});
            Ok(Outcome::ok(emit(c.format, &v, text), EXIT_OK))
        }
        Cmd::Jones(c) => {
            let b = braid_of(&c)?;
            let colors = colors_of(&c, &b);
            let j = rmatrix::colored_jones(&b, &colors)?;
            let v = json!({"braid": b.to_json(), "colors": colors, "jones": j.to_json()});
            Ok(Outcome::ok(emit(c.format, &v, format!("J = {j}\n")), EXIT_OK))
        }
        Cmd::Mm(c) => {
            let b = braid_of(&c)?;
            let p = rmatrix::melvin_morton_coeffs(&b, c.order)?;
            let text: String = p.iter().enumerate().map(|(n, x)| format!("P_{n} = {x}\n")).collect();
            let coeffs: Vec<Value> = p.iter().enumerate().map(|(n, x)| json!({"n": n, "p": x.to_json()})).collect();
            let v = json!({"braid": b.to_json(), "order": c.order, "coefficients": coeffs});
            Ok(Outcome::ok(emit(c.format, &v, text), EXIT_OK))
        }
        Cmd::U1rc(c) => {
            let b = braid_of(&c)?;
            let s = u1rc::u1rc_series(&b, c.order)?;
            let mut text = format!("L = {}\nD = {}\n", s.components, s.d);
            for (n, f) in s.orders.iter().enumerate() {
                text += &format!("h^{n}: ({}) / D^{}\n", f.num, f.pow);
            }
            Ok(Outcome::ok(emit(c.format, &s.to_json(), text), EXIT_OK))
        }
        Cmd::ResumCheck(c) => {
            let b = braid_of(&c)?;
            let colors = colors_of(&c, &b);
            let r = resummation_check(&b, &colors, c.order)?;
            Ok(report_outcome(c.format, &r))
        }
        Cmd::SymmetryCheck(c) => {
            let b = braid_of(&c)?;
            let colors = colors_of(&c, &b);
            if c.component == 0 {
                return Err(Failure::Usage("--component counts from 1".into()));
            }
            let s = rmatrix::symmetry_principle_check(&b, &colors, c.component - 1, c.k, c.precision)?;
            let r = Report {
                check: "symmetry".into(),
                input: json!({
                    "braid": b.to_json(),
                    "colors": colors,
                    "component": c.component,
                    "K": c.k,
                    "precision": c.precision,
                }),
                order: None,
                pass: s.pass,
                residuals: vec![format!("{:e}", s.residual)],
            };
            Ok(report_outcome(c.format, &r))
        }
        Cmd::Catalog(c) => {
            let entries: Vec<&catalog::CatalogEntry> = match &c.catalog {
                Some(n) => vec![catalog::lookup(n).ok_or_else(|| Failure::Usage(format!("unknown catalog entry {n:?}")))?],
                None => catalog::CATALOG.iter().collect(),
            };
            let all_sane = entries.iter().all(|e| e.sane());
            let mut text = String::new();
            let mut list = Vec::new();
            for e in &entries {
                text += &format!("{:<14} {:<14} L={} {}\n", e.name, format!("\"{}\"", e.braid), e.components, e.notes);
                list.push(json!({
                    "name": e.name,
                    "braid": e.braid().to_json(),
                    "L": e.components,
                    "notes": e.notes,
                    "sane": e.sane(),
                }));
            }
            let code = if all_sane { EXIT_OK } else { EXIT_VERIFY };
            Ok(Outcome::ok(emit(c.format, &json!(list), text), code))
        }
    }
}
