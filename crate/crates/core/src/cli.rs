//! Command-line front end: `lommel <subcommand> [flags]`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{LommelError, Result};
use crate::hyp_trig::{hyp2f1_trig, lommel_trig_integral};
use crate::lommel::{lommel_series, validate_params, EvalResult};
use crate::pade::{odd_family_raw, triple_even_derivative, triple_general, ApproximantTriple};
use crate::quadrature::{lommel_cos_quadrature, lommel_quadrature};
use crate::ratpoly::rational_to_string;
use crate::roots::{all_roots, family_poly, fig_data, fig_data_csv, fig_data_json, table1, table2, Family, Which};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "lommel", version, about = "Lommel functions, Padé triples for sin/cos, and their zeros")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format; tables and figdata default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Quadrature,
    Cosquad,
    Trig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Even,
    Odd,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Primitive,
    Raw,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate s_{mu,nu}(z).
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Print an approximant triple (A, B, C).
    Approximant {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: u32,
        /// Required for the general family.
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value_t = NormalizationArg::Primitive)]
        normalization: NormalizationArg,
    },
    /// Roots of one polynomial of a family triple.
    Zeros {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_which)]
        which: Which,
        #[arg(long)]
        n: u32,
    },
    /// Relative zero discrepancy tables.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        which: u32,
        #[arg(long)]
        kmax: u32,
    },
    /// Root coordinates of the A polynomials for n = 1..nmax.
    Figdata {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        nmax: u32,
    },
    /// 2F1(1/2+nu, 1/2-nu; n+1/2; sin^2(theta/2)) in closed trigonometric form.
    Hyp2f1trig {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
    },
    /// Run every invariant check and print a summary.
    Verify,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: LommelError| e.to_string())
}

fn parse_which(s: &str) -> std::result::Result<Which, String> {
    s.parse().map_err(|e: LommelError| e.to_string())
}

/// What a subcommand produced: text for stdout and whether it counts as success.
struct Rendered {
    text: String,
    ok: bool,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered { text, ok: true }
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Series => "series",
        Method::Quadrature => "quadrature",
        Method::Cosquad => "cosquad",
        Method::Trig => "trig",
    }
}

fn evaluate(mu: f64, nu: f64, z: f64, method: Method, tol: f64) -> Result<EvalResult> {
    if !(tol > 0.0) {
        return Err(LommelError::Domain(format!("tol = {tol} must be positive")));
    }
    match method {
        Method::Series => lommel_series(&validate_params(mu, nu)?, z, tol),
        Method::Quadrature => lommel_quadrature(mu, nu, z, tol),
        Method::Cosquad => lommel_cos_quadrature(mu, nu, z, tol),
        Method::Trig => {
            if mu < 0.0 || mu.fract() != 0.0 {
                return Err(LommelError::Domain(format!("the trig method needs a nonnegative integer mu, got {mu}")));
            }
            lommel_trig_integral(mu as u32, nu, z, tol)
        }
    }
}

fn approximant(family: FamilyArg, n: u32, m: Option<u32>, normalization: NormalizationArg) -> Result<ApproximantTriple> {
    let raw = match (family, m) {
        (FamilyArg::Even, None) => triple_even_derivative(n),
        (FamilyArg::Odd, None) => odd_family_raw(n),
        (FamilyArg::General, Some(m)) => triple_general(m, n)?,
        (FamilyArg::General, None) => return Err(LommelError::Parse("--m is required for the general family".into())),
        (_, Some(_)) => return Err(LommelError::Parse("--m applies only to the general family".into())),
    };
    Ok(match normalization {
        NormalizationArg::Primitive => raw.to_primitive(),
        NormalizationArg::Raw => raw,
    })
}

fn triple_csv(t: &ApproximantTriple) -> String {
    let len = t.polys().iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut out = String::from("power,A,B,C\n");
    for k in 0..len {
        let cells: Vec<String> = t.polys().iter().map(|p| rational_to_string(&p.coeff(k))).collect();
        out.push_str(&format!("{k},{}\n", cells.join(",")));
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output serialization is infallible");
    s.push('\n');
    s
}

fn render(command: &Command, format: Option<Format>) -> Result<Rendered> {
    let json_default = format.unwrap_or(Format::Json);
    let csv_default = format.unwrap_or(Format::Csv);
    Ok(match command {
        &Command::Eval { mu, nu, z, method, tol } => {
            let r = evaluate(mu, nu, z, method, tol)?;
            let name = method_name(method);
            Rendered::ok(match json_default {
                Format::Json => to_json(&json!({
                    "mu": mu, "nu": nu, "z": z, "method": name, "value": r.value, "est_error": r.est_error
                })),
                Format::Csv => format!(
                    "mu,nu,z,method,value,est_error\n{mu},{nu},{z},{name},{:.15e},{:.5e}\n",
                    r.value, r.est_error
                ),
            })
        }
        &Command::Approximant { family, n, m, normalization } => {
            let t = approximant(family, n, m, normalization)?;
            Rendered::ok(match json_default {
                Format::Json => format!("{}\n", t.to_json()),
                Format::Csv => triple_csv(&t),
            })
        }
        &Command::Zeros { family, which, n } => {
            let set = all_roots(&family_poly(family, which, n))?;
            Rendered::ok(match json_default {
                Format::Json => format!("{}\n", set.to_json()),
                Format::Csv => set.to_csv(),
            })
        }
        &Command::Tables { which, kmax } => {
            let table = if which == 1 { table1(kmax)? } else { table2(kmax)? };
            Rendered::ok(match csv_default {
                Format::Json => format!("{}\n", table.to_json()),
                Format::Csv => table.to_csv(),
            })
        }
        &Command::Figdata { family, nmax } => {
            let data = fig_data(family, nmax)?;
            Rendered::ok(match csv_default {
                Format::Json => format!("{}\n", fig_data_json(&data)),
                Format::Csv => fig_data_csv(&data),
            })
        }
        &Command::Hyp2f1trig { n, nu, theta } => {
            let value = hyp2f1_trig(n, nu, theta)?;
            Rendered::ok(match json_default {
                Format::Json => to_json(&json!({ "n": n, "nu": nu, "theta": theta, "value": value })),
                Format::Csv => format!("n,nu,theta,value\n{n},{nu},{theta},{value:.15e}\n"),
            })
        }
        Command::Verify => {
            let checks = verify::run_all();
            let ok = checks.iter().all(|c| c.passed);
            let text = match json_default {
                Format::Json => to_json(&json!({ "passed": ok, "checks": checks })),
                Format::Csv => verify::summary(&checks),
            };
            Rendered { text, ok }
        }
    })
}

/// Exit code for a library error: 2 for bad input, 3 for non-convergence.
pub fn exit_code(e: &LommelError) -> i32 {
    match e {
        LommelError::NonConvergence(_) => 3,
        LommelError::Reconciliation(_) => 1,
        _ => 2,
    }
}

fn report(kind: &str, detail: &str) {
    eprintln!("{}", json!({ "error": kind, "detail": detail }));
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let detail = e.to_string();
            report("ParseError", detail.lines().next().unwrap_or_default().trim_start_matches("error: "));
            return 2;
        }
    };
    let rendered = match render(&cli.command, cli.output.format) {
        Ok(r) => r,
        Err(e) => {
            report(e.kind(), &e.to_string());
            return exit_code(&e);
        }
    };
    let written = match &cli.output.output {
        Some(path) => fs::write(path, &rendered.text),
        None => io::stdout().lock().write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written {
        report("IoError", &e.to_string());
        return 1;
    }
    if rendered.ok {
        0
    } else {
        1
    }
}
