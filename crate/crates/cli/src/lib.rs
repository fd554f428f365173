//! Command-line front end. [`run`] parses an argument vector, writes the
//! result to the given sink and returns the process exit code: `0` on
//! success, `1` when a verification fails, `2` on usage or budget errors.
//!
//! All numbers are printed as canonical integers or `p/q` rationals.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulerspline::descent::{self, DescentRoute, DEFAULT_ENUMERATION_BUDGET};
use eulerspline::eulerian::{self, RefinedRoute};
use eulerspline::geometry::{self, SliceSpec};
use eulerspline::numcore::{format_rational, parse_rational};
use eulerspline::polyring::to_json_strings;
use eulerspline::splinecore::{self, SplineOrder};
use eulerspline::{Error, Rational};
use serde_json::{json, Value};

pub mod verify;

use verify::VerifyReport;

#[derive(Parser, Debug)]
#[command(
    name = "eulerspline",
    version,
    about = "Eulerian numbers and descent polynomials through exact B-splines"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Maximum number of indexed permutations to enumerate.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET, global = true)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cardinal B-spline evaluation, pieces and integrals.
    #[command(subcommand)]
    Bspline(BsplineCmd),
    /// Eulerian numbers and refined Eulerian numbers.
    #[command(subcommand)]
    Eulerian(EulerianCmd),
    /// Descent numbers of indexed permutations.
    #[command(subcommand)]
    Descent(DescentCmd),
    /// Slab volumes of the cube.
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// Run every identity suite.
    Verify(VerifyAll),
}

#[derive(Subcommand, Debug)]
enum BsplineCmd {
    Eval {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_enum, default_value_t = SplineRoute::Explicit)]
        route: SplineRoute,
    },
    Piece {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        j: u32,
    },
    Integrate {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SplineRoute {
    Explicit,
    Recurrence,
}

#[derive(Subcommand, Debug)]
enum EulerianCmd {
    Row {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = RowRoute::Spline)]
        route: RowRoute,
    },
    Refined {
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = RefinedArg::Explicit)]
        route: RefinedArg,
    },
    Verify {
        #[arg(long, default_value_t = 6)]
        d_max: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RowRoute {
    Spline,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RefinedArg {
    Explicit,
    Lambda,
    Brute,
}

#[derive(Subcommand, Debug)]
enum DescentCmd {
    Table {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = DescentArg::Spline)]
        route: DescentArg,
    },
    Poly {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    Verify {
        #[arg(long, default_value_t = 6)]
        d_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DescentArg {
    Spline,
    Explicit,
    Recurrence,
    Refined,
    Brute,
}

#[derive(Subcommand, Debug)]
enum GeometryCmd {
    Mc {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        scale: u32,
        #[arg(long, allow_hyphen_values = true)]
        lower: String,
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Minkowski {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyAll {
    /// Run all suites (currently the only mode).
    #[arg(long, required = true)]
    all: bool,
    #[arg(long, default_value_t = 6)]
    d_max: u32,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
}

/// Failure modes of a single invocation.
enum Outcome {
    Ok,
    VerificationFailed,
}

/// Runs the CLI on `argv` (including the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::VerificationFailed) => 1,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

enum CliError {
    Io(io::Error),
    Lib(Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<Outcome, CliError>;

fn order(d: u32) -> Result<SplineOrder, CliError> {
    Ok(SplineOrder::new(d)?)
}

fn rational_arg(s: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(s)?)
}

fn print_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json values always serialize");
    writeln!(out, "{text}")
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Bspline(cmd) => bspline(cmd, fmt, out),
        Command::Eulerian(cmd) => eulerian_cmd(cmd, fmt, out),
        Command::Descent(cmd) => descent_cmd(cmd, fmt, cli.budget, out),
        Command::Geometry(cmd) => geometry_cmd(cmd, fmt, out),
        Command::Verify(v) => {
            let reports = vec![
                verify::bspline_suite(v.d_max),
                verify::eulerian_suite(v.d_max),
                verify::descent_suite(v.d_max, v.n_max, cli.budget),
                verify::geometry_suite(v.d_max, v.n_max),
            ];
            emit_reports(&reports, fmt, out)
        }
    }
}

fn bspline(cmd: &BsplineCmd, fmt: Format, out: &mut dyn Write) -> CliResult {
    match cmd {
        BsplineCmd::Eval { d, x, route } => {
            let o = order(*d)?;
            let x = rational_arg(x)?;
            let v = match route {
                SplineRoute::Explicit => splinecore::bspline_eval_explicit(o, &x),
                SplineRoute::Recurrence => splinecore::bspline_eval_recurrence(o, &x),
            };
            match fmt {
                Format::Csv => writeln!(out, "{},{}", format_rational(&x), format_rational(&v))?,
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "x": format_rational(&x),
                        "route": format!("{route:?}").to_lowercase(),
                        "value": format_rational(&v),
                    }),
                )?,
            }
        }
        BsplineCmd::Piece { d, j } => {
            let piece = splinecore::bspline_piece(order(*d)?, *j)?;
            match fmt {
                Format::Csv => {
                    for (power, c) in piece.poly.coeffs().iter().enumerate() {
                        writeln!(out, "{power},{}", format_rational(c))?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "j": j,
                        "interval": [j, j + 1],
                        "coefficients": to_json_strings(&piece.poly),
                    }),
                )?,
            }
        }
        BsplineCmd::Integrate { d, a, b } => {
            let (a, b) = (rational_arg(a)?, rational_arg(b)?);
            if a > b {
                return Err(Error::InvalidArgument("integration bounds need a <= b".into()).into());
            }
            let v = splinecore::bspline_integrate(order(*d)?, &a, &b);
            match fmt {
                Format::Csv => writeln!(
                    out,
                    "{},{},{}",
                    format_rational(&a),
                    format_rational(&b),
                    format_rational(&v)
                )?,
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "a": format_rational(&a),
                        "b": format_rational(&b),
                        "value": format_rational(&v),
                    }),
                )?,
            }
        }
    }
    Ok(Outcome::Ok)
}

fn eulerian_cmd(cmd: &EulerianCmd, fmt: Format, out: &mut dyn Write) -> CliResult {
    match cmd {
        EulerianCmd::Row { d, route } => {
            let row = match route {
                RowRoute::Spline => eulerian::eulerian_row_spline(*d)?,
                RowRoute::Brute => eulerian::eulerian_bruteforce(*d)?,
            };
            match fmt {
                Format::Csv => {
                    for (i, v) in row.values().iter().enumerate() {
                        writeln!(out, "{},{v}", i + 1)?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "route": format!("{route:?}").to_lowercase(),
                        "values": strings(row.values()),
                    }),
                )?,
            }
        }
        EulerianCmd::Refined { d, route } => {
            let route_enum = match route {
                RefinedArg::Explicit => RefinedRoute::Explicit,
                RefinedArg::Lambda => RefinedRoute::Lambda,
                RefinedArg::Brute => RefinedRoute::Brute,
            };
            let t = eulerian::refined_triangle(*d, route_enum)?;
            match fmt {
                Format::Csv => {
                    for (k, row) in t.rows().iter().enumerate() {
                        writeln!(out, "{k},{}", strings(row).join(","))?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "route": format!("{route:?}").to_lowercase(),
                        "values": t.rows().iter().map(|r| strings(r)).collect::<Vec<_>>(),
                    }),
                )?,
            }
        }
        EulerianCmd::Verify { d_max } => {
            return emit_reports(&[verify::eulerian_suite(*d_max)], fmt, out);
        }
    }
    Ok(Outcome::Ok)
}

fn descent_cmd(cmd: &DescentCmd, fmt: Format, budget: u64, out: &mut dyn Write) -> CliResult {
    match cmd {
        DescentCmd::Table { d, n, route } => {
            let r = match route {
                DescentArg::Spline => DescentRoute::Spline,
                DescentArg::Explicit => DescentRoute::Explicit,
                DescentArg::Recurrence => DescentRoute::Recurrence,
                DescentArg::Refined => DescentRoute::Refined,
                DescentArg::Brute => DescentRoute::Brute,
            };
            let t = descent::descent_table(*d, *n, r, budget)?;
            match fmt {
                Format::Csv => {
                    for (k, v) in t.values().iter().enumerate() {
                        writeln!(out, "{k},{v}")?;
                    }
                }
                Format::Json => {
                    let verdict = descent::log_concavity_verdict(&t);
                    print_json(
                        out,
                        &json!({
                            "d": d,
                            "n": n,
                            "route": format!("{route:?}").to_lowercase(),
                            "values": strings(t.values()),
                            "checks": {
                                "total": t.total().to_string(),
                                "expected_total": t.expected_total().to_string(),
                                "conservation": t.total() == t.expected_total(),
                                "log_concavity": verdict.iter().map(format_rational).collect::<Vec<_>>(),
                                "log_concave": verdict.iter().all(|v| *v >= Rational::from_integer(0.into())),
                                "unimodal": t.is_unimodal(),
                            },
                        }),
                    )?
                }
            }
        }
        DescentCmd::Poly { d, n } => {
            let t = descent::descent_table(*d, *n, DescentRoute::Spline, budget)?;
            let coeffs = to_json_strings(t.polynomial());
            match fmt {
                Format::Csv => writeln!(out, "{}", coeffs.join(","))?,
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "n": n,
                        "coefficients": coeffs,
                        "polynomial": t.polynomial().to_string(),
                    }),
                )?,
            }
        }
        DescentCmd::Verify { d_max, n_max } => {
            return emit_reports(&[verify::descent_suite(*d_max, *n_max, budget)], fmt, out);
        }
    }
    Ok(Outcome::Ok)
}

fn geometry_cmd(cmd: &GeometryCmd, fmt: Format, out: &mut dyn Write) -> CliResult {
    match cmd {
        GeometryCmd::Mc {
            d,
            scale,
            lower,
            upper,
            samples,
            seed,
        } => {
            let spec = SliceSpec::new(*d, *scale, rational_arg(lower)?, rational_arg(upper)?)?;
            let est = geometry::mc_volume(&spec, *samples, *seed)?;
            let fields = [
                ("d", d.to_string()),
                ("scale", scale.to_string()),
                ("lower", format_rational(&spec.lower)),
                ("upper", format_rational(&spec.upper)),
                ("samples", est.samples.to_string()),
                ("seed", est.seed.to_string()),
                ("hits", est.hits.to_string()),
                ("estimate", format_rational(&est.estimate)),
                ("standard_error", format_rational(&est.standard_error)),
            ];
            match fmt {
                Format::Csv => {
                    for (k, v) in fields {
                        writeln!(out, "{k},{v}")?;
                    }
                }
                Format::Json => {
                    let map: serde_json::Map<String, Value> = fields
                        .into_iter()
                        .map(|(k, v)| (k.to_string(), Value::String(v)))
                        .collect();
                    print_json(out, &Value::Object(map))?
                }
            }
        }
        GeometryCmd::Minkowski { d, k } => {
            let poly = geometry::minkowski_poly(*d, *k)?;
            let mixed = (0..=*d)
                .map(|j| {
                    geometry::mixed_volume_from_poly(&poly, *d, j).map(|v| format_rational(&v))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match fmt {
                Format::Csv => {
                    for (j, m) in mixed.iter().enumerate() {
                        writeln!(out, "{j},{},{m}", format_rational(&poly.coefficient(j)))?;
                    }
                }
                Format::Json => print_json(
                    out,
                    &json!({
                        "d": d,
                        "k": k,
                        "coefficients": (0..=*d as usize)
                            .map(|j| format_rational(&poly.coefficient(j)))
                            .collect::<Vec<_>>(),
                        "mixed_volumes": mixed,
                    }),
                )?,
            }
        }
    }
    Ok(Outcome::Ok)
}

fn emit_reports(reports: &[VerifyReport], fmt: Format, out: &mut dyn Write) -> CliResult {
    let failed: u64 = reports.iter().map(|r| r.cases_failed).sum();
    let run: u64 = reports.iter().map(|r| r.cases_run).sum();
    match fmt {
        Format::Csv => {
            for r in reports {
                writeln!(out, "suite,{},{},{}", r.suite, r.cases_run, r.cases_failed)?;
                for f in &r.failures {
                    writeln!(
                        out,
                        "failure,{},{},{},{}",
                        r.suite, f.case, f.expected, f.actual
                    )?;
                }
            }
            writeln!(out, "total,{run},{failed}")?;
        }
        Format::Json => print_json(
            out,
            &json!({
                "cases_run": run,
                "cases_failed": failed,
                "reports": reports.iter().map(VerifyReport::to_json).collect::<Vec<_>>(),
            }),
        )?,
    }
    Ok(if failed == 0 {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}
