//! The `flowring` command line.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::autonomous::{autonomous_seq, autonomous_seq_bell};
use crate::bell::{partition_count, partitions};
use crate::coeff::{Domain, GaussianRational, Rational, Scalar, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::expr::{parse, FieldExpr};
use crate::flow::{decompose_flow, flow_series, ClosedFormFlow, DecomposeMode, FlowSeries};
use crate::hurwitz::HurwitzSeries;
use crate::oracle::rk4_solve;
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_FLAGS: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "flowring", version, about = "Exact flows of y' = f(y) in the ring of Hurwitz series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Rational,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sum,
    Product,
}

#[derive(Debug, Args)]
struct Orders {
    /// Truncation order in x
    #[arg(long, default_value_t = 16)]
    order_x: usize,
    /// Truncation order in t
    #[arg(long, default_value_t = 12)]
    order_t: usize,
    /// Coefficient field
    #[arg(long, value_enum, default_value_t = DomainArg::Rational)]
    domain: DomainArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the autonomous polynomials A_0..A_M of a field
    Series {
        /// Field f(x), e.g. "1 + x^2" or "exp(-x)"
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[command(flatten)]
        orders: Orders,
        /// Compute through Bell polynomials instead of the recurrence
        #[arg(long)]
        bell: bool,
    },
    /// Print the flow series of a field
    Flow {
        /// Field f(x), e.g. "1 + x^2" or "exp(-x)"
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[command(flatten)]
        orders: Orders,
    },
    /// Evaluate the flow at a point: series, closed form and RK4
    Eval {
        /// Field f(x), e.g. "1 + x^2" or "exp(-x)"
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        /// Time
        #[arg(long = "t", allow_negative_numbers = true)]
        t0: f64,
        /// Initial value
        #[arg(long = "x", allow_negative_numbers = true)]
        x0: f64,
        #[command(flatten)]
        orders: Orders,
        /// RK4 steps
        #[arg(long, default_value_t = 1024)]
        steps: usize,
    },
    /// Split a flow into component flows combined by sum or product
    Decompose {
        /// How the parts combine
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Component field, repeatable
        #[arg(long = "part", required = true, allow_hyphen_values = true)]
        parts: Vec<String>,
        #[command(flatten)]
        orders: Orders,
    },
    /// Run the invariant suite
    Verify {
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the partitions of n with their Bell weights
    BellDebug {
        /// Partition size
        #[arg(long)]
        n: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Integrate y' = f(y) with RK4
    #[command(hide = true)]
    Rk4 {
        #[arg(long, allow_hyphen_values = true)]
        field: String,
        #[arg(long = "t", allow_negative_numbers = true)]
        t1: f64,
        #[arg(long = "x", allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 1024)]
        steps: usize,
    },
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidScalar(_) | Error::UnsupportedArgument(_) | Error::Json(_) => {
            EXIT_PARSE
        }
        Error::DivisionByZero
        | Error::DomainMismatch { .. }
        | Error::NotAUnit
        | Error::DomainRequired
        | Error::ClosedFormDomain(_)
        | Error::NumericBlowup { .. }
        | Error::NotEvaluable(_) => EXIT_DOMAIN,
        Error::OutOfRange(_) | Error::OrderMismatch { .. } | Error::OrderExhausted(_) => EXIT_FLAGS,
    }
}

/// Runs the command line with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line; results go to `out`, diagnostics to `err`.
pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if shown { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if shown { EXIT_OK } else { EXIT_FLAGS };
        }
    };
    let mut text = String::new();
    let mut notes = String::new();
    let code = match dispatch(cli.command, &mut text, &mut notes) {
        Ok(code) => code,
        Err(e) => {
            notes += &format!("error: {e}\n");
            exit_code(&e)
        }
    };
    let _ = out.write_all(text.as_bytes());
    let _ = err.write_all(notes.as_bytes());
    code
}

fn check_orders(orders: &Orders) -> Result<()> {
    if !(1..=TABLE_LIMIT).contains(&orders.order_x) {
        return Err(Error::OutOfRange(format!("--order-x must be in 1..={TABLE_LIMIT}")));
    }
    if !(1..=orders.order_x).contains(&orders.order_t) {
        return Err(Error::OutOfRange("--order-t must be in 1..=order-x".into()));
    }
    Ok(())
}

fn dispatch(command: Command, out: &mut String, err: &mut String) -> Result<i32> {
    match command {
        Command::Series { field, orders, bell } => {
            check_orders(&orders)?;
            let expr = parse(&field)?;
            match orders.domain {
                DomainArg::Rational => print_series::<Rational>(&expr, &orders, bell, out),
                DomainArg::Gaussian => print_series::<GaussianRational>(&expr, &orders, bell, out),
            }
        }
        Command::Flow { field, orders } => {
            check_orders(&orders)?;
            let expr = parse(&field)?;
            match orders.domain {
                DomainArg::Rational => print_flow::<Rational>(&expr, &orders, out),
                DomainArg::Gaussian => print_flow::<GaussianRational>(&expr, &orders, out),
            }
        }
        Command::Eval {
            field,
            t0,
            x0,
            orders,
            steps,
        } => {
            check_orders(&orders)?;
            let expr = parse(&field)?;
            match orders.domain {
                DomainArg::Rational => eval_point::<Rational>(&expr, t0, x0, &orders, steps, out, err),
                DomainArg::Gaussian => eval_point::<GaussianRational>(&expr, t0, x0, &orders, steps, out, err),
            }
        }
        Command::Decompose { mode, parts, orders } => {
            check_orders(&orders)?;
            let mode = match mode {
                ModeArg::Sum => DecomposeMode::Sum,
                ModeArg::Product => DecomposeMode::Product,
            };
            let exprs = parts.iter().map(|p| parse(p)).collect::<Result<Vec<_>>>()?;
            match orders.domain {
                DomainArg::Rational => decompose::<Rational>(&exprs, mode, &orders, out),
                DomainArg::Gaussian => decompose::<GaussianRational>(&exprs, mode, &orders, out),
            }
        }
        Command::Verify { seed, format } => verify(seed, format, out),
        Command::BellDebug { n, format } => bell_debug(n, format, out),
        Command::Rk4 { field, t1, x0, steps } => {
            let traj = rk4_solve(&parse(&field)?, x0, t1, steps)?;
            *out += &format!("{:.17e}\n", traj.final_value());
            Ok(EXIT_OK)
        }
    }
}

fn domain_of(arg: DomainArg) -> Domain {
    match arg {
        DomainArg::Rational => Domain::Rational,
        DomainArg::Gaussian => Domain::Gaussian,
    }
}

fn row<C: Scalar>(series: &HurwitzSeries<C>) -> String {
    series.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn print_series<C: Scalar>(expr: &FieldExpr, orders: &Orders, bell: bool, out: &mut String) -> Result<i32> {
    let f: HurwitzSeries<C> = expr.elaborate(orders.order_x)?;
    let seq = if bell {
        autonomous_seq_bell(&f, orders.order_t)?
    } else {
        autonomous_seq(&f, orders.order_t)?
    };
    match orders.format {
        Format::Json => *out += &format!("{}\n", serde_json::to_string_pretty(&seq)?),
        Format::Text => {
            let mut text = format!("# field {expr} over {}\n", domain_of(orders.domain));
            for (n, term) in seq.terms().iter().enumerate() {
                text += &format!("A_{n}: {}\n", row(term));
            }
            *out += &text;
        }
    }
    Ok(EXIT_OK)
}

fn flow_text<C: Scalar>(flow: &FlowSeries<C>) -> String {
    let mut text = format!("field: {}\n", row(flow.field()));
    for (n, term) in flow.tcoeffs().iter().enumerate() {
        text += &format!("t^{n}/{n}!: {}\n", row(term));
    }
    text
}

fn print_flow<C: Scalar>(expr: &FieldExpr, orders: &Orders, out: &mut String) -> Result<i32> {
    let flow = flow_series::<C>(&expr.elaborate(orders.order_x)?, orders.order_t)?;
    match orders.format {
        Format::Json => *out += &format!("{}\n", serde_json::to_string_pretty(&flow)?),
        Format::Text => {
            *out += &format!("# flow of {expr} over {}\n{}", domain_of(orders.domain), flow_text(&flow))
        }
    }
    Ok(EXIT_OK)
}

fn complex_text(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15e}", z.re)
    } else {
        format!("{:.15e}{:+.15e}i", z.re, z.im)
    }
}

#[allow(clippy::too_many_arguments)]
fn eval_point<C: Scalar>(
    expr: &FieldExpr,
    t0: f64,
    x0: f64,
    orders: &Orders,
    steps: usize,
    out: &mut String,
    err: &mut String,
) -> Result<i32> {
    let flow = flow_series::<C>(&expr.elaborate(orders.order_x)?, orders.order_t)?;
    let series = flow.eval(Complex64::new(t0, 0.0), Complex64::new(x0, 0.0));
    let mut code = EXIT_OK;

    let closed = ClosedFormFlow::recognize(expr);
    let closed_value = match &closed {
        Some(cf) => match cf.eval(t0, x0) {
            Ok(v) => Some(v),
            Err(e) => {
                *err += &format!("closed form {}: {e}\n", cf.kind());
                code = EXIT_DOMAIN;
                None
            }
        },
        None => None,
    };
    let rk4_value = match rk4_solve(expr, x0, t0, steps) {
        Ok(traj) => Some(traj.final_value()),
        Err(e) => {
            *err += &format!("rk4: {e}\n");
            if matches!(e, Error::NumericBlowup { .. }) {
                code = EXIT_DOMAIN;
            }
            None
        }
    };
    let delta = |v: Option<f64>| v.map(|v| (Complex64::new(v, 0.0) - series).norm());

    match orders.format {
        Format::Json => {
            let doc = json!({
                "t": t0,
                "x": x0,
                "orderX": orders.order_x,
                "orderT": orders.order_t,
                "series": { "re": series.re, "im": series.im },
                "closedForm": closed.as_ref().map(|cf| json!({
                    "form": cf,
                    "value": closed_value,
                    "delta": delta(closed_value),
                })),
                "rk4": { "steps": steps, "value": rk4_value, "delta": delta(rk4_value) },
            });
            *out += &format!("{}\n", serde_json::to_string_pretty(&doc)?);
        }
        Format::Text => {
            let mut text = format!("series       {}\n", complex_text(series));
            if let Some(cf) = &closed {
                let params: Vec<String> = cf.params().iter().map(ToString::to_string).collect();
                match closed_value {
                    Some(v) => {
                        text += &format!(
                            "closed form  {v:.15e}  |delta| {:.3e}  {} [{}]\n",
                            delta(Some(v)).unwrap_or(0.0),
                            cf.kind(),
                            params.join(", ")
                        )
                    }
                    None => text += &format!("closed form  undefined  {} [{}]\n", cf.kind(), params.join(", ")),
                }
            }
            match rk4_value {
                Some(v) => {
                    text += &format!("rk4          {v:.15e}  |delta| {:.3e}  {steps} steps\n", delta(Some(v)).unwrap_or(0.0))
                }
                None => text += "rk4          unavailable\n",
            }
            *out += &text;
        }
    }
    Ok(code)
}

fn decompose<C: Scalar>(exprs: &[FieldExpr], mode: DecomposeMode, orders: &Orders, out: &mut String) -> Result<i32> {
    let parts = exprs
        .iter()
        .map(|e| e.elaborate::<C>(orders.order_x))
        .collect::<Result<Vec<_>>>()?;
    let d = decompose_flow(&parts, mode, orders.order_t)?;
    match orders.format {
        Format::Json => {
            let doc = json!({
                "mode": if mode == DecomposeMode::Sum { "sum" } else { "product" },
                "components": d.components,
                "combined": d.combined,
                "exact": d.exact,
            });
            *out += &format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
        Format::Text => {
            let mut text = String::new();
            for (expr, flow) in exprs.iter().zip(&d.components) {
                text += &format!("# component {expr}\n{}", flow_text(flow));
            }
            text += &format!("# combined\n{}", flow_text(&d.combined));
            text += &format!("exact: {}\n", d.exact);
            *out += &text;
        }
    }
    Ok(if d.exact { EXIT_OK } else { EXIT_VERIFY })
}

fn verify(seed: u64, format: Format, out: &mut String) -> Result<i32> {
    let rows = run_suite(seed);
    let all = rows.iter().all(|r| r.passed);
    match format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|r| json!({ "check": r.name, "passed": r.passed, "detail": r.detail }))
                .collect();
            *out += &format!("{}\n", serde_json::to_string_pretty(&json!({ "seed": seed, "rows": doc }))?)
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
            let mut text = String::new();
            for r in &rows {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                text += &format!("{verdict}  {:width$}  {}\n", r.name, r.detail);
            }
            *out += &text;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_VERIFY })
}

fn bell_debug(n: usize, format: Format, out: &mut String) -> Result<i32> {
    let parts = partitions(n)?;
    match format {
        Format::Json => {
            let doc: Vec<_> = parts
                .iter()
                .map(|p| json!({ "j": p.multiplicities(), "parts": p.len(), "weight": p.weight().to_string() }))
                .collect();
            *out += &format!("{}\n", serde_json::to_string_pretty(&json!({ "n": n, "partitions": doc }))?)
        }
        Format::Text => {
            let mut text = format!("p({n}) = {}\n", partition_count(n)?);
            for p in &parts {
                let j: Vec<String> = p.multiplicities().iter().map(ToString::to_string).collect();
                text += &format!("({})  k={}  weight={}\n", j.join(","), p.len(), p.weight());
            }
            *out += &text;
        }
    }
    Ok(EXIT_OK)
}
