//! Command-line front end: evaluation, splitting, identity verification,
//! convergence benchmarks, and the catalog listing.
//!
//! Exit codes: 0 success / all passed, 1 verification failure, 2 usage
//! error, 3 numeric failure (divergent or precision unreachable).

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperf::lab::{self, SeriesId};
use hyperf::series::HyperSpec;
use hyperf::transforms::{cancel_common_params, split_even, split_odd, ScaledSpec};
use hyperf::{Error, Float, PrecisionContext, Rational};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "hyperf",
    about = "High-precision hypergeometric series and identity verification",
    version
)]
struct Cli {
    /// Decimal digits of absolute accuracy
    #[arg(
        long,
        global = true,
        env = "HYPERF_DIGITS",
        default_value_t = 20,
        value_parser = clap::value_parser!(u32).range(1..)
    )]
    digits: u32,

    /// Cap on the number of series terms
    #[arg(
        long,
        global = true,
        default_value_t = 100_000,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    max_terms: u64,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Part {
    Even,
    Odd,
    Both,
}

#[derive(Args)]
struct SpecArgs {
    /// Numerator parameters, comma-separated exact rationals (e.g. 1/2,1/2)
    #[arg(short = 'a', long = "num", value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational)]
    num: Vec<Rational>,

    /// Denominator parameters, comma-separated exact rationals
    #[arg(short = 'b', long = "den", value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational)]
    den: Vec<Rational>,

    /// Argument of the series, an exact rational
    #[arg(short = 'z', long = "arg", allow_hyphen_values = true, value_parser = parse_rational)]
    z: Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pFq series with a rigorous error bound
    Eval(SpecArgs),
    /// Split a series into its even/odd parts in the squared argument
    Split {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Part::Both)]
        part: Part,
        /// Cancel matching numerator/denominator parameters
        #[arg(long)]
        simplify: bool,
    },
    /// Verify catalogued identities
    Verify {
        /// Identity id (see `list`)
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        /// Verify the whole catalog
        #[arg(long)]
        all: bool,
    },
    /// Convergence benchmarks over the catalogued series
    Bench {
        /// Report terms needed to push the tail bound below this epsilon
        #[arg(long, conflicts_with = "decay", required_unless_present = "decay")]
        epsilon: Option<String>,
        /// Report the MMS/RP1 term decay-ratio profile up to this index
        #[arg(long)]
        decay: Option<usize>,
    },
    /// List the identity catalog
    List,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(format!(
            "`{t}` is not exact; write a fraction like 1/2 or an integer"
        ));
    }
    if let Some((_, den)) = t.split_once('/') {
        match den.trim().parse::<rug::Integer>() {
            Ok(d) if d != 0 => {}
            _ => return Err(format!("`{t}` has a zero or malformed denominator")),
        }
    }
    t.parse::<Rational>()
        .map_err(|_| format!("`{t}` is not a rational number"))
}

fn numeric_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::DivergentSeries
            | Error::ConditionalConvergenceUnsupported
            | Error::PrecisionUnreachable { .. }
    )
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if numeric_failure(e) {
        ExitCode::from(3)
    } else {
        ExitCode::from(2)
    }
}

/// Fixed-notation decimal string with `digits` significant figures past
/// the leading digit; deterministic for a given value and digit count.
fn dec(f: &Float, digits: u32) -> String {
    format!("{:.*e}", digits as usize, f)
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn rational_list(params: &[Rational]) -> String {
    params
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn spec_display(prefactor: &Rational, spec: &HyperSpec) -> String {
    format!(
        "{} × {}F{}({}; {}; {})",
        prefactor,
        spec.num_params().len(),
        spec.den_params().len(),
        rational_list(spec.num_params()),
        rational_list(spec.den_params()),
        spec.argument()
    )
}

fn cmd_eval(args: &SpecArgs, ctx: &PrecisionContext, format: Format) -> Result<ExitCode, Error> {
    let spec = HyperSpec::new(args.num.clone(), args.den.clone(), args.z.clone())?;
    let class = spec.classify_convergence();
    let start = Instant::now();
    let out = spec.evaluate(ctx)?;
    let elapsed = start.elapsed().as_millis();
    let value = dec(out.result.value(), ctx.digits());
    let err = dec(out.result.err(), 3);
    match format {
        Format::Text => {
            println!("value: {value}");
            println!("error: {err}");
            println!("terms: {}", out.terms_used);
            println!("class: {class}");
        }
        Format::Json => {
            println!(
                "{{\"value\": \"{value}\", \"error\": \"{err}\", \"terms\": {}, \"class\": \"{class}\", \"elapsed_ms\": {elapsed}}}",
                out.terms_used
            );
        }
        Format::Csv => {
            println!("value,error,terms,class");
            println!("{value},{err},{},{class}", out.terms_used);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn part_output(label: &str, s: &ScaledSpec, simplify: bool, format: Format) -> String {
    let spec = if simplify {
        cancel_common_params(&s.spec)
    } else {
        s.spec.clone()
    };
    match format {
        Format::Text => format!("{label}: {}", spec_display(&s.prefactor, &spec)),
        Format::Json => format!(
            "{{\"part\": \"{label}\", \"prefactor\": \"{}\", \"num_params\": \"{}\", \"den_params\": \"{}\", \"argument\": \"{}\", \"degenerate\": {}}}",
            s.prefactor,
            rational_list(spec.num_params()),
            rational_list(spec.den_params()),
            spec.argument(),
            s.degenerate
        ),
        Format::Csv => format!(
            "{label},{},{},{},{}",
            csv_field(&s.prefactor.to_string()),
            csv_field(&rational_list(spec.num_params())),
            csv_field(&rational_list(spec.den_params())),
            csv_field(&spec.argument().to_string())
        ),
    }
}

fn cmd_split(
    args: &SpecArgs,
    part: Part,
    simplify: bool,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<ExitCode, Error> {
    let spec = HyperSpec::new(args.num.clone(), args.den.clone(), args.z.clone())?;
    let even = split_even(&spec);
    let odd = split_odd(&spec);
    let mut lines = Vec::new();
    if format == Format::Csv {
        lines.push("part,prefactor,num_params,den_params,argument".to_string());
    }
    match part {
        Part::Even => lines.push(part_output("even", &even, simplify, format)),
        Part::Odd => lines.push(part_output("odd", &odd, simplify, format)),
        Part::Both => {
            lines.push(part_output("even", &even, simplify, format));
            lines.push(part_output("odd", &odd, simplify, format));
            // reconstruction check: even(z^2) + pref * odd(z^2) = F(z)
            let whole = spec.evaluate(ctx)?;
            let e = even.spec.evaluate(ctx)?;
            let rebuilt = if odd.degenerate {
                e.result
            } else {
                let o = odd.spec.evaluate(ctx)?;
                e.result.add(&o.result.mul_rational(&odd.prefactor))
            };
            let diff = rebuilt.abs_diff(&whole.result);
            let tol = Float::with_val(
                ctx.prec_bits(),
                rebuilt.err() + whole.result.err(),
            ) + ctx.tolerance();
            let ok = diff <= tol;
            match format {
                Format::Text => lines.push(format!(
                    "reconstruction: {} (diff {})",
                    if ok { "ok" } else { "MISMATCH" },
                    dec(&diff, 3)
                )),
                Format::Json => lines.push(format!(
                    "{{\"reconstruction\": {ok}, \"abs_diff\": \"{}\"}}",
                    dec(&diff, 3)
                )),
                Format::Csv => lines.push(format!(
                    "reconstruction,{},,,{}",
                    if ok { "ok" } else { "mismatch" },
                    dec(&diff, 3)
                )),
            }
            if !ok {
                println!("{}", lines.join("\n"));
                return Ok(ExitCode::from(1));
            }
        }
    }
    if format == Format::Json {
        println!("[{}]", lines.join(", "));
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(ExitCode::SUCCESS)
}

fn report_line(r: &lab::VerificationReport, digits: u32, format: Format) -> String {
    match format {
        Format::Text => {
            let status = if r.passed { "pass" } else { "FAIL" };
            let mut line = format!(
                "{:<6} {status}  diff {}  tol {}  terms {}",
                r.id,
                dec(&r.abs_diff, 3),
                dec(&r.tolerance, 3),
                r.terms_used
            );
            if let Some(cause) = &r.cause {
                line.push_str(&format!("  ({cause})"));
            }
            line
        }
        Format::Json => {
            let cause = match &r.cause {
                Some(c) => format!(", \"cause\": \"{}\"", json_escape(c)),
                None => String::new(),
            };
            format!(
                "{{\"id\": \"{}\", \"lhs\": {{\"value\": \"{}\", \"err\": \"{}\"}}, \"rhs\": {{\"value\": \"{}\", \"err\": \"{}\"}}, \"abs_diff\": \"{}\", \"tolerance\": \"{}\", \"passed\": {}, \"terms_used\": {}, \"elapsed_ms\": {}{cause}}}",
                r.id,
                dec(r.lhs.value(), digits),
                dec(r.lhs.err(), 3),
                dec(r.rhs.value(), digits),
                dec(r.rhs.err(), 3),
                dec(&r.abs_diff, 3),
                dec(&r.tolerance, 3),
                r.passed,
                r.terms_used,
                r.elapsed.as_millis()
            )
        }
        Format::Csv => format!(
            "{},{},{},{},{},{},{},{}",
            r.id,
            dec(r.lhs.value(), digits),
            dec(r.lhs.err(), 3),
            dec(r.rhs.value(), digits),
            dec(r.rhs.err(), 3),
            dec(&r.abs_diff, 3),
            dec(&r.tolerance, 3),
            r.passed
        ),
    }
}

fn cmd_verify(
    id: Option<&str>,
    all: bool,
    ctx: &PrecisionContext,
    format: Format,
) -> Result<ExitCode, Error> {
    let reports = if all {
        lab::verify_all(ctx)
    } else {
        vec![lab::verify(id.expect("clap enforces presence"), ctx)?]
    };
    let mut lines = Vec::new();
    if format == Format::Csv {
        lines.push("id,lhs_value,lhs_err,rhs_value,rhs_err,abs_diff,tolerance,passed".to_string());
    }
    for r in &reports {
        lines.push(report_line(r, ctx.digits(), format));
    }
    if format == Format::Json {
        println!("[{}]", lines.join(", "));
    } else {
        println!("{}", lines.join("\n"));
    }
    if reports.iter().all(|r| r.passed) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_bench(
    epsilon: Option<&str>,
    decay: Option<usize>,
    format: Format,
) -> Result<ExitCode, Error> {
    let mut lines = Vec::new();
    if let Some(eps) = epsilon {
        let eps = Float::with_val(256, Float::parse(eps).map_err(|_| {
            Error::InvalidInput(format!("`{eps}` is not a number"))
        })?);
        if format == Format::Csv {
            lines.push("series,terms".to_string());
        }
        for s in SeriesId::ALL {
            let n = lab::terms_to_tolerance(s, &eps)?;
            lines.push(match format {
                Format::Text => format!("{:<4} {n}", s.name()),
                Format::Json => format!("{{\"series\": \"{}\", \"terms\": {n}}}", s.name()),
                Format::Csv => format!("{},{n}", s.name()),
            });
        }
    } else {
        let n_max = decay.expect("clap enforces one of epsilon/decay");
        let rho = lab::term_decay_ratio(n_max)?;
        if format == Format::Csv {
            lines.push("n,rho,quotient".to_string());
        }
        for (i, r) in rho.iter().enumerate() {
            let n = i + 1;
            let quotient = if i == 0 {
                String::new()
            } else {
                format!("{:.6e}", r / rho[i - 1])
            };
            lines.push(match format {
                Format::Text => format!("{n:<4} rho {:.6e}  quotient {quotient}", r),
                Format::Json => format!(
                    "{{\"n\": {n}, \"rho\": {:e}, \"quotient\": \"{quotient}\"}}",
                    r
                ),
                Format::Csv => format!("{n},{:.6e},{quotient}", r),
            });
        }
    }
    if format == Format::Json {
        println!("[{}]", lines.join(", "));
    } else {
        println!("{}", lines.join("\n"));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_list(format: Format) -> ExitCode {
    let mut lines = Vec::new();
    if format == Format::Csv {
        lines.push("id,anchor,min_digits,description".to_string());
    }
    for e in lab::registry() {
        lines.push(match format {
            Format::Text => format!(
                "{:<6} {:<14} min_digits {:<3} {}",
                e.id(),
                e.paper_anchor(),
                e.min_digits(),
                e.description()
            ),
            Format::Json => format!(
                "{{\"id\": \"{}\", \"anchor\": \"{}\", \"min_digits\": {}, \"description\": \"{}\"}}",
                e.id(),
                json_escape(e.paper_anchor()),
                e.min_digits(),
                json_escape(e.description())
            ),
            Format::Csv => format!(
                "{},{},{},{}",
                e.id(),
                csv_field(e.paper_anchor()),
                e.min_digits(),
                csv_field(e.description())
            ),
        });
    }
    if format == Format::Json {
        println!("[{}]", lines.join(", "));
    } else {
        println!("{}", lines.join("\n"));
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match PrecisionContext::with_max_terms(cli.digits, cli.max_terms as usize) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let result = match &cli.command {
        Command::Eval(args) => cmd_eval(args, &ctx, cli.format),
        Command::Split {
            spec,
            part,
            simplify,
        } => cmd_split(spec, *part, *simplify, &ctx, cli.format),
        Command::Verify { id, all } => cmd_verify(id.as_deref(), *all, &ctx, cli.format),
        Command::Bench { epsilon, decay } => cmd_bench(epsilon.as_deref(), *decay, cli.format),
        Command::List => Ok(cmd_list(cli.format)),
    };
    match result {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
