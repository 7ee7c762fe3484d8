//! Command-line interface: parsing, dispatch, batch ingestion, rendering,
//! machine-readable output, and the verification harness.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{FieldElem, MultiPoly, Var};
use crate::cf::{canonical_link_form, even_cf, positive_cf, CanonicalLink, ContinuedFraction, ExtendedRational};
use crate::error::{Error, Result};
use crate::fpoly::{f_poly_brute, f_poly_recursive, FPolynomial};
use crate::invariants::{alexander, homfly, jones, Method};
use crate::poset::{poset_from_cf, poset_from_rational, render_ascii, render_dot, DEFAULT_IDEAL_CAP};
use crate::verify::{run_all, VerifyConfig, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "ratknot",
    version,
    about = "Exact HOMFLY, Jones and Alexander polynomials of rational knots and links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// HOMFLY polynomial of the rational link C(p/q)
    Homfly(InvariantArgs),
    /// Jones polynomial, a Laurent polynomial in t^(1/2)
    Jones(InvariantArgs),
    /// Alexander polynomial, a Laurent polynomial in t^(1/2)
    Alexander(InvariantArgs),
    /// F-polynomial of the labeled path poset
    Fpoly {
        #[command(flatten)]
        input: InputArgs,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Hasse diagram of the path poset
    Poset {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = PosetFormat::Ascii)]
        format: PosetFormat,
    },
    /// Continued-fraction expansion of a fraction
    Cf {
        /// Fraction p/q (or a bare integer)
        #[arg(value_name = "P/Q", allow_hyphen_values = true)]
        fraction: String,
        #[arg(long, value_enum)]
        form: CfForm,
    },
    /// Run the verification suites; exits 0 iff all pass
    Verify {
        /// Numerator bound for the p/q sweeps
        #[arg(long, default_value_t = 100)]
        max_num: u64,
        /// Depth of the deterministic even sweep
        #[arg(long, default_value_t = 5)]
        sweep_depth: usize,
        /// Number of seeded random even continued fractions
        #[arg(long, default_value_t = 200)]
        random_cases: usize,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Seed for the random sweep
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Read one fraction per line and emit one JSON object per line
    Batch {
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Fraction p/q (or a bare integer)
    #[arg(
        value_name = "P/Q",
        conflicts_with = "cf",
        required_unless_present = "cf",
        allow_hyphen_values = true
    )]
    fraction: Option<String>,
    /// Comma-separated continued-fraction terms, e.g. 2,-4
    #[arg(long, value_name = "c1,c2,...", allow_hyphen_values = true)]
    cf: Option<String>,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Theorem)]
    method: MethodArg,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Theorem,
    Skein,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Theorem => Method::Theorem,
            MethodArg::Skein => Method::Skein,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PosetFormat {
    Ascii,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CfForm {
    Positive,
    Even,
}

/// The enumeration cap, overridable through RATKNOT_IDEAL_CAP.
fn ideal_cap() -> usize {
    std::env::var("RATKNOT_IDEAL_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_IDEAL_CAP)
}

impl InputArgs {
    fn rational(&self) -> Result<ExtendedRational> {
        match (&self.fraction, &self.cf) {
            (Some(f), None) => ExtendedRational::parse(f),
            (None, Some(c)) => Ok(ContinuedFraction::parse(c)?.eval()),
            _ => Err(Error::Parse("exactly one of P/Q and --cf is required".into())),
        }
    }
}

fn field_json(value: &FieldElem) -> Result<serde_json::Value> {
    value.to_json(&[Var::L, Var::S])
}

fn t_poly_json(value: &MultiPoly) -> Result<serde_json::Value> {
    FieldElem::from_poly(value.clone()).to_json(&[Var::T])
}

fn fpoly_json(f: &FPolynomial) -> Result<serde_json::Value> {
    let labels: Vec<u32> = f
        .vars()
        .iter()
        .map(|v| match v {
            Var::Y(i) => Ok(*i),
            other => Err(Error::Internal(format!("unexpected variable {other:?}"))),
        })
        .collect::<Result<_>>()?;
    Ok(serde_json::json!({
        "labels": labels,
        "terms": f.json_terms(f.vars())?,
    }))
}

fn cmd_homfly(args: &InvariantArgs) -> Result<String> {
    let value = homfly(&args.input.rational()?, args.method.into())?;
    if args.json {
        Ok(field_json(&value)?.to_string())
    } else {
        Ok(value.to_string())
    }
}

fn cmd_t_invariant(args: &InvariantArgs, which: fn(&ExtendedRational, Method) -> Result<MultiPoly>) -> Result<String> {
    let value = which(&args.input.rational()?, args.method.into())?;
    if args.json {
        Ok(t_poly_json(&value)?.to_string())
    } else {
        Ok(value.display_string())
    }
}

fn cmd_fpoly(input: &InputArgs, json: bool) -> Result<String> {
    let f = match (&input.fraction, &input.cf) {
        (None, Some(c)) => f_poly_recursive(&ContinuedFraction::parse(c)?)?,
        (Some(frac), None) => {
            let poset = poset_from_rational(&ExtendedRational::parse(frac)?)?;
            f_poly_brute(&poset, ideal_cap())?
        }
        _ => return Err(Error::Parse("exactly one of P/Q and --cf is required".into())),
    };
    if json {
        Ok(fpoly_json(&f)?.to_string())
    } else {
        Ok(f.display_string_by_degree())
    }
}

fn cmd_poset(input: &InputArgs, format: PosetFormat) -> Result<String> {
    let poset = match (&input.fraction, &input.cf) {
        (None, Some(c)) => poset_from_cf(&ContinuedFraction::parse(c)?)?,
        (Some(frac), None) => poset_from_rational(&ExtendedRational::parse(frac)?)?,
        _ => return Err(Error::Parse("exactly one of P/Q and --cf is required".into())),
    };
    Ok(match format {
        PosetFormat::Ascii => render_ascii(&poset),
        PosetFormat::Dot => render_dot(&poset),
    })
}

fn cmd_cf(fraction: &str, form: CfForm) -> Result<String> {
    let r = ExtendedRational::parse(fraction)?;
    let cf = match form {
        CfForm::Positive => positive_cf(&r)?,
        CfForm::Even => even_cf(&r)?,
    };
    Ok(cf.to_string())
}

fn batch_line(line: &str) -> serde_json::Value {
    let run = || -> Result<serde_json::Value> {
        let r = ExtendedRational::parse(line)?;
        let canonical = match canonical_link_form(&r)? {
            CanonicalLink::Unknot => "unknot".to_string(),
            CanonicalLink::TwoUnlink => "two-unlink".to_string(),
            CanonicalLink::Even(cf) => cf.to_string(),
        };
        Ok(serde_json::json!({
            "input": line,
            "p": r.numerator().to_string(),
            "q": r.denominator().to_string(),
            "canonical": canonical,
            "homfly": field_json(&homfly(&r, Method::Theorem)?)?,
            "jones": t_poly_json(&jones(&r, Method::Theorem)?)?,
            "alexander": t_poly_json(&alexander(&r, Method::Theorem)?)?,
        }))
    };
    run().unwrap_or_else(|e| serde_json::json!({ "input": line, "error": e.to_string() }))
}

fn cmd_batch(path: &PathBuf) -> Result<String> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let mut out = String::new();
    for line in content.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push_str(&batch_line(line).to_string());
        out.push('\n');
    }
    // drop the final newline; the caller terminates the output
    out.pop();
    Ok(out)
}

fn cmd_verify<W: Write>(
    out: &mut W,
    max_num: u64,
    sweep_depth: usize,
    random_cases: usize,
    jobs: usize,
    seed: u64,
) -> i32 {
    let cfg = VerifyConfig {
        max_num,
        sweep_depth,
        random_cases,
        seed,
        jobs,
        ideal_cap: ideal_cap(),
    };
    let _ = writeln!(out, "seed: {seed}");
    let mut all_ok = true;
    for suite in run_all(&cfg) {
        if suite.passed() {
            let _ = writeln!(
                out,
                "{}: PASS ({} cases, {:.2}s)",
                suite.name,
                suite.cases,
                suite.duration.as_secs_f64()
            );
        } else {
            all_ok = false;
            let _ = writeln!(
                out,
                "{}: FAIL ({} cases, {:.2}s): {}",
                suite.name,
                suite.cases,
                suite.duration.as_secs_f64(),
                suite.failures[0]
            );
            for extra in &suite.failures[1..] {
                let _ = writeln!(out, "  {extra}");
            }
        }
    }
    if all_ok {
        0
    } else {
        1
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::NotCoprime(_, _) | Error::Domain(_) | Error::NoEvenExpansion
        | Error::InvalidCf(_) | Error::Index(_) => 2,
        _ => 1,
    }
}

/// Parse and dispatch; output goes to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 1 runtime/verification failure, 2 bad input.
pub fn run<W: Write, E: Write>(args: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; --help and --version land here
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let result = match &cli.command {
        Command::Homfly(a) => cmd_homfly(a),
        Command::Jones(a) => cmd_t_invariant(a, jones),
        Command::Alexander(a) => cmd_t_invariant(a, alexander),
        Command::Fpoly { input, json } => cmd_fpoly(input, *json),
        Command::Poset { input, format } => cmd_poset(input, *format),
        Command::Cf { fraction, form } => cmd_cf(fraction, *form),
        Command::Verify { max_num, sweep_depth, random_cases, jobs, seed } => {
            return cmd_verify(out, *max_num, *sweep_depth, *random_cases, *jobs, *seed);
        }
        Command::Batch { file } => cmd_batch(file),
    };
    match result {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Err(e) => {
            let code = exit_code_for(&e);
            let _ = writeln!(err, "error: {e}");
            if code == 2 {
                let _ = writeln!(err, "run `ratknot --help` for usage");
            }
            code
        }
    }
}
