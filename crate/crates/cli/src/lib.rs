//! Command-line front end for `zred`.
//!
//! [`run`] parses an argument list, dispatches to the library and returns the
//! text destined for stdout or stderr along with the process exit code. The
//! binary is a thin wrapper so tests can drive every command in-process.

#[doc(hidden)]
pub mod fuzzing;

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};
use zred::contfrac::{cf_expand, denjoy_surd, neg_cf_surd, reg_cf_surd};
use zred::forms::parse_int;
use zred::maps;
use zred::oracle::{verify_all, verify_suite};
use zred::reduction::{cycles, orbit_to_cycle, z_caliber};
use zred::{
    fundamental_solution, BinString, Bounds, CfKind, Error, Form, NatString, Operator, Parity,
    QuadraticSurd, Suite, VerificationReport,
};

pub const EXIT_OK: u8 = 0;
/// `verify` ran to completion and some suite failed.
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "zred",
    version,
    about = "Gauss and Zagier reduction of indefinite binary quadratic forms",
    after_help = "Negative coefficients may be written directly (`gamma 1 3 -2`); \
                  put `--` before them if your shell wrapper eats leading dashes."
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for `verify` (0 means one per core).
    #[arg(long, global = true, env = "ZRED_JOBS", default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FormArgs {
    #[arg(allow_negative_numbers = true, value_name = "A")]
    a: String,
    #[arg(allow_negative_numbers = true, value_name = "B")]
    b: String,
    #[arg(allow_negative_numbers = true, value_name = "C")]
    c: String,
}

impl FormArgs {
    fn form(&self) -> zred::Result<Form> {
        Ok(Form::new(
            parse_int(&self.a)?,
            parse_int(&self.b)?,
            parse_int(&self.c)?,
        ))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fundamental solution of |t² − Δu²| = 4.
    Pell {
        #[arg(allow_negative_numbers = true)]
        delta: String,
    },
    /// Regular continued fraction of num/den with a chosen length parity.
    Cf {
        /// A fraction such as 17/5.
        fraction: String,
        #[arg(long)]
        parity: String,
    },
    /// Partial quotients of (P + √Δ)/Q.
    SurdCf {
        #[arg(long, allow_negative_numbers = true)]
        p: String,
        #[arg(long, allow_negative_numbers = true)]
        q: String,
        #[arg(long, allow_negative_numbers = true)]
        delta: String,
        /// reg, neg or denjoy.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        terms: usize,
    },
    /// Orbit of a form under R_Z or R_G, split into pre-period and cycle.
    Reduce {
        #[arg(long, default_value = "z")]
        op: String,
        #[command(flatten)]
        form: FormArgs,
    },
    /// Every reduction cycle of a discriminant.
    Cycles {
        #[arg(long, allow_negative_numbers = true)]
        delta: String,
        #[arg(long, default_value = "z")]
        op: String,
    },
    /// Number of Z-reduced forms in the class of a form.
    Caliber(FormArgs),
    Gamma(FormArgs),
    Beta(FormArgs),
    Sigma(FormArgs),
    Mu(FormArgs),
    /// The Z-reduced form with the given bead sequence.
    Tau {
        /// Comma-separated positive integers.
        string: String,
    },
    /// The G-reduced form with the given quotient sequence.
    Xi {
        string: String,
    },
    DenjoyPeriod(FormArgs),
    /// Run verification suites.
    Verify {
        /// A suite id or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        delta_max: u64,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn err(code: u8, stderr: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

/// Parses `num/den` with both parts nonnegative decimals.
pub fn parse_fraction(s: &str) -> zred::Result<(BigUint, BigUint)> {
    let bad = || Error::Parse(format!("expected a fraction num/den, got {s:?}"));
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let part = |t: &str| {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigUint>().map_err(|_| bad())
    };
    Ok((part(num)?, part(den)?))
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::err(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::err(exit_code(&e), format!("error: {e}\n")),
    }
}

fn line(v: impl std::fmt::Display) -> String {
    format!("{v}\n")
}

fn json_line(v: &Value) -> String {
    line(serde_json::to_string(v).expect("JSON values always serialize"))
}

/// Text form: `A B C`, ready to paste back as arguments.
fn form_text(f: &Form) -> String {
    format!("{} {} {}", f.a, f.b, f.c)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types always serialize")
}

/// Machine-sized quotients as numbers, larger ones as decimal strings, the
/// same convention as natural strings.
fn quotients_value(qs: &[BigUint]) -> Value {
    Value::Array(
        qs.iter()
            .map(|q| match u64::try_from(q) {
                Ok(v) => json!(v),
                Err(_) => json!(q.to_string()),
            })
            .collect(),
    )
}

fn quotients_text(qs: &[BigUint]) -> String {
    qs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_form(json: bool, f: &Form) -> String {
    if json {
        json_line(&to_value(f))
    } else {
        line(form_text(f))
    }
}

fn emit_nat(json: bool, s: &NatString) -> String {
    if json {
        json_line(&to_value(s))
    } else {
        line(s)
    }
}

fn emit_bits(json: bool, s: &BinString) -> String {
    if json {
        json_line(&to_value(s))
    } else {
        line(s)
    }
}

fn dispatch(cli: &Cli) -> zred::Result<Outcome> {
    let json = cli.json;
    let out = match &cli.command {
        // Pell output is JSON in both modes.
        Command::Pell { delta } => json_line(&fundamental_solution(&parse_int(delta)?)?.to_json()),
        Command::Cf { fraction, parity } => {
            let parity: Parity = parity.parse()?;
            let (num, den) = parse_fraction(fraction)?;
            emit_nat(json, &cf_expand(&num, &den, parity)?)
        }
        Command::SurdCf {
            p,
            q,
            delta,
            kind,
            terms,
        } => {
            let kind: CfKind = kind.parse()?;
            let x = QuadraticSurd::new(parse_int(p)?, parse_int(q)?, parse_int(delta)?)?;
            match kind {
                CfKind::Regular => {
                    let qs = reg_cf_surd(&x, *terms)?;
                    if json {
                        json_line(&quotients_value(&qs))
                    } else {
                        line(quotients_text(&qs))
                    }
                }
                CfKind::Negative => emit_nat(json, &neg_cf_surd(&x, *terms)?),
                CfKind::Denjoy => emit_bits(json, &denjoy_surd(&x, *terms)?),
            }
        }
        Command::Reduce { op, form } => {
            let op: Operator = op.parse()?;
            let orbit = orbit_to_cycle(&form.form()?, op)?;
            if json {
                json_line(&to_value(&orbit))
            } else {
                let mut s = String::from("pre-period:\n");
                for f in &orbit.pre_period {
                    let _ = writeln!(s, "  {}", form_text(f));
                }
                s.push_str("cycle:\n");
                for f in &orbit.cycle {
                    let _ = writeln!(s, "  {}", form_text(f));
                }
                s
            }
        }
        Command::Cycles { delta, op } => {
            let op: Operator = op.parse()?;
            let all = cycles(&parse_int(delta)?, op)?;
            if json {
                json_line(&to_value(&all))
            } else {
                all.iter()
                    .map(|c| line(c.iter().map(form_text).collect::<Vec<_>>().join("; ")))
                    .collect()
            }
        }
        Command::Caliber(f) => {
            let n = z_caliber(&f.form()?)?;
            if json {
                json_line(&json!({ "caliber": n }))
            } else {
                line(n)
            }
        }
        Command::Gamma(f) => emit_nat(json, &maps::gamma(&f.form()?)?),
        Command::Beta(f) => emit_nat(json, &maps::beta(&f.form()?)?),
        Command::Sigma(f) => emit_bits(json, &maps::sigma(&f.form()?)?),
        Command::Mu(f) => emit_form(json, &maps::mu(&f.form()?)?),
        Command::Tau { string } => emit_form(json, &maps::tau(&string.parse()?)?),
        Command::Xi { string } => emit_form(json, &maps::xi(&string.parse()?)?),
        Command::DenjoyPeriod(f) => emit_bits(json, &maps::denjoy_period(&f.form()?)?),
        Command::Verify { suite, delta_max } => return verify(cli, suite, *delta_max),
    };
    Ok(Outcome::ok(out))
}

fn verify(cli: &Cli, suite: &str, delta_max: u64) -> zred::Result<Outcome> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let bounds = Bounds::from_delta_max(delta_max);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    let reports: Vec<VerificationReport> = pool.install(|| {
        if suites.len() == Suite::ALL.len() {
            verify_all(&bounds)
        } else {
            suites.iter().map(|&s| verify_suite(s, &bounds)).collect()
        }
    });
    let stdout = if cli.json {
        json_line(&to_value(&reports))
    } else {
        reports.iter().map(line).collect()
    };
    let code = if reports.iter().all(VerificationReport::passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zred(args: &str) -> Outcome {
        run(std::iter::once("zred").chain(args.split_whitespace()))
    }

    #[test]
    fn fractions() {
        assert_eq!(
            parse_fraction("17/5").unwrap(),
            (BigUint::from(17u8), BigUint::from(5u8))
        );
        for bad in ["", "17", "/5", "17/", "-3/2", "1/2/3", "+1/2", "1 /2"] {
            assert!(parse_fraction(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn exit_codes_by_error_kind() {
        assert_eq!(zred("gamma 1 x 2").code, EXIT_USAGE);
        assert_eq!(zred("frobnicate").code, EXIT_USAGE);
        assert_eq!(zred("gamma 1 2 3").code, EXIT_PRECONDITION);
        assert_eq!(zred("pell 16").code, EXIT_PRECONDITION);
        assert_eq!(zred("verify --suite nope --delta-max 5").code, EXIT_USAGE);
        assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_INTERNAL);
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = zred("--help");
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("sigma"));
    }
}
