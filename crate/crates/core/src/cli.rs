//! Command-line front end: `expand`, `verify` and `derive`.
//!
//! Exit codes: 0 when every verdict passes, 2 when a verdict fails, 1 on
//! usage or runtime errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curvegen::{self, CurveParams, Star};
use crate::exactnum::Rational;
use crate::formulas::{self, golden, Experimental, FormulaError, IdentityReport};
use crate::gradedpoly::{QPoly, Symbol};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sigmaform", version, about = "Exact expansions and addition formulae for the Weierstrass sigma function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a truncated expansion.
    Expand {
        #[arg(value_enum)]
        what: Expansion,
        #[command(flatten)]
        common: Common,
    },
    /// Check an identity exactly through the given order.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Number of points for `det` (2, 3 or 4).
        #[arg(long)]
        n: Option<usize>,
        /// Specialization for `n3-special` (1, 2 or 3).
        #[arg(long)]
        case: Option<u32>,
        /// Bind every free parameter to a seeded random rational.
        #[arg(long)]
        fast: bool,
        #[arg(long, requires = "fast", default_value_t = 0)]
        seed: u64,
        /// Candidate right-hand side for two-term, n2, n3 or substitution,
        /// e.g. "P_u - P_v"; `P_j`, `dP_j` denote ℘ and ℘′ at point j.
        #[arg(long)]
        rhs: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-derive the right-hand side of the n-point formula.
    Derive {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=4))]
        n: u64,
        /// Required for n = 4.
        #[arg(long)]
        experimental: bool,
        /// Largest estimated equation count attempted for n = 4.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Truncation order T (total degree).
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `symbolic` or an exact rational such as -3/4.
    #[arg(long, value_parser = parse_mu, allow_hyphen_values = true)]
    mu1: Option<MuArg>,
    #[arg(long, value_parser = parse_mu, allow_hyphen_values = true)]
    mu2: Option<MuArg>,
    #[arg(long, value_parser = parse_mu, allow_hyphen_values = true)]
    mu3: Option<MuArg>,
    #[arg(long, value_parser = parse_mu, allow_hyphen_values = true)]
    mu4: Option<MuArg>,
    #[arg(long, value_parser = parse_mu, allow_hyphen_values = true)]
    mu6: Option<MuArg>,
}

#[derive(Clone, Debug)]
enum MuArg {
    Symbolic,
    Value(Rational),
}

fn parse_mu(s: &str) -> Result<MuArg, String> {
    if s == "symbolic" {
        return Ok(MuArg::Symbolic);
    }
    s.parse::<Rational>().map(MuArg::Value).map_err(|e| format!("{e}; expected `symbolic` or p/q"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expansion {
    Sigma,
    X,
    Y,
    Wp,
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    TwoTerm,
    Det,
    N2,
    N3,
    N3Special,
    Ideal,
    Hurwitz,
    StarSum,
    Battery,
    Substitution,
}

impl Common {
    fn mu_args(&self) -> [(Symbol, &Option<MuArg>); 5] {
        [
            (Symbol::Mu1, &self.mu1),
            (Symbol::Mu2, &self.mu2),
            (Symbol::Mu3, &self.mu3),
            (Symbol::Mu4, &self.mu4),
            (Symbol::Mu6, &self.mu6),
        ]
    }

    fn any_mu(&self) -> bool {
        self.mu_args().iter().any(|(_, a)| a.is_some())
    }

    /// Applies the `--muN` flags on top of `base`.
    fn params_over(&self, base: CurveParams) -> CurveParams {
        self.mu_args().into_iter().fold(base, |p, (s, a)| match a {
            None => p,
            Some(MuArg::Symbolic) => p.with(s, QPoly::symbol(s)),
            Some(MuArg::Value(r)) => p.with(s, QPoly::from_rational(r.clone())),
        })
    }

    fn params(&self) -> CurveParams {
        self.params_over(CurveParams::symbolic())
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Curve(#[from] curvegen::CurveError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

/// Parses `argv` (including the program name) and runs the command,
/// writing reports to stdout and diagnostics to stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run`], with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Formula(FormulaError::Solve(crate::linsolve::SolveError::Underdetermined { .. })) = e {
                let _ = writeln!(err, "hint: the order is too low to determine every coefficient; increase --order");
            }
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::Expand { what, common } => expand(what, &common, out).map(|_| true),
        Command::Verify { check, n, case, fast, seed, rhs, common } => {
            let rhs = rhs.map(|s| parse_rhs(&s)).transpose()?;
            let report = verify(check, n, case, fast.then_some(seed), rhs, &common)?;
            emit_report(&report, common.format, out)?;
            Ok(report.passed())
        }
        Command::Derive { n, experimental, budget, common } => derive(n as usize, experimental, budget, &common, out),
    }
}

#[derive(Serialize)]
struct ExpansionJson<T: Serialize> {
    expansion: &'static str,
    binding: BTreeMap<String, String>,
    order: u32,
    series: T,
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).expect("reports serialize");
    writeln!(out, "{s}")?;
    Ok(())
}

fn expand(what: Expansion, common: &Common, out: &mut dyn Write) -> Result<(), CliError> {
    let params = common.params();
    let t = common.order;
    let binding = params.describe();
    let name = match what {
        Expansion::Sigma => "sigma",
        Expansion::X => "x",
        Expansion::Y => "y",
        Expansion::Wp => "wp",
        Expansion::Star => "star",
    };
    let json = common.format == Format::Json;
    macro_rules! emit {
        ($series:expr, $text:expr) => {
            if json {
                write_json(&ExpansionJson { expansion: name, binding, order: t, series: $series }, out)
            } else {
                writeln!(out, "{}", $text)?;
                Ok(())
            }
        };
    }
    match what {
        Expansion::Sigma => {
            let s = curvegen::sigma_series(&params, t)?.truncate(t);
            let text = sigma_text(&s, params.mu1() == &QPoly::symbol(Symbol::Mu1), t);
            emit!(s.to_json(), text)
        }
        Expansion::X | Expansion::Y | Expansion::Wp => {
            let l = match what {
                Expansion::X => curvegen::x_from_u(&params, t)?,
                Expansion::Y => curvegen::y_from_u(&params, t)?,
                _ => curvegen::wp_series(&params, t)?,
            }
            .truncate_through(t as i64);
            let label = match what {
                Expansion::X => "x(u)",
                Expansion::Y => "y(u)",
                _ => "wp(u)",
            };
            emit!(l.to_json(), format!("{label} = {l}"))
        }
        Expansion::Star => {
            let s = curvegen::star_series(&params, t, Star::One)?.truncate(t);
            emit!(s.to_json(), format!("v*(u) = {s}  (z = primitive cube root of unity)"))
        }
    }
}

/// `σ(u) = Σ Aₙ uⁿ/n!`, written in `mb1 = mu1/2` when μ₁ is free.
fn sigma_text(s: &crate::truncseries::QSeries, bar: bool, t: u32) -> String {
    let mut parts = Vec::new();
    for n in 1..=t {
        let a = s.nth(n).scale_rational(&Rational::factorial(n));
        if a.is_zero() {
            continue;
        }
        let a = if bar { formulas::to_mu1_bar(&a).to_string().replace("mu1", "mb1") } else { a.to_string() };
        parts.push(match n {
            1 if a == "1" => "u".to_string(),
            1 => format!("({a})*u"),
            n => format!("({a})*u^{n}/{n}!"),
        });
    }
    parts.push(format!("O(u^{})", t + 1));
    let mut text = format!("sigma(u) = {}", parts.join(" + "));
    if bar {
        text.push_str("\n  where mb1 = mu1/2");
    }
    text
}

fn parse_rhs(s: &str) -> Result<QPoly, CliError> {
    let mut macros = golden::wp_coordinates();
    macros.extend(golden::mu1_bar());
    crate::gradedpoly::parse_with(s, &macros).map_err(|e| CliError::Usage(format!("--rhs: {e}")))
}

fn verify(
    check: Check,
    n: Option<usize>,
    case: Option<u32>,
    seed: Option<u64>,
    rhs: Option<QPoly>,
    common: &Common,
) -> Result<IdentityReport, CliError> {
    let t = common.order;
    if rhs.is_some() && !matches!(check, Check::TwoTerm | Check::N2 | Check::N3 | Check::Substitution) {
        return Err(CliError::Usage("--rhs applies to two-term, n2, n3 and substitution".into()));
    }
    let no_fast = |what: &str| match seed {
        Some(_) => Err(CliError::Usage(format!("`verify {what}` has no fast mode"))),
        None => Ok(()),
    };
    let fast = |p: CurveParams| match seed {
        Some(s) => formulas::randomize(&p, s).0,
        None => p,
    };
    let report = match check {
        Check::TwoTerm => match &rhs {
            Some(r) => formulas::verify_two_term_with(&fast(common.params()), t, r)?,
            None => formulas::verify_two_term(&fast(common.params()), t)?,
        },
        Check::Det => {
            let n = n.ok_or_else(|| CliError::Usage("`verify det` needs --n 2, 3 or 4".into()))?;
            formulas::verify_det_formula(&fast(common.params_over(CurveParams::classical())), n, t)?
        }
        Check::N2 => match &rhs {
            Some(r) => formulas::verify_n2_with(&fast(common.params()), t, r)?,
            None => formulas::verify_n2(&fast(common.params()), t)?,
        },
        Check::N3 => {
            let p = fast(common.params());
            match &rhs {
                Some(r) => formulas::verify_n3_with(&p, t, formulas::N3Mode::Star, r)?,
                None => formulas::verify_n3(&p, t)?,
            }
        }
        Check::N3Special => {
            let case = case.ok_or_else(|| CliError::Usage("`verify n3-special` needs --case 1, 2 or 3".into()))?;
            if common.any_mu() {
                return Err(CliError::Usage("`verify n3-special` fixes the parameters; drop --muN".into()));
            }
            formulas::verify_n3_specializations_with(case, t, seed)?
        }
        Check::Ideal => {
            no_fast("ideal")?;
            formulas::verify_ideal_decomposition()
        }
        Check::Hurwitz => {
            no_fast("hurwitz")?;
            formulas::check_hurwitz(&common.params(), t)?
        }
        Check::StarSum => formulas::verify_star_sum(&fast(common.params()), t)?,
        Check::Battery => formulas::verify_battery(&fast(common.params()), t)?,
        Check::Substitution => match &rhs {
            Some(r) => formulas::verify_star_substitution_with(&fast(common.params()), t, r)?,
            None => formulas::verify_star_substitution(&fast(common.params()), t)?,
        },
    };
    Ok(report)
}

fn emit_report(r: &IdentityReport, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    if format == Format::Json {
        return write_json(r, out);
    }
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    writeln!(out, "{}: {verdict}", r.id)?;
    writeln!(out, "  bound: {}", r.bound)?;
    let b: Vec<String> = r.binding.iter().map(|(k, v)| format!("{k}={v}")).collect();
    writeln!(out, "  binding: {}", b.join(", "))?;
    if let Some(res) = &r.residual {
        writeln!(out, "  residual at degree {:?} ({} terms): {}", res.degree, res.terms, res.poly)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DeriveJson<'a> {
    #[serde(flatten)]
    derived: &'a formulas::DerivedRHS,
    /// Whether the result equals the known right-hand side.
    matches_reference: bool,
}

fn derive(n: usize, experimental: bool, budget: u64, common: &Common, out: &mut dyn Write) -> Result<bool, CliError> {
    let params = common.params();
    let t = common.order;
    if n == 4 {
        if !experimental {
            return Err(CliError::Usage("`derive --n 4` is experimental; pass --experimental".into()));
        }
        let r = formulas::derive_rhs_experimental(4, t, &params, true, budget)?;
        if common.format == Format::Json {
            write_json(&r, out)?;
        } else {
            match &r {
                Experimental::Derived(d) => writeln!(out, "n=4 right-hand side (order {t}):\n{}", d.text)?,
                Experimental::Resources(p) => writeln!(
                    out,
                    "n=4 not derived: {}\n  unknowns: {}\n  equations (estimate): {}",
                    p.reason, p.unknowns, p.equations_estimate
                )?,
            }
        }
        return Ok(true);
    }
    let d = formulas::derive_rhs(n, t, &params)?;
    let b = params.binding();
    let reference = match n {
        2 => golden::parse(golden::N2_WP_FORM),
        _ => golden::r_sum(),
    }
    .specialize(&b);
    let matches = d.poly == reference;
    if common.format == Format::Json {
        write_json(&DeriveJson { derived: &d, matches_reference: matches }, out)?;
    } else {
        writeln!(out, "n={n} right-hand side (order {t}, {} unknowns, {} equations):", d.unknowns, d.equations)?;
        writeln!(out, "{}", d.text)?;
        writeln!(out, "matches reference: {}", if matches { "yes" } else { "NO" })?;
    }
    Ok(matches)
}
