//! `qsym`: verify the quasi-symbol construction, run cubic descent, and
//! evaluate expressions in the generic symbol algebra.
//!
//! Exit status: 0 success, 1 a check failed or a certificate was rejected,
//! 2 bad configuration or malformed input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsym_core::algebra::{display_prime_element, SymbolAlgebra};
use qsym_core::descent::{format_point, Instance};
use qsym_core::expr::pit::{run_trial, PitConfig, Specialization};
use qsym_core::expr::{symbolic_evaluator, ExprRing};
use qsym_core::fields::{RatFuncField, Ring};
use qsym_core::parse::{parse_expression, Value};
use qsym_core::verify::{run_checks, Backend, CliConfig, ReportFormat};
use qsym_core::Error;

#[derive(Parser)]
#[command(name = "qsym", version, about = "Exact and randomized verification in the generic degree-5 symbol algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification checks and print a report.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Check to run (repeatable); default is every check.
        #[arg(long = "check", value_name = "NAME")]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        report: Format,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Descend a zero of a cubic form from a quadratic extension.
    Descend {
        /// TOML instance file.
        instance: PathBuf,
    },
    /// Reduced characteristic polynomial of an element of D.
    Charpoly {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate an expression to normal form.
    Eval {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Defaults to pit for `verify`, symbolic otherwise.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    #[arg(long, default_value_t = 32)]
    trials: usize,
    #[arg(long, default_value_t = 62)]
    prime_bits: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn pit(&self) -> PitConfig {
        PitConfig {
            trials: self.trials,
            prime_bits: self.prime_bits,
            seed: self.seed,
        }
    }

    fn backend(&self, default: Backend) -> Backend {
        match self.backend {
            None => default,
            Some(BackendArg::Symbolic) => Backend::Symbolic,
            Some(BackendArg::Pit) => Backend::Pit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Symbolic,
    Pit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CertificateInvalid(_) | Error::VerificationFailed(_) => 1,
        Error::Config(_) | Error::Parse { .. } | Error::ZeroDenominator | Error::PreconditionViolated(_) => 2,
        _ => 1,
    }
}

fn run(cmd: Command) -> Result<ExitCode, Error> {
    match cmd {
        Command::Verify {
            common,
            checks,
            report,
            out,
        } => {
            let format = match report {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
            };
            let cfg = CliConfig {
                backend: common.backend(Backend::Pit),
                pit: common.pit(),
                report_format: format,
                checks,
            };
            let report = run_checks(&cfg)?;
            let text = report.render(format);
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Descend { instance } => {
            let text = std::fs::read_to_string(&instance)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", instance.display())))?;
            let point = Instance::from_toml(&text)?.solve()?;
            println!("{}", format_point(&point));
            Ok(ExitCode::SUCCESS)
        }
        Command::Charpoly { expr, common } => {
            let u = parse_expression(&expr)?.into_element();
            match common.backend(Backend::Symbolic) {
                Backend::Symbolic => {
                    let alg = SymbolAlgebra::symbolic();
                    let v = SymbolAlgebra::<ExprRing>::eval(&mut symbolic_evaluator(), &u)?;
                    let p = alg.charpoly(&v)?;
                    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                    print_charpoly(&coeffs, |i| RatFuncField.is_zero(p.c(i)));
                }
                Backend::Pit => {
                    let cfg = common.pit();
                    cfg.validate()?;
                    let (p, pt) = run_trial(&cfg, 0, "charpoly", |pt, _| {
                        let alg = SymbolAlgebra::at(pt);
                        let v = SymbolAlgebra::<ExprRing>::eval(&mut pt.evaluator(), &u)?;
                        alg.charpoly(&v)
                    })?;
                    print_specialization(&pt);
                    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                    print_charpoly(&coeffs, |i| *p.c(i) == 0);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr, common } => {
            let value = parse_expression(&expr)?;
            match common.backend(Backend::Symbolic) {
                Backend::Symbolic => {
                    let mut ev = symbolic_evaluator();
                    match value {
                        Value::Scalar(e) => println!("{}", ev.eval(&e)?),
                        Value::Element(u) => {
                            let v = SymbolAlgebra::<ExprRing>::eval(&mut ev, &u)?;
                            println!("{}", SymbolAlgebra::display(&v));
                        }
                    }
                }
                Backend::Pit => {
                    let cfg = common.pit();
                    cfg.validate()?;
                    let u = value.into_element();
                    let (v, pt) = run_trial(&cfg, 0, "eval", |pt, _| {
                        Ok(SymbolAlgebra::<ExprRing>::eval(&mut pt.evaluator(), &u)?)
                    })?;
                    print_specialization(&pt);
                    println!("{}", display_prime_element(&v));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_specialization(pt: &Specialization) {
    let [rho, a, b, eta] = pt.values;
    println!("p = {}, rho = {rho}, a = {a}, b = {b}, eta = {eta}", pt.prime());
}

/// Prints c1..c5 and the assembled polynomial in lambda.
fn print_charpoly(coeffs: &[String], is_zero: impl Fn(usize) -> bool) {
    for (i, c) in coeffs.iter().enumerate() {
        println!("c{} = {c}", i + 1);
    }
    let mut poly = String::from("lambda^5");
    for (i, c) in coeffs.iter().enumerate() {
        let k = i + 1;
        if is_zero(k) {
            continue;
        }
        let power = match 5 - k {
            0 => String::new(),
            1 => "lambda".to_string(),
            e => format!("lambda^{e}"),
        };
        let (sign, mag) = match c.strip_prefix('-') {
            Some(rest) if is_atomic(rest) => (" - ", rest.to_string()),
            _ => (" + ", c.clone()),
        };
        let mag = if is_atomic(&mag) { mag } else { format!("({mag})") };
        let term = match (mag.as_str(), power.is_empty()) {
            (m, true) => m.to_string(),
            ("1", false) => power,
            (m, false) => format!("{m}*{power}"),
        };
        poly.push_str(sign);
        poly.push_str(&term);
    }
    println!("P(lambda) = {poly}");
}

fn is_atomic(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '^' || c == '/')
}

