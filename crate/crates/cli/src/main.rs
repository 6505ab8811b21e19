//! `dqhopf`: check dual quasi-Hopf algebra instances from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 for
//! malformed input or usage errors. Reports go to stdout, diagnostics to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dqhopf::algebra::{check_level, AnyInstance, Level, Report};
use dqhopf::examples::{
    group_algebra, mutant_catalogue, sweedler_h4, twisted_group_algebra, CyclicGroupSpec, ExampleError,
};
use dqhopf::integrals::{distinguished_grouplike, left_integrals, right_integrals};
use dqhopf::pipeline::{antipode_status, verify_theorem, PipelineError};
use dqhopf::scalars::ScalarError;
use dqhopf::sweedler::{evaluate_identity, parse_bindings, parse_identity, Binding, EvalError};
use dqhopf::{AlgebraInstance, Field, FieldSpec, Fp, Rational, DEFAULT_CEILING};

#[derive(Parser)]
#[command(name = "dqhopf", version, about = "Exact checks for dual quasi-Hopf algebras")]
struct Cli {
    /// Maximum number of terms any single expansion may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_CEILING)]
    ceiling: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms up to the given level.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "hopf")]
        level: Level,
    },
    /// Print bases of the left and right integral spaces.
    Integrals { file: PathBuf },
    /// Print the distinguished grouplike element.
    Grouplike { file: PathBuf },
    /// Report injectivity, surjectivity and order of the antipode.
    Antipode { file: PathBuf },
    /// Run the staged bijectivity verification.
    VerifyTheorem { file: PathBuf },
    /// Check an identity in Sweedler notation on every basis assignment.
    Eval {
        file: PathBuf,
        #[arg(long)]
        identity: String,
        /// File with extra functionals, one `NAME/ARITY values...` per line.
        #[arg(long)]
        bind: Option<PathBuf>,
    },
    /// Write a built-in instance: group, twist, h4, or a catalogued mutant.
    Example {
        name: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// `Q` or `Fp P`.
        #[arg(long, num_args = 1..=2, default_values_t = vec!["Q".to_string()])]
        field: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A run that ended before producing a verdict.
struct Usage(String);

impl<T: std::fmt::Display> From<T> for Usage {
    fn from(e: T) -> Self {
        Usage(e.to_string())
    }
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Usage> {
    let ceiling = cli.ceiling;
    match cli.command {
        Command::Example {
            name,
            n,
            zeta,
            field,
            out,
        } => {
            let spec = parse_field(&field)?;
            match spec {
                FieldSpec::Rationals => example::<Rational>(&name, n, zeta.as_deref(), spec, out.as_deref()),
                FieldSpec::PrimeField(_) => example::<Fp>(&name, n, zeta.as_deref(), spec, out.as_deref()),
            }
        }
        Command::Check { file, level } => with_instance(&file, Action::Check(level), ceiling),
        Command::Integrals { file } => with_instance(&file, Action::Integrals, ceiling),
        Command::Grouplike { file } => with_instance(&file, Action::Grouplike, ceiling),
        Command::Antipode { file } => with_instance(&file, Action::Antipode, ceiling),
        Command::VerifyTheorem { file } => with_instance(&file, Action::Theorem, ceiling),
        Command::Eval { file, identity, bind } => {
            let bind = bind.map(|p| read(&p)).transpose()?;
            with_instance(&file, Action::Eval { identity, bind }, ceiling)
        }
    }
}

enum Action {
    Check(Level),
    Integrals,
    Grouplike,
    Antipode,
    Theorem,
    Eval { identity: String, bind: Option<String> },
}

fn read(path: &Path) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn with_instance(path: &Path, action: Action, ceiling: usize) -> Result<u8, Usage> {
    let text = read(path)?;
    let parsed = AnyInstance::parse(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    match parsed {
        AnyInstance::Rational(h) => act(&h, action, ceiling),
        AnyInstance::Prime(h) => act(&h, action, ceiling),
    }
}

fn print_lines(lines: &[String]) {
    for l in lines {
        println!("{l}");
    }
}

fn verdict(passed: bool) -> u8 {
    if passed {
        PASS
    } else {
        FAIL
    }
}

/// Runs the prerequisite checks; on failure prints the report and returns the exit code.
fn prerequisites<K: Field>(h: &AlgebraInstance<K>, level: Level) -> Result<Option<u8>, Usage> {
    let report = check_level(h, level)?;
    if report.passed() {
        Ok(None)
    } else {
        print_lines(&report.render(h.labels()));
        Ok(Some(FAIL))
    }
}

fn act<K: Field>(h: &AlgebraInstance<K>, action: Action, ceiling: usize) -> Result<u8, Usage> {
    let labels = h.labels();
    match action {
        Action::Check(level) => {
            let report = check_level(h, level)?;
            print_lines(&report.render(labels));
            Ok(verdict(report.passed()))
        }
        Action::Integrals => {
            if let Some(code) = prerequisites(h, Level::Coalgebra)? {
                return Ok(code);
            }
            for (side, basis) in [("left", left_integrals(h)), ("right", right_integrals(h))] {
                if basis.is_empty() {
                    println!("{side}: none");
                }
                for t in &basis {
                    println!("{side}: {}", h.format_element(t));
                }
            }
            Ok(PASS)
        }
        Action::Grouplike => {
            if let Some(code) = prerequisites(h, Level::Hopf)? {
                return Ok(code);
            }
            let left = left_integrals(h);
            let [t] = left.as_slice() else {
                println!("left integrals have dimension {}, expected 1", left.len());
                return Ok(FAIL);
            };
            match distinguished_grouplike(h, t) {
                Ok(a) => {
                    println!("a = {}", h.format_element(&a));
                    Ok(PASS)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(FAIL)
                }
            }
        }
        Action::Antipode => {
            if h.hopf().is_none() {
                return Err(Usage(PipelineError::MissingAntipodeData.to_string()));
            }
            if let Some(code) = prerequisites(h, Level::Hopf)? {
                return Ok(code);
            }
            let st = antipode_status(h)?;
            println!("injective: {}", st.injective);
            println!("surjective: {}", st.surjective);
            match st.order {
                Some(k) => println!("order: {k}"),
                None => println!("order: none"),
            }
            Ok(verdict(st.injective && st.surjective))
        }
        Action::Theorem => {
            let report = verify_theorem(h, ceiling);
            print_lines(&report.render(labels));
            Ok(verdict(report.passed()))
        }
        Action::Eval { identity, bind } => {
            let id = parse_identity(&identity)?;
            let mut binding = Binding::standard(h);
            if let Some(text) = bind {
                for (name, f) in parse_bindings(&text, h)? {
                    binding = binding.with_functional(name, f);
                }
            }
            let check = match evaluate_identity(&id, h, &binding, "identity", ceiling) {
                Ok(c) => c,
                Err(e @ EvalError::CostExceeded { .. }) => {
                    println!("identity SKIPPED ({e})");
                    return Ok(FAIL);
                }
                Err(e) => return Err(e.into()),
            };
            let mut report = Report::new();
            report.push(check);
            print_lines(&report.render(labels));
            Ok(verdict(report.passed()))
        }
    }
}

fn parse_field(args: &[String]) -> Result<FieldSpec, Usage> {
    match args {
        [q] if q == "Q" => Ok(FieldSpec::Rationals),
        [fp, p] if fp == "Fp" => {
            let p: u64 = p.parse().map_err(|_| Usage(format!("invalid prime `{p}`")))?;
            FieldSpec::prime(p).map_err(|e: ScalarError| Usage(e.to_string()))
        }
        _ => Err(Usage(format!("invalid field `{}` (expected `Q` or `Fp P`)", args.join(" ")))),
    }
}

fn example<K: Field>(
    name: &str,
    n: usize,
    zeta: Option<&str>,
    field: FieldSpec,
    out: Option<&Path>,
) -> Result<u8, Usage> {
    let built: Result<AlgebraInstance<K>, ExampleError<K>> = match name {
        "group" => {
            if n == 0 {
                return Err(Usage("group order must be at least 1".into()));
            }
            let h = group_algebra::<K>(n, field);
            match check_level(&h, Level::Hopf)? {
                r if r.passed() => Ok(h),
                r => Err(ExampleError::ChecksFailed(r)),
            }
        }
        "twist" => {
            let text = match (zeta, n) {
                (Some(z), _) => z,
                (None, 1) => "1",
                (None, 2) => "-1",
                (None, _) => return Err(Usage(format!("twist of order {n} needs --zeta"))),
            };
            let z = K::parse_in(&field, text)?;
            CyclicGroupSpec::new(n, field, z).and_then(|spec| twisted_group_algebra(&spec))
        }
        "h4" => sweedler_h4::<K>(field),
        other => {
            let Some(m) = mutant_catalogue().into_iter().find(|m| m.name == other) else {
                let mut known = vec!["group", "twist", "h4"];
                known.extend(mutant_catalogue().iter().map(|m| m.name));
                return Err(Usage(format!("unknown example `{other}` ({})", known.join("|"))));
            };
            if field != FieldSpec::Rationals {
                return Err(Usage(format!("mutant `{other}` is only available over Q")));
            }
            return emit(&AnyInstance::Rational(m.instance).serialize(), out);
        }
    };
    match built {
        Ok(h) => emit(&dqhopf::algebra::serialize_instance(&h), out),
        Err(ExampleError::ChecksFailed(r)) => {
            eprintln!("refusing to write an instance that fails its checks");
            print_lines(&r.render(&[]));
            Ok(FAIL)
        }
        Err(e) => Err(e.into()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<u8, Usage> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Usage(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(PASS)
}
