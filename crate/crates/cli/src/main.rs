use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use fockcat::algebraic::monoid_exp;
use fockcat::fock::{coherent_state, FockSpace};
use fockcat::laws::{
    all_passed, ccr_residuals, coherent_norm_oracle, report_json, run_suite, SuiteConfig,
};
use fockcat::morphism::compose;
use fockcat::{SpaceObject, DEFAULT_TOLERANCE};
use fockcat_cli::io::{emit, load_matrix, load_monoid, load_state, to_pretty, TypedMatrix};
use fockcat_cli::{eval_expr, parse_expr, Environment, ExprError};

#[derive(Parser)]
#[command(
    name = "fockcat",
    version,
    about = "Truncated Fock-space calculator and law checker"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a morphism expression, e.g. `vac ; raise(phi) ; e`.
    Eval {
        #[arg(long)]
        expr: String,
        /// Bind an identifier to a matrix file, as `name=path.json`. Repeatable.
        #[arg(long = "env", value_name = "NAME=FILE")]
        env: Vec<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        cutoff: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherent state of a single-particle vector, with its squared norm.
    Coherent {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        cutoff: usize,
    },
    /// Residuals of the canonical commutation relations for two vectors.
    Commutator {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        cutoff: usize,
    },
    /// Run the law suite and write a JSON report.
    Check {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        cutoffs: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Truncated exponential of an element of a commutative monoid.
    Exp {
        #[arg(long)]
        monoid: PathBuf,
        #[arg(long)]
        element: PathBuf,
        #[arg(long)]
        order: usize,
    },
}

enum Failure {
    Law(String),
    Usage(String),
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        if e.is_law_failure() {
            Failure::Law(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<fockcat::Error> for Failure {
    fn from(e: fockcat::Error) -> Self {
        ExprError::from(e).into()
    }
}

#[derive(Serialize)]
struct CoherentOutput {
    cutoff: usize,
    norm_sqr: f64,
    partial_sum: f64,
    state: TypedMatrix,
}

#[derive(Serialize)]
struct CommutatorOutput {
    cutoff: usize,
    inner_product: [f64; 2],
    mixed: f64,
    mixed_unrestricted: f64,
    raising: f64,
    lowering: f64,
    passed: bool,
}

fn single_particle(path: &PathBuf) -> Result<SpaceObject, Failure> {
    let m = load_matrix(path)?;
    if m.cols() != 1 {
        return Err(Failure::Usage(format!(
            "{} must hold a column vector, found {} columns",
            path.display(),
            m.cols()
        )));
    }
    Ok(SpaceObject::base(m.rows()))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Eval {
            expr,
            env: bindings,
            dim,
            cutoff,
            out,
        } => {
            if dim == 0 {
                return Err(Failure::Usage("--dim must be positive".into()));
            }
            let mut env = Environment::new(dim, cutoff);
            for binding in &bindings {
                let (name, path) = binding.split_once('=').ok_or_else(|| {
                    Failure::Usage(format!("--env expects NAME=FILE, got {binding:?}"))
                })?;
                env.bind(name.trim(), load_matrix(path.trim())?)?;
            }
            let parsed = parse_expr(&expr)?;
            let m = eval_expr(&parsed, &env)?;
            emit(&to_pretty(&TypedMatrix::from(&m)), out.as_deref())?;
        }
        Command::Coherent { phi, cutoff } => {
            let a = single_particle(&phi)?;
            let v = load_state(&phi, &a)?;
            let f = FockSpace::new(&a, cutoff);
            let state = coherent_state(&f, &v)?;
            let out = CoherentOutput {
                cutoff,
                norm_sqr: state.norm_sqr(),
                partial_sum: coherent_norm_oracle(v.norm_sqr(), cutoff),
                state: TypedMatrix::from(&state),
            };
            emit(&to_pretty(&out), None)?;
        }
        Command::Commutator { phi, psi, cutoff } => {
            let a = single_particle(&phi)?;
            let u = load_state(&phi, &a)?;
            let v = load_state(&psi, &a)?;
            let f = FockSpace::new(&a, cutoff);
            let r = ccr_residuals(&f, &u, &v)?;
            let inner = compose(&u.dagger(), &v)?.as_scalar().expect("1x1");
            let passed = r.mixed.max(r.raising).max(r.lowering) <= DEFAULT_TOLERANCE;
            let out = CommutatorOutput {
                cutoff,
                inner_product: [inner.re, inner.im],
                mixed: r.mixed,
                mixed_unrestricted: r.mixed_unrestricted,
                raising: r.raising,
                lowering: r.lowering,
                passed,
            };
            emit(&to_pretty(&out), None)?;
            if !passed {
                return Err(Failure::Law("commutation relations violated".into()));
            }
        }
        Command::Check {
            dims,
            cutoffs,
            seed,
            report,
        } => {
            if dims.contains(&0) {
                return Err(Failure::Usage("--dims must be positive".into()));
            }
            let config = SuiteConfig {
                dims,
                cutoffs,
                seed,
                ..SuiteConfig::default()
            };
            let reports = run_suite(&config);
            emit(&report_json(&reports), report.as_deref())?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            eprintln!("{} checks, {} failed", reports.len(), failed);
            if !all_passed(&reports) {
                return Err(Failure::Law(format!("{failed} law checks failed")));
            }
        }
        Command::Exp {
            monoid,
            element,
            order,
        } => {
            let mono = load_monoid(&monoid)?;
            let x = load_state(&element, mono.carrier())?;
            let e = monoid_exp(&mono, &x, order)?;
            emit(&to_pretty(&TypedMatrix::from(&e)), None)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Law(msg)) => {
            eprintln!("law failure: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
