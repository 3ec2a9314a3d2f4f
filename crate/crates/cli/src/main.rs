mod batch;
mod format;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncbeta::dispatch::{self, DEFAULT_TOL};
use ncbeta::inversion::{invert, InversionProblem};
use ncbeta::selftest::{self, Suite};
use ncbeta::{Error, EvalPoint, Method, ShapeParams, Target};

use format::g17;

/// Exit codes.
const USAGE: u8 = 2;
const EVALUATION: u8 = 3;
const INFEASIBLE: u8 = 4;

#[derive(Parser)]
#[command(name = "ncbeta", version, about = "Cumulative noncentral beta distribution: evaluation and inversion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print B (or its complement), the method used and the error estimate.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        method: RouteArg,
        /// Print the complement 1 - B.
        #[arg(long)]
        complement: bool,
    },
    /// Solve B(x, y) = z for x or y; prints root, iterations and residual.
    #[command(allow_negative_numbers = true)]
    Invert {
        #[arg(long, value_enum)]
        unknown: UnknownArg,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        z: f64,
        /// The fixed noncentrality when solving for y.
        #[arg(long)]
        x: Option<f64>,
        /// The fixed quantile when solving for x.
        #[arg(long)]
        y: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Evaluate or invert every row of a CSV file.
    Batch {
        #[arg(long = "in")]
        input: std::path::PathBuf,
        #[arg(long = "out")]
        output: std::path::PathBuf,
        #[arg(long, value_enum)]
        op: batch::Op,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run the reproduction and invariant checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Print every check, not only failures.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Series,
    Kummer,
    LargeZ,
    Saddle,
    Erfc,
    Explain,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnknownArg {
    X,
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Tables,
    Invariants,
    All,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("ncbeta: {msg}");
    ExitCode::from(code)
}

fn eval_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => USAGE,
        Error::Infeasible { .. } => INFEASIBLE,
        _ => EVALUATION,
    }
}

fn cmd_eval(p: f64, q: f64, x: f64, y: f64, tol: f64, method: RouteArg, complement: bool) -> ExitCode {
    let (sp, pt) = match (ShapeParams::new(p, q), EvalPoint::new(x, y)) {
        (Ok(sp), Ok(pt)) => (sp, pt),
        (Err(e), _) | (_, Err(e)) => return fail(USAGE, e),
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return fail(USAGE, format!("--tol must be positive and finite, got {tol}"));
    }
    let route = match method {
        RouteArg::Explain => {
            let c = dispatch::explain(&sp, &pt);
            println!("{} {} {}", c.route, c.primary_target, c.rationale);
            return ExitCode::SUCCESS;
        }
        RouteArg::Auto => None,
        RouteArg::Series => Some(Method::Series),
        RouteArg::Kummer => Some(Method::KummerSeries),
        RouteArg::LargeZ => Some(Method::LargeZ),
        RouteArg::Saddle => Some(Method::Saddle),
        RouteArg::Erfc => Some(Method::ErfcUniform),
    };
    let res = match route {
        None => dispatch::evaluate(&sp, &pt, tol),
        Some(r) => dispatch::evaluate_route(&sp, &pt, r, tol),
    };
    match res {
        Ok(v) => {
            let value = if complement { v.get(Target::Bbar) } else { v.get(Target::B) };
            println!("{} {} {}", g17(value), v.method, g17(v.err_est));
            ExitCode::SUCCESS
        }
        Err(e) => fail(eval_code(&e), e),
    }
}

fn cmd_invert(unknown: UnknownArg, p: f64, q: f64, z: f64, x: Option<f64>, y: Option<f64>, tol: f64) -> ExitCode {
    let sp = match ShapeParams::new(p, q) {
        Ok(sp) => sp,
        Err(e) => return fail(USAGE, e),
    };
    let problem = match (unknown, x, y) {
        (UnknownArg::X, _, Some(y)) => InversionProblem::for_x(sp, y, z, tol),
        (UnknownArg::Y, Some(x), _) => InversionProblem::for_y(sp, x, z, tol),
        (UnknownArg::X, _, None) => return fail(USAGE, "--unknown x needs --y"),
        (UnknownArg::Y, None, _) => return fail(USAGE, "--unknown y needs --x"),
    };
    match problem.and_then(|p| invert(&p)) {
        Ok(r) => {
            println!("{} {} {}", g17(r.value), r.iterations, g17(r.residual));
            ExitCode::SUCCESS
        }
        Err(e) => fail(eval_code(&e), e),
    }
}

fn cmd_selftest(suite: SuiteArg, verbose: bool) -> ExitCode {
    let suite = match suite {
        SuiteArg::Tables => Suite::Tables,
        SuiteArg::Invariants => Suite::Invariants,
        SuiteArg::All => Suite::All,
    };
    let mut ok = true;
    for r in selftest::run(suite) {
        ok &= r.passed();
        if verbose {
            print!("{r}");
        } else {
            println!("{}", r.summary());
            for c in r.failures() {
                println!("{c}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EVALUATION)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { p, q, x, y, tol, method, complement } => cmd_eval(p, q, x, y, tol, method, complement),
        Command::Invert { unknown, p, q, z, x, y, tol } => cmd_invert(unknown, p, q, z, x, y, tol),
        Command::Batch { input, output, op, tol } => match batch::run(&input, &output, op, tol) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(USAGE, e),
        },
        Command::Selftest { suite, verbose } => cmd_selftest(suite, verbose),
    }
}
