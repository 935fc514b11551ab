//! Command-line front end for `phinv-core`.
//!
//! ```text
//! phinv <eval|inv|sweep|verify|bench> [--method NAME] [--x REAL | --p REAL | --z REAL]
//!       [--lo REAL --hi REAL --step REAL] [--out PATH] [--iters N]
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.

mod bench;

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use phinv_core::{
    emit_csv, erf_approx, inverse_erf, phi_full, quantile, reduction_percent, sweep, tail_check,
    verify_bounds, BoundSpec, GridSpec, MethodId,
};

pub use bench::{bench, BenchReport, MIN_ITERATIONS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl From<phinv_core::Error> for CliError {
    fn from(e: phinv_core::Error) -> Self {
        use phinv_core::Error;
        match e {
            Error::Domain(msg) => CliError::Domain(msg),
            Error::InternalRange(msg) => CliError::Domain(format!("internal range: {msg}")),
            Error::Usage(msg) => CliError::Usage(msg),
            Error::Config(msg) => CliError::Usage(format!("invalid configuration: {msg}")),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o failure: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "phinv",
    version,
    about = "Invertible normal CDF and erf approximations"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an approximation at a point (erf methods extend oddly to x < 0).
    Eval {
        #[arg(long, default_value = "new-phi", value_parser = parse_method)]
        method: MethodId,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Invert an approximation: --p for normal CDF methods, --z for erf methods.
    Inv {
        #[arg(long, default_value = "new-phi", value_parser = parse_method)]
        method: MethodId,
        #[arg(long, conflicts_with = "z", allow_negative_numbers = true)]
        p: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
    },
    /// Write approximation, reference and errors over a grid as CSV.
    Sweep {
        #[arg(long, default_value = "new-phi", value_parser = parse_method)]
        method: MethodId,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every method against its published error bounds.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Time an approximation against the reference implementation.
    Bench {
        #[arg(long, default_value = "new-phi", value_parser = parse_method)]
        method: MethodId,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 1_000_000)]
        iters: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lo: f64,
    #[arg(long, default_value_t = 7.0, allow_negative_numbers = true)]
    hi: f64,
    #[arg(long, default_value_t = 1e-4)]
    step: f64,
}

impl GridArgs {
    fn grid(&self) -> Result<GridSpec, CliError> {
        Ok(GridSpec::new(self.lo, self.hi, self.step)?)
    }
}

fn parse_method(s: &str) -> Result<MethodId, String> {
    s.parse().map_err(|e: phinv_core::Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "phinv: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { method, x } => {
            let value = if method.is_phi() {
                phi_full(method, x)?
            } else {
                // Odd extension; the core only covers x >= 0.
                erf_approx(method, x.abs())?.copysign(x)
            };
            writeln!(out, "{value}")?;
            Ok(EXIT_OK)
        }
        Command::Inv { method, p, z } => {
            let value = match (method.is_phi(), p, z) {
                (true, Some(p), None) => quantile(method, p)?,
                (false, None, Some(z)) => inverse_erf(method, z)?,
                (true, _, _) => return Err(CliError::Usage(format!("{method} needs --p"))),
                (false, _, _) => return Err(CliError::Usage(format!("{method} needs --z"))),
            };
            writeln!(out, "{value}")?;
            Ok(EXIT_OK)
        }
        Command::Sweep {
            method,
            grid,
            out: path,
        } => {
            let report = sweep(method, &grid.grid()?)?;
            match path {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| {
                        CliError::Usage(format!("cannot create {}: {e}", path.display()))
                    })?;
                    emit_csv(&report, file)?;
                }
                None => {
                    emit_csv(&report, &mut *out)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { grid } => verify(&grid.grid()?, out),
        Command::Bench {
            method,
            grid,
            iters,
        } => {
            let r = bench(method, iters, &grid.grid()?)?;
            writeln!(
                out,
                "{}  iters {}  approx {:.2} ns/call  oracle {:.2} ns/call  speedup {:.2}x  checksum {}",
                r.method, r.iterations, r.ns_per_call_approx, r.ns_per_call_oracle, r.speedup, r.checksum
            )?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(grid: &GridSpec, out: &mut dyn Write) -> Result<i32, CliError> {
    let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "grid [{}, {}] step {} ({} points)",
        grid.lo(),
        grid.hi(),
        grid.step(),
        grid.len()
    )?;

    let mut all_pass = true;
    let mut maxima = Vec::new();
    for method in MethodId::ALL {
        let report = sweep(method, grid)?;
        let bounds = BoundSpec::published(method);
        let v = verify_bounds(&report, &bounds)?;
        all_pass &= v.pass();
        writeln!(
            out,
            "{}  abs {:.2e}{}: {}  rel {:.2e}: {}  max_abs {:.4e} @ x={:.4}  max_rel {:.4e} @ x={:.4}  margins {:.3e} / {:.3e}",
            method.name(),
            bounds.abs_bound,
            if bounds.abs_bound_is_derived() { "*" } else { "" },
            verdict(v.abs_pass()),
            bounds.rel_bound,
            verdict(v.rel_pass()),
            v.max_abs_err,
            v.argmax_abs,
            v.max_rel_err,
            v.argmax_rel,
            v.abs_margin,
            v.rel_margin,
        )?;
        maxima.push((method, report.max_abs_err, report.max_rel_err));
    }
    writeln!(
        out,
        "* inferred from the stated ~36% reduction over winitzki-erf"
    )?;

    let find = |m: MethodId| {
        maxima
            .iter()
            .find(|(k, _, _)| *k == m)
            .map(|&(_, a, r)| (a, r))
            .unwrap()
    };
    let (new_abs, new_rel) = find(MethodId::NewPhi);
    let (wphi_abs, wphi_rel) = find(MethodId::WinitzkiPhi);
    let (erf_new_abs, _) = find(MethodId::ErfFromNew);
    let (werf_abs, _) = find(MethodId::WinitzkiErf);
    if wphi_abs > 0.0 && wphi_rel > 0.0 && werf_abs > 0.0 {
        writeln!(
            out,
            "reduction new-phi vs winitzki-phi: abs {:.2}%  rel {:.2}%",
            reduction_percent(new_abs, wphi_abs)?,
            reduction_percent(new_rel, wphi_rel)?
        )?;
        writeln!(
            out,
            "reduction erf-from-new vs winitzki-erf: abs {:.2}%",
            reduction_percent(erf_new_abs, werf_abs)?
        )?;
    }

    let tail = tail_check(MethodId::NewPhi, 7.0, 40.0, 1e-2)?;
    all_pass &= tail.pass();
    writeln!(
        out,
        "tail new-phi x in [7, 40]: {}  max_abs {:.3e}  phi=1 max_abs {:.3e}",
        verdict(tail.pass()),
        tail.max_abs_err,
        tail.trivial_max_abs_err
    )?;
    Ok(if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
