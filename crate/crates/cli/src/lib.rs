//! Command-line front end for `kronrad`: matrix I/O, per-result report
//! commands and the seeded verification harness.

pub mod io;
pub mod render;
pub mod suites;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use kronrad::bounds::{cor1_equality_check, e14_chain, p3_chain, refined_bounds, th4_chain};
use kronrad::schurpower::{schur_radius_chain, th10_chain, tref_check};
use kronrad::semihilbert::p_kron_suite;
use kronrad::structured::{BUDGET_ENV, DEFAULT_ELEMENT_BUDGET};
use kronrad::{
    kron_pnorm_bounds, numerical_radius, numerical_radius_nonneg, root_bound_report, spectral_norm, spectral_radius,
    BoundReport, CMatrix, Exponent, PSpace,
};
use thiserror::Error;

pub use io::{emit_matrix, parse_matrix, parse_poly, ParseError};
pub use suites::{verify, Suite, VerifyConfig, VerifySummary};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    Usage = 2,
    Numerical = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },

    #[error(transparent)]
    Core(#[from] kronrad::Error),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(e) if e.is_numerical() => Status::Numerical,
            _ => Status::Usage,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "kronrad", version, about = "Numerical radius and norm bounds for Kronecker and Schur products")]
pub struct Cli {
    /// Print only the JSON lines, without tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Most negative slack accepted before a relation counts as violated.
    #[arg(long, global = true, default_value_t = kronrad::bounds::SLACK_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

/// Matrix arguments are file paths (JSON or shorthand text); `-` reads stdin.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerical radius with spectral radius and norm.
    Radius {
        /// Matrix file, or `-` for stdin.
        matrix: PathBuf,
        /// Grid points of the angular sweep.
        #[arg(long, default_value_t = kronrad::radius::DEFAULT_GRID)]
        grid: usize,
    },
    /// Bracket for the l_p operator norm of A ⊗ B.
    Pnorm {
        /// Exponent p >= 1, or `inf`.
        #[arg(long)]
        p: Exponent,
        /// Square matrix file, or `-` for stdin.
        a: PathBuf,
        /// Matrix file.
        b: PathBuf,
    },
    /// Numerical radius bound chains for A ⊗ B.
    KronBounds {
        /// Square matrix file, or `-` for stdin.
        a: PathBuf,
        /// Square matrix file.
        b: PathBuf,
    },
    /// Schur power chain for A, and the Schur product chain when B is given.
    SchurChain {
        /// Schur power, at least 1.
        #[arg(long)]
        m: usize,
        /// Square matrix file, or `-` for stdin.
        a: PathBuf,
        /// Matrix of the same size as A.
        b: Option<PathBuf>,
    },
    /// Equality test for w(A^{∘m}) = w(A)^m.
    Tref {
        /// Schur power, at least 1.
        #[arg(long)]
        m: usize,
        /// Square matrix file, or `-` for stdin.
        a: PathBuf,
    },
    /// Kronecker chain in the seminorm induced by a positive semidefinite P.
    Semihilbert {
        /// Positive semidefinite matrix file.
        #[arg(long = "P", value_name = "FILE")]
        p: PathBuf,
        /// Square matrix file, or `-` for stdin.
        a: PathBuf,
        /// Matrix file, P-adjointable.
        b: PathBuf,
    },
    /// Root modulus bounds for a monic polynomial.
    PolyBounds {
        /// Coefficients in descending order, leading 1 first.
        #[arg(long)]
        coeffs: PathBuf,
    },
    /// Seeded randomized check of every bound relation.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per suite.
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Comma-separated suite names; all suites when omitted.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<Suite>,
        /// Largest random matrix order.
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Largest Schur power.
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,3,inf")]
        p_set: Vec<Exponent>,
    },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    Ok(text)
}

pub fn load_matrix(path: &Path) -> Result<CMatrix, CliError> {
    parse_matrix(&read_text(path)?).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

/// Rejects a `KRONRAD_BUDGET` that is set but not a positive integer.
pub fn check_budget_env() -> Result<(), CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) if s.trim().parse::<usize>().map_or(true, |b| b == 0) => Err(CliError::Usage(format!(
            "{BUDGET_ENV}={s:?} is not a positive integer (default budget is {DEFAULT_ELEMENT_BUDGET} entries)"
        ))),
        _ => Ok(()),
    }
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    tol: f64,
    json_only: bool,
    violated: bool,
}

impl Printer<'_> {
    fn report(&mut self, name: &str, r: &BoundReport<f64>) -> Result<(), CliError> {
        self.violated |= !r.holds(self.tol);
        render::bound_report(self.out, name, r, self.tol, self.json_only)?;
        Ok(())
    }

    fn line(&mut self, text: &str) -> Result<(), CliError> {
        if !self.json_only {
            writeln!(self.out, "{text}")?;
        }
        Ok(())
    }

    fn json<R: serde::Serialize>(&mut self, name: &str, value: &R) -> Result<(), CliError> {
        render::json_line(self.out, name, value)?;
        Ok(())
    }

    fn status(&self) -> Status {
        if self.violated {
            Status::Violation
        } else {
            Status::Pass
        }
    }
}

/// Executes one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    check_budget_env()?;
    if !(cli.tol >= 0.0) {
        return Err(CliError::Usage(format!("--tol must be nonnegative, got {}", cli.tol)));
    }
    let mut pr = Printer {
        out,
        tol: cli.tol,
        json_only: cli.json,
        violated: false,
    };
    match &cli.command {
        Command::Radius { matrix, grid } => {
            let a = load_matrix(matrix)?;
            if *grid < 3 {
                return Err(CliError::Usage("--grid must be at least 3".into()));
            }
            let res = numerical_radius(&a, *grid, kronrad::radius::DEFAULT_THETA_TOL)?;
            let mut r = BoundReport::new(&a, &a);
            r.push("w", res.value, "numerical radius sweep");
            r.push("spectral_radius", spectral_radius(&a)?, "eigenvalues");
            r.push("norm", spectral_norm(&a)?, "largest singular value");
            r.push("half_norm", 0.5 * spectral_norm(&a)?, "norm equivalence");
            r.le("spectral_radius", "w");
            r.le("half_norm", "w");
            r.le("w", "norm");
            if a.is_real_nonnegative() {
                r.push("w_nonneg", numerical_radius_nonneg(&a)?, "Perron value of the symmetric part");
                r.eq("w", "w_nonneg");
            }
            pr.report("radius", &r)?;
            pr.line(&format!("  theta*  {:.15e}", res.theta_star))?;
            pr.json("radius-detail", &res)?;
        }
        Command::Pnorm { p, a, b } => {
            let (a, b) = (load_matrix(a)?, load_matrix(b)?);
            let pb = kron_pnorm_bounds(&a, &b, *p)?;
            let mut r = BoundReport::new(&a, &b);
            r.push("lower", pb.lower, "l_p Kronecker lower estimate");
            r.push("upper", pb.upper, "row and column sum interpolation");
            r.le("lower", "upper");
            if let Some(e) = pb.exact {
                r.push("exact", e, "exact l_p norm");
                r.le("lower", "exact");
                r.le("exact", "upper");
            }
            pr.report(&format!("pnorm p={p}"), &r)?;
            pr.json("pnorm-witness", &pb)?;
        }
        Command::KronBounds { a, b } => {
            let (a, b) = (load_matrix(a)?, load_matrix(b)?);
            pr.report("kronecker sandwich", &p3_chain(&a, &b)?)?;
            pr.report("comparison matrices", &th4_chain(&a, &b)?)?;
            pr.report("refined comparison", &refined_bounds(&a, &b)?)?;
            pr.report("norm interpolation", &e14_chain(&a, &b)?)?;
            let eq = cor1_equality_check(&a, &b, cli.tol)?;
            pr.line(&format!(
                "  equality w(A⊗B) = w(A)||B||: {} (w(B) = ||B||: {})",
                eq.equality, eq.forward_applicable
            ))?;
            pr.json("holbrook-equality", &eq)?;
        }
        Command::SchurChain { m, a, b } => {
            if *m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let a = load_matrix(a)?;
            pr.report(&format!("schur power m={m}"), &th10_chain(&a, *m)?)?;
            if let Some(b) = b {
                pr.report("schur product", &schur_radius_chain(&a, &load_matrix(b)?)?)?;
            }
        }
        Command::Tref { m, a } => {
            if *m == 0 {
                return Err(CliError::Usage("--m must be at least 1".into()));
            }
            let a = load_matrix(a)?;
            let v = tref_check(&a, *m, kronrad::bounds::EQUALITY_TOL)?;
            pr.report(&format!("schur power m={m}"), &th10_chain(&a, *m)?)?;
            pr.line(&format!(
                "  radial {} | equality {} | witness {} | partially diagonalizable {}",
                v.radial,
                v.equality,
                v.witness.is_some(),
                v.partial_diag
            ))?;
            pr.json("schur-equality", &v)?;
            if !v.consistent() {
                pr.violated = true;
            }
        }
        Command::Semihilbert { p, a, b } => {
            let ps = PSpace::new(&load_matrix(p)?)?;
            let (a, b) = (load_matrix(a)?, load_matrix(b)?);
            pr.report("P-seminorm kronecker chain", &p_kron_suite(&ps, &a, &b)?)?;
        }
        Command::PolyBounds { coeffs } => {
            let p = parse_poly(&read_text(coeffs)?).map_err(|source| CliError::Parse {
                path: coeffs.clone(),
                source,
            })?;
            let rep = root_bound_report(&p)?;
            let cm = kronrad::companion(&p);
            let mut r = BoundReport::new(&cm, &cm);
            r.push("max_root_modulus", rep.max_root_modulus, "companion eigenvalues");
            r.push("fujii_kubo", rep.fujii_kubo, "Fujii-Kubo root bound");
            r.push("est_poly", rep.est_poly, "circulant-split companion bound");
            r.le("max_root_modulus", "fujii_kubo");
            r.le("max_root_modulus", "est_poly");
            pr.report("polynomial root bounds", &r)?;
            pr.line(&format!("  tighter bound: {}", serde_json::to_string(&rep.winner).unwrap_or_default()))?;
            pr.json("roots", &rep)?;
        }
        Command::Verify {
            seed,
            trials,
            suites,
            n_max,
            m_max,
            p_set,
        } => {
            if *n_max == 0 || *m_max == 0 {
                return Err(CliError::Usage("--n-max and --m-max must be at least 1".into()));
            }
            let cfg = VerifyConfig {
                seed: *seed,
                trials: *trials,
                n_max: *n_max,
                m_max: *m_max,
                p_set: p_set.clone(),
                tol: cli.tol,
                suites: if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() },
            };
            let s = verify(&cfg, pr.out)?;
            return Ok(if s.violations > 0 {
                Status::Violation
            } else if s.numerical_failures > 0 || s.other_failures > 0 {
                Status::Numerical
            } else {
                Status::Pass
            });
        }
    }
    Ok(pr.status())
}
