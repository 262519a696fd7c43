//! Command-line front end.
//!
//! Exit codes: 0 success or true, 1 false / unsolvable / failed check,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::gcd_lcm::{cofactor, gcd_lcm_pair, left_divides, right_divides};
use crate::matrix::{format_matrix, parse_matrix, DenseMatrix};
use crate::normal_form::{hermite_col, smith};
use crate::random::RandomScalar;
use crate::ring::{Int, Poly};
use crate::solver::{
    annihilator_basis, annihilator_element, build_solution_set, certify, general_solution,
    particular_solution, AnnihilatorParameter, Obstruction, SolutionParameter, SolutionSet,
    SolvabilityCertificate,
};
use crate::verify::verify_battery;

pub const DEFAULT_SEED: u64 = 20_190_518;
pub const DEFAULT_TRIALS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    /// Arbitrary precision integers.
    Int,
    /// Polynomials in x over exact rationals.
    Polyq,
}

#[derive(Debug, Parser)]
#[command(
    name = "eddsolve",
    version,
    about = "Solve B·X = A exactly over Z or Q[x]; left gcd/lcm of all solutions"
)]
struct Cli {
    /// Coefficient domain for every matrix file.
    #[arg(long, value_enum, default_value = "int", global = true)]
    ring: RingKind,

    /// Emit JSON instead of the matrix file format.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form P·M·Q = E with all transforms.
    Snf { matrix: PathBuf },
    /// Column Hermite normal form M·W = H.
    Hnf { matrix: PathBuf },
    /// Decide and parametrize B·X = A.
    #[command(group(ArgGroup::new("output").args(["particular", "with_params", "gcd", "lcm"])))]
    Solve {
        b: PathBuf,
        a: PathBuf,
        /// Print only the particular solution C (the zero free block).
        #[arg(long)]
        particular: bool,
        /// Print X for the free block [T3 T4] read from this file.
        #[arg(long, value_name = "T.mat")]
        with_params: Option<PathBuf>,
        /// Print the left gcd of all solutions.
        #[arg(long)]
        gcd: bool,
        /// Print the left lcm of all solutions.
        #[arg(long)]
        lcm: bool,
    },
    /// Left gcd F of all solutions of B·X = A.
    Gcd {
        b: PathBuf,
        a: PathBuf,
        /// Also print the cofactor M with F·M = N.
        #[arg(long)]
        witness: bool,
    },
    /// Left lcm N of all solutions of B·X = A.
    Lcm {
        b: PathBuf,
        a: PathBuf,
        /// Also print the projector K with N = K·X for every solution X.
        #[arg(long)]
        witness: bool,
    },
    /// Generators U·diag(0, I) of the right annihilator of B, or U·[0; D].
    Annihilator {
        b: PathBuf,
        /// (n-t)×n block D.
        #[arg(long, value_name = "D.mat")]
        param: Option<PathBuf>,
    },
    /// Whether D left-divides A (D·W = A), or with --right whether D
    /// right-divides A (W·D = A).
    Divides {
        d: PathBuf,
        a: PathBuf,
        #[arg(long)]
        right: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Full cross-check battery on an instance plus randomized perturbations.
    Verify {
        b: PathBuf,
        a: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Expected left gcd, compared up to right association.
        #[arg(long, value_name = "F.mat")]
        expect_gcd: Option<PathBuf>,
        /// Expected left lcm, compared up to right association.
        #[arg(long, value_name = "N.mat")]
        expect_lcm: Option<PathBuf>,
    },
}

/// Settings shared by every subcommand after argument parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub ring: RingKind,
    pub json: bool,
    pub seed: u64,
    pub trials: Option<usize>,
    pub witness: bool,
}

impl CliConfig {
    fn from_cli(cli: &Cli) -> Self {
        let (seed, trials, witness) = match &cli.command {
            Command::Verify { seed, trials, .. } => (
                seed.unwrap_or(DEFAULT_SEED),
                Some(trials.map_or(DEFAULT_TRIALS, |t| t as usize)),
                false,
            ),
            Command::Gcd { witness, .. } | Command::Lcm { witness, .. } | Command::Divides { witness, .. } => {
                (DEFAULT_SEED, None, *witness)
            }
            _ => (DEFAULT_SEED, None, false),
        };
        CliConfig {
            ring: cli.ring,
            json: cli.json,
            seed,
            trials,
            witness,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Runs the CLI with process stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let cfg = CliConfig::from_cli(&cli);
    let mut buf = Vec::new();
    let result = match cfg.ring {
        RingKind::Int => dispatch::<Int>(&cli.command, &cfg, &mut buf),
        RingKind::Polyq => dispatch::<Poly>(&cli.command, &cfg, &mut buf),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load<R: RandomScalar>(path: &Path) -> Result<DenseMatrix<R>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn matrix_json<R: RandomScalar>(m: &DenseMatrix<R>) -> Value {
    let entries: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| v.to_string()).collect())
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

/// Collects named matrices and renders them either as commented matrix
/// blocks or as one JSON object.
struct Output<'a, R> {
    header: Vec<(String, Value)>,
    comments: Vec<String>,
    matrices: Vec<(&'a str, DenseMatrix<R>)>,
}

impl<'a, R: RandomScalar> Output<'a, R> {
    fn new() -> Self {
        Output {
            header: Vec::new(),
            comments: Vec::new(),
            matrices: Vec::new(),
        }
    }

    fn field(&mut self, key: &str, value: Value, comment: impl Into<String>) -> &mut Self {
        self.header.push((key.to_string(), value));
        let comment = comment.into();
        if !comment.is_empty() {
            self.comments.push(comment);
        }
        self
    }

    fn matrix(&mut self, name: &'a str, m: DenseMatrix<R>) -> &mut Self {
        self.matrices.push((name, m));
        self
    }

    fn emit(&self, json_mode: bool, out: &mut dyn Write) -> std::io::Result<()> {
        if json_mode {
            let mut obj = serde_json::Map::new();
            for (k, v) in &self.header {
                obj.insert(k.clone(), v.clone());
            }
            for (name, m) in &self.matrices {
                obj.insert((*name).to_string(), matrix_json(m));
            }
            let text = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
            writeln!(out, "{text}")
        } else {
            for c in &self.comments {
                writeln!(out, "# {c}")?;
            }
            for (name, m) in &self.matrices {
                writeln!(out, "# {name}")?;
                out.write_all(format_matrix(m).as_bytes())?;
            }
            Ok(())
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

fn unsolvable<R: RandomScalar>(
    cert: &SolvabilityCertificate<R>,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let obstruction = cert.obstruction.as_ref().expect("unsolvable certificates carry an obstruction");
    let (kind, row, col) = match obstruction {
        Obstruction::Divisibility { row, col } => ("divisibility", row, col),
        Obstruction::BelowRank { row, col } => ("below-rank", row, col),
    };
    let mut o = Output::<R>::new();
    o.field("solvable", json!(false), "unsolvable")
        .field("n", json!(cert.n), format!("n={} k={} t={}", cert.n, cert.k, cert.t))
        .field("k", json!(cert.k), "")
        .field("t", json!(cert.t), "")
        .field(
            "obstruction",
            json!({ "kind": kind, "row": row + 1, "col": col + 1 }),
            obstruction.to_string(),
        );
    o.emit(cfg.json, out).map_err(io)?;
    Ok(1)
}

fn solve_pair<R: RandomScalar>(
    b: &Path,
    a: &Path,
) -> Result<(SolvabilityCertificate<R>, Option<SolutionSet<R>>), Failure> {
    let (b, a) = (load::<R>(b)?, load::<R>(a)?);
    let cert = certify(&b, &a)?;
    let ss = if cert.solvable {
        Some(build_solution_set(&cert)?)
    } else {
        None
    };
    Ok((cert, ss))
}

fn dispatch<R: RandomScalar>(cmd: &Command, cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Snf { matrix } => {
            let m = load::<R>(matrix)?;
            let d = smith(&m);
            let factors: Vec<String> = d.inv_factors.iter().map(|f| f.to_string()).collect();
            let mut o = Output::new();
            o.field("rank", json!(d.rank), format!("rank {}", d.rank))
                .field(
                    "invariant_factors",
                    json!(factors),
                    format!("invariant factors: {}", factors.join(" ")),
                )
                .matrix("P", d.p)
                .matrix("Pinv", d.p_inv)
                .matrix("E", d.e)
                .matrix("Q", d.q)
                .matrix("Qinv", d.q_inv);
            o.emit(cfg.json, out).map_err(io)?;
            Ok(0)
        }
        Command::Hnf { matrix } => {
            let m = load::<R>(matrix)?;
            let d = hermite_col(&m);
            let mut o = Output::new();
            o.field("rank", json!(d.rank()), format!("rank {}", d.rank()))
                .matrix("H", d.h)
                .matrix("W", d.w);
            o.emit(cfg.json, out).map_err(io)?;
            Ok(0)
        }
        Command::Solve {
            b,
            a,
            particular,
            with_params,
            gcd,
            lcm,
        } => {
            let (cert, ss) = solve_pair::<R>(b, a)?;
            let Some(ss) = ss else {
                return unsolvable(&cert, cfg, out);
            };
            let mut o = Output::new();
            o.field("solvable", json!(true), "solvable")
                .field("n", json!(ss.n), format!("n={} k={} t={}", ss.n, ss.k, ss.t))
                .field("k", json!(ss.k), "")
                .field("t", json!(ss.t), "");
            if *particular {
                o.matrix("C", particular_solution(&ss));
            } else if let Some(path) = with_params {
                let block = load::<R>(path)?;
                if block.cols() != ss.n {
                    return Err(Failure::Usage(format!("[T3 T4] must have {} columns", ss.n)));
                }
                let p = SolutionParameter::from_block(&block, ss.t)?;
                o.matrix("X", general_solution(&ss, &p)?);
            } else if *gcd {
                o.matrix("F", crate::gcd_lcm::left_gcd(&ss));
            } else if *lcm {
                o.matrix("N", crate::gcd_lcm::left_lcm(&ss));
            } else {
                let (m1, m2) = (ss.m1(), ss.m2());
                o.matrix("C", particular_solution(&ss))
                    .matrix("U", ss.u.clone())
                    .matrix("Qinv", ss.q_inv.clone())
                    .matrix("M1", m1)
                    .matrix("M2", m2);
            }
            o.emit(cfg.json, out).map_err(io)?;
            Ok(0)
        }
        Command::Gcd { b, a, .. } | Command::Lcm { b, a, .. } => {
            let (cert, ss) = solve_pair::<R>(b, a)?;
            let Some(ss) = ss else {
                return unsolvable(&cert, cfg, out);
            };
            let pair = gcd_lcm_pair(&ss);
            let mut o = Output::new();
            if matches!(cmd, Command::Gcd { .. }) {
                o.matrix("F", pair.f);
                if cfg.witness {
                    o.matrix("M", cofactor(&ss, &SolutionParameter::zero(ss.n, ss.t))?);
                }
            } else {
                o.matrix("N", pair.n);
                if cfg.witness {
                    o.matrix("K", pair.k);
                }
            }
            o.emit(cfg.json, out).map_err(io)?;
            Ok(0)
        }
        Command::Annihilator { b, param } => {
            let b = load::<R>(b)?;
            if !b.is_square() {
                return Err(Failure::Usage("B must be square".into()));
            }
            let snf = smith(&b);
            let z = match param {
                Some(path) => annihilator_element(&snf, &AnnihilatorParameter { d: load::<R>(path)? })?,
                None => annihilator_basis(&snf),
            };
            let mut o = Output::new();
            o.field("t", json!(snf.rank), format!("rank(B) = {}", snf.rank))
                .matrix("Z", z);
            o.emit(cfg.json, out).map_err(io)?;
            Ok(0)
        }
        Command::Divides { d, a, right, .. } => {
            let (d, a) = (load::<R>(d)?, load::<R>(a)?);
            let res = if *right { right_divides(&d, &a)? } else { left_divides(&d, &a)? };
            let mut o = Output::new();
            let side = if *right { "right" } else { "left" };
            o.field("divides", json!(res.holds), format!("{side} divides: {}", res.holds));
            if cfg.witness {
                if let Some(w) = res.witness {
                    o.matrix("W", w);
                }
            }
            o.emit(cfg.json, out).map_err(io)?;
            Ok(if res.holds { 0 } else { 1 })
        }
        Command::Verify {
            b,
            a,
            expect_gcd,
            expect_lcm,
            ..
        } => {
            let (b, a) = (load::<R>(b)?, load::<R>(a)?);
            let eg = expect_gcd.as_deref().map(load::<R>).transpose()?;
            let el = expect_lcm.as_deref().map(load::<R>).transpose()?;
            let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
            let checks = verify_battery(&b, &a, trials, cfg.seed, eg.as_ref(), el.as_ref());
            let all_pass = checks.iter().all(|c| c.passed);
            if cfg.json {
                let arr: Vec<Value> = checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                    .collect();
                let text = serde_json::to_string_pretty(&json!({ "passed": all_pass, "checks": arr }))
                    .expect("json values serialize");
                writeln!(out, "{text}").map_err(io)?;
            } else {
                for c in &checks {
                    writeln!(out, "{c}").map_err(io)?;
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}
