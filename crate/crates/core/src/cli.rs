//! The `usim` command-line surface.
//!
//! Every command writes a JSON report to `out` and returns its exit code:
//! `0` for a positive outcome, `1` for a negative one, `2` for errors, with a
//! diagnostic written to `err`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::canonical::{canonical_member_with, family_size, family_with, FamilyOptions};
use crate::error::{Error, Result};
use crate::io::{read_matrix, write_matrix, MatrixFile};
use crate::linalg::schur::SchurForm;
use crate::linalg::structure::is_nonderogatory;
use crate::matrix::{c64, ComplexMatrix};
use crate::oracle::generate::gen_nonderogatory_instance;
use crate::oracle::words::{specht_pearcy_test, TraceVerdict};
use crate::similarity::{canonical_schur, check_unitary_similarity, Config, Reason, Verdict};
use crate::stability::{builtin_a4, degrees, perturbation_experiment, StabilityReport};

#[derive(Debug, Parser)]
#[command(name = "usim", version, about = "Decide unitary similarity of complex matrices and build canonical families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether B = U A U* for some unitary U.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Print the canonical family of a matrix.
    Family {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        path: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// Only the member for m = 0.
        #[arg(long, conflicts_with = "all")]
        m0: bool,
        /// Every member (default).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Family distance under perturbation of one entry.
    Perturb {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        path: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// One-based position `i,j` with i < j.
        #[arg(long, default_value = "3,4")]
        entry: String,
        /// Magnitudes |ε|.
        #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-4,1e-6")]
        eps: Vec<f64>,
        /// Arguments of ε in degrees.
        #[arg(long, value_delimiter = ',', default_value = "0", allow_negative_numbers = true)]
        arg_deg: Vec<f64>,
        /// Include the positive-real baseline normalizer.
        #[arg(long)]
        baseline: bool,
        /// Aligned text table instead of JSON.
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        tol: Tolerances,
    },
    /// Write a random nonderogatory matrix and, beside it, its conjugating unitary.
    Gen {
        #[arg(long)]
        n: usize,
        /// Comma-separated eigenvalues such as `1,2-1i,2-1i`; defaults to 1..=n.
        #[arg(long)]
        spectrum: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare traces of words in A, A* and B, B*.
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_word_len: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// The 4x4 stability example with ε = 0.
    A4,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Tolerances {
    #[arg(long)]
    pub tol_match: Option<f64>,
    #[arg(long)]
    pub tol_cluster: Option<f64>,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    /// Largest n for which families are built.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Build families beyond --max-n.
    #[arg(long)]
    pub force: bool,
}

impl Tolerances {
    pub fn config(&self) -> Config {
        let d = Config::default();
        Config {
            tol_match: self.tol_match.unwrap_or(d.tol_match),
            tol_cluster: self.tol_cluster.unwrap_or(d.tol_cluster),
            tol_rank: self.tol_rank.unwrap_or(d.tol_rank),
            max_n_family: if self.force {
                usize::MAX
            } else {
                self.max_n.unwrap_or(d.max_n_family)
            },
            ..d
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Check { a, b, tol } => cmd_check(&a, &b, &tol.config(), out, err),
        Command::Family {
            path,
            builtin,
            m0,
            all: _,
            tol,
        } => load(path.as_deref(), builtin).and_then(|m| cmd_family(&m, m0, &tol.config(), out)),
        Command::Perturb {
            path,
            builtin,
            entry,
            eps,
            arg_deg,
            baseline,
            table,
            tol,
        } => load(path.as_deref(), builtin).and_then(|m| {
            let entry = parse_entry(&entry)?;
            let args: Vec<f64> = arg_deg.iter().map(|&d| degrees(d)).collect();
            cmd_perturb(&m, entry, &eps, &args, baseline, table, &tol.config(), out)
        }),
        Command::Gen { n, spectrum, seed, out: path } => {
            let spectrum = match spectrum {
                Some(s) => parse_spectrum(&s),
                None => Ok((1..=n).map(|k| c64::new(k as f64, 0.0)).collect()),
            };
            spectrum.and_then(|s| cmd_gen(n, &s, seed, &path))
        }
        Command::Oracle { a, b, max_word_len } => cmd_oracle(&a, &b, max_word_len, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Parses arguments from the process command line and runs against stdio.
pub fn main_with_stdio() -> i32 {
    let cli = Cli::parse();
    run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn load(path: Option<&Path>, builtin: Option<Builtin>) -> Result<ComplexMatrix> {
    match (path, builtin) {
        (_, Some(Builtin::A4)) => Ok(builtin_a4(c64::new(0.0, 0.0))),
        (Some(p), None) => read_matrix(p),
        (None, None) => Err(Error::InvalidArgument("a matrix file or --builtin is required".into())),
    }
}

/// One-based `i,j` into a zero-based pair.
pub fn parse_entry(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("entry must look like `i,j` with one-based indices, got {s:?}"));
    let (i, j) = s.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

pub fn parse_spectrum(s: &str) -> Result<Vec<c64>> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            c64::from_str(part).map_err(|_| Error::Parse(format!("not a complex number: {part:?}")))
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct Witnesses {
    m1: Vec<i32>,
    m2: Vec<i32>,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    similar: bool,
    reason: String,
    witnesses: Option<Witnesses>,
    certificate: Option<MatrixFile>,
    residual: Option<f64>,
    nonderogatory_margin: Option<f64>,
    magnitude_gap: Option<f64>,
}

/// Exit code of `check` for a verdict.
pub fn verdict_exit_code(v: &Verdict) -> i32 {
    match v.reason {
        Reason::Similar => 0,
        Reason::NotNonderogatory => 2,
        _ => 1,
    }
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn cmd_check(a: &Path, b: &Path, cfg: &Config, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let a = read_matrix(a)?;
    let b = read_matrix(b)?;
    let v = check_unitary_similarity(&a, &b, cfg)?;
    let report = CheckReport {
        similar: v.similar,
        reason: v.reason.to_string(),
        witnesses: v.witnesses.clone().map(|(m1, m2)| Witnesses { m1, m2 }),
        certificate: v.certificate.as_ref().map(MatrixFile::from_matrix),
        residual: v.residual,
        nonderogatory_margin: v.nonderogatory_margin,
        magnitude_gap: v.magnitude_gap,
    };
    emit(out, &report)?;
    if v.reason == Reason::NotNonderogatory {
        writeln!(err, "error: input is derogatory (rank margin {:e})", v.nonderogatory_margin.unwrap_or(0.0))?;
    }
    Ok(verdict_exit_code(&v))
}

#[derive(Debug, Serialize)]
struct FamilyEntry {
    m: Vec<i32>,
    matrix: MatrixFile,
}

#[derive(Debug, Serialize)]
struct FamilyReport {
    n: usize,
    size: usize,
    members: Vec<FamilyEntry>,
}

/// Upper triangular inputs are used as given; anything else is first brought
/// to Schur form in canonical eigenvalue order.
fn triangular_form(m: &ComplexMatrix, cfg: &Config) -> Result<ComplexMatrix> {
    let s = if m.is_upper_triangular() {
        SchurForm {
            order: m.diagonal(),
            u: ComplexMatrix::identity(m.n()),
            t: m.clone(),
        }
    } else {
        canonical_schur(m, cfg)?
    };
    if !is_nonderogatory(&s, cfg.tol_rank) {
        return Err(Error::InvalidArgument("input is derogatory".into()));
    }
    Ok(s.t)
}

fn family_options(cfg: &Config) -> FamilyOptions {
    FamilyOptions {
        tol_zero: cfg.tol_zero,
        quantum: cfg.quantum,
        tol_consistent: cfg.tol_consistent,
    }
}

fn check_family_size(n: usize, cfg: &Config) -> Result<()> {
    if n > cfg.max_n_family {
        return Err(Error::FamilyTooLarge {
            n,
            max: cfg.max_n_family,
        });
    }
    Ok(())
}

pub fn cmd_family(m: &ComplexMatrix, only_base: bool, cfg: &Config, out: &mut dyn Write) -> Result<i32> {
    cfg.validate()?;
    let n = m.n();
    let t = triangular_form(m, cfg)?;
    let opts = family_options(cfg);
    let members = if only_base {
        vec![canonical_member_with(&t, &vec![0; n * (n - 1) / 2], &opts)?]
    } else {
        check_family_size(n, cfg)?;
        family_with(&t, &opts)?.members
    };
    let report = FamilyReport {
        n,
        size: family_size(n),
        members: members
            .into_iter()
            .map(|mem| FamilyEntry {
                matrix: MatrixFile::from_matrix(&mem.k),
                m: mem.m,
            })
            .collect(),
    };
    emit(out, &report)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_perturb(
    m: &ComplexMatrix,
    entry: (usize, usize),
    magnitudes: &[f64],
    arguments: &[f64],
    baseline: bool,
    table: bool,
    cfg: &Config,
    out: &mut dyn Write,
) -> Result<i32> {
    cfg.validate()?;
    check_family_size(m.n(), cfg)?;
    let t = triangular_form(m, cfg)?;
    let opts = family_options(cfg);
    let reports = arguments
        .iter()
        .map(|&arg| perturbation_experiment(&t, entry, magnitudes, arg, baseline, &opts))
        .collect::<Result<Vec<_>>>()?;
    if table {
        write_table(out, &reports)?;
    } else {
        emit(out, &reports)?;
    }
    Ok(0)
}

fn write_table(out: &mut dyn Write, reports: &[StabilityReport]) -> Result<()> {
    for r in reports {
        writeln!(out, "entry ({}, {}), arg {:.6} rad", r.entry[0], r.entry[1], r.argument)?;
        writeln!(out, "{:>12}  {:>14}  {:>12}  {:>14}", "|eps|", "family", "ratio", "baseline")?;
        for row in &r.rows {
            let ratio = row.ratio.map_or("-".to_string(), |x| format!("{x:.6}"));
            let base = row.baseline_distance.map_or("-".to_string(), |x| format!("{x:.6e}"));
            writeln!(out, "{:>12.3e}  {:>14.6e}  {:>12}  {:>14}", row.magnitude, row.family_distance, ratio, base)?;
        }
    }
    Ok(())
}

/// `dir/name.json` becomes `dir/name.unitary.json`; other names get the suffix appended.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let name = out.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = name.strip_suffix(".json").unwrap_or(&name);
    out.with_file_name(format!("{stem}.unitary.json"))
}

pub fn cmd_gen(n: usize, spectrum: &[c64], seed: u64, out: &Path) -> Result<i32> {
    if n == 0 || spectrum.len() != n {
        return Err(Error::InvalidArgument(format!("spectrum has {} values, expected n = {n}", spectrum.len())));
    }
    if spectrum.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite);
    }
    let inst = gen_nonderogatory_instance(spectrum, seed);
    write_matrix(out, &inst.a)?;
    write_matrix(sidecar_path(out), &inst.q)?;
    Ok(0)
}

#[derive(Debug, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
enum OracleReport {
    Refuted { word: String, gap: f64 },
    Consistent { words_checked: usize, complete: bool },
}

pub fn cmd_oracle(a: &Path, b: &Path, max_len: usize, out: &mut dyn Write) -> Result<i32> {
    let a = read_matrix(a)?;
    let b = read_matrix(b)?;
    let verdict = specht_pearcy_test(&a, &b, max_len)?;
    let (report, code) = match verdict {
        TraceVerdict::Refuted { word, gap } => (
            OracleReport::Refuted {
                word: word.to_string(),
                gap,
            },
            1,
        ),
        TraceVerdict::Consistent { words_checked, complete } => {
            (OracleReport::Consistent { words_checked, complete }, 0)
        }
    };
    emit(out, &report)?;
    Ok(code)
}
