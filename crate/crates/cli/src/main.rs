mod config;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mrspec_core::constraints::full_region;
use mrspec_core::golden::{generated_records, golden_records, load_golden_file, sort_records, to_csv, ReferenceTable};
use mrspec_core::verify::{run_verification, RowSet, VerifyMode, VerifyOptions};
use mrspec_core::{
    approximation_error_table, check_bound_state, check_state, energy_level, solve_angular, Error, PotentialParams,
    RingParams,
};

use config::{FileConfig, Model};

#[derive(Parser, Debug)]
#[command(
    name = "mrspec",
    version,
    about = "Bound-state spectra of the Manning-Rosen potential with a ring-shaped term"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Energy and derived quantities of a single state, as JSON.
    Energy(EnergyArgs),
    /// Spectrum table as CSV.
    Table(TableArgs),
    /// Plot-ready CSV for the centrifugal approximation or the feasible region.
    Figures(FigureArgs),
    /// Closed-form energies against the Numerov oracle over reference rows.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct ModelArgs {
    /// Potential strength A.
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Screening length b.
    #[arg(long)]
    b: Option<f64>,
    /// Constant term of the centrifugal approximation.
    #[arg(long)]
    c0: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    hbar: Option<f64>,
    /// Set A = 2b.
    #[arg(long)]
    hulthen_convention: bool,
}

#[derive(Args, Debug)]
struct EnergyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    beta_prime: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i32>,
    /// Angular node count.
    #[arg(long = "N")]
    n: Option<u32>,
    /// Radial node count.
    #[arg(long)]
    nr: Option<u32>,
    /// Use this l directly instead of deriving it from the ring parameters.
    #[arg(long)]
    l: Option<f64>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Replay the reference rows for the given alpha.
    #[arg(long)]
    golden: bool,
    /// Reference rows to replay instead of the built-in tables.
    #[arg(long)]
    golden_file: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Approx,
    Region,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum)]
    which: Which,
    /// With `--which region`, report the set difference against this alpha.
    #[arg(long)]
    compare_alpha: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Approximated,
    ExactCentrifugal,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    golden_file: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Checks failed after a successful run; the report has already been written.
#[derive(Debug)]
struct ChecksFailed(usize);

impl std::fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} row(s) failed verification", self.0)
    }
}

impl std::error::Error for ChecksFailed {}

fn resolve_model(flags: &ModelArgs, file: &FileConfig) -> anyhow::Result<Model> {
    let d = Model::default();
    let hulthen = flags.hulthen_convention || file.hulthen_convention.unwrap_or(false);
    let b = flags.b.or(file.b).unwrap_or(d.b);
    let a = match (flags.a, hulthen) {
        (Some(_), true) if flags.hulthen_convention => {
            bail!(Error::InvalidParameter("--A conflicts with --hulthen-convention (A = 2b)".into()))
        }
        (Some(a), _) => a,
        (None, true) => 2.0 * b,
        (None, false) => file.a.unwrap_or(d.a),
    };
    Ok(Model {
        a,
        alpha: flags.alpha.or(file.alpha).unwrap_or(d.alpha),
        b,
        c0: flags.c0.or(file.c0).unwrap_or(d.c0),
        mu: flags.mu.or(file.mu).unwrap_or(d.mu),
        hbar: flags.hbar.or(file.hbar).unwrap_or(d.hbar),
    })
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())).into()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Io(format!("stdout: {e}")).into())
        }
    }
}

fn cmd_energy(args: &EnergyArgs, file: &FileConfig) -> anyhow::Result<()> {
    let model = resolve_model(&args.model, file)?;
    let pp = model.params()?;
    let n_r = args.nr.or(file.nr).unwrap_or(0);

    let (ring, lambda, l, l_source) = match args.l.or(file.l) {
        Some(l) => (None, l * (l + 1.0), l, "explicit"),
        None => {
            let rp = RingParams::new(
                args.beta.or(file.beta).unwrap_or(0.0),
                args.beta_prime.or(file.beta_prime).unwrap_or(0.0),
                args.m.or(file.m).unwrap_or(0),
                args.n.or(file.n).unwrap_or(0),
            )?;
            let report = check_state(&pp, &rp, n_r);
            if !report.is_bound() {
                bail!(constraint_error(&report.messages));
            }
            let ang = solve_angular(rp)?;
            (Some((rp, ang)), ang.lambda, ang.l_eff, "computed")
        }
    };
    let report = check_bound_state(&pp, lambda, n_r);
    if !report.is_bound() {
        bail!(constraint_error(&report.messages));
    }
    let sol = energy_level(&pp, lambda, n_r)?;

    let value = json!({
        "beta": ring.map(|(rp, _)| rp.beta),
        "beta_prime": ring.map(|(rp, _)| rp.beta_prime),
        "m": ring.map(|(rp, _)| rp.m),
        "N": ring.map(|(rp, _)| rp.n),
        "n_r": n_r,
        "l": l,
        "n": f64::from(n_r) + l + 1.0,
        "l_source": l_source,
        "u": ring.map(|(_, a)| a.u),
        "zeta": ring.map(|(_, a)| a.zeta),
        "lambda": sol.lambda,
        "Lambda": sol.big_lambda,
        "sqrt_c": sol.sqrt_c,
        "eps_sq": sol.eps_sq,
        "E": sol.energy,
        "params": {"A": pp.a_strength, "alpha": pp.alpha, "b": pp.b, "mu": pp.mu, "hbar": pp.hbar, "c0": pp.c0},
    });
    emit(None, &format!("{}\n", serde_json::to_string_pretty(&value)?))
}

fn constraint_error(messages: &[String]) -> Error {
    Error::Domain(messages.join("; "))
}

fn cmd_table(args: &TableArgs, file: &FileConfig) -> anyhow::Result<()> {
    let model = resolve_model(&args.model, file)?;
    let pp = model.params()?;
    let mut records = if let Some(path) = &args.golden_file {
        golden_records(&load_golden_file(path)?, &pp)?
    } else if args.golden {
        let table = ReferenceTable::for_alpha(model.alpha).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no reference table for alpha = {}; use 0.75 or 1, or pass --golden-file",
                model.alpha
            ))
        })?;
        golden_records(&table.rows(), &pp)?
    } else {
        generated_records(&pp)
    };
    sort_records(&mut records);
    emit(args.output.as_deref(), &to_csv(&records))
}

fn region_with_energies(pp: &PotentialParams<f64>) -> Vec<(u32, u32, f64)> {
    full_region(pp)
        .into_iter()
        .filter_map(|(n_r, l)| {
            let lf = f64::from(l);
            energy_level(pp, lf * (lf + 1.0), n_r).ok().map(|s| (n_r, l, s.energy))
        })
        .collect()
}

fn cmd_figures(args: &FigureArgs, file: &FileConfig) -> anyhow::Result<()> {
    let model = resolve_model(&args.model, file)?;
    let pp = model.params()?;
    let mut out = String::new();
    match args.which {
        Which::Approx => {
            let (lo, hi, points) = (0.05 * pp.b, 6.0 * pp.b, 500);
            let rs: Vec<f64> = (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect();
            out.push_str("r,exact,improved,conventional\n");
            for row in approximation_error_table(&pp, &rs)? {
                out.push_str(&format!("{:.9},{:.9},{:.9},{:.9}\n", row.r, row.exact, row.improved, row.conventional));
            }
        }
        Which::Region => {
            out.push_str("n_r,l,E\n");
            let region = region_with_energies(&pp);
            for (n_r, l, e) in &region {
                out.push_str(&format!("{n_r},{l},{e:.6}\n"));
            }
            if let Some(other) = args.compare_alpha {
                let here: BTreeSet<(u32, u32)> = region.iter().map(|&(n, l, _)| (n, l)).collect();
                let there: BTreeSet<(u32, u32)> =
                    region_with_energies(&pp.with_alpha(other)).iter().map(|&(n, l, _)| (n, l)).collect();
                eprintln!(
                    "only at alpha = {}: {:?}\nonly at alpha = {other}: {:?}",
                    pp.alpha,
                    here.difference(&there).collect::<Vec<_>>(),
                    there.difference(&here).collect::<Vec<_>>()
                );
            }
        }
    }
    emit(args.output.as_deref(), &out)
}

fn parse_mode(s: &str) -> anyhow::Result<VerifyMode> {
    match s {
        "approximated" => Ok(VerifyMode::Approximated),
        "exact-centrifugal" => Ok(VerifyMode::ExactCentrifugal),
        other => Err(Error::Schema(format!("unknown mode '{other}'")).into()),
    }
}

fn cmd_verify(args: &VerifyArgs, file: &FileConfig) -> anyhow::Result<()> {
    let model = resolve_model(&args.model, file)?;
    let pp = model.params()?;
    let mode = match (args.mode, &file.mode) {
        (Some(ModeArg::Approximated), _) => VerifyMode::Approximated,
        (Some(ModeArg::ExactCentrifugal), _) => VerifyMode::ExactCentrifugal,
        (None, Some(s)) => parse_mode(s)?,
        (None, None) => VerifyMode::Approximated,
    };
    let tolerance = args.tolerance.or(file.tolerance).unwrap_or(1e-5);

    let set = if let Some(path) = &args.golden_file {
        let label = path.file_stem().map_or_else(|| "golden".to_string(), |s| s.to_string_lossy().into_owned());
        RowSet { label, params: pp, rows: load_golden_file(path)? }
    } else {
        let table = ReferenceTable::for_alpha(model.alpha).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no reference table for alpha = {}; use 0.75 or 1, or pass --golden-file",
                model.alpha
            ))
        })?;
        RowSet { label: table.label().to_string(), params: pp, rows: table.rows() }
    };

    let opts = VerifyOptions { tolerance, mode, numerov: None };
    let report = run_verification(&[set], &opts);
    emit(args.output.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&report)?))?;

    let s = &report.summary;
    eprintln!(
        "verified {} rows ({:?} mode): max |dE| = {:.3e}, failures = {}, table_override rows = {}",
        s.rows,
        mode,
        s.max_delta,
        s.failures,
        s.table_overrides.len()
    );
    for row in report.rows.iter().filter(|r| !r.passed) {
        let i = &row.inputs;
        eprintln!(
            "  FAIL beta={} beta'={} m={} N={} n_r={} l={}: {}",
            i.beta,
            i.beta_prime,
            i.m,
            i.n_ang,
            i.n_r,
            i.l,
            row.error.as_deref().unwrap_or("tolerance, norm or node check")
        );
    }
    if !report.passed() {
        return Err(ChecksFailed(s.failures).into());
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(e) if e.is_data_error() => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let file = FileConfig::from_env()?;
    match &cli.command {
        Command::Energy(a) => cmd_energy(a, &file),
        Command::Table(a) => cmd_table(a, &file).context("table"),
        Command::Figures(a) => cmd_figures(a, &file).context("figures"),
        Command::Verify(a) => cmd_verify(a, &file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.downcast_ref::<ChecksFailed>().is_none() {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
