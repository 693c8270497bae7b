//! Command-line front end. Every command writes CSV (default) or JSON to
//! standard output or `--output`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 convergence
//! failure. Errors are reported on stderr as a single JSON line.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::{decomposition_measure, reconstruct_pmf};
use crate::error::Error;
use crate::gnbd::{self, GnbdParams};
use crate::idd::{self, CompoundPoissonSpec};
use crate::levy;
use crate::tolerances::Tolerances;
use crate::verify::run_verify;

#[derive(Debug, Parser)]
#[command(
    name = "hyperlandau",
    version,
    about = "GNBD of hyperbolic Landau levels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Magnetic field strength, `2νR² > 1`.
    #[arg(long, global = true)]
    nu: Option<f64>,
    /// `|z|²/R²` in `(0, 1)`.
    #[arg(long, global = true)]
    tau: Option<f64>,
    /// Landau level, `m ≤ ⌊νR² - 1/2⌋`.
    #[arg(long, global = true, default_value_t = 0)]
    m: u32,
    /// Disc radius.
    #[arg(long, global = true, default_value_t = 1.0)]
    r: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Required by `sample` and `path`, rejected elsewhere.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    tol_normalization: Option<f64>,
    #[arg(long, global = true)]
    tol_mgf_series: Option<f64>,
    #[arg(long, global = true)]
    tol_decomposition: Option<f64>,
    #[arg(long, global = true)]
    tol_levy_series: Option<f64>,
    #[arg(long, global = true)]
    tol_product_identity: Option<f64>,
    #[arg(long, global = true)]
    tol_lk_reproduction: Option<f64>,
    #[arg(long, global = true)]
    tol_id_ratio: Option<f64>,
    #[arg(long, global = true)]
    tol_divisibility: Option<f64>,
    /// Omitted total variation allowed when truncating Lévy measures.
    #[arg(long, global = true)]
    tol_truncation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability mass function.
    Pmf {
        #[arg(long)]
        j_max: Option<usize>,
    },
    /// Moment generating function at a point of the closed unit disc.
    Mgf {
        #[arg(long, default_value_t = 0.5)]
        xi_re: f64,
        #[arg(long, default_value_t = 0.0)]
        xi_im: f64,
    },
    /// Mean, variance and Mandel parameter.
    Moments,
    /// Regime classification, or `tau_crit` over a range of levels.
    Mandel {
        /// Inclusive range `a:b` of Landau levels.
        #[arg(long)]
        m_range: Option<String>,
    },
    /// Signed measure of the atomic decomposition.
    Decompose,
    /// Lévy–Khintchine representation.
    Levy,
    /// Infinitely divisible compound Poisson law.
    Idd,
    /// Draws from the compound Poisson law at time `t`.
    Sample {
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1)]
        n_samples: u64,
    },
    /// One path of the Lévy process on `[0, horizon]`.
    Path {
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        #[arg(long, default_value_t = 10)]
        n_steps: usize,
    },
    /// Identity suite with pass/fail table.
    Verify,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Pmf { .. } => "pmf",
            Command::Mgf { .. } => "mgf",
            Command::Moments => "moments",
            Command::Mandel { .. } => "mandel",
            Command::Decompose => "decompose",
            Command::Levy => "levy",
            Command::Idd => "idd",
            Command::Sample { .. } => "sample",
            Command::Path { .. } => "path",
            Command::Verify => "verify",
        }
    }

    fn takes_seed(&self) -> bool {
        matches!(self, Command::Sample { .. } | Command::Path { .. })
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

/// A table that renders to CSV, or to JSON as an array of row objects.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) => json!(x),
            Cell::Text(s) => json!(s),
        }
    }
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    Value::Object(
                        self.header
                            .iter()
                            .zip(r)
                            .map(|(h, c)| (h.to_string(), c.json()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

/// What a command produces: a table plus scalar fields for JSON output.
struct Artifact {
    table: Table,
    extra: Value,
}

impl Artifact {
    fn table(table: Table) -> Self {
        Self {
            table,
            extra: Value::Null,
        }
    }
}

fn tolerances(c: &Common) -> Tolerances {
    let d = Tolerances::default();
    Tolerances {
        normalization: c.tol_normalization.unwrap_or(d.normalization),
        mgf_series: c.tol_mgf_series.unwrap_or(d.mgf_series),
        decomposition: c.tol_decomposition.unwrap_or(d.decomposition),
        levy_series: c.tol_levy_series.unwrap_or(d.levy_series),
        product_identity: c.tol_product_identity.unwrap_or(d.product_identity),
        lk_reproduction: c.tol_lk_reproduction.unwrap_or(d.lk_reproduction),
        id_ratio: c.tol_id_ratio.unwrap_or(d.id_ratio),
        divisibility: c.tol_divisibility.unwrap_or(d.divisibility),
        truncation: c.tol_truncation.unwrap_or(d.truncation),
    }
}

fn params(c: &Common) -> Result<GnbdParams, Failure> {
    let nu =
        c.nu.ok_or_else(|| Failure::Usage("--nu is required".into()))?;
    let tau = c
        .tau
        .ok_or_else(|| Failure::Usage("--tau is required".into()))?;
    Ok(GnbdParams::new(nu, tau, c.m, c.r)?)
}

fn parse_range(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("--m-range expects a:b, got {s}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn measure_table(atoms: impl Iterator<Item = (i64, f64)>, key: &'static str) -> Table {
    let mut t = Table::new(&[key, "weight"]);
    for (k, w) in atoms {
        t.push(vec![Cell::Int(k), Cell::Real(w)]);
    }
    t
}

fn execute(cmd: &Command, c: &Common, tol: &Tolerances) -> Result<Artifact, Failure> {
    Ok(match cmd {
        Command::Pmf { j_max } => {
            let p = gnbd::pmf(&params(c)?, *j_max)?;
            let mut t = Table::new(&["j", "p_j"]);
            for (j, w) in p.weights.iter().enumerate() {
                t.push(vec![Cell::Int(j as i64), Cell::Real(*w)]);
            }
            Artifact {
                table: t,
                extra: json!({ "tail_bound": p.tail_bound, "total": p.total() }),
            }
        }
        Command::Mgf { xi_re, xi_im } => {
            let p = params(c)?;
            let xi = Complex64::new(*xi_re, *xi_im);
            let v = gnbd::mgf(&p, xi)?;
            let mut t = Table::new(&["xi_re", "xi_im", "mgf_re", "mgf_im"]);
            t.push(vec![
                Cell::Real(xi.re),
                Cell::Real(xi.im),
                Cell::Real(v.re),
                Cell::Real(v.im),
            ]);
            Artifact::table(t)
        }
        Command::Moments => {
            let p = params(c)?;
            let mo = gnbd::moments(&p);
            let mut t = Table::new(&["mean", "variance", "q"]);
            t.push(vec![
                Cell::Real(mo.mean),
                Cell::Real(mo.variance),
                Cell::Real(gnbd::mandel_q(&p)),
            ]);
            Artifact::table(t)
        }
        Command::Mandel {
            m_range: Some(range),
        } => {
            let nu =
                c.nu.ok_or_else(|| Failure::Usage("--nu is required".into()))?;
            let (a, b) = parse_range(range)?;
            let mut t = Table::new(&["m", "tau_crit", "rho"]);
            for m in a..=b {
                gnbd::landau_level(nu, m)?;
                let tc = gnbd::tau_crit(nu, m)?;
                t.push(vec![
                    Cell::Int(i64::from(m)),
                    Cell::Real(tc),
                    Cell::Real(tc.sqrt()),
                ]);
            }
            Artifact::table(t)
        }
        Command::Mandel { m_range: None } => {
            let r = gnbd::mandel(&params(c)?)?;
            let mut t = Table::new(&["mean", "variance", "q", "tau_crit", "rho", "regime"]);
            let regime = serde_json::to_value(r.regime)?;
            t.push(vec![
                Cell::Real(r.mean),
                Cell::Real(r.variance),
                Cell::Real(r.q),
                Cell::Real(r.tau_crit),
                Cell::Real(r.rho),
                Cell::Text(regime.as_str().unwrap_or_default().to_string()),
            ]);
            Artifact::table(t)
        }
        Command::Decompose => {
            let p = params(c)?;
            if !p.is_unit_radius() {
                return Err(Error::Domain("the decomposition is defined for R = 1".into()).into());
            }
            let d = decomposition_measure(p.nu, p.m, p.tau)?;
            let pm = gnbd::pmf(&p, None)?;
            let rec = reconstruct_pmf(&p, pm.j_max())?;
            let residual = pm
                .weights
                .iter()
                .enumerate()
                .map(|(j, w)| (rec.measure.weight(j as i64) - w).abs())
                .fold(0.0, f64::max);
            Artifact {
                table: measure_table(d.atoms(), "k"),
                extra: json!({
                    "nbd_shape": 2.0 * p.nu,
                    "total_mass": d.total_mass(),
                    "reconstruction_residual": residual,
                }),
            }
        }
        Command::Levy => {
            let p = params(c)?;
            let rep = levy::lk_representation(&p, tol.truncation)?;
            let ts = if p.m > 0 {
                Some(levy::tau_star(p.nu, p.m)?)
            } else {
                None
            };
            Artifact {
                table: measure_table(rep.measure.atoms(), "x"),
                extra: json!({
                    "drift": rep.drift,
                    "nb_constant": rep.nb_constant,
                    "truncation_error": rep.truncation_error,
                    "tau_star": ts,
                }),
            }
        }
        Command::Idd => {
            let p = params(c)?;
            let spec = CompoundPoissonSpec::from_gnbd(p.nu, p.tau, p.m, tol.truncation)?;
            let lam = idd::intensity(p.nu, p.tau, p.m)?;
            Artifact {
                table: measure_table(spec.jump_pmf.atoms(), "jump"),
                extra: json!({
                    "lambda": spec.lambda,
                    "lambda_closed_form": lam.lambda,
                    "unit_weight_lambda": lam.unit_weight_lambda,
                    "nb_constant": lam.nb_constant,
                    "drift": spec.drift,
                    "id_ratio_constant": idd::id_ratio_constant(p.nu, p.tau, p.m)?,
                    "truncation_error": spec.truncation_error,
                }),
            }
        }
        Command::Sample { t, n_samples } => {
            let p = params(c)?;
            let seed = c.seed.expect("checked before dispatch");
            let spec = CompoundPoissonSpec::from_gnbd(p.nu, p.tau, p.m, tol.truncation)?;
            let mut table = Table::new(&["index", "jumps_sum", "drift_accrual", "value"]);
            for i in 0..*n_samples {
                let d = spec.sampler(seed, i)?.sample(*t);
                table.push(vec![
                    Cell::Int(i as i64),
                    Cell::Int(d.jumps_sum),
                    Cell::Real(d.drift_accrual),
                    Cell::Real(d.value()),
                ]);
            }
            Artifact::table(table)
        }
        Command::Path { horizon, n_steps } => {
            let p = params(c)?;
            let seed = c.seed.expect("checked before dispatch");
            let spec = CompoundPoissonSpec::from_gnbd(p.nu, p.tau, p.m, tol.truncation)?;
            let path = idd::simulate_path(&spec, *horizon, *n_steps, seed)?;
            let mut table = Table::new(&["time", "jumps_sum", "drift_accrual", "value"]);
            for pt in path {
                table.push(vec![
                    Cell::Real(pt.time),
                    Cell::Int(pt.jumps_sum),
                    Cell::Real(pt.drift_accrual),
                    Cell::Real(pt.value),
                ]);
            }
            Artifact::table(table)
        }
        Command::Verify => {
            let report = run_verify(&params(c)?, tol)?;
            let mut t = Table::new(&["check", "residual", "tolerance", "status"]);
            for ch in &report.checks {
                let status = serde_json::to_value(ch.status)?;
                t.push(vec![
                    Cell::Text(ch.name.to_string()),
                    Cell::Real(ch.residual),
                    Cell::Real(ch.tolerance),
                    Cell::Text(status.as_str().unwrap_or_default().to_string()),
                ]);
            }
            Artifact {
                table: t,
                extra: json!({
                    "all_passed": report.all_passed,
                    "nb_constant": report.nb_constant,
                    "unit_constant_error": report.unit_constant_error,
                    "id_ratio_constant": report.id_ratio_constant,
                    "tau_star": report.tau_star,
                }),
            }
        }
    })
}

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    version: &'a str,
    nu: Option<f64>,
    tau: Option<f64>,
    m: u32,
    r: f64,
    seed: Option<u64>,
    tolerances: &'a Tolerances,
}

fn emit(art: &Artifact, meta: &Meta, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&art.table.header)?;
            for row in &art.table.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("meta".into(), serde_json::to_value(meta)?);
            if let Value::Object(extra) = &art.extra {
                doc.extend(extra.clone());
            }
            doc.insert("rows".into(), art.table.to_json());
            serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn error_line(kind: &str, message: &str) -> String {
    json!({ "error": kind, "message": message }).to_string()
}

/// Parses `args` (program name first) and runs the command, writing the
/// artifact to `out` unless `--output` is given. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let result = (|| {
        if cli.common.seed.is_some() != cli.command.takes_seed() {
            return Err(Failure::Usage(if cli.command.takes_seed() {
                format!("--seed is required for {}", cli.command.name())
            } else {
                format!("--seed is not accepted by {}", cli.command.name())
            }));
        }
        let tol = tolerances(&cli.common);
        let art = execute(&cli.command, &cli.common, &tol)?;
        let meta = Meta {
            command: cli.command.name(),
            version: env!("CARGO_PKG_VERSION"),
            nu: cli.common.nu,
            tau: cli.common.tau,
            m: cli.common.m,
            r: cli.common.r,
            seed: cli.common.seed,
            tolerances: &tol,
        };
        match &cli.common.output {
            Some(path) => {
                let mut f = io::BufWriter::new(File::create(path)?);
                emit(&art, &meta, cli.common.format, &mut f)?;
                f.flush()?;
            }
            None => emit(&art, &meta, cli.common.format, out)?,
        }
        Ok(())
    })();
    match result {
        Ok(()) => 0,
        Err(f) => {
            let (code, line) = match f {
                Failure::Usage(m) => (1, error_line("usage", &m)),
                Failure::Lib(Error::Domain(m)) => (2, error_line("domain", &m)),
                Failure::Lib(e @ Error::Convergence { .. }) => {
                    (3, error_line("convergence", &e.to_string()))
                }
                Failure::Io(e) => (1, error_line("io", &e.to_string())),
            };
            let _ = writeln!(err, "{line}");
            code
        }
    }
}
