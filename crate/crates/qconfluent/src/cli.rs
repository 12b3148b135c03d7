//! Batch front end: every subcommand writes a deterministic report and
//! returns 0 (all checks pass), 1 (a check failed) or 2 (bad usage/config).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::equations::{validate, Family, ParamSet};
use crate::error::{Error, Result};
use crate::gauge::{
    check_correspondence_b02_b20, check_correspondence_c12_c21, check_gauge_product, gauge_series, GaugeFactor,
};
use crate::limits::{
    degeneration_check, hermite_limit_report, kummer_limit_study, kummer_limit_study_c21, taylor_operator_check,
    DegenerationArrow, KummerSetup, TaylorSetup,
};
use crate::qalg::{format_rational, parse_rational, Rational};
use crate::runner::{run_trials, sample_until, Exec};
use crate::solutions::{catalog_ids, construct, list_catalog, verifiable_ids, SolutionId, Transcription};
use crate::verify::{verify_solution, DEFAULT_WINDOW};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qconfluent",
    version,
    about = "Exact verification of q-hypergeometric variant equations and their confluent limits"
)]
pub struct Cli {
    /// Worker threads (1 runs sequentially; default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the report here instead of stdout
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every catalog id
    Catalog {
        #[command(flatten)]
        out: Output,
    },
    /// Residual-check catalog entries over seeded random parameters
    Verify {
        /// Every residual-verifiable id
        #[arg(long)]
        all: bool,
        /// Ids to check (repeatable)
        #[arg(long = "id")]
        ids: Vec<String>,
        /// Use this parameter file instead of random draws
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Check the family-to-family degeneration identities
    Degenerate {
        /// D2-C12, C12-B02, D2-C21, C21-B20 or all
        #[arg(long, default_value = "all")]
        arrow: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "1/7")]
        u0: String,
        #[command(flatten)]
        out: Output,
    },
    /// Continuum limits q → 1
    Limit {
        #[command(subcommand)]
        which: LimitCommand,
    },
    /// Gauge correspondences and gauge-product entries
    GaugeCheck {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug, Clone)]
pub struct KummerArgs {
    #[arg(long = "T", default_value = "1")]
    pub big_t: String,
    #[arg(long, default_value = "2/3")]
    pub t1: String,
    #[arg(long, default_value = "1")]
    pub lam: String,
    #[arg(long, default_value = "1")]
    pub al1: String,
    #[arg(long, default_value = "3/2")]
    pub h1: String,
    #[arg(long, default_value = "5/2")]
    pub h2: String,
    #[arg(long, default_value = "1/2")]
    pub l1: String,
    #[arg(long, default_value = "-1/2")]
    pub l2: String,
    /// Comma-separated ε values
    #[arg(long, default_value = "1/10,1/100,1/1000")]
    pub eps: String,
    /// Highest monomial degree compared
    #[arg(long = "K", default_value_t = 8)]
    pub k: usize,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum LimitCommand {
    /// (1,2) series against ₁F₁, t₂ = 1/(Tε) (gated)
    Kummer(KummerArgs),
    /// (2,1) series against ₁F₁, t₂ = −1/(Tε) (gated)
    KummerC21(KummerArgs),
    /// (0,2) series at ε = 1/m² against the formal Hermite–Weber series (report only)
    Hermite {
        #[arg(long = "B", default_value = "2")]
        b: String,
        /// λ + α₁ (integer)
        #[arg(long, default_value_t = 3)]
        lam_al1: i64,
        /// h₁ = h₂ (integer)
        #[arg(long, default_value_t = 1)]
        h: i64,
        /// Comma-separated m values, ε = 1/m²
        #[arg(long, default_value = "10,100")]
        m: String,
        #[arg(long = "K", default_value_t = 4)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// ε-expansion of the (2,0) operator against the Hermite–Weber equation (report only)
    HermiteB20 {
        #[arg(long = "B", default_value = "2")]
        b: String,
        #[arg(long, default_value = "1")]
        lam: String,
        #[arg(long, default_value = "1")]
        al1: String,
        #[arg(long, default_value = "1/2")]
        l1: String,
        #[arg(long, default_value = "3/2")]
        l2: String,
        #[command(flatten)]
        out: Output,
    },
}

/// Parses and runs; usage errors print clap's message and give 2.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let exec = match configure_threads(cli.threads) {
        Ok(e) => e,
        Err(e) => return usage(e),
    };
    let outcome = match cli.command {
        Command::Catalog { out } => cmd_catalog(&out),
        Command::Verify {
            all,
            ids,
            params,
            order,
            window,
            trials,
            seed,
            out,
        } => cmd_verify(exec, all, &ids, params.as_ref(), order, window, trials, seed, &out),
        Command::Degenerate {
            arrow,
            trials,
            seed,
            u0,
            out,
        } => cmd_degenerate(exec, &arrow, trials, seed, &u0, &out),
        Command::Limit { which } => cmd_limit(which),
        Command::GaugeCheck {
            trials,
            seed,
            order,
            out,
        } => cmd_gauge(exec, trials, seed, order, &out),
    };
    match outcome {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => usage(e),
    }
}

fn usage(e: Error) -> i32 {
    eprintln!("error: {e}");
    EXIT_USAGE
}

fn configure_threads(threads: Option<usize>) -> Result<Exec> {
    match threads {
        Some(0) => Err(Error::Constraint(vec!["--threads must be at least 1".into()])),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            // a pool may already exist when called twice in one process
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::Parallel),
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_json(out: &Output, v: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    emit(out, &text)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|t| parse_rational(t.trim())).collect()
}

pub fn cmd_catalog(out: &Output) -> Result<bool> {
    let entries = list_catalog();
    if out.format == Some(Format::Csv) {
        let rows = entries.iter().map(|e| {
            vec![
                e.id.clone(),
                e.prefactor.to_string(),
                e.basis.to_string(),
                e.residual_verifiable.to_string(),
                e.alias_of.clone().unwrap_or_default(),
                e.description.to_string(),
            ]
        });
        emit(
            out,
            &csv_text(
                &[
                    "id",
                    "prefactor",
                    "basis",
                    "residual_verifiable",
                    "alias_of",
                    "description",
                ],
                rows,
            )?,
        )?;
    } else {
        emit_json(out, &entries)?;
    }
    Ok(true)
}

#[derive(Serialize)]
struct VerifyEntry {
    id: String,
    trial: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<crate::verify::VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl VerifyEntry {
    fn pass(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.pass)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    exec: Exec,
    all: bool,
    ids: &[String],
    params: Option<&PathBuf>,
    order: usize,
    window: usize,
    trials: usize,
    seed: u64,
    out: &Output,
) -> Result<bool> {
    if window == 0 {
        return Err(Error::Constraint(vec!["--window must be at least 1".into()]));
    }
    let mut selected: Vec<SolutionId> = ids.iter().map(|s| s.parse()).collect::<Result<_>>()?;
    if all {
        selected = verifiable_ids();
    }
    if selected.is_empty() {
        return Err(Error::Constraint(vec!["pass --all or at least one --id".into()]));
    }
    if let Some(bad) = selected.iter().find(|id| id.label.is_gauge_product()) {
        return Err(Error::NotResidualVerifiable(bad.to_string()));
    }
    let fixed = match params {
        Some(path) => {
            let p = ParamSet::from_json(&fs::read_to_string(path)?)?;
            validate(&p)?;
            Some(p)
        }
        None => None,
    };
    let mut entries = Vec::new();
    for id in &selected {
        let key = id.to_string();
        if let Some(p) = &fixed {
            let result = construct(id, p, order).and_then(|sol| verify_solution(p, &sol, window));
            if let Err(Error::Constraint(_)) = &result {
                return Err(result.unwrap_err());
            }
            entries.push(entry(&key, 0, None, result));
            continue;
        }
        let results = run_trials(exec, seed, &key, trials, |rng| {
            sample_until(id.family(), rng, |p| construct(id, p, order))
                .and_then(|(p, sol)| verify_solution(&p, &sol, window).map(|r| (p, r)))
        });
        for (t, r) in results.into_iter().enumerate() {
            let (p, r) = match r {
                Ok((p, r)) => (Some(p.to_json_value()), Ok(r)),
                Err(e) => (None, Err(e)),
            };
            entries.push(entry(&key, t, p, r));
        }
    }
    let pass = entries.iter().all(VerifyEntry::pass);
    if out.format == Some(Format::Csv) {
        let rows = entries.iter().map(|e| {
            vec![
                e.id.clone(),
                e.trial.to_string(),
                e.pass().to_string(),
                e.report
                    .as_ref()
                    .and_then(|r| r.first_nonzero_index)
                    .map_or_else(String::new, |i| i.to_string()),
                e.error.clone().unwrap_or_default(),
            ]
        });
        emit(
            out,
            &csv_text(&["id", "trial", "pass", "first_nonzero_index", "error"], rows)?,
        )?;
    } else {
        emit_json(
            out,
            &json!({
                "command": "verify",
                "N": order,
                "window": window,
                "trials": if fixed.is_some() { 1 } else { trials },
                "seed": seed,
                "pass": pass,
                "results": entries,
            }),
        )?;
    }
    Ok(pass)
}

fn entry(id: &str, trial: usize, params: Option<Value>, r: Result<crate::verify::VerificationReport>) -> VerifyEntry {
    match r {
        Ok(report) => VerifyEntry {
            id: id.into(),
            trial,
            params,
            report: Some(report),
            error: None,
        },
        Err(e) => VerifyEntry {
            id: id.into(),
            trial,
            params,
            report: None,
            error: Some(e.to_string()),
        },
    }
}

pub fn cmd_degenerate(exec: Exec, arrow: &str, trials: usize, seed: u64, u0: &str, out: &Output) -> Result<bool> {
    let arrows: Vec<DegenerationArrow> = if arrow == "all" {
        DegenerationArrow::ALL.to_vec()
    } else {
        vec![arrow.parse()?]
    };
    let u0 = parse_rational(u0)?;
    if u0 == crate::qalg::int(0) {
        return Err(Error::Constraint(vec!["--u0 must be nonzero".into()]));
    }
    let mut sections = Vec::new();
    let mut pass = true;
    for a in arrows {
        let results = run_trials(exec, seed, a.name(), trials, |rng| {
            sample_until(a.target(), rng, |p| validate(p).map(|_| ())).and_then(|(p, _)| degeneration_check(a, &p, &u0))
        });
        let rows: Vec<Value> = results
            .into_iter()
            .enumerate()
            .map(|(t, r)| match r {
                Ok(o) => {
                    pass &= o.passed();
                    json!({"trial": t, "pass": o.passed(), "outcome": o})
                }
                Err(e) => {
                    pass = false;
                    json!({"trial": t, "pass": false, "error": e.to_string()})
                }
            })
            .collect();
        let ok = rows.iter().all(|r| r["pass"] == json!(true));
        sections.push(json!({"arrow": a.name(), "vanishing": a.vanishing(), "pass": ok, "trials": rows}));
    }
    emit_json(
        out,
        &json!({"command": "degenerate", "u0": format_rational(&u0), "seed": seed, "pass": pass, "arrows": sections}),
    )?;
    Ok(pass)
}

fn kummer_setup(a: &KummerArgs) -> Result<KummerSetup> {
    Ok(KummerSetup {
        big_t: parse_rational(&a.big_t)?,
        t1: parse_rational(&a.t1)?,
        lam: parse_rational(&a.lam)?,
        al1: parse_rational(&a.al1)?,
        h1: parse_rational(&a.h1)?,
        h2: parse_rational(&a.h2)?,
        l1: parse_rational(&a.l1)?,
        l2: parse_rational(&a.l2)?,
    })
}

pub fn cmd_limit(which: LimitCommand) -> Result<bool> {
    match which {
        LimitCommand::Kummer(a) => kummer(&a, false),
        LimitCommand::KummerC21(a) => kummer(&a, true),
        LimitCommand::Hermite {
            b,
            lam_al1,
            h,
            m,
            k,
            out,
        } => {
            let ms: Vec<u64> = m
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Constraint(vec![format!("bad m value {t:?}: {e}")]))
                })
                .collect::<Result<_>>()?;
            let report = hermite_limit_report(&parse_rational(&b)?, lam_al1, h, &ms, k)?;
            if out.format == Some(Format::Json) {
                emit_json(&out, &report)?;
            } else {
                emit(&out, &report.to_csv()?)?;
            }
            Ok(true)
        }
        LimitCommand::HermiteB20 {
            b,
            lam,
            al1,
            l1,
            l2,
            out,
        } => {
            let zero = crate::qalg::int(0);
            let report = taylor_operator_check(&TaylorSetup {
                family: Family::B20,
                lam: parse_rational(&lam)?,
                al1: parse_rational(&al1)?,
                h1: zero.clone(),
                h2: zero.clone(),
                l1: parse_rational(&l1)?,
                l2: parse_rational(&l2)?,
                t1: zero,
                scale: parse_rational(&b)?,
            })?;
            emit_json(&out, &report)?;
            Ok(true)
        }
    }
}

fn kummer(a: &KummerArgs, c21: bool) -> Result<bool> {
    let setup = kummer_setup(a)?;
    let eps = parse_list(&a.eps)?;
    let table = if c21 {
        kummer_limit_study_c21(&setup, &eps, a.k)?
    } else {
        kummer_limit_study(&setup, &eps, a.k)?
    };
    if a.out.format == Some(Format::Json) {
        emit_json(&a.out, &table)?;
    } else {
        emit(&a.out, &table.to_csv()?)?;
    }
    Ok(table.gate)
}

pub fn cmd_gauge(exec: Exec, trials: usize, seed: u64, order: usize, out: &Output) -> Result<bool> {
    let mut sections = Vec::new();
    let mut pass = true;
    let mut tally = |name: &str, results: Vec<Result<bool>>| {
        let ok = results.iter().filter(|r| matches!(r, Ok(true))).count();
        let errors: Vec<String> = results
            .iter()
            .filter_map(|r| r.as_ref().err().map(|e| e.to_string()))
            .collect();
        pass &= ok == results.len();
        sections.push(json!({"check": name, "trials": results.len(), "passed": ok, "errors": errors}));
    };
    for (name, fam, check) in [
        (
            "C12-C21",
            Family::C12,
            check_correspondence_c12_c21 as fn(&ParamSet) -> Result<bool>,
        ),
        ("B02-B20", Family::B02, check_correspondence_b02_b20),
    ] {
        let results = run_trials(exec, seed, name, trials, |rng| {
            sample_until(fam, rng, |p| validate(p).map(|_| ())).and_then(|(p, _)| check(&p))
        });
        tally(name, results);
    }
    // series roundtrip: attach then detach the same factor on a power series
    let results = run_trials(exec, seed, "roundtrip", trials, |rng| roundtrip_trial(rng, order));
    tally("attach-detach", results);
    for id in catalog_ids().into_iter().filter(|id| id.label.is_gauge_product()) {
        let key = id.to_string();
        let results = run_trials(exec, seed, &key, trials.min(10), |rng| {
            sample_until(id.family(), rng, |p| {
                check_gauge_product(&id, p, order, Transcription::Corrected, DEFAULT_WINDOW)
            })
            .map(|(_, o)| o.passed())
        });
        tally(&key, results);
    }
    emit_json(
        out,
        &json!({"command": "gauge-check", "seed": seed, "pass": pass, "checks": sections}),
    )?;
    Ok(pass)
}

fn roundtrip_trial(rng: &mut rand_chacha::ChaCha8Rng, order: usize) -> Result<bool> {
    use crate::equations::random_rational;
    use crate::qalg::BasisDescriptor;
    use crate::solutions::SeriesSolution;
    let p = crate::equations::random_params(Family::C12, rng);
    let sol = SeriesSolution {
        id: "C12:T31-ii".parse()?,
        prefactor: crate::qalg::int(1),
        basis: BasisDescriptor::monomial_asc(p.q.clone()),
        coeffs: (0..=order).map(|_| random_rational(rng)).collect(),
        terminated_at: None,
    };
    let alpha = random_rational(rng);
    let there = gauge_series(&sol, &GaugeFactor::attach(alpha.clone())?, order)?;
    // (αqx;q)_∞ is undone by dividing by (α'x;q)_∞ with α' = αq
    let back = gauge_series(&there, &GaugeFactor::detach(&alpha * &p.q)?, order)?;
    Ok(back.coeffs == sol.coeffs)
}
