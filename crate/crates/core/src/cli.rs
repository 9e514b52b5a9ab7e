//! Command-line front end. Data goes to `out`, diagnostics to `err`, and the
//! exit code is 0 when every check passes, 1 when one fails, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::constructions::{build, build_generic, generic_slots, paper_gram, recipe, CaseId, Mode, RealizationOutcome};
use crate::criteria::{conjecture_sweep, DiscriminantReport};
use crate::error::Error;
use crate::factor::factorize;
use crate::verifier::{verify_corollary20, Certificate, WitnessReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_D: i64 = 1_000_000_000_000;

#[derive(Debug, Parser)]
#[command(name = "hassett", version, about = "Witness lattices for intersections of Hassett divisors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a discriminant
    CheckD {
        d: i64,
        #[arg(long)]
        json: bool,
    },
    /// Build and certify a witness lattice for a list of discriminants
    Intersect {
        #[arg(allow_negative_numbers = true)]
        targets: Vec<i64>,
        #[arg(long, default_value = "goal")]
        mode: String,
        /// JSON file `{"case": "LemmaCase2", "params": [2, 2, 4]}`
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the twenty-discriminant intersection
    Corollary20 {
        #[arg(long)]
        json: bool,
    },
    /// Check every d = 6·4^k·s² + 2 up to a limit for an associated K3 surface
    SweepConjecture {
        #[arg(long)]
        limit: i64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-verify a certificate file
    VerifyFile {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Deserialize)]
struct ParamsFile {
    case: String,
    params: Vec<i64>,
}

type Io<'a> = (&'a mut dyn Write, &'a mut dyn Write);

/// Parse `args` (program name first) and run the command.
pub fn run<'a, I, T>(args: I, out: &'a mut dyn Write, err: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let io = (out, err);
    let result = match cli.command {
        Command::CheckD { d, json } => check_d(d, json, io),
        Command::Intersect { targets, mode, params, json } => intersect(&targets, &mode, params.as_deref(), json, io),
        Command::Corollary20 { json } => corollary20(json, io),
        Command::SweepConjecture { limit, csv } => sweep(limit, csv.as_deref(), io),
        Command::VerifyFile { path, json } => verify_file(&path, json, io),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_FAIL
    })
}

fn mark(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn factorization_text(factors: &[(u64, u32)]) -> String {
    factors
        .iter()
        .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn check_d(d: i64, json: bool, (out, err): Io) -> std::io::Result<i32> {
    if !(1..=MAX_D).contains(&d) {
        writeln!(err, "error: d must lie in [1, {MAX_D}], got {d}")?;
        return Ok(EXIT_USAGE);
    }
    let report = DiscriminantReport::new(d);
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    } else {
        writeln!(out, "d = {d}")?;
        writeln!(out, "star: {}", mark(report.star))?;
        match report.double_star_witness {
            Some(m) => writeln!(out, "double star: yes (m = {m})")?,
            None => writeln!(out, "double star: no")?,
        }
        writeln!(out, "associated K3: {}", mark(report.k3_admissible))?;
        writeln!(out, "factorization: {}", factorization_text(&report.factorization))?;
    }
    Ok(if report.star { EXIT_PASS } else { EXIT_FAIL })
}

fn report_summary(report: &WitnessReport, err: &mut dyn Write) -> std::io::Result<()> {
    writeln!(err, "verdict: {}", if report.passed() { "PASS" } else { "FAIL" })?;
    for r in &report.failure_reasons {
        writeln!(err, "  {r}")?;
    }
    Ok(())
}

fn human_report(report: &WitnessReport, out: &mut dyn Write) -> std::io::Result<()> {
    if let Some(c) = &report.criterion {
        writeln!(out, "contains h^2: {}", mark(c.contains_h_squared))?;
        writeln!(out, "positive definite: {}", mark(c.positive_definite))?;
        writeln!(out, "saturated: {}", mark(c.saturated))?;
        match c.minimum_norm {
            Some(k) => writeln!(out, "minimum norm: {k}")?,
            None => writeln!(out, "minimum norm: n/a")?,
        }
    }
    for (i, l) in report.labellings.iter().enumerate() {
        writeln!(
            out,
            "labelling {i}: target {} realized {} saturated {}",
            l.target_d,
            l.realized_d,
            mark(l.saturated_in_m)
        )?;
    }
    if let Some(m) = report.gram_matches_paper {
        writeln!(out, "gram matches display: {}", mark(m))?;
    }
    writeln!(out, "verdict: {}", if report.passed() { "PASS" } else { "FAIL" })?;
    if !report.failure_reasons.is_empty() {
        writeln!(out, "reasons: {}", report.failure_reasons.join(", "))?;
    }
    Ok(())
}

fn intersect(targets: &[i64], mode: &str, params: Option<&Path>, json: bool, (out, err): Io) -> std::io::Result<i32> {
    let mode: Mode = match mode.parse() {
        Ok(m) => m,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let built: Result<(Vec<i64>, RealizationOutcome, Option<_>), Error> = match params {
        Some(path) => {
            let file = match std::fs::read_to_string(path) {
                Ok(text) => text,
                Err(e) => {
                    writeln!(err, "error: cannot read {}: {e}", path.display())?;
                    return Ok(EXIT_USAGE);
                }
            };
            let spec: ParamsFile = match serde_json::from_str(&file) {
                Ok(s) => s,
                Err(e) => {
                    writeln!(err, "error: {}: {e}", path.display())?;
                    return Ok(EXIT_USAGE);
                }
            };
            spec.case.parse::<CaseId>().and_then(|case| {
                let slots = recipe(case, &spec.params)?.slots;
                let expected: Vec<i64> = slots.iter().map(|s| s.discriminant()).collect();
                if !targets.is_empty() && targets != expected {
                    return Err(Error::InvalidParams(format!(
                        "{case} at {:?} has discriminants {expected:?}, not {targets:?}",
                        spec.params
                    )));
                }
                let outcome = build(case, &spec.params, mode)?;
                Ok((expected, outcome, Some(paper_gram(case, &spec.params)?)))
            })
        }
        None => generic_slots(targets).and_then(|_| Ok((targets.to_vec(), build_generic(targets, mode)?, None))),
    };
    let (targets, outcome, paper) = match built {
        Ok(b) => b,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    writeln!(err, "realization: {:?}", outcome.status)?;
    let Some(basis) = outcome.basis else {
        writeln!(err, "no basis could be assembled")?;
        return Ok(EXIT_FAIL);
    };
    let mut cert = Certificate::issue(basis, targets);
    if let Some(paper) = &paper {
        cert.report.compare_with(paper);
    }
    report_summary(&cert.report, err)?;
    if json {
        writeln!(out, "{}", cert.to_json())?;
    } else {
        human_report(&cert.report, out)?;
    }
    Ok(if cert.report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn corollary20(json: bool, (out, err): Io) -> std::io::Result<i32> {
    let report = verify_corollary20();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    } else {
        writeln!(out, "{:>6}  {:>4}  {:>11}  {:>4}  factorization", "d", "star", "double star", "k3")?;
        for r in &report.discriminants {
            let ds = r.double_star_witness.map_or("no".to_string(), |m| format!("m = {m}"));
            writeln!(
                out,
                "{:>6}  {:>4}  {:>11}  {:>4}  {}",
                r.d,
                mark(r.star),
                ds,
                mark(r.k3_admissible),
                factorization_text(&r.factorization)
            )?;
        }
        writeln!(out, "pairwise distinct: {}", mark(report.all_distinct))?;
        human_report(&report.certificate.report, out)?;
    }
    report_summary(&report.certificate.report, err)?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn sweep(limit: i64, csv: Option<&Path>, (out, err): Io) -> std::io::Result<i32> {
    if !(1..=MAX_D).contains(&limit) {
        writeln!(err, "error: limit must lie in [1, {MAX_D}], got {limit}")?;
        return Ok(EXIT_USAGE);
    }
    let rows = conjecture_sweep(limit);
    let mut body = String::from("d,k,s,admissible\n");
    for r in &rows {
        body.push_str(&format!("{},{},{},{}\n", r.d, r.k, r.s, r.admissible));
    }
    match csv {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                writeln!(err, "error: cannot write {}: {e}", path.display())?;
                return Ok(EXIT_USAGE);
            }
        }
        None => out.write_all(body.as_bytes())?,
    }
    let bad: Vec<_> = rows.iter().filter(|r| !r.admissible).collect();
    for r in &bad {
        writeln!(err, "counterexample: d = {} = {}", r.d, factorization_text(&factorize(r.d as u64)))?;
    }
    writeln!(err, "{} shaped values up to {limit}, {} counterexamples", rows.len(), bad.len())?;
    Ok(if bad.is_empty() { EXIT_PASS } else { EXIT_FAIL })
}

fn verify_file(path: &Path, json: bool, (out, err): Io) -> std::io::Result<i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let cert = match Certificate::from_json(&text) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {}: line {}, column {}: {e}", path.display(), e.line(), e.column())?;
            return Ok(EXIT_USAGE);
        }
    };
    let report = cert.reverify();
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("reports serialize"))?;
    } else {
        human_report(&report, out)?;
    }
    report_summary(&report, err)?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}
