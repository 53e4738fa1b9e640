//! `lmhs`: checks degenerations, nilpotent orbits and closed-form tables.
//!
//! Exit codes: 0 when every check passes, 1 on unreadable or invalid input,
//! 2 when the input is valid but a mathematical verdict fails.

mod tables;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use lmhs::mhs::{MhsData, MhsJson};
use lmhs::orbit::{verify_identities, verify_main_theorem, OrbitOptions};
use lmhs::steenbrink::{assemble_index_report, degree_report, validate, DegenerationData, IndexReport};
use lmhs::exactlin::Sign;
use lmhs::{Error, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "lmhs", version, about = "Limiting mixed Hodge structures and nearby Hodge index")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads for independent degrees and levels (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight criterion and nearby Hodge index of a semistable degeneration
    Check { input: PathBuf },
    /// Nilpotent-orbit signatures of a polarized mixed Hodge structure
    Orbit {
        input: PathBuf,
        /// Real part of z, a rational
        #[arg(long, default_value = "0")]
        a: String,
        /// First value of t = Im z tried in evaluate mode
        #[arg(long, default_value = "1024")]
        t0: String,
        /// Largest t tried before giving up
        #[arg(long = "t0-cap", default_value = "1152921504606846976")]
        t0_cap: String,
    },
    /// Taylor-minor and wedge identities for all n up to --max-n
    VerifyIdentities {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Perturb the identity at n,k (negative test)
        #[arg(long, hide = true, value_parser = parse_pair)]
        corrupt: Option<(usize, usize)>,
    },
    /// Closed-form tables for the example families
    Tables {
        #[command(subcommand)]
        family: tables::Family,
    },
    /// Parse and validate a degeneration or mixed Hodge structure file
    Validate { input: PathBuf },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected n,k")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

/// What a subcommand produced: a verdict and something to print.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: serde_json::Value,
}

impl Outcome {
    pub fn new<T: Serialize>(ok: bool, text: String, report: &T) -> Result<Self, Error> {
        let json = serde_json::to_value(report).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Outcome { ok, text, json })
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn parse_scalar(name: &str, s: &str) -> Result<Scalar, Error> {
    s.parse().map_err(|e| Error::Input(format!("--{name}: {e}")))
}

fn load_degeneration(path: &Path) -> Result<DegenerationData, Error> {
    let data = DegenerationData::from_json(&read(path)?).map_err(|e| Error::Input(e.to_string()))?;
    let v = validate(&data);
    if !v.ok {
        return Err(Error::Input(v.failures.join("; ")));
    }
    Ok(data)
}

fn load_mhs(path: &Path) -> Result<MhsData, Error> {
    let j: MhsJson = serde_json::from_str(&read(path)?).map_err(|e| Error::Input(e.to_string()))?;
    MhsData::from_json(&j)
}

fn render_index(rep: &IndexReport) -> String {
    let mut out = format!("m = {}  verdict: {}\n", rep.m, if rep.verdict { "pass" } else { "FAIL" });
    for d in &rep.degrees {
        let dims: Vec<String> = d.graded_dims.iter().map(|(k, v)| format!("Gr{k}={v}")).collect();
        let crit = match d.criterion.first_failure() {
            None => "ok".to_string(),
            Some(r) => format!("fails at r={r}"),
        };
        let hodge: Vec<String> = d.hodge_numbers.iter().map(|(p, h)| format!("h^({p},{})={h}", d.degree - p)).collect();
        out += &format!("  H^{}: [{}] criterion {crit}; {}\n", d.degree, dims.join(" "), hodge.join(" "));
    }
    if let Some(nearby) = &rep.nearby {
        out += "  nearby index:\n";
        for e in nearby {
            out += &format!("    ({},{}): (+{}, -{})\n", e.p, e.q, e.plus, e.minus);
        }
    }
    for f in &rep.failures {
        out += &format!("  note: {f}\n");
    }
    out
}

fn cmd_check(path: &Path) -> Result<Outcome, Error> {
    let data = load_degeneration(path)?;
    // degrees are independent; collect keeps them in order
    let degrees = (0..=2 * data.m as i64).into_par_iter().map(|d| degree_report(&data, d)).collect::<Result<Vec<_>, _>>()?;
    let rep = assemble_index_report(&data, degrees)?;
    Outcome::new(rep.verdict, render_index(&rep), &rep)
}

fn cmd_orbit(path: &Path, a: &str, t0: &str, cap: &str) -> Result<Outcome, Error> {
    let opts = OrbitOptions { a: parse_scalar("a", a)?, t0: parse_scalar("t0", t0)?, t_cap: parse_scalar("t0-cap", cap)? };
    let mut gap = opts.t_cap.clone();
    gap -= &opts.t0;
    if !opts.t0.is_real() || !gap.is_real() || gap.real_sign() == Some(Sign::Minus) {
        return Err(Error::Input("--t0 must be real and at most --t0-cap".into()));
    }
    let data = load_mhs(path)?;
    let rep = match verify_main_theorem(&data, &opts) {
        Ok(rep) => rep,
        Err(Error::Contract(msg)) => {
            let text = format!("verdict: FAIL\n  {msg}\n");
            return Outcome::new(false, text, &serde_json::json!({ "ok": false, "failures": [msg] }));
        }
        Err(e) => return Err(e),
    };
    let mut text = format!(
        "d = {}  polarized: {}  verdict: {}\n",
        rep.d,
        rep.polarized,
        if rep.ok { "match" } else { "MISMATCH" }
    );
    for l in &rep.levels {
        let s = l.evaluate.signature;
        text += &format!(
            "  F^{}: dim {}  signature (+{}, -{}) at t = {}  opposedness degree {:?}\n",
            l.level, l.dim, s.positives, s.negatives, l.evaluate.t, l.opposedness.degree
        );
    }
    for p in &rep.pieces {
        text += &format!("  ({},{}): orbit {:?}  formula {:?}\n", p.p, rep.d - p.p, p.orbit, p.formula);
    }
    for f in &rep.failures {
        text += &format!("  failure: {f}\n");
    }
    Outcome::new(rep.ok, text, &rep)
}

fn cmd_verify(max_n: usize, corrupt: Option<(usize, usize)>) -> Result<Outcome, Error> {
    if max_n < 1 {
        return Err(Error::Input("--max-n must be at least 1".into()));
    }
    let checks = verify_identities(max_n, corrupt)?;
    let bad: Vec<_> = checks.iter().filter(|c| !c.ok).collect();
    let mut text = format!("{} identities checked, {} failed\n", checks.len(), bad.len());
    for c in &bad {
        text += &format!("  {:?} fails at (n,k) = ({},{})\n", c.kind, c.n, c.k);
    }
    Outcome::new(bad.is_empty(), text, &checks)
}

fn cmd_validate(path: &Path) -> Result<Outcome, Error> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Input(e.to_string()))?;
    if value.get("strata").is_some() {
        let data = DegenerationData::from_json(&text).map_err(|e| Error::Input(e.to_string()))?;
        let v = validate(&data);
        if !v.ok {
            return Err(Error::Input(v.failures.join("; ")));
        }
        Outcome::new(true, format!("valid degeneration data, m = {}\n", data.m), &v)
    } else {
        let data = load_mhs(path)?;
        let summary = serde_json::json!({ "ok": true, "dim": data.dim, "d": data.d });
        Outcome::new(true, format!("valid mixed Hodge data, dim {}, d = {}\n", data.dim, data.d), &summary)
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Check { input } => cmd_check(input),
        Command::Orbit { input, a, t0, t0_cap } => cmd_orbit(input, a, t0, t0_cap),
        Command::VerifyIdentities { max_n, corrupt } => cmd_verify(*max_n, *corrupt),
        Command::Tables { family } => tables::run(family),
        Command::Validate { input } => cmd_validate(input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are invalid input; help and version are not errors
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(Error::Input(format!("--workers: {e}"))),
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON value prints")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
