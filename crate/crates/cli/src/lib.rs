//! Command handlers behind the `fermat-jacobian` binary.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use fermat_jacobian::genus::find_generating_triple;
use fermat_jacobian::verify::check_depth;
use fermat_jacobian::{
    primes_between, verify, Depth, Error, FermatGroup, Level, PrimeContext, Report, MAX_PRIME,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_AUDIT: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "fermat-jacobian",
    version,
    about = "Decompose and verify Fermat-curve Jacobians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the orbit partition of {1, ..., p-2}.
    Orbits(OrbitsArgs),
    /// Emit the isogeny decomposition with its audit.
    Decompose(DecomposeArgs),
    /// Run the self-verification suites.
    Verify(VerifyArgs),
    /// One summary line per prime in a range.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Coarse,
    Fine,
    Both,
}

impl LevelArg {
    fn levels(self) -> &'static [Level] {
        match self {
            LevelArg::Coarse => &[Level::Coarse],
            LevelArg::Fine => &[Level::Fine],
            LevelArg::Both => &[Level::Coarse, Level::Fine],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DepthArg {
    Basic,
    Full,
}

impl From<DepthArg> for Depth {
    fn from(d: DepthArg) -> Depth {
        match d {
            DepthArg::Basic => Depth::Basic,
            DepthArg::Full => Depth::Full,
        }
    }
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "both")]
    pub level: LevelArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Record per-stage wall-clock times (makes output non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "basic")]
    pub depth: DepthArg,
    /// Permit `--depth full` above p = 31.
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: u64,
    #[arg(long)]
    pub to: u64,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "basic")]
    pub depth: DepthArg,
    #[arg(long)]
    pub allow_large: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stdout: String, stderr: String) -> Self {
        Self {
            code,
            stdout,
            stderr,
        }
    }
}

/// Exit code for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::AuditFail(_) | Error::ShapeMismatch(_) => EXIT_AUDIT,
        Error::TooSmall(_)
        | Error::NotPrime(_)
        | Error::TooLarge { .. }
        | Error::OutOfRange { .. }
        | Error::Degenerate { .. }
        | Error::NoGamma(_)
        | Error::BadWord(_) => EXIT_INPUT,
        _ => EXIT_VERIFY,
    }
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome::fail(exit_code(e), String::new(), format!("error: {e}\n"))
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Json => report.to_json() + "\n",
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Orbits(a) => cmd_orbits(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn cmd_orbits(a: &OrbitsArgs) -> Result<Outcome, Error> {
    let ctx = PrimeContext::new(a.p)?;
    Ok(Outcome::ok(render(&Report::orbits(&ctx)?, a.format)))
}

fn cmd_decompose(a: &DecomposeArgs) -> Result<Outcome, Error> {
    let ctx = PrimeContext::new(a.p)?;
    let start = Instant::now();
    let mut report = Report::decomposition(&ctx, a.level.levels())?;
    if a.timings {
        report.provenance.timings_us = Some(BTreeMap::from([(
            "decompose".to_string(),
            start.elapsed().as_micros() as u64,
        )]));
    }
    Ok(Outcome::ok(render(&report, a.format)))
}

fn verified_report(ctx: &PrimeContext, depth: Depth, timings: bool) -> Result<Report, Error> {
    let t0 = Instant::now();
    let mut report = Report::decomposition(ctx, &[Level::Coarse, Level::Fine])?;
    let t1 = Instant::now();
    report.verification = Some(verify(ctx, depth)?);
    if depth == Depth::Full {
        report.provenance.triple = Some(find_generating_triple(&FermatGroup::new(ctx))?);
    }
    if timings {
        report.provenance.timings_us = Some(BTreeMap::from([
            ("decompose".to_string(), (t1 - t0).as_micros() as u64),
            ("verify".to_string(), t1.elapsed().as_micros() as u64),
        ]));
    }
    Ok(report)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let ctx = PrimeContext::new(a.p)?;
    let depth = a.depth.into();
    check_depth(&ctx, depth, a.allow_large)?;
    let report = verified_report(&ctx, depth, a.timings)?;
    let out = render(&report, a.format);
    let failed: Vec<String> = report
        .verification
        .iter()
        .flatten()
        .flat_map(|g| {
            g.lines
                .iter()
                .filter(|l| !l.passed())
                .map(move |l| format!("{}: {l}", g.name))
        })
        .collect();
    if failed.is_empty() {
        Ok(Outcome::ok(out))
    } else {
        Ok(Outcome::fail(
            EXIT_VERIFY,
            out,
            format!("verification failed: {}\n", failed[0]),
        ))
    }
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: u64,
    pub residue_mod_3: u8,
    pub orbits: [usize; 3],
    pub orbit_sum: u64,
    pub coarse: String,
    pub fine: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRow {
    fn render(&self) -> String {
        match &self.error {
            Some(e) => format!("p={:<4} FAIL {e}", self.p),
            None => format!(
                "p={:<4} mod3={} orbits={}/{}/{} sum={} {} | {} {}",
                self.p,
                self.residue_mod_3,
                self.orbits[0],
                self.orbits[1],
                self.orbits[2],
                self.orbit_sum,
                self.coarse,
                self.fine,
                if self.passed { "PASS" } else { "FAIL" }
            ),
        }
    }
}

pub fn sweep_row(p: u64, depth: Depth) -> SweepRow {
    let attempt = || -> Result<SweepRow, Error> {
        let ctx = PrimeContext::new(p)?;
        let report = verified_report(&ctx, depth, false)?;
        let text = |d: &Option<fermat_jacobian::report::DecompositionReport>| {
            d.as_ref().map(|d| d.text.clone()).unwrap_or_default()
        };
        Ok(SweepRow {
            p,
            residue_mod_3: ctx.residue_mod_3(),
            orbits: [
                report.orbits.special_one,
                report.orbits.gamma,
                report.orbits.generic,
            ],
            orbit_sum: report.orbits.orbits.iter().map(|o| o.size() as u64).sum(),
            coarse: text(&report.coarse),
            fine: text(&report.fine),
            passed: report.passed(),
            error: None,
        })
    };
    attempt().unwrap_or_else(|e| SweepRow {
        p,
        residue_mod_3: (p % 3) as u8,
        orbits: [0; 3],
        orbit_sum: 0,
        coarse: String::new(),
        fine: String::new(),
        passed: false,
        error: Some(e.to_string()),
    })
}

fn cmd_sweep(a: &SweepArgs) -> Result<Outcome, Error> {
    if a.from < 5 {
        return Err(Error::TooSmall(a.from));
    }
    if a.to > MAX_PRIME || a.from > a.to {
        return Err(Error::TooLarge {
            p: a.from.max(a.to),
            max: a.to.min(MAX_PRIME),
        });
    }
    let depth: Depth = a.depth.into();
    let primes = primes_between(a.from, a.to);
    if let Some(&last) = primes.last() {
        check_depth(&PrimeContext::new(last)?, depth, a.allow_large)?;
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .expect("thread pool with a positive thread count");
    let rows: Vec<SweepRow> =
        pool.install(|| primes.par_iter().map(|&p| sweep_row(p, depth)).collect());
    let passed = rows.iter().filter(|r| r.passed).count();
    let out = match a.format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        Format::Text => {
            let mut s: String = rows.iter().map(|r| r.render() + "\n").collect();
            s += &format!("{} primes, {} PASS\n", rows.len(), passed);
            s
        }
    };
    if passed == rows.len() {
        Ok(Outcome::ok(out))
    } else {
        Ok(Outcome::fail(
            EXIT_VERIFY,
            out,
            format!("{} of {} primes failed\n", rows.len() - passed, rows.len()),
        ))
    }
}
