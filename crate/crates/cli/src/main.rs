//! `kuhn3` command-line entry point.
//!
//! Exit status: 0 on success, 1 when a verification or replay check fails,
//! 2 on usage, configuration, parse or I/O errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use kuhn3::equilibrium::{cfr_train_with_trace, epsilon_report, infoset_gaps, log_checkpoints};
use kuhn3::game::Seat;
use kuhn3::harness::{
    replay_file, run_tournament_with_logs, variance_study, TournamentConfig, TournamentReport,
};
use kuhn3::scalar::{rational_from_f64, Rational, Scalar};
use kuhn3::strategy::{nash_profile, parse_profile, parameter_name, serialize_profile, Variant};

#[derive(Parser)]
#[command(name = "kuhn3", version, about = "Three-player Kuhn poker laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the completed equilibrium profile for a parameter table.
    Solve {
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a profile's epsilon exactly; fails if it exceeds the threshold.
    Verify {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        threshold: f64,
    },
    /// Train a profile with vanilla CFR and write it with its epsilon trace.
    TrainCfr {
        #[arg(long)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Profile output; the trace goes next to it as `<stem>.trace.csv`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a duplicate-match tournament and write reports and match logs.
    Tournament {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-derive a match log's chips from the rules and check them.
    Replay {
        log: PathBuf,
        /// Also check the totals recorded in this JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare duplicate and independent-card variance for the first three
    /// agents of a tournament config.
    VarianceStudy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        replications: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A check ran and failed (exit 1), as opposed to an error (exit 2).
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<CheckFailed>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve { variant, out } => solve(variant, &out),
        Command::Verify { profile, threshold } => verify(&profile, threshold),
        Command::TrainCfr { iters, seed, out } => train_cfr(iters, seed, &out),
        Command::Tournament { config, out } => tournament(&config, &out),
        Command::Replay { log, report } => replay(&log, report.as_deref()),
        Command::VarianceStudy {
            config,
            replications,
            out,
        } => variance(&config, replications, &out),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn solve(variant: Variant, out: &Path) -> Result<()> {
    write(out, &serialize_profile(&nash_profile(variant)))?;
    println!("wrote {variant} profile to {}", out.display());
    Ok(())
}

fn verify(path: &Path, threshold: f64) -> Result<()> {
    if !(threshold >= 0.0 && threshold.is_finite()) {
        bail!("--threshold must be a finite non-negative number, got {threshold}");
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let profile = parse_profile::<Rational>(&text).with_context(|| format!("parsing {}", path.display()))?;
    let report = epsilon_report(&profile);
    print!("{report}");
    println!("epsilon_f64 {}", report.epsilon.to_f64());
    if report.epsilon <= rational_from_f64(threshold) {
        println!("verified: epsilon <= {threshold}");
        return Ok(());
    }
    for seat in Seat::ALL {
        for g in infoset_gaps(&profile, seat) {
            if g.gap > Rational::from_integer(0.into()) {
                println!(
                    "gap seat {} card {} situation {} ({}) gap {} passive {} aggressive {}",
                    g.key.seat,
                    g.key.card.symbol(),
                    g.key.situation,
                    parameter_name(&g.key),
                    g.gap,
                    g.passive_value,
                    g.aggressive_value
                );
            }
        }
    }
    Err(CheckFailed(format!(
        "epsilon {} exceeds threshold {threshold} (worst seat {})",
        report.epsilon,
        report.worst_seat()
    ))
    .into())
}

fn trace_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.trace.csv"))
}

fn train_cfr(iters: u64, seed: u64, out: &Path) -> Result<()> {
    let (profile, trace) = cfr_train_with_trace(iters, seed, &log_checkpoints(iters));
    write(out, &serialize_profile(&profile))?;
    let mut csv = String::from("iteration,epsilon\n");
    for point in &trace {
        csv.push_str(&format!("{},{}\n", point.iteration, point.epsilon));
    }
    let trace_out = trace_path(out);
    write(&trace_out, &csv)?;
    if let Some(last) = trace.last() {
        println!("iterations {} epsilon {}", last.iteration, last.epsilon);
    }
    println!("wrote {} and {}", out.display(), trace_out.display());
    Ok(())
}

fn tournament(config: &Path, out: &Path) -> Result<()> {
    let config = TournamentConfig::load(config)?;
    let logs = out.join("logs");
    fs::create_dir_all(&logs).with_context(|| format!("creating {}", logs.display()))?;
    let report = run_tournament_with_logs(&config, Some(&logs))?;
    write(&out.join("report.csv"), &report.to_csv())?;
    write(&out.join("report.json"), &report.to_json())?;
    print!("{}", report.to_csv());
    println!("{} matches, reports in {}", report.match_count(), out.display());
    Ok(())
}

fn replay(log: &Path, report: Option<&Path>) -> Result<()> {
    let report = match report {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(TournamentReport::from_json(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => None,
    };
    match replay_file(log, report.as_ref()) {
        Ok([a, b, c]) => {
            println!("replay ok: totals {a},{b},{c}");
            Ok(())
        }
        Err(kuhn3::error::HarnessError::ReplayMismatch(m)) => Err(CheckFailed(format!("replay mismatch: {m}")).into()),
        Err(e) => Err(e.into()),
    }
}

fn variance(config: &Path, replications: usize, out: &Path) -> Result<()> {
    let config = TournamentConfig::load(config)?;
    let triple: [_; 3] = config.agents[..3].to_vec().try_into().expect("validated pool has 3+ agents");
    let study = variance_study(&triple, &config.match_config(), replications)?;
    write(out, &study.to_json())?;
    match study.ratio {
        Some(r) => println!(
            "{}: duplicate variance {} independent variance {} ratio {r}",
            study.focus, study.duplicate.variance, study.independent.variance
        ),
        None => println!("{}: independent arm has zero variance", study.focus),
    }
    Ok(())
}
