use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use msm_lab::evolution::{evolve_msm, MsmState};
use msm_lab::harness::config::ExperimentConfig;
use msm_lab::harness::embedding::run_embedding;
use msm_lab::harness::random::{random_pair, rng_for};
use msm_lab::harness::roundtrip::run_gauge_roundtrip;
use msm_lab::harness::stability::run_stability_experiment;
use msm_lab::harness::survey::{ensemble_norm_rows, run_inequality_survey};
use msm_lab::littlewood_paley::write_norm_table;
use msm_lab::spectral::snapshot;
use msm_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "msm-lab", about = "Numerical experiments for the gauged modified Schrödinger map system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve random data and record norms and snapshots.
    Simulate(Common),
    /// Survey the product and gauge-potential inequalities over an ensemble.
    VerifyInequalities(Common),
    /// Difference-flow stability scan.
    Stability(Common),
    /// Map-to-field pipeline residuals.
    GaugeRoundtrip(Common),
    /// Interpolation chain on a simulated trajectory.
    Embedding(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    dt: Option<f64>,
}

impl Common {
    fn load(&self) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            config.ensemble.seed = seed;
        }
        if let Some(n) = self.n {
            config.grid.n = n;
        }
        if let Some(dt) = self.dt {
            config.time.dt = dt;
        }
        config.validate(&self.config)?;
        fs::create_dir_all(&self.out)?;
        Ok(config)
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(BufWriter::new(File::create(path)?), value)?;
    Ok(())
}

fn check(label: &str, ok: bool) -> bool {
    if !ok {
        eprintln!("assertion failed: {label}");
    }
    ok
}

#[derive(Serialize)]
struct SimulationSummary {
    config_hash: String,
    steps: usize,
    final_t: f64,
    initial_mass: f64,
    final_mass: f64,
    relative_mass_drift: f64,
    snapshots: usize,
}

fn simulate(args: &Common) -> Result<bool> {
    let config = args.load()?;
    let grid = config.grid();
    let u0 = random_pair(grid, &config.field_spec(), &mut rng_for(config.ensemble.seed, 0));
    let state = MsmState::new(u0);
    let record = evolve_msm(&state, config.time.dt, config.n_steps(), config.sampling());
    record.write_csv(File::create(args.out.join("trajectory.csv"))?)?;
    if !record.snapshots.is_empty() {
        let dir = args.out.join("snapshots");
        fs::create_dir_all(&dir)?;
        for (k, snap) in record.snapshots.iter().enumerate() {
            snapshot::save(dir.join(format!("snapshot_{k:05}.msmf")), &snap.fields)?;
        }
    }
    let record = record.completed()?;
    let first = record.samples.first().expect("initial sample").mass();
    let last = record.final_sample().expect("final sample");
    let drift = if first > 0.0 { (last.mass() - first).abs() / first } else { 0.0 };
    write_json(
        &args.out.join("summary.json"),
        &SimulationSummary {
            config_hash: config.hash(),
            steps: config.n_steps(),
            final_t: last.t,
            initial_mass: first,
            final_mass: last.mass(),
            relative_mass_drift: drift,
            snapshots: record.snapshots.len(),
        },
    )?;
    Ok(check("relative mass drift below 1e-8", drift < 1e-8))
}

fn verify_inequalities(args: &Common) -> Result<bool> {
    let config = args.load()?;
    let reports = run_inequality_survey(&config)?;
    write_json(&args.out.join("reports.json"), &reports)?;
    write_norm_table(File::create(args.out.join("norms.csv"))?, &ensemble_norm_rows(&config, 10))?;
    let mut ok = true;
    for r in &reports {
        ok &= check(&format!("{} ratios finite", r.inequality_id), r.is_valid());
    }
    Ok(ok)
}

fn stability(args: &Common) -> Result<bool> {
    let config = args.load()?;
    let report = run_stability_experiment(&config)?;
    write_json(&args.out.join("stability.json"), &report)?;
    let ok = check("growth varies less than 2x across perturbation sizes", report.delta_spread < 2.0)
        & check("fitted rate within 25% across draws", report.c_variation < 0.25)
        & check("envelope dominates", report.all_dominated());
    Ok(ok)
}

fn gauge_roundtrip(args: &Common) -> Result<bool> {
    let config = args.load()?;
    let report = run_gauge_roundtrip(&config)?;
    write_json(&args.out.join("roundtrip.json"), &report)?;
    Ok(check("residuals within tolerance", report.within_tolerance())
        & check("residuals at least halve per grid doubling", report.refines()))
}

fn embedding(args: &Common) -> Result<bool> {
    let config = args.load()?;
    let (record, report) = run_embedding(&config)?;
    record.write_csv(File::create(args.out.join("trajectory.csv"))?)?;
    write_json(&args.out.join("embedding.json"), &report)?;
    Ok(check("interpolation chain ratio at most 1", report.max_ratio <= 1.0 + 1e-10))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::VerifyInequalities(a) => verify_inequalities(a),
        Command::Stability(a) => stability(a),
        Command::GaugeRoundtrip(a) => gauge_roundtrip(a),
        Command::Embedding(a) => embedding(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e @ Error::BlowUp { .. }) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
