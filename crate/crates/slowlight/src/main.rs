use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slowlight::run_scenario;
use slowlight::scenario::{parse_scenario_for, Experiment, Scenario};

/// Scenario-driven simulator of two matched slow-light pulses.
#[derive(Parser)]
#[command(name = "slowlight", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario configuration file (TOML); defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output table path (default: $SLOWLIGHT_OUT_DIR/<experiment>.dat).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run even if the operating-regime check fails (watermarked in output).
    #[arg(long, global = true)]
    force: bool,

    /// Also emit the closed-form/oracle comparison table where available.
    #[arg(long, global = true)]
    oracle: bool,

    /// Override the number of split steps (propagate).
    #[arg(long, global = true)]
    steps: Option<usize>,

    /// Override the number of sample points of the active experiment.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Override the run label echoed in output headers.
    #[arg(long, global = true)]
    label: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Report all derived coefficients and phase-shift figures.
    Params,
    /// Transparency window: transmission and phase over detuning.
    Spectrum,
    /// Split-step propagation of the two pulses.
    Propagate,
    /// Mean-field collapse/revival over the conditional phase.
    Revival,
    /// Cross-Kerr evolution of a coherent pair: cat fidelity and entropy.
    Cat,
    /// Two-photon correlation amplitude over a time-time grid.
    Pair,
    /// Sweep one medium parameter and tabulate the derived quantities.
    Sweep,
}

impl Command {
    fn experiment(&self) -> Experiment {
        match self {
            Command::Params => Experiment::Params,
            Command::Spectrum => Experiment::Spectrum,
            Command::Propagate => Experiment::Propagate,
            Command::Revival => Experiment::Revival,
            Command::Cat => Experiment::Cat,
            Command::Pair => Experiment::Pair,
            Command::Sweep => Experiment::Sweep,
        }
    }
}

fn build_scenario(cli: &Cli) -> slowlight::Result<Scenario> {
    let text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)?,
        None => String::new(),
    };
    let mut scenario = parse_scenario_for(&text, cli.command.experiment())?;

    if cli.force {
        scenario.force = true;
    }
    if cli.oracle {
        scenario.oracle = true;
    }
    if let Some(steps) = cli.steps {
        scenario.propagate.steps = steps.max(1);
    }
    if let Some(points) = cli.points {
        let points = points.max(2);
        scenario.spectrum.points = points;
        scenario.pair.points = points;
        if let Some(r) = scenario.revival.as_mut() {
            r.points = points;
        }
        if let Some(w) = scenario.sweep.as_mut() {
            w.points = points;
        }
    }
    if let Some(label) = &cli.label {
        scenario.label = label.clone();
    }
    scenario.out = cli.out.clone().or_else(|| {
        let name = format!("{}.dat", scenario.experiment.name());
        match std::env::var_os("SLOWLIGHT_OUT_DIR") {
            Some(dir) => Some(PathBuf::from(dir).join(name)),
            None => scenario.out.clone().or(Some(PathBuf::from(name))),
        }
    });
    Ok(scenario)
}

fn run(cli: &Cli) -> slowlight::Result<()> {
    let scenario = build_scenario(cli)?;
    let report = run_scenario(&scenario)?;
    println!("experiment: {}", scenario.experiment.name());
    println!(
        "regime: saturation_ratio = {:.4e}, dark_state_ok = {}, bandwidth_ok = {}",
        report.regime.saturation_ratio, report.regime.dark_state_ok, report.regime.bandwidth_ok
    );
    for m in &report.regime.messages {
        println!("  {m}");
    }
    for w in &report.warnings {
        println!("warning: {w}");
    }
    for path in &report.outputs {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
