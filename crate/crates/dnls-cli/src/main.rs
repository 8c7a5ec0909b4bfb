use clap::{Parser, Subcommand};
use dnls_cli::commands::{self, AsymptoteArgs, EvolveArgs, InvertArgs, ScatterArgs, SynthArgs, ValidateArgs};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dnls", version, about = "Scattering, inversion and long-time asymptotics for the derivative NLS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an N-soliton from discrete data
    Synth(SynthArgs),
    /// Direct scattering of a sampled potential
    Scatter(ScatterArgs),
    /// Reconstruct q(x, t) from scattering data
    Invert(InvertArgs),
    /// Time-evolve a potential by the PDE solver, the IST, or both
    Evolve(EvolveArgs),
    /// Evaluate the long-time prediction in a space-time cone
    Asymptote(AsymptoteArgs),
    /// Run the acceptance criteria
    Validate(ValidateArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(n) = std::env::var("DNLS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("DNLS_THREADS ignored: {e}");
        }
    }
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Synth(a) => commands::synth(a),
        Command::Scatter(a) => commands::scatter(a),
        Command::Invert(a) => commands::invert(a),
        Command::Evolve(a) => commands::evolve(a),
        Command::Asymptote(a) => commands::asymptote(a),
        Command::Validate(a) => commands::validate(a),
    };
    match res {
        Ok(r) => {
            for m in r.metrics.iter().filter(|m| !m.pass) {
                eprintln!("metric failed: {} = {:e} ({})", m.name, m.value, m.tol);
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
