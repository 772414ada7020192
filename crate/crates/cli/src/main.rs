//! `phasedisc`: build, run and check orthogonal-state discriminators from
//! scripts.
//!
//! Exit codes: 0 when every check passes, 1 when a verdict fails, 2 on
//! invalid input. Errors are printed to stderr as JSON.

mod commands;
mod report;

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CliResult, PulsesArgs, SynthArgs, TomoCircuit};

#[derive(Parser)]
#[command(name = "phasedisc", version, about = "Non-destructive orthogonal state discrimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TomoMode {
    Joint,
    Split,
    Identity,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a discriminator spec from a state set.
    Synth {
        /// bell, ghz<k>, family-s, single or hadamard.
        #[arg(long, conflicts_with = "states")]
        preset: Option<String>,
        /// JSON file with the states as lists of [re, im] amplitudes.
        #[arg(long)]
        states: Option<PathBuf>,
        /// Amplitudes for the family-s and single presets.
        #[arg(long, default_value_t = FRAC_1_SQRT_2, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = FRAC_1_SQRT_2, allow_hyphen_values = true)]
        beta: f64,
        /// canonical, bell, ghz3 or a JSON file.
        #[arg(long, default_value = "canonical")]
        arrays: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a spec on member states or states from a file.
    Discriminate {
        #[arg(long)]
        spec: PathBuf,
        /// `all` for every member, or a JSON state file.
        #[arg(long, default_value = "all")]
        inputs: String,
        /// tableI, tableII or a JSON table file.
        #[arg(long)]
        expect: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the pulse-level realization for a spin system.
    NmrVerify {
        /// chfbr2-3spin or crotonic-4spin, or a name in --config.
        preset: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dump initial and final register density matrices.
    Tomo {
        #[arg(long)]
        spec: PathBuf,
        /// 1-based member index.
        #[arg(long, conflicts_with = "state")]
        member: Option<usize>,
        /// JSON state file; the first state is used.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "joint")]
        circuit: TomoMode,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Print and compile a pulse sequence.
    Pulses {
        /// Built-in family: two-qubit or ghz.
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
        /// 1-based controlled operator of the built-in family.
        #[arg(long, default_value_t = 1)]
        operator: usize,
        /// Sequence in the line format (`rf 1 pi/2 y`, `jdelay 1 3 pi/2`, `zrot 1 pi/2`).
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit status of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn run(cli: Cli) -> CliResult<Verdict> {
    match cli.command {
        Command::Synth {
            preset,
            states,
            alpha,
            beta,
            arrays,
            output,
        } => {
            let text = commands::synth(&SynthArgs {
                preset: preset.as_deref(),
                states: states.as_deref(),
                alpha,
                beta,
                arrays: &arrays,
            })?;
            commands::write_output(output.as_deref(), &text)?;
            Ok(Verdict::Pass)
        }
        Command::Discriminate {
            spec,
            inputs,
            expect,
            format,
            output,
        } => {
            let spec = commands::load_spec(&spec)?;
            let inputs = commands::load_inputs(&spec, &inputs)?;
            let report = commands::discriminate(&spec, &inputs, expect.as_deref())?;
            let text = match format {
                Format::Json => pretty(&report),
                Format::Csv => report.to_csv(),
            };
            commands::write_output(output.as_deref(), &text)?;
            Ok(if report.pass { Verdict::Pass } else { Verdict::Fail })
        }
        Command::NmrVerify { preset, config, output } => {
            let report = commands::nmr_verify(&preset, config.as_deref())?;
            commands::write_output(output.as_deref(), &pretty(&report))?;
            Ok(if report.pass { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Tomo {
            spec,
            member,
            state,
            circuit,
            output,
        } => {
            let spec = commands::load_spec(&spec)?;
            let input = commands::tomo_input(&spec, member, state.as_deref())?;
            let which = match circuit {
                TomoMode::Joint => TomoCircuit::Joint,
                TomoMode::Split => TomoCircuit::Split,
                TomoMode::Identity => TomoCircuit::Identity,
            };
            let doc = commands::tomo(&spec, &input, which)?;
            commands::write_output(Some(&output), &pretty(&doc))?;
            for dump in doc["dumps"].as_array().into_iter().flatten() {
                eprintln!(
                    "{}: avg {:.3e}%, max {:.3e}%",
                    dump["label"].as_str().unwrap_or(""),
                    dump["metrics"]["avg_abs_dev"].as_f64().unwrap_or(f64::NAN),
                    dump["metrics"]["max_abs_dev"].as_f64().unwrap_or(f64::NAN),
                );
            }
            Ok(Verdict::Pass)
        }
        Command::Pulses {
            builtin,
            operator,
            file,
            preset,
            output,
        } => {
            let doc = commands::pulses(&PulsesArgs {
                builtin: builtin.as_deref(),
                operator,
                file: file.as_deref(),
                preset: preset.as_deref(),
            })?;
            commands::write_output(output.as_deref(), &pretty(&doc))?;
            Ok(Verdict::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}
