//! Thin command-line front end: `run` simulates one configuration and
//! writes CSV outputs; `converge` runs a refinement study and prints the
//! error table. All real work lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use pfs1d::config::{parse_config, preset, preset_names, SimConfig};
use pfs1d::convergence::{format_table, refinement_study};
use pfs1d::error::{Error, Result};
use pfs1d::output::emit_outputs;
use pfs1d::solver::run;

const USAGE: &str = "pfs1d - mixed free-surface/pressurized pipe flow simulator

USAGE:
    pfs1d run (--config <path> | --preset <name>) [--out-dir <path>]
              [--cells <n>] [--cfl <f>] [--tmax <t>]
    pfs1d converge (--config <path> | --preset <name>) --levels <n1,n2,...>
    pfs1d --help

Presets: still-water, dam-break-fs, water-hammer, pipe-filling,
varying-section-steady

`run` writes snapshots.csv, diagnostics.csv, probes.csv (when the
configuration requests probes), and manifest.txt into the output directory
(default: out). `converge` reruns the configuration at every level and
prints an L1 self-convergence table against the finest level.";

fn usage_err(detail: &str) -> Error {
    Error::Usage { detail: format!("{detail} (see pfs1d --help)") }
}

/// Pull the value of a `--flag value` pair out of the argument list.
fn take_flag(args: &mut Vec<String>, flag: &str) -> Result<Option<String>> {
    if let Some(pos) = args.iter().position(|a| a == flag) {
        if pos + 1 >= args.len() {
            return Err(usage_err(&format!("{flag} needs a value")));
        }
        let value = args.remove(pos + 1);
        args.remove(pos);
        Ok(Some(value))
    } else {
        Ok(None)
    }
}

/// Load the configuration from exactly one of --config / --preset, common
/// to both subcommands.
fn load_config(args: &mut Vec<String>) -> Result<SimConfig> {
    let config_path = take_flag(args, "--config")?;
    let preset_name = take_flag(args, "--preset")?;
    match (config_path, preset_name) {
        (Some(_), Some(_)) => Err(usage_err("give either --config or --preset, not both")),
        (None, None) => Err(usage_err("one of --config or --preset is required")),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Io { path: path.clone(), detail: e.to_string() })?;
            parse_config(&text)
        }
        (None, Some(name)) => preset(&name),
    }
}

fn reject_leftovers(args: &[String]) -> Result<()> {
    if let Some(extra) = args.first() {
        return Err(usage_err(&format!("unexpected argument '{extra}'")));
    }
    Ok(())
}

fn cmd_run(mut args: Vec<String>) -> Result<()> {
    let out_dir = take_flag(&mut args, "--out-dir")?.unwrap_or_else(|| "out".into());
    let cells = take_flag(&mut args, "--cells")?;
    let cfl = take_flag(&mut args, "--cfl")?;
    let tmax = take_flag(&mut args, "--tmax")?;
    let mut config = load_config(&mut args)?;
    reject_leftovers(&args)?;
    if let Some(v) = cells {
        config.cells =
            v.parse().map_err(|_| usage_err(&format!("--cells expects an integer, got '{v}'")))?;
    }
    if let Some(v) = cfl {
        config.cfl =
            v.parse().map_err(|_| usage_err(&format!("--cfl expects a number, got '{v}'")))?;
    }
    if let Some(v) = tmax {
        config.t_end =
            v.parse().map_err(|_| usage_err(&format!("--tmax expects a number, got '{v}'")))?;
    }
    config.validate()?;

    let started = Instant::now();
    let result = run(&config)?;
    let wall = started.elapsed().as_secs_f64();
    let manifest = emit_outputs(&result, &config, &PathBuf::from(&out_dir), wall)?;
    for file in &manifest.files {
        println!("wrote {}", file.display());
    }
    println!("wrote {}/manifest.txt", out_dir);
    let final_time = result.trajectory.times.last().copied().unwrap_or(0.0);
    println!(
        "steps = {}, final time = {:.6} s, snapshots = {}",
        result.steps,
        final_time,
        result.trajectory.times.len()
    );
    Ok(())
}

fn cmd_converge(mut args: Vec<String>) -> Result<()> {
    let levels_arg =
        take_flag(&mut args, "--levels")?.ok_or_else(|| usage_err("--levels is required"))?;
    let config = load_config(&mut args)?;
    reject_leftovers(&args)?;
    let levels = levels_arg
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| {
                usage_err(&format!("--levels expects comma-separated integers, got '{part}'"))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let rows = refinement_study(&config, &levels)?;
    print!("{}", format_table(&rows));
    Ok(())
}

fn dispatch(mut args: Vec<String>) -> Result<()> {
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return Ok(());
    }
    if args.is_empty() {
        return Err(usage_err("a subcommand is required"));
    }
    let subcommand = args.remove(0);
    match subcommand.as_str() {
        "run" => cmd_run(args),
        "converge" => cmd_converge(args),
        other => {
            if preset_names().contains(&other) {
                Err(usage_err(&format!("'{other}' is a preset; use: pfs1d run --preset {other}")))
            } else {
                Err(usage_err(&format!("unknown subcommand '{other}'")))
            }
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("pfs1d: error: {err}");
            match err {
                Error::Usage { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
