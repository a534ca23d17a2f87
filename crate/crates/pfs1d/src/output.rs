//! Run outputs: CSV files with full-precision floats plus a plain-text run
//! manifest. Identical runs produce byte-identical data files.

use std::path::{Path, PathBuf};

use crate::closures::{density_ratio, pressure, total_head, FlowState};
use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::solver::RunResult;

/// Format a float with 17 significant digits, enough to reproduce the exact
/// bit pattern when read back.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// What one run wrote and how long it took.
#[derive(Debug, Clone)]
pub struct RunManifest {
    /// Crate version that produced the run.
    pub version: String,
    /// Number of time steps taken.
    pub steps: usize,
    /// Wall-clock duration of the time loop [s].
    pub wall_seconds: f64,
    /// Files written, in write order.
    pub files: Vec<PathBuf>,
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

/// Write snapshots.csv, diagnostics.csv, probes.csv (when probes were
/// requested), and manifest.txt into `out_dir`, creating it if needed.
pub fn emit_outputs(
    result: &RunResult,
    config: &SimConfig,
    out_dir: &Path,
    wall_seconds: f64,
) -> Result<RunManifest> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::Io {
        path: out_dir.display().to_string(),
        detail: e.to_string(),
    })?;
    let mesh = &result.mesh;
    let consts = &result.constants;
    let trajectory = &result.trajectory;
    let mut files = Vec::new();

    // Full state history: one row per snapshot per cell.
    let mut snapshots = String::from("t,x,A,Q,E,S,u,density_ratio,p,head\n");
    for (time, row) in trajectory.times.iter().zip(&trajectory.snapshots) {
        for (state, geom) in row.iter().zip(&mesh.cells) {
            let ratio = density_ratio(state.area, state.regime, geom)?;
            let p = pressure(state, geom, consts)?;
            let head = total_head(state, geom, consts)?;
            snapshots.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                fmt(*time),
                fmt(geom.arc_center),
                fmt(state.area),
                fmt(state.discharge),
                state.regime.flag(),
                fmt(geom.section_area),
                fmt(state.velocity()),
                fmt(ratio),
                fmt(p),
                fmt(head),
            ));
        }
    }
    let snapshots_path = out_dir.join("snapshots.csv");
    write_file(&snapshots_path, &snapshots)?;
    files.push(snapshots_path);

    // Scalar diagnostics per snapshot.
    let mut diag = String::from(
        "t,mass,total_entropy,boundary_entropy_flux,max_abs_velocity,\
         max_density_ratio,head_spread,front_cells\n",
    );
    for rec in &trajectory.records {
        let fronts: Vec<String> = rec.front_cells.iter().map(|c| c.to_string()).collect();
        diag.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt(rec.time),
            fmt(rec.mass),
            fmt(rec.total_entropy),
            fmt(rec.boundary_entropy_flux),
            fmt(rec.max_abs_velocity),
            fmt(rec.max_density_ratio),
            fmt(rec.head_spread),
            fronts.join(";"),
        ));
    }
    let diag_path = out_dir.join("diagnostics.csv");
    write_file(&diag_path, &diag)?;
    files.push(diag_path);

    // Probe histories, long format: one row per snapshot per probe.
    if !config.probes.is_empty() {
        let mut probes = String::from("t,cell,x,A,Q,density_ratio\n");
        for (time, row) in trajectory.times.iter().zip(&trajectory.snapshots) {
            for &cell in &config.probes {
                let state: &FlowState = &row[cell];
                let geom = &mesh.cells[cell];
                let ratio = density_ratio(state.area, state.regime, geom)?;
                probes.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(*time),
                    cell,
                    fmt(geom.arc_center),
                    fmt(state.area),
                    fmt(state.discharge),
                    fmt(ratio),
                ));
            }
        }
        let probes_path = out_dir.join("probes.csv");
        write_file(&probes_path, &probes)?;
        files.push(probes_path);
    }

    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        steps: result.steps,
        wall_seconds,
        files: files.clone(),
    };

    let mut text = String::from("pfs1d run manifest\n");
    text.push_str(&format!("version = {}\n", manifest.version));
    text.push_str(&format!("steps = {}\n", manifest.steps));
    text.push_str(&format!("wall_seconds = {:.3}\n", wall_seconds));
    text.push_str(&format!("cells = {}\n", mesh.n_cells()));
    text.push_str(&format!("snapshots = {}\n", trajectory.times.len()));
    for file in &files {
        text.push_str(&format!("file = {}\n", file.display()));
    }
    text.push_str("config:\n");
    for line in config.to_text().lines() {
        text.push_str(&format!("  {line}\n"));
    }
    let manifest_path = out_dir.join("manifest.txt");
    write_file(&manifest_path, &text)?;

    Ok(manifest)
}
