//! Mesh refinement studies: run one configuration at several resolutions
//! and measure self-convergence against the finest level.

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::solver::run;

/// One resolution's self-convergence measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    /// Cells at this level.
    pub cells: usize,
    /// L1 error of the final wet area against the restricted finest run
    /// [m^3].
    pub err_area: f64,
    /// L1 error of the final discharge against the restricted finest run
    /// [m^4/s].
    pub err_discharge: f64,
    /// Observed order against the previous (coarser) level.
    pub order_area: Option<f64>,
    /// Observed order of the discharge against the previous level.
    pub order_discharge: Option<f64>,
}

/// Average groups of `factor` fine cells onto one coarse cell. Exact for
/// the conservative pair: the coarse integral equals the fine integral.
fn restrict(fine: &[f64], factor: usize) -> Vec<f64> {
    fine.chunks(factor).map(|chunk| chunk.iter().sum::<f64>() / factor as f64).collect()
}

/// Run `config` at every level and compare each against the finest.
///
/// Levels are sorted and deduplicated; every level must divide the finest
/// one exactly so restriction is cell-aligned. A single level yields one
/// degenerate row with zero error.
pub fn refinement_study(config: &SimConfig, levels: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if levels.is_empty() {
        return Err(Error::BadRefinementLevels { reason: "no levels given".into() });
    }
    let mut sorted: Vec<usize> = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted[0] == 0 {
        return Err(Error::BadRefinementLevels { reason: "levels must be positive".into() });
    }
    let finest = *sorted.last().expect("nonempty");
    for &n in &sorted {
        if finest % n != 0 {
            return Err(Error::BadRefinementLevels {
                reason: format!("{n} does not divide the finest level {finest}"),
            });
        }
    }

    // Snapshots other than the final one are irrelevant here; keep runs
    // lean and drop probes, whose indices only fit the original grid.
    let run_at = |cells: usize| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut level_config = config.clone();
        level_config.cells = cells;
        level_config.probes = Vec::new();
        level_config.output_cadence = if config.t_end > 0.0 { config.t_end } else { 0.0 };
        let result = run(&level_config)?;
        let last = result.trajectory.last();
        Ok((last.iter().map(|s| s.area).collect(), last.iter().map(|s| s.discharge).collect()))
    };

    let (fine_area, fine_discharge) = run_at(finest)?;
    let length_over = |n: usize| -> f64 { 1.0 / n as f64 };

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(sorted.len());
    for &n in &sorted {
        let (err_area, err_discharge) = if n == finest {
            (0.0, 0.0)
        } else {
            let factor = finest / n;
            let (area, discharge) = run_at(n)?;
            let ref_area = restrict(&fine_area, factor);
            let ref_discharge = restrict(&fine_discharge, factor);
            // dx = L/n; the study only compares levels of one config, so the
            // common factor L is applied through mesh-independent weights.
            let weight = length_over(n);
            let ea = area
                .iter()
                .zip(&ref_area)
                .map(|(a, r)| (a - r).abs())
                .sum::<f64>()
                * weight;
            let eq = discharge
                .iter()
                .zip(&ref_discharge)
                .map(|(q, r)| (q - r).abs())
                .sum::<f64>()
                * weight;
            (ea, eq)
        };
        let (order_area, order_discharge) = match rows.last() {
            Some(prev) if prev.err_area > 0.0 && err_area > 0.0 => {
                let ratio = (n as f64 / prev.cells as f64).ln();
                (
                    Some((prev.err_area / err_area).ln() / ratio),
                    if prev.err_discharge > 0.0 && err_discharge > 0.0 {
                        Some((prev.err_discharge / err_discharge).ln() / ratio)
                    } else {
                        None
                    },
                )
            }
            _ => (None, None),
        };
        rows.push(ConvergenceRow { cells: n, err_area, err_discharge, order_area, order_discharge });
    }
    Ok(rows)
}

/// Render the rows as the fixed-width table the CLI prints.
pub fn format_table(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("  cells       err_area  order_A  err_discharge  order_Q\n");
    for row in rows {
        let fmt_order = |o: Option<f64>| match o {
            Some(v) => format!("{v:8.2}"),
            None => format!("{:>8}", "-"),
        };
        out.push_str(&format!(
            "{:>7}  {:13.6e} {}  {:13.6e} {}\n",
            row.cells,
            row.err_area,
            fmt_order(row.order_area),
            row.err_discharge,
            fmt_order(row.order_discharge),
        ));
    }
    out
}
