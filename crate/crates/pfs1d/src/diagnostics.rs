//! Run diagnostics: mass and entropy totals, boundary entropy flux, still
//! water residuals, transition-front tracking, and surge metrics.

use crate::closures::{entropy, entropy_flux, sound_speed, total_head, FlowState, FluidConstants};
use crate::error::{Error, Result};
use crate::solver::{ghost_state, BoundaryCondition, Mesh, Trajectory};

/// Scalar diagnostics of one snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    /// Snapshot time [s].
    pub time: f64,
    /// Total wet volume sum(A dx) [m^3].
    pub mass: f64,
    /// Total entropy sum(E dx) [m^5/s^2].
    pub total_entropy: f64,
    /// Net entropy outflow rate through the two boundaries [m^5/s^3],
    /// evaluated with the same numerical flux the scheme uses.
    pub boundary_entropy_flux: f64,
    /// Largest |u| over the cells [m/s].
    pub max_abs_velocity: f64,
    /// Largest A/S over the cells [-].
    pub max_density_ratio: f64,
    /// Spread (max - min) of the total head over the cells [m^2/s^2].
    pub head_spread: f64,
    /// Cells i whose regime differs from cell i+1: transition front feet.
    pub front_cells: Vec<usize>,
}

/// Total wet volume sum(A dx) [m^3].
pub fn mass_total(states: &[FlowState], mesh: &Mesh) -> f64 {
    states.iter().map(|s| s.area).sum::<f64>() * mesh.dx
}

/// Numerical entropy flux across one interface, consistent with the Rusanov
/// mass flux: the centered physical flux minus spread-speed dissipation.
fn numerical_entropy_flux(
    left: &FlowState,
    right: &FlowState,
    geom_left: &crate::geometry::CellGeometry,
    geom_right: &crate::geometry::CellGeometry,
    consts: &FluidConstants,
) -> Result<f64> {
    let g_left = entropy_flux(left, geom_left, consts)?;
    let g_right = entropy_flux(right, geom_right, consts)?;
    let e_left = entropy(left, geom_left, consts)?;
    let e_right = entropy(right, geom_right, consts)?;
    let speed = (left.velocity().abs() + sound_speed(left, geom_left, consts)?)
        .max(right.velocity().abs() + sound_speed(right, geom_right, consts)?);
    Ok(0.5 * (g_left + g_right) - 0.5 * speed * (e_right - e_left))
}

/// Compute the diagnostics of one state row.
pub fn record(
    states: &[FlowState],
    mesh: &Mesh,
    consts: &FluidConstants,
    bc_left: &BoundaryCondition,
    bc_right: &BoundaryCondition,
    time: f64,
) -> Result<DiagnosticsRecord> {
    let n = states.len();
    assert_eq!(n, mesh.cells.len(), "one state per mesh cell");
    let mut total_entropy = 0.0;
    let mut max_abs_velocity = 0.0f64;
    let mut max_density_ratio = 0.0f64;
    let mut head_min = f64::INFINITY;
    let mut head_max = f64::NEG_INFINITY;
    let mut front_cells = Vec::new();
    for (i, (state, geom)) in states.iter().zip(&mesh.cells).enumerate() {
        total_entropy += entropy(state, geom, consts)? * mesh.dx;
        max_abs_velocity = max_abs_velocity.max(state.velocity().abs());
        max_density_ratio = max_density_ratio.max(state.area / geom.section_area);
        let head = total_head(state, geom, consts)?;
        head_min = head_min.min(head);
        head_max = head_max.max(head);
        if i + 1 < n && states[i + 1].regime != state.regime {
            front_cells.push(i);
        }
    }
    let first = &mesh.cells[0];
    let last = &mesh.cells[n - 1];
    let ghost_l = ghost_state(bc_left, &states[0], first, time)?;
    let ghost_r = ghost_state(bc_right, &states[n - 1], last, time)?;
    let flux_in = numerical_entropy_flux(&ghost_l, &states[0], first, first, consts)?;
    let flux_out = numerical_entropy_flux(&states[n - 1], &ghost_r, last, last, consts)?;
    Ok(DiagnosticsRecord {
        time,
        mass: mass_total(states, mesh),
        total_entropy,
        boundary_entropy_flux: flux_out - flux_in,
        max_abs_velocity,
        max_density_ratio,
        head_spread: head_max - head_min,
        front_cells,
    })
}

/// Entropy production per snapshot interval [m^5/s^2]: the change of total
/// entropy plus the net boundary outflow integrated with the trapezoid rule.
/// Non-positive for an entropy-respecting scheme, up to round-off.
pub fn entropy_budget(trajectory: &Trajectory) -> Result<Vec<f64>> {
    let records = &trajectory.records;
    if records.len() < 2 {
        return Err(Error::Usage {
            detail: "entropy budget needs at least two snapshots".into(),
        });
    }
    let mut productions = Vec::with_capacity(records.len() - 1);
    for pair in records.windows(2) {
        let dt = pair[1].time - pair[0].time;
        let outflow = 0.5 * (pair[0].boundary_entropy_flux + pair[1].boundary_entropy_flux) * dt;
        productions.push(pair[1].total_entropy - pair[0].total_entropy + outflow);
    }
    Ok(productions)
}

/// Residual of a lake at rest: the largest |u| and the spread (max - min) of
/// the velocity-free total head across the cells. Both vanish for an exact
/// discrete equilibrium.
pub fn still_water_residual(
    states: &[FlowState],
    mesh: &Mesh,
    consts: &FluidConstants,
) -> Result<(f64, f64)> {
    let mut max_abs_velocity = 0.0f64;
    let mut pot_min = f64::INFINITY;
    let mut pot_max = f64::NEG_INFINITY;
    for (state, geom) in states.iter().zip(&mesh.cells) {
        max_abs_velocity = max_abs_velocity.max(state.velocity().abs());
        let resting = FlowState::new(state.area, 0.0, state.regime);
        let pot = total_head(&resting, geom, consts)?;
        pot_min = pot_min.min(pot);
        pot_max = pot_max.max(pot);
    }
    Ok((max_abs_velocity, pot_max - pot_min))
}

/// Pressurization surge at one probe cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurgeMetrics {
    /// Largest A/S seen at the probe [-].
    pub peak_ratio: f64,
    /// Oscillation period [s] from the mean gap between successive
    /// crossings of A/S = 1; None when the probe never oscillates.
    pub period: Option<f64>,
}

/// Extract surge metrics from the trajectory at the given probe cell.
pub fn surge_metrics(
    trajectory: &Trajectory,
    mesh: &Mesh,
    probe: usize,
) -> Result<SurgeMetrics> {
    let n = mesh.cells.len();
    if probe >= n {
        return Err(Error::ProbeOutOfRange { probe, cells: n });
    }
    let section = mesh.cells[probe].section_area;
    let ratios: Vec<f64> =
        trajectory.snapshots.iter().map(|row| row[probe].area / section).collect();
    let peak_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // Sign-change detector that tolerates samples sitting exactly on
    // A/S = 1 (which happens whenever the deviation rounds below one ulp):
    // exact zeros are skipped, and a crossing is interpolated between the
    // nearest samples with opposite nonzero signs.
    let mut crossings = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (k, ratio) in ratios.iter().enumerate() {
        let a = ratio - 1.0;
        if a == 0.0 {
            continue;
        }
        let t = trajectory.times[k];
        if let Some((t0, a0)) = last {
            if (a0 > 0.0) != (a > 0.0) {
                crossings.push(t0 + (t - t0) * a0 / (a0 - a));
            }
        }
        last = Some((t, a));
    }
    let period = if crossings.len() >= 3 {
        let first = crossings[0];
        let last = crossings[crossings.len() - 1];
        Some(2.0 * (last - first) / (crossings.len() - 1) as f64)
    } else {
        None
    };
    Ok(SurgeMetrics { peak_ratio, period })
}

/// Leftmost and rightmost pressurized cells, if any: the extent of the
/// pressurized region.
pub fn pressurized_extent(states: &[FlowState]) -> Option<(usize, usize)> {
    let mut lo = None;
    let mut hi = None;
    for (i, s) in states.iter().enumerate() {
        if s.regime == crate::closures::Regime::Pressurized {
            if lo.is_none() {
                lo = Some(i);
            }
            hi = Some(i);
        }
    }
    Some((lo?, hi?))
}
