//! Explicit finite-volume solver: mesh construction, CFL time step, the
//! Rusanov update with centered sources, regime-indicator transitions, and
//! the time loop driving a whole run.

mod boundary;
mod flux;

pub use boundary::{ghost_state, BoundaryCondition};
pub use flux::interface_flux;

use crate::closures::{
    physical_wet_area, pressure, sound_speed, FlowState, FluidConstants, Regime,
};
use crate::config::SimConfig;
use crate::diagnostics::{self, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::geometry::{CellGeometry, PipeProfile};
use crate::sources::{curvature_term, pressure_source_term, slope_term};

/// Relative dry floor: cells are never drained below this fraction of the
/// section area; a cell at the floor also has its discharge zeroed, so dry
/// stretches stay at rest instead of dividing by a vanishing area.
pub const DRY_FLOOR_FRACTION: f64 = 1e-10;

/// Uniform curvilinear mesh over a pipe profile.
#[derive(Debug, Clone)]
pub struct Mesh {
    /// Per-cell geometry, evaluated at cell centers.
    pub cells: Vec<CellGeometry>,
    /// Cell width along the axis [m].
    pub dx: f64,
    /// Total curvilinear length [m].
    pub length: f64,
}

impl Mesh {
    /// Split the profile into `n_cells` equal curvilinear cells and sample
    /// the geometry at every cell center.
    pub fn from_profile(profile: &PipeProfile, n_cells: usize) -> Result<Mesh> {
        if n_cells == 0 {
            return Err(Error::Config {
                key: "mesh.cells".into(),
                reason: "at least one cell is required".into(),
            });
        }
        let length = profile.length();
        let dx = length / n_cells as f64;
        let mut cells = Vec::with_capacity(n_cells);
        for i in 0..n_cells {
            let center = (i as f64 + 0.5) * dx;
            cells.push(profile.geometry_at(center)?);
        }
        Ok(Mesh { cells, dx, length })
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    /// Cell centers along the axis [m].
    pub fn centers(&self) -> Vec<f64> {
        self.cells.iter().map(|c| c.arc_center).collect()
    }
}

/// Largest stable time step [s]: cfl * dx / max(|u| + c) over all cells.
pub fn cfl_dt(states: &[FlowState], mesh: &Mesh, consts: &FluidConstants, cfl: f64) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::InvalidConstant { name: "cfl", value: cfl });
    }
    assert_eq!(states.len(), mesh.cells.len(), "one state per mesh cell");
    let mut max_speed = 0.0f64;
    for (state, geom) in states.iter().zip(&mesh.cells) {
        let c = sound_speed(state, geom, consts)?;
        max_speed = max_speed.max(state.velocity().abs() + c);
    }
    if !max_speed.is_finite() {
        return Err(Error::TimeStepCollapsed { dt: f64::NAN });
    }
    Ok(cfl * mesh.dx / max_speed)
}

/// Regime indicators after a conservative update, from the new areas and the
/// previous indicators.
///
/// A cell that reaches the section area is pressurized. A cell below it
/// keeps a free surface if it already had one; a pressurized cell below the
/// section area depressurizes only next to an in-domain free-surface
/// neighbor, so a pressurized column can only unglue from its ends — an
/// interior depression stays a (possibly cavitating) pressurized pocket.
pub fn update_indicator(areas: &[f64], old: &[Regime], mesh: &Mesh) -> Vec<Regime> {
    let n = areas.len();
    assert_eq!(n, old.len(), "one indicator per area");
    assert_eq!(n, mesh.cells.len(), "one area per mesh cell");
    let mut new = Vec::with_capacity(n);
    for i in 0..n {
        let regime = if areas[i] >= mesh.cells[i].section_area {
            Regime::Pressurized
        } else if old[i] == Regime::FreeSurface {
            Regime::FreeSurface
        } else {
            let left_free = i > 0 && old[i - 1] == Regime::FreeSurface;
            let right_free = i + 1 < n && old[i + 1] == Regime::FreeSurface;
            if left_free || right_free {
                Regime::FreeSurface
            } else {
                Regime::Pressurized
            }
        };
        new.push(regime);
    }
    new
}

/// One forward-Euler step of length `dt` starting at time `time`.
///
/// Stages: ghost states, Rusanov fluxes, conservative update with centered
/// slope/section/curvature sources, positivity guard, indicator update, and
/// a semi-implicit friction solve (skipped entirely when frictionless).
/// `step_index` only labels errors.
#[allow(clippy::too_many_arguments)]
pub fn step(
    states: &[FlowState],
    mesh: &Mesh,
    consts: &FluidConstants,
    bc_left: &BoundaryCondition,
    bc_right: &BoundaryCondition,
    time: f64,
    dt: f64,
    step_index: usize,
) -> Result<Vec<FlowState>> {
    let n = states.len();
    assert_eq!(n, mesh.cells.len(), "one state per mesh cell");
    let first = &mesh.cells[0];
    let last = &mesh.cells[n - 1];

    // Extended state row: ghost, interior cells, ghost. Ghosts reuse the
    // adjacent cell's geometry.
    let mut ext = Vec::with_capacity(n + 2);
    ext.push(ghost_state(bc_left, &states[0], first, time)?);
    ext.extend_from_slice(states);
    ext.push(ghost_state(bc_right, &states[n - 1], last, time)?);
    let geom_of = |k: usize| -> &CellGeometry {
        &mesh.cells[k.clamp(1, n) - 1]
    };

    // Pressure and celerity per extended cell, then one flux per interface.
    let mut side = Vec::with_capacity(n + 2);
    for (k, state) in ext.iter().enumerate() {
        let geom = geom_of(k);
        side.push((pressure(state, geom, consts)?, sound_speed(state, geom, consts)?));
    }
    let mut fluxes = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (p_l, c_l) = side[k];
        let (p_r, c_r) = side[k + 1];
        let (fa, fq, _) = flux::rusanov(&ext[k], p_l, c_l, &ext[k + 1], p_r, c_r);
        fluxes.push((fa, fq));
    }

    // Conservative update with centered sources (friction comes later).
    let r = dt / mesh.dx;
    let mut new_areas = Vec::with_capacity(n);
    let mut new_discharges = Vec::with_capacity(n);
    for i in 0..n {
        let geom = &mesh.cells[i];
        let state = &states[i];
        let explicit = slope_term(state, geom, consts) + pressure_source_term(state, geom, consts)?
            - curvature_term(state, geom, consts)?;
        let mut a = state.area - r * (fluxes[i + 1].0 - fluxes[i].0);
        let mut q = state.discharge - r * (fluxes[i + 1].1 - fluxes[i].1) + dt * explicit;
        if !a.is_finite() {
            return Err(Error::NonFinite { step: step_index, cell: i, what: "area" });
        }
        if !q.is_finite() {
            return Err(Error::NonFinite { step: step_index, cell: i, what: "discharge" });
        }
        let floor = DRY_FLOOR_FRACTION * geom.section_area;
        if a < -0.1 * geom.section_area {
            // Far below empty: the scheme has blown up, do not mask it.
            return Err(Error::PositivityLost { step: step_index, cell: i, area: a });
        }
        if a < floor {
            a = floor;
            q = 0.0;
        }
        new_areas.push(a);
        new_discharges.push(q);
    }

    // Regime transitions from the new areas and old indicators.
    let old: Vec<Regime> = states.iter().map(|s| s.regime).collect();
    let regimes = update_indicator(&new_areas, &old, mesh);

    // Semi-implicit Strickler friction: u <- u* / (1 + dt g K |u*|), which
    // can slow the flow but never reverse it.
    if consts.strickler.is_finite() {
        for i in 0..n {
            let geom = &mesh.cells[i];
            let a = new_areas[i];
            let phys = physical_wet_area(a, regimes[i], geom.section_area)?;
            let (_, rh) = geom.section().hydraulic_radius(phys)?;
            let k = consts.friction_coefficient(rh);
            let u_star = new_discharges[i] / a;
            let u = u_star / (1.0 + dt * consts.gravity * k * u_star.abs());
            new_discharges[i] = a * u;
        }
    }

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        debug_assert!(
            regimes[i] == Regime::Pressurized || new_areas[i] < mesh.cells[i].section_area,
            "free-surface cell {i} above the section area"
        );
        out.push(FlowState::new(new_areas[i], new_discharges[i], regimes[i]));
    }
    Ok(out)
}

/// Time history of a run: snapshot times, the state rows at those times, and
/// one diagnostics record per snapshot.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Snapshot times [s], starting at 0.
    pub times: Vec<f64>,
    /// One full state row per snapshot time.
    pub snapshots: Vec<Vec<FlowState>>,
    /// Scalar diagnostics per snapshot.
    pub records: Vec<DiagnosticsRecord>,
}

impl Trajectory {
    /// Final state row.
    pub fn last(&self) -> &[FlowState] {
        self.snapshots.last().expect("a trajectory always holds its initial snapshot")
    }
}

/// Everything produced by one run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub trajectory: Trajectory,
    pub mesh: Mesh,
    pub constants: FluidConstants,
    /// Number of time steps taken.
    pub steps: usize,
}

/// Run a full simulation described by a configuration: build the profile and
/// mesh, set the initial state, then advance with CFL-limited steps until
/// `t_end`, snapshotting on the output cadence (cadence 0 = every step).
/// The final time is always reached exactly and always snapshotted.
pub fn run(config: &SimConfig) -> Result<RunResult> {
    config.validate()?;
    let profile = config.build_profile()?;
    let mesh = Mesh::from_profile(&profile, config.cells)?;
    let consts = config.fluid_constants()?;
    let mut states = config.initial_states(&mesh)?;

    // Normalize indicators once, so hand-written initial data with a full
    // area but a free-surface flag starts in a consistent regime.
    let areas: Vec<f64> = states.iter().map(|s| s.area).collect();
    let old: Vec<Regime> = states.iter().map(|s| s.regime).collect();
    for (state, regime) in states.iter_mut().zip(update_indicator(&areas, &old, &mesh)) {
        state.regime = regime;
    }

    let record = |states: &[FlowState], time: f64| -> Result<DiagnosticsRecord> {
        diagnostics::record(states, &mesh, &consts, &config.bc_left, &config.bc_right, time)
    };

    let mut times = vec![0.0];
    let mut snapshots = vec![states.clone()];
    let mut records = vec![record(&states, 0.0)?];
    let cadence = config.output_cadence;
    let mut next_mark = cadence;
    let mut t = 0.0;
    let mut steps = 0usize;
    while t < config.t_end {
        let remaining = config.t_end - t;
        if remaining <= 1e-12 * config.t_end.max(1.0) {
            break;
        }
        let mut dt = cfl_dt(&states, &mesh, &consts, config.cfl)?;
        if dt > remaining {
            dt = remaining;
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::TimeStepCollapsed { dt });
        }
        states = step(&states, &mesh, &consts, &config.bc_left, &config.bc_right, t, dt, steps)?;
        t += dt;
        steps += 1;
        let final_step = dt >= remaining;
        let due = cadence == 0.0 || final_step || t + 1e-9 * cadence >= next_mark;
        if due {
            times.push(t);
            snapshots.push(states.clone());
            records.push(record(&states, t)?);
            if cadence > 0.0 {
                while next_mark <= t + 1e-9 * cadence {
                    next_mark += cadence;
                }
            }
        }
        if final_step {
            break;
        }
    }

    Ok(RunResult {
        trajectory: Trajectory { times, snapshots, records },
        mesh,
        constants: consts,
        steps,
    })
}
