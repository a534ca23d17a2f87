//! Interface flux: a Rusanov (local Lax-Friedrichs) approximation of the
//! coupled free-surface/pressurized system.
//!
//! Each side of an interface is evaluated with its own regime and its own
//! section geometry, so the flux remains well defined across a transition
//! front and across a change of pipe radius.

use crate::closures::{pressure, sound_speed, FlowState, FluidConstants};
use crate::error::Result;
use crate::geometry::CellGeometry;

/// Physical flux (Q, Q u + p) of one side, given its pressure.
fn physical_flux(state: &FlowState, p: f64) -> (f64, f64) {
    let u = state.velocity();
    (state.discharge, state.discharge * u + p)
}

/// Rusanov flux from fully evaluated side data. Returns the two flux
/// components and the spread speed used for the dissipation.
pub(crate) fn rusanov(
    left: &FlowState,
    p_left: f64,
    c_left: f64,
    right: &FlowState,
    p_right: f64,
    c_right: f64,
) -> (f64, f64, f64) {
    let speed = (left.velocity().abs() + c_left).max(right.velocity().abs() + c_right);
    let (fl_a, fl_q) = physical_flux(left, p_left);
    let (fr_a, fr_q) = physical_flux(right, p_right);
    let f_area = 0.5 * (fl_a + fr_a) - 0.5 * speed * (right.area - left.area);
    let f_momentum = 0.5 * (fl_q + fr_q) - 0.5 * speed * (right.discharge - left.discharge);
    (f_area, f_momentum, speed)
}

/// Numerical flux across one interface, evaluating pressure and celerity on
/// each side with that side's own regime and geometry.
pub fn interface_flux(
    left: &FlowState,
    geom_left: &CellGeometry,
    right: &FlowState,
    geom_right: &CellGeometry,
    consts: &FluidConstants,
) -> Result<(f64, f64)> {
    let p_left = pressure(left, geom_left, consts)?;
    let p_right = pressure(right, geom_right, consts)?;
    let c_left = sound_speed(left, geom_left, consts)?;
    let c_right = sound_speed(right, geom_right, consts)?;
    let (f_area, f_momentum, _) = rusanov(left, p_left, c_left, right, p_right, c_right);
    Ok((f_area, f_momentum))
}
