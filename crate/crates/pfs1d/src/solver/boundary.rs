//! Boundary conditions expressed through ghost states.
//!
//! Each end of the pipe gets one ghost cell whose state is built from the
//! adjacent interior cell; the numerical flux across the boundary interface
//! is then computed exactly like any interior flux.

use crate::closures::{FlowState, Regime};
use crate::error::{Error, Result};
use crate::geometry::CellGeometry;

/// Boundary condition at one end of the pipe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryCondition {
    /// Solid wall: mirror the adjacent state with reversed discharge.
    Wall,
    /// Free-surface reservoir holding a fixed water level [m above the pipe
    /// axis]; must sit strictly between invert and crown.
    ReservoirLevel { level: f64 },
    /// Pressurized reservoir holding a fixed density ratio A/S [-].
    ReservoirRatio { ratio: f64 },
    /// Prescribed discharge [m^3/s]; the wet area is copied from inside.
    Discharge { discharge: f64 },
    /// Prescribed discharge until close_time [s], a solid wall afterwards.
    Valve { discharge: f64, close_time: f64 },
}

/// Ghost state for one boundary at the given time, built from the adjacent
/// interior state and that cell's geometry.
pub fn ghost_state(
    bc: &BoundaryCondition,
    adjacent: &FlowState,
    geom: &CellGeometry,
    time: f64,
) -> Result<FlowState> {
    match *bc {
        BoundaryCondition::Wall => {
            Ok(FlowState::new(adjacent.area, -adjacent.discharge, adjacent.regime))
        }
        BoundaryCondition::ReservoirLevel { level } => {
            let area = geom.section().wet_area(level)?;
            if !(area > 0.0) {
                return Err(Error::LevelOutOfRange { value: level, radius: geom.radius });
            }
            if !(level < geom.radius) {
                // At the crown the free-surface celerity blows up; a full
                // reservoir must be prescribed as a pressure ratio instead.
                return Err(Error::LevelOutOfRange { value: level, radius: geom.radius });
            }
            Ok(FlowState::new(area, adjacent.discharge, Regime::FreeSurface))
        }
        BoundaryCondition::ReservoirRatio { ratio } => {
            if !(ratio > 0.0) {
                return Err(Error::AreaOutOfRange {
                    value: ratio * geom.section_area,
                    bound: geom.section_area,
                });
            }
            Ok(FlowState::new(ratio * geom.section_area, adjacent.discharge, Regime::Pressurized))
        }
        BoundaryCondition::Discharge { discharge } => {
            Ok(FlowState::new(adjacent.area, discharge, adjacent.regime))
        }
        BoundaryCondition::Valve { discharge, close_time } => {
            if time < close_time {
                Ok(FlowState::new(adjacent.area, discharge, adjacent.regime))
            } else {
                Ok(FlowState::new(adjacent.area, -adjacent.discharge, adjacent.regime))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cell() -> CellGeometry {
        CellGeometry {
            arc_center: 0.5,
            radius: 1.0,
            section_area: PI,
            d_section_area: 0.0,
            sin_theta: 0.0,
            cos_theta: 1.0,
            d_cos_theta: 0.0,
            d_elevation: 0.0,
            elevation: 0.0,
        }
    }

    #[test]
    fn wall_mirrors_with_reversed_discharge() {
        let inner = FlowState::new(1.2 * PI, 0.7, Regime::Pressurized);
        let g = ghost_state(&BoundaryCondition::Wall, &inner, &cell(), 0.0).unwrap();
        assert_eq!(g.area, inner.area);
        assert_eq!(g.discharge, -inner.discharge);
        assert_eq!(g.regime, inner.regime);
    }

    #[test]
    fn level_reservoir_fixes_the_area_and_copies_the_discharge() {
        let inner = FlowState::new(0.3 * PI, 0.4, Regime::FreeSurface);
        let bc = BoundaryCondition::ReservoirLevel { level: 0.0 };
        let g = ghost_state(&bc, &inner, &cell(), 0.0).unwrap();
        assert!((g.area - PI / 2.0).abs() <= 1e-12);
        assert_eq!(g.discharge, inner.discharge);
        assert_eq!(g.regime, Regime::FreeSurface);
    }

    #[test]
    fn level_reservoir_rejects_levels_outside_the_section() {
        let inner = FlowState::new(0.3 * PI, 0.0, Regime::FreeSurface);
        for level in [-1.0, -2.0, 1.0, 3.0] {
            let bc = BoundaryCondition::ReservoirLevel { level };
            assert!(
                ghost_state(&bc, &inner, &cell(), 0.0).is_err(),
                "level {level} should be rejected"
            );
        }
    }

    #[test]
    fn ratio_reservoir_is_pressurized() {
        let inner = FlowState::new(PI, -2.0, Regime::Pressurized);
        let bc = BoundaryCondition::ReservoirRatio { ratio: 1.02 };
        let g = ghost_state(&bc, &inner, &cell(), 0.0).unwrap();
        assert!((g.area - 1.02 * PI).abs() <= 1e-12);
        assert_eq!(g.discharge, inner.discharge);
        assert_eq!(g.regime, Regime::Pressurized);
        assert!(ghost_state(&BoundaryCondition::ReservoirRatio { ratio: 0.0 }, &inner, &cell(), 0.0)
            .is_err());
    }

    #[test]
    fn discharge_boundary_copies_the_area() {
        let inner = FlowState::new(0.8 * PI, 0.1, Regime::FreeSurface);
        let bc = BoundaryCondition::Discharge { discharge: 2.5 };
        let g = ghost_state(&bc, &inner, &cell(), 10.0).unwrap();
        assert_eq!(g.area, inner.area);
        assert_eq!(g.discharge, 2.5);
        assert_eq!(g.regime, inner.regime);
    }

    #[test]
    fn valve_switches_from_discharge_to_wall_at_close_time() {
        let inner = FlowState::new(PI, 3.0, Regime::Pressurized);
        let bc = BoundaryCondition::Valve { discharge: 3.0, close_time: 5.0 };
        let before = ghost_state(&bc, &inner, &cell(), 4.999).unwrap();
        assert_eq!(before.discharge, 3.0);
        assert_eq!(before.area, inner.area);
        let after = ghost_state(&bc, &inner, &cell(), 5.0).unwrap();
        assert_eq!(after.discharge, -inner.discharge);
        assert_eq!(after.area, inner.area);
    }
}
