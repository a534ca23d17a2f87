//! Momentum source terms: bed slope, section-variation pressure source,
//! axis-curvature correction, and Strickler friction.
//!
//! All terms are evaluated pointwise from a cell state and the local
//! geometry; the solver applies them with a centered (cell-wise) rule, which
//! keeps a lake at rest exactly at rest because every term below is
//! identically zero there.

use crate::closures::{physical_wet_area, water_level, FlowState, FluidConstants};
use crate::error::Result;
use crate::geometry::CellGeometry;

/// The four momentum sources of one cell, each as written on the right-hand
/// side of the momentum balance [m^3/s^2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceBreakdown {
    /// Bed slope term -g A dZ/dX; negative uphill.
    pub slope: f64,
    /// Pressure source from section variation:
    /// c^2 (A/phys - 1) dS/dX + g I2(level) cos(theta).
    pub pressure_source: f64,
    /// Axis curvature correction g A centroid d(cos theta)/dX (subtracted).
    pub curvature: f64,
    /// Strickler friction g K Q |Q| / A (subtracted).
    pub friction: f64,
    /// slope + pressure_source - curvature - friction.
    pub total: f64,
}

/// Bed slope term -g A dZ/dX [m^3/s^2].
pub fn slope_term(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> f64 {
    -consts.gravity * state.area * geom.d_elevation
}

/// Pressure source from the section variation [m^3/s^2].
///
/// The acoustic part c^2 (A/phys - 1) dS/dX vanishes identically under a
/// free surface (the ratio is exactly one); the hydrostatic part is the
/// wall-reaction integral I2 at the physical water level.
pub fn pressure_source_term(
    state: &FlowState,
    geom: &CellGeometry,
    consts: &FluidConstants,
) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let level = water_level(state.area, state.regime, geom)?;
    let acoustic = consts.celerity_squared() * (state.area / phys - 1.0) * geom.d_section_area;
    let i2 = geom.section().pressure_source_integral(level)?;
    Ok(acoustic + consts.gravity * i2 * geom.cos_theta)
}

/// Axis curvature correction g A centroid d(cos theta)/dX [m^3/s^2].
///
/// Zero along a straight axis and for any full section (whose pressure
/// centroid sits on the axis).
pub fn curvature_term(
    state: &FlowState,
    geom: &CellGeometry,
    consts: &FluidConstants,
) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let level = water_level(state.area, state.regime, geom)?;
    let centroid = geom.section().centroid_height(phys, level)?;
    Ok(consts.gravity * state.area * centroid * geom.d_cos_theta)
}

/// Strickler friction g K Q |Q| / A with K = 1/(Ks^2 Rh^(4/3)) [m^3/s^2];
/// the hydraulic radius is that of the physical wetted area. Exactly zero
/// in the frictionless setting.
pub fn friction_term(
    state: &FlowState,
    geom: &CellGeometry,
    consts: &FluidConstants,
) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let (_, rh) = geom.section().hydraulic_radius(phys)?;
    let k = consts.friction_coefficient(rh);
    Ok(consts.gravity * k * state.discharge * state.discharge.abs() / state.area)
}

/// All four sources plus their signed total.
pub fn momentum_sources(
    state: &FlowState,
    geom: &CellGeometry,
    consts: &FluidConstants,
) -> Result<SourceBreakdown> {
    let slope = slope_term(state, geom, consts);
    let pressure_source = pressure_source_term(state, geom, consts)?;
    let curvature = curvature_term(state, geom, consts)?;
    let friction = friction_term(state, geom, consts)?;
    Ok(SourceBreakdown {
        slope,
        pressure_source,
        curvature,
        friction,
        total: slope + pressure_source - curvature - friction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closures::Regime;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn cell(radius: f64) -> CellGeometry {
        CellGeometry {
            arc_center: 0.0,
            radius,
            section_area: PI * radius * radius,
            d_section_area: 0.0,
            sin_theta: 0.0,
            cos_theta: 1.0,
            d_cos_theta: 0.0,
            d_elevation: 0.0,
            elevation: 0.0,
        }
    }

    fn consts() -> FluidConstants {
        FluidConstants::default()
    }

    #[test]
    fn slope_term_on_an_incline() {
        // Unit area on a 30-degree climb.
        let mut g = cell(1.0);
        g.sin_theta = 0.5;
        g.cos_theta = 0.75f64.sqrt();
        g.d_elevation = 0.5;
        let state = FlowState::new(1.0, 0.0, Regime::FreeSurface);
        let got = slope_term(&state, &g, &consts());
        assert!((got - (-4.905)).abs() <= 1e-12);
    }

    #[test]
    fn pressure_source_in_a_widening_pipe() {
        let c = consts();
        // Free surface at the crown of a widening pipe: purely hydrostatic,
        // g * I2(R) with I2(R) = 2 dR/dX R^2 * pi/2.
        let mut g = cell(1.0);
        let d_radius = 0.1;
        g.d_section_area = 2.0 * PI * g.radius * d_radius;
        let full_fs = FlowState::new(PI, 0.0, Regime::FreeSurface);
        let got = pressure_source_term(&full_fs, &g, &c).unwrap();
        let want = 9.81 * 0.2 * PI;
        assert!((got - want).abs() <= 1e-10 * want, "got {got}, want {want}");
        // Pressurized with one percent overpressure: the acoustic part rides
        // on top of the same hydrostatic integral.
        let over = FlowState::new(1.01 * PI, 0.0, Regime::Pressurized);
        let got = pressure_source_term(&over, &g, &c).unwrap();
        let want = c.celerity_squared() * 0.01 * g.d_section_area + 9.81 * 0.2 * PI;
        assert!((got - want).abs() <= 1e-9 * want.abs(), "got {got}, want {want}");
    }

    #[test]
    fn acoustic_pressure_source_vanishes_under_a_free_surface() {
        let c = consts();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let mut g = cell(rng.gen_range(0.2..2.0));
            g.d_section_area = rng.gen_range(-0.5..0.5);
            let a = rng.gen_range(0.05..0.98) * g.section_area;
            let state = FlowState::new(a, rng.gen_range(-1.0..1.0), Regime::FreeSurface);
            let level = water_level(a, Regime::FreeSurface, &g).unwrap();
            let i2 = g.section().pressure_source_integral(level).unwrap();
            let hydrostatic_only = 9.81 * i2 * g.cos_theta;
            let got = pressure_source_term(&state, &g, &c).unwrap();
            // Bitwise equal: the A/phys ratio is exactly one, so the acoustic
            // part contributes exactly zero.
            assert_eq!(got, hydrostatic_only);
        }
    }

    #[test]
    fn curvature_term_for_a_half_full_bend() {
        // Half-full section, cos(theta) varying at 0.05 per meter. The
        // pressure centroid of a half circle sits 4/(3 pi) below the axis.
        let mut g = cell(1.0);
        g.d_cos_theta = 0.05;
        let state = FlowState::new(PI / 2.0, 0.0, Regime::FreeSurface);
        let got = curvature_term(&state, &g, &consts()).unwrap();
        let want = 9.81 * (PI / 2.0) * (-4.0 / (3.0 * PI)) * 0.05;
        assert!((got - want).abs() <= 1e-10 * want.abs(), "got {got}, want {want}");
        assert!((want - (-0.327)).abs() <= 1e-3);
    }

    #[test]
    fn curvature_term_is_zero_for_full_sections() {
        // A full section's pressure centroid is on the axis, so bends do not
        // push on it.
        let mut g = cell(1.0);
        g.d_cos_theta = 0.05;
        let over = FlowState::new(1.3 * PI, 0.0, Regime::Pressurized);
        let got = curvature_term(&over, &g, &consts()).unwrap();
        assert!(got.abs() <= 1e-12);
    }

    #[test]
    fn friction_term_for_a_full_pipe() {
        let c = FluidConstants::new(1000.0, 5e-10, 9.81, 100.0).unwrap();
        let g = cell(1.0);
        // Full pipe, unit velocity: Rh = R/2, K = 1/(Ks^2 (R/2)^(4/3)).
        let state = FlowState::new(PI, PI, Regime::Pressurized);
        let got = friction_term(&state, &g, &c).unwrap();
        let want = 9.81 * PI / (1e4 * 0.5f64.powf(4.0 / 3.0));
        assert!((got - want).abs() <= 1e-12 * want, "got {got}, want {want}");
        assert!((want - 7.765e-3).abs() <= 1e-6);
    }

    #[test]
    fn friction_always_opposes_the_flow() {
        let c = FluidConstants::new(1000.0, 5e-10, 9.81, 40.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        for _ in 0..500 {
            let g = cell(rng.gen_range(0.2..2.0));
            let a = rng.gen_range(0.05..0.98) * g.section_area;
            let q = rng.gen_range(-3.0..3.0) * a;
            if q == 0.0 {
                continue;
            }
            let state = FlowState::new(a, q, Regime::FreeSurface);
            let f = friction_term(&state, &g, &c).unwrap();
            // Subtracting f from the momentum balance must brake the flow.
            assert!(f * q > 0.0, "friction {f} does not oppose discharge {q}");
        }
    }

    #[test]
    fn every_source_is_exactly_zero_for_still_water_in_a_straight_pipe() {
        let g = cell(1.0);
        let state = FlowState::new(0.4 * PI, 0.0, Regime::FreeSurface);
        let b = momentum_sources(&state, &g, &consts()).unwrap();
        assert_eq!(b.slope, 0.0);
        assert_eq!(b.pressure_source, 0.0);
        assert_eq!(b.curvature, 0.0);
        assert_eq!(b.friction, 0.0);
        assert_eq!(b.total, 0.0);
    }

    #[test]
    fn total_combines_the_four_terms_with_their_signs() {
        let c = FluidConstants::new(1000.0, 5e-10, 9.81, 60.0).unwrap();
        let mut g = cell(0.8);
        g.sin_theta = 0.2;
        g.cos_theta = (1.0f64 - 0.04).sqrt();
        g.d_elevation = 0.2;
        g.d_section_area = 0.05;
        g.d_cos_theta = 0.01;
        let state = FlowState::new(0.5 * g.section_area, 0.7, Regime::FreeSurface);
        let b = momentum_sources(&state, &g, &c).unwrap();
        let want = b.slope + b.pressure_source - b.curvature - b.friction;
        assert_eq!(b.total, want);
        assert!(b.total.is_finite());
    }
}
