//! Constitutive layer: flow regime, mixed pressure law, wave speeds, total
//! head, and the entropy pair.
//!
//! A cell state is the conservative pair (wet area A, discharge Q) plus a
//! regime flag. In the free-surface regime A is the actual wetted area and
//! the pressure is hydrostatic; in the pressurized regime A is an equivalent
//! area whose deviation from the full section area measures compression of
//! the water column (A > S) or depression (A < S), and the pressure gains a
//! linear acoustic term. Both branches of every quantity below meet
//! continuously where A equals the section area.

use crate::error::{Error, Result};
use crate::geometry::CellGeometry;

/// Flow regime of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Open-channel flow with a free surface inside the pipe.
    FreeSurface,
    /// Full-section flow; the section constrains the water column.
    Pressurized,
}

impl Regime {
    /// Numeric indicator used in output files: 0 free surface, 1 pressurized.
    pub fn flag(self) -> u8 {
        match self {
            Regime::FreeSurface => 0,
            Regime::Pressurized => 1,
        }
    }
}

/// Conservative state of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState {
    /// Equivalent wet area A [m^2].
    pub area: f64,
    /// Discharge Q = A u [m^3/s].
    pub discharge: f64,
    /// Regime indicator.
    pub regime: Regime,
}

impl FlowState {
    pub fn new(area: f64, discharge: f64, regime: Regime) -> Self {
        FlowState { area, discharge, regime }
    }

    /// Mean velocity u = Q / A [m/s].
    pub fn velocity(&self) -> f64 {
        self.discharge / self.area
    }
}

/// Physical constants of the fluid and its acoustic coupling to the pipe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidConstants {
    /// Reference density [kg/m^3].
    pub rho0: f64,
    /// Effective compressibility of the water column [m^2/N].
    pub beta0: f64,
    /// Gravitational acceleration [m/s^2].
    pub gravity: f64,
    /// Strickler friction coefficient [m^(1/3)/s]; infinity = frictionless.
    pub strickler: f64,
    /// Acoustic celerity 1/sqrt(beta0 rho0) [m/s], derived once at build.
    celerity: f64,
}

impl FluidConstants {
    /// Validate and derive the acoustic celerity.
    pub fn new(rho0: f64, beta0: f64, gravity: f64, strickler: f64) -> Result<Self> {
        if !(rho0 > 0.0) || !rho0.is_finite() {
            return Err(Error::InvalidConstant { name: "rho0", value: rho0 });
        }
        if !(beta0 > 0.0) || !beta0.is_finite() {
            return Err(Error::InvalidConstant { name: "beta0", value: beta0 });
        }
        if !(gravity > 0.0) || !gravity.is_finite() {
            return Err(Error::InvalidConstant { name: "gravity", value: gravity });
        }
        // Infinity is the documented frictionless value.
        if !(strickler > 0.0) {
            return Err(Error::InvalidConstant { name: "strickler", value: strickler });
        }
        Ok(FluidConstants { rho0, beta0, gravity, strickler, celerity: 1.0 / (beta0 * rho0).sqrt() })
    }

    /// Acoustic celerity [m/s].
    pub fn celerity(&self) -> f64 {
        self.celerity
    }

    /// Squared acoustic celerity [m^2/s^2].
    pub fn celerity_squared(&self) -> f64 {
        self.celerity * self.celerity
    }

    /// Friction coefficient K = 1 / (Ks^2 Rh^(4/3)) [s^2/m^(2/3) per meter];
    /// exactly zero for the frictionless (infinite Strickler) setting.
    pub fn friction_coefficient(&self, hydraulic_radius: f64) -> f64 {
        1.0 / (self.strickler * self.strickler * hydraulic_radius.powf(4.0 / 3.0))
    }
}

impl Default for FluidConstants {
    /// Water in a steel-lined pipe: rho0 = 1000 kg/m^3, beta0 = 5e-10 m^2/N
    /// (celerity about 1414 m/s), g = 9.81 m/s^2, frictionless.
    fn default() -> Self {
        FluidConstants::new(1000.0, 5.0e-10, 9.81, f64::INFINITY).unwrap()
    }
}

/// Physical wet area: A itself under a free surface, the full section area
/// when pressurized. Errors if a free-surface state overfills the section.
pub fn physical_wet_area(area: f64, regime: Regime, section_area: f64) -> Result<f64> {
    if !(area > 0.0) {
        return Err(Error::AreaOutOfRange { value: area, bound: section_area });
    }
    match regime {
        Regime::FreeSurface => {
            if area > section_area {
                return Err(Error::InconsistentState { area, section_area });
            }
            Ok(area)
        }
        Regime::Pressurized => Ok(section_area),
    }
}

/// Water level above the pipe axis [m]: the free-surface level under a free
/// surface, the crown R when pressurized.
pub fn water_level(area: f64, regime: Regime, geom: &CellGeometry) -> Result<f64> {
    match regime {
        Regime::FreeSurface => {
            if area > geom.section_area {
                return Err(Error::InconsistentState { area, section_area: geom.section_area });
            }
            geom.section().level_from_area(area)
        }
        Regime::Pressurized => Ok(geom.radius),
    }
}

/// Density ratio rho/rho0 = A / physical wet area [-]: exactly 1 under a
/// free surface, above 1 in overpressure, below 1 in depression.
pub fn density_ratio(area: f64, regime: Regime, geom: &CellGeometry) -> Result<f64> {
    let phys = physical_wet_area(area, regime, geom.section_area)?;
    Ok(area / phys)
}

/// Mixed pressure law [m^3/s^2 per unit density]:
/// c^2 (A - phys_area) + g I1(level) cos(theta).
///
/// The acoustic term vanishes identically under a free surface; the
/// hydrostatic term is evaluated at the physical water level, so both
/// branches agree where A equals the section area.
pub fn pressure(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let level = water_level(state.area, state.regime, geom)?;
    let i1 = geom.section().pressure_integral(level)?;
    Ok(consts.celerity_squared() * (state.area - phys) + consts.gravity * i1 * geom.cos_theta)
}

/// Local wave celerity [m/s]: sqrt(g A cos(theta) / T) under a free surface,
/// the acoustic celerity when pressurized.
///
/// Errors when a free surface touches the crown (surface width zero).
pub fn sound_speed(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> Result<f64> {
    match state.regime {
        Regime::Pressurized => Ok(consts.celerity()),
        Regime::FreeSurface => {
            if state.area > geom.section_area {
                return Err(Error::InconsistentState {
                    area: state.area,
                    section_area: geom.section_area,
                });
            }
            let width = geom.section().top_width(state.area)?;
            if !(width > 0.0) {
                return Err(Error::SurfaceWidthVanished { area: state.area });
            }
            Ok((consts.gravity * state.area * geom.cos_theta / width).sqrt())
        }
    }
}

/// Characteristic speeds (u - c, u + c) [m/s].
pub fn eigenvalues(
    state: &FlowState,
    geom: &CellGeometry,
    consts: &FluidConstants,
) -> Result<(f64, f64)> {
    let u = state.velocity();
    let c = sound_speed(state, geom, consts)?;
    Ok((u - c, u + c))
}

/// Total head [m^2/s^2]:
/// u^2/2 + c^2 ln(A/phys_area) + g level cos(theta) + g elevation.
///
/// Constant in space for a steady frictionless flow; the logarithmic term is
/// identically zero under a free surface.
pub fn total_head(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let level = water_level(state.area, state.regime, geom)?;
    let u = state.velocity();
    Ok(0.5 * u * u
        + consts.celerity_squared() * (state.area / phys).ln()
        + consts.gravity * (level * geom.cos_theta + geom.elevation))
}

/// Entropy (mechanical energy) density per unit length [m^4/s^2]:
/// Q^2/(2A) + c^2 A ln(A/phys) + c^2 S + g A (centroid cos(theta) + Z).
///
/// The c^2 S term carries no dynamics but makes the expression continuous
/// across the regime transition.
pub fn entropy(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> Result<f64> {
    let phys = physical_wet_area(state.area, state.regime, geom.section_area)?;
    let level = water_level(state.area, state.regime, geom)?;
    let centroid = geom.section().centroid_height(phys, level)?;
    let c2 = consts.celerity_squared();
    Ok(state.discharge * state.discharge / (2.0 * state.area)
        + c2 * state.area * (state.area / phys).ln()
        + c2 * geom.section_area
        + consts.gravity * state.area * (centroid * geom.cos_theta + geom.elevation))
}

/// Entropy flux [m^5/s^3]: (entropy + pressure) times velocity.
pub fn entropy_flux(state: &FlowState, geom: &CellGeometry, consts: &FluidConstants) -> Result<f64> {
    let e = entropy(state, geom, consts)?;
    let p = pressure(state, geom, consts)?;
    Ok((e + p) * state.velocity())
}
