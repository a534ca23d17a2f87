//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; its `Display` form is a single
//! line of the shape `category: detail`, which the command-line front end
//! forwards verbatim to stderr.

use std::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Profile samples are unusable (non-increasing x, non-positive radius,
    /// too few samples, non-finite entries).
    InvalidProfile {
        /// Index of the offending sample, where applicable.
        index: usize,
        reason: String,
    },
    /// The discrete curvature check failed: the pipe axis bends more tightly
    /// than the local section radius.
    CurvatureTooTight {
        /// Index of the middle sample of the offending triple.
        index: usize,
        /// Curvature radius estimated from three consecutive samples [m].
        axis_radius: f64,
        /// Section radius at that sample [m].
        section_radius: f64,
    },
    /// A height or level argument lies outside the section [-R, R].
    LevelOutOfRange { value: f64, radius: f64 },
    /// An area argument lies outside the admissible range for the operation.
    AreaOutOfRange { value: f64, bound: f64 },
    /// A free-surface state carries more water than the section holds
    /// (regime flag says free surface but A > S).
    InconsistentState { area: f64, section_area: f64 },
    /// Free-surface sound speed is undefined: the surface width vanished.
    SurfaceWidthVanished { area: f64 },
    /// A root solve (level from area, arc-length inversion) did not converge.
    RootSolveStalled { detail: String },
    /// A physical constant is out of range (non-positive density, gravity...).
    InvalidConstant { name: &'static str, value: f64 },
    /// Curvilinear position outside the meshed pipe.
    PositionOutOfRange { value: f64, lo: f64, hi: f64 },
    /// A state or flux became non-finite during time stepping.
    NonFinite { step: usize, cell: usize, what: &'static str },
    /// Wet area fell below the dry floor and could not be recovered.
    PositivityLost { step: usize, cell: usize, area: f64 },
    /// Time step collapsed to zero (sound speed blow-up or bad CFL input).
    TimeStepCollapsed { dt: f64 },
    /// Configuration file problem: unknown key, bad value, missing key.
    Config { key: String, reason: String },
    /// Unknown preset name.
    UnknownPreset { name: String },
    /// A probe index points outside the mesh.
    ProbeOutOfRange { probe: usize, cells: usize },
    /// Requested refinement levels unusable for the convergence harness.
    BadRefinementLevels { reason: String },
    /// Underlying I/O failure (message keeps the path).
    Io { path: String, detail: String },
    /// Command-line usage error.
    Usage { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidProfile { index, reason } => {
                write!(f, "profile: sample {index}: {reason}")
            }
            Error::CurvatureTooTight { index, axis_radius, section_radius } => write!(
                f,
                "profile: sample {index}: axis curvature radius {axis_radius:.6e} m \
                 is not larger than the section radius {section_radius:.6e} m"
            ),
            Error::LevelOutOfRange { value, radius } => write!(
                f,
                "geometry: level {value:.6e} m outside the section [-{radius:.6e}, {radius:.6e}]"
            ),
            Error::AreaOutOfRange { value, bound } => write!(
                f,
                "geometry: area {value:.6e} m^2 outside the admissible range [0, {bound:.6e}]"
            ),
            Error::InconsistentState { area, section_area } => write!(
                f,
                "state: free-surface regime with area {area:.6e} m^2 \
                 exceeding the section area {section_area:.6e} m^2"
            ),
            Error::SurfaceWidthVanished { area } => write!(
                f,
                "state: free-surface sound speed undefined at area {area:.6e} m^2 \
                 (surface width is zero)"
            ),
            Error::RootSolveStalled { detail } => write!(f, "root solve: {detail}"),
            Error::InvalidConstant { name, value } => {
                write!(f, "constants: {name} = {value:.6e} is out of range")
            }
            Error::PositionOutOfRange { value, lo, hi } => write!(
                f,
                "geometry: curvilinear position {value:.6e} m outside the pipe [{lo:.6e}, {hi:.6e}]"
            ),
            Error::NonFinite { step, cell, what } => {
                write!(f, "solver: non-finite {what} at step {step}, cell {cell}")
            }
            Error::PositivityLost { step, cell, area } => write!(
                f,
                "solver: wet area {area:.6e} m^2 below the dry floor at step {step}, cell {cell}"
            ),
            Error::TimeStepCollapsed { dt } => {
                write!(f, "solver: time step collapsed to {dt:.6e} s")
            }
            Error::Config { key, reason } => write!(f, "config: {key}: {reason}"),
            Error::UnknownPreset { name } => write!(f, "config: unknown preset '{name}'"),
            Error::ProbeOutOfRange { probe, cells } => {
                write!(f, "diagnostics: probe index {probe} outside the mesh of {cells} cells")
            }
            Error::BadRefinementLevels { reason } => write!(f, "convergence: {reason}"),
            Error::Io { path, detail } => write!(f, "io: {path}: {detail}"),
            Error::Usage { detail } => write!(f, "usage: {detail}"),
        }
    }
}

impl std::error::Error for Error {}
