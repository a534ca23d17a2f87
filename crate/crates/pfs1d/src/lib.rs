//! One-dimensional finite-volume simulation of mixed free-surface and
//! pressurized flow in closed circular pipes.
//!
//! The library models a pipe whose axis may rise, fall, and bend, and whose
//! circular section may vary along the way. Each computational cell carries
//! the conservative pair (wet area, discharge) together with a regime flag:
//! free-surface cells behave like an open channel, pressurized cells like a
//! compressible water column, and a single mixed pressure law joins the two
//! regimes continuously where the section runs full. An explicit Rusanov
//! scheme advances the coupled system, handles regime transitions cell by
//! cell, and tracks mass, mechanical energy, and head diagnostics.
//!
//! Start with [`geometry::PipeProfile`] to describe the pipe, build a
//! [`solver::Mesh`], and drive a run through [`config::SimConfig`] and
//! [`solver::run`]; the `examples/` directory walks through every major
//! capability.

pub mod closures;
pub mod config;
pub mod convergence;
pub mod diagnostics;
pub mod error;
pub mod geometry;
pub mod output;
pub mod solver;
pub mod sources;

pub use closures::{FlowState, FluidConstants, Regime};
pub use error::{Error, Result};
pub use geometry::{CellGeometry, CircularSection, PipeProfile, ProfileSample};
pub use solver::{BoundaryCondition, Mesh, RunResult, Trajectory};
