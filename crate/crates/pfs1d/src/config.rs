//! Run configuration: a flat `section.key = value` text format with strict
//! key checking, canonical serialization, named presets for the standard
//! scenarios, and hydrostatic construction of initial states.
//!
//! Format rules: one `key = value` per line, `#` starts a comment, blank
//! lines are ignored, every key must be known and applicable, duplicates are
//! rejected. Lists (profile samples, probes) are whitespace-separated.

use crate::closures::{FluidConstants, FlowState, Regime};
use crate::error::{Error, Result};
use crate::geometry::{PipeProfile, ProfileSample};
use crate::solver::{BoundaryCondition, Mesh, DRY_FLOOR_FRACTION};

/// Default CFL number.
pub const DEFAULT_CFL: f64 = 0.9;
/// Default profile sampling resolution for the arc-length tables.
pub const DEFAULT_RESOLUTION: usize = 256;

/// Where the pipe profile comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileSource {
    /// A whitespace-separated table file: one `x elevation radius` row per
    /// line, `#` comments allowed.
    File { path: String },
    /// Inline sample arrays of equal length.
    Samples { x: Vec<f64>, elevation: Vec<f64>, radius: Vec<f64> },
}

/// How one stretch of pipe is filled at t = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionFill {
    /// Water at rest under a free surface at this elevation above the
    /// datum [m]; above the crown this becomes the pressurized column in
    /// hydrostatic equilibrium with that surface.
    SurfaceElevation(f64),
    /// Pressurized at this density ratio A/S [-].
    Ratio(f64),
}

/// One initial-condition region: everything up to `end` [m along the axis].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    /// Axis position where the region ends [m].
    pub end: f64,
    pub fill: RegionFill,
    /// Initial velocity [m/s].
    pub velocity: f64,
}

/// Initial condition of a run.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// Water at rest under one horizontal free surface [m above the datum].
    StillLevel { surface_elevation: f64 },
    /// Uniform density ratio moving at a uniform velocity, pressurized.
    UniformRatio { ratio: f64, velocity: f64 },
    /// Two still pools separated by a dam at `split` [m along the axis].
    DamBreak { split: f64, left_elevation: f64, right_elevation: f64 },
    /// Arbitrary piecewise regions ordered by their `end` positions; the
    /// last region must reach the end of the pipe.
    Regions(Vec<Region>),
}

/// Complete description of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub profile: ProfileSource,
    /// Sampling resolution for the profile's arc-length tables.
    pub resolution: usize,
    /// Number of finite-volume cells.
    pub cells: usize,
    /// Final time [s].
    pub t_end: f64,
    /// CFL number in (0, 1].
    pub cfl: f64,
    /// Snapshot cadence [s]; 0 snapshots every step.
    pub output_cadence: f64,
    pub gravity: f64,
    pub rho0: f64,
    pub beta0: f64,
    pub strickler: f64,
    pub bc_left: BoundaryCondition,
    pub bc_right: BoundaryCondition,
    pub initial: InitialCondition,
    /// Cells whose history goes to probes.csv.
    pub probes: Vec<usize>,
}

impl SimConfig {
    /// Cheap structural checks; geometry-dependent checks happen when the
    /// profile and mesh are built.
    pub fn validate(&self) -> Result<()> {
        if self.cells == 0 {
            return Err(config_err("mesh.cells", "at least one cell is required"));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(config_err("time.t_end", "must be a finite time >= 0"));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(config_err("time.cfl", "must lie in (0, 1]"));
        }
        if !(self.output_cadence >= 0.0) || !self.output_cadence.is_finite() {
            return Err(config_err("time.output_cadence", "must be a finite time >= 0"));
        }
        if self.resolution == 0 {
            return Err(config_err("pipe.resolution", "must be positive"));
        }
        self.fluid_constants()?;
        if let ProfileSource::Samples { x, elevation, radius } = &self.profile {
            if x.len() != elevation.len() || x.len() != radius.len() {
                return Err(config_err(
                    "pipe.x",
                    "pipe.x, pipe.elevation, pipe.radius need equal lengths",
                ));
            }
        }
        if let InitialCondition::Regions(regions) = &self.initial {
            if regions.is_empty() {
                return Err(config_err("init.regions", "at least one region is required"));
            }
            for pair in regions.windows(2) {
                if !(pair[1].end > pair[0].end) {
                    return Err(config_err(
                        "init.regions",
                        "region end positions must be strictly increasing",
                    ));
                }
            }
        }
        for &probe in &self.probes {
            if probe >= self.cells {
                return Err(Error::ProbeOutOfRange { probe, cells: self.cells });
            }
        }
        Ok(())
    }

    /// Build the validated fluid constants.
    pub fn fluid_constants(&self) -> Result<FluidConstants> {
        FluidConstants::new(self.rho0, self.beta0, self.gravity, self.strickler)
    }

    /// Build the pipe profile, reading the table file if necessary.
    pub fn build_profile(&self) -> Result<PipeProfile> {
        let samples = match &self.profile {
            ProfileSource::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.clone(),
                    detail: e.to_string(),
                })?;
                parse_profile_table(&text)?
            }
            ProfileSource::Samples { x, elevation, radius } => {
                if x.len() != elevation.len() || x.len() != radius.len() {
                    return Err(config_err(
                        "pipe.x",
                        "pipe.x, pipe.elevation, pipe.radius need equal lengths",
                    ));
                }
                x.iter()
                    .zip(elevation)
                    .zip(radius)
                    .map(|((&x, &elevation), &radius)| ProfileSample { x, elevation, radius })
                    .collect()
            }
        };
        PipeProfile::build(&samples, self.resolution)
    }

    /// Construct the initial state row on a mesh.
    pub fn initial_states(&self, mesh: &Mesh) -> Result<Vec<FlowState>> {
        let consts = self.fluid_constants()?;
        let states = match &self.initial {
            InitialCondition::StillLevel { surface_elevation } => mesh
                .cells
                .iter()
                .map(|geom| hydrostatic_state(*surface_elevation, 0.0, geom, &consts))
                .collect::<Result<Vec<_>>>()?,
            InitialCondition::UniformRatio { ratio, velocity } => {
                if !(*ratio > 0.0) {
                    return Err(config_err("init.ratio", "must be positive"));
                }
                mesh.cells
                    .iter()
                    .map(|geom| {
                        let area = ratio * geom.section_area;
                        FlowState::new(area, velocity * area, Regime::Pressurized)
                    })
                    .collect()
            }
            InitialCondition::DamBreak { split, left_elevation, right_elevation } => mesh
                .cells
                .iter()
                .map(|geom| {
                    let elevation =
                        if geom.arc_center <= *split { *left_elevation } else { *right_elevation };
                    hydrostatic_state(elevation, 0.0, geom, &consts)
                })
                .collect::<Result<Vec<_>>>()?,
            InitialCondition::Regions(regions) => {
                let last = regions.last().expect("validated nonempty");
                if last.end < mesh.length * (1.0 - 1e-9) {
                    return Err(config_err(
                        "init.regions",
                        "the last region must reach the end of the pipe",
                    ));
                }
                mesh.cells
                    .iter()
                    .map(|geom| {
                        let region = regions
                            .iter()
                            .find(|r| geom.arc_center <= r.end)
                            .unwrap_or(last);
                        match region.fill {
                            RegionFill::SurfaceElevation(elevation) => {
                                hydrostatic_state(elevation, region.velocity, geom, &consts)
                            }
                            RegionFill::Ratio(ratio) => {
                                if !(ratio > 0.0) {
                                    return Err(config_err("init.regions", "ratio must be positive"));
                                }
                                let area = ratio * geom.section_area;
                                Ok(FlowState::new(area, region.velocity * area, Regime::Pressurized))
                            }
                        }
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        // Promote any cell that starts at or above the section area, so the
        // first flux evaluation sees a consistent regime.
        Ok(states
            .into_iter()
            .zip(&mesh.cells)
            .map(|(mut s, geom)| {
                if s.area >= geom.section_area {
                    s.regime = Regime::Pressurized;
                }
                s
            })
            .collect())
    }

    /// Canonical text form; `parse_config` reads it back identically.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.profile {
            ProfileSource::File { path } => {
                out.push_str(&format!("pipe.file = {path}\n"));
            }
            ProfileSource::Samples { x, elevation, radius } => {
                out.push_str(&format!("pipe.x = {}\n", join_f64(x)));
                out.push_str(&format!("pipe.elevation = {}\n", join_f64(elevation)));
                out.push_str(&format!("pipe.radius = {}\n", join_f64(radius)));
            }
        }
        out.push_str(&format!("pipe.resolution = {}\n", self.resolution));
        out.push_str(&format!("mesh.cells = {}\n", self.cells));
        out.push_str(&format!("time.t_end = {:?}\n", self.t_end));
        out.push_str(&format!("time.cfl = {:?}\n", self.cfl));
        out.push_str(&format!("time.output_cadence = {:?}\n", self.output_cadence));
        out.push_str(&format!("fluid.gravity = {:?}\n", self.gravity));
        out.push_str(&format!("fluid.rho0 = {:?}\n", self.rho0));
        out.push_str(&format!("fluid.beta0 = {:?}\n", self.beta0));
        out.push_str(&format!("fluid.strickler = {:?}\n", self.strickler));
        write_bc(&mut out, "left", &self.bc_left);
        write_bc(&mut out, "right", &self.bc_right);
        match &self.initial {
            InitialCondition::StillLevel { surface_elevation } => {
                out.push_str("init.kind = still_level\n");
                out.push_str(&format!("init.surface_elevation = {surface_elevation:?}\n"));
            }
            InitialCondition::UniformRatio { ratio, velocity } => {
                out.push_str("init.kind = uniform_ratio\n");
                out.push_str(&format!("init.ratio = {ratio:?}\n"));
                out.push_str(&format!("init.velocity = {velocity:?}\n"));
            }
            InitialCondition::DamBreak { split, left_elevation, right_elevation } => {
                out.push_str("init.kind = dam_break\n");
                out.push_str(&format!("init.split = {split:?}\n"));
                out.push_str(&format!("init.left_elevation = {left_elevation:?}\n"));
                out.push_str(&format!("init.right_elevation = {right_elevation:?}\n"));
            }
            InitialCondition::Regions(regions) => {
                out.push_str("init.kind = regions\n");
                out.push_str(&format!("init.regions = {}\n", regions.len()));
                for (i, region) in regions.iter().enumerate() {
                    let p = format!("init.region{}", i + 1);
                    out.push_str(&format!("{p}.end = {:?}\n", region.end));
                    match region.fill {
                        RegionFill::SurfaceElevation(elevation) => {
                            out.push_str(&format!("{p}.fill = elevation\n"));
                            out.push_str(&format!("{p}.elevation = {elevation:?}\n"));
                        }
                        RegionFill::Ratio(ratio) => {
                            out.push_str(&format!("{p}.fill = ratio\n"));
                            out.push_str(&format!("{p}.ratio = {ratio:?}\n"));
                        }
                    }
                    out.push_str(&format!("{p}.velocity = {:?}\n", region.velocity));
                }
            }
        }
        if !self.probes.is_empty() {
            let list: Vec<String> = self.probes.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("output.probes = {}\n", list.join(" ")));
        }
        out
    }
}

/// Hydrostatic state of one cell under a horizontal free surface at
/// `surface_elevation`: a free-surface cell where the surface cuts the
/// section, the equilibrium pressurized column where it sits above the
/// crown, and a dry-floor cell where it sits below the invert.
fn hydrostatic_state(
    surface_elevation: f64,
    velocity: f64,
    geom: &crate::geometry::CellGeometry,
    consts: &FluidConstants,
) -> Result<FlowState> {
    let level = (surface_elevation - geom.elevation) / geom.cos_theta;
    if level >= geom.radius {
        // Pressure head above the crown compresses the column: the total
        // head of the column matches g * surface_elevation exactly.
        let exponent = consts.gravity
            * (surface_elevation - geom.elevation - geom.radius * geom.cos_theta)
            / consts.celerity_squared();
        let area = geom.section_area * exponent.exp();
        Ok(FlowState::new(area, velocity * area, Regime::Pressurized))
    } else if level <= -geom.radius {
        let area = DRY_FLOOR_FRACTION * geom.section_area;
        Ok(FlowState::new(area, 0.0, Regime::FreeSurface))
    } else {
        let area = geom.section().wet_area(level)?;
        let floor = DRY_FLOOR_FRACTION * geom.section_area;
        Ok(FlowState::new(area.max(floor), velocity * area, Regime::FreeSurface))
    }
}

fn config_err(key: &str, reason: &str) -> Error {
    Error::Config { key: key.into(), reason: reason.into() }
}

fn join_f64(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| format!("{v:?}")).collect();
    parts.join(" ")
}

fn write_bc(out: &mut String, side: &str, bc: &BoundaryCondition) {
    match bc {
        BoundaryCondition::Wall => {
            out.push_str(&format!("bc.{side}.kind = wall\n"));
        }
        BoundaryCondition::ReservoirLevel { level } => {
            out.push_str(&format!("bc.{side}.kind = reservoir_level\n"));
            out.push_str(&format!("bc.{side}.level = {level:?}\n"));
        }
        BoundaryCondition::ReservoirRatio { ratio } => {
            out.push_str(&format!("bc.{side}.kind = reservoir_ratio\n"));
            out.push_str(&format!("bc.{side}.ratio = {ratio:?}\n"));
        }
        BoundaryCondition::Discharge { discharge } => {
            out.push_str(&format!("bc.{side}.kind = discharge\n"));
            out.push_str(&format!("bc.{side}.discharge = {discharge:?}\n"));
        }
        BoundaryCondition::Valve { discharge, close_time } => {
            out.push_str(&format!("bc.{side}.kind = valve\n"));
            out.push_str(&format!("bc.{side}.discharge = {discharge:?}\n"));
            out.push_str(&format!("bc.{side}.close_time = {close_time:?}\n"));
        }
    }
}

/// Parse a profile table: one `x elevation radius` row per line, `#`
/// comments and blank lines allowed, at least two rows.
pub fn parse_profile_table(text: &str) -> Result<Vec<ProfileSample>> {
    let mut samples = Vec::new();
    for (line_no, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::InvalidProfile {
                index: line_no,
                reason: format!("expected 3 columns (x elevation radius), got {}", fields.len()),
            });
        }
        let mut values = [0.0f64; 3];
        for (slot, field) in values.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::InvalidProfile {
                index: line_no,
                reason: format!("'{field}' is not a number"),
            })?;
        }
        samples.push(ProfileSample { x: values[0], elevation: values[1], radius: values[2] });
    }
    if samples.len() < 2 {
        return Err(Error::InvalidProfile {
            index: samples.len(),
            reason: "a profile needs at least two rows".into(),
        });
    }
    Ok(samples)
}

/// Raw key-value store with duplicate detection and strict consumption.
struct RawConfig {
    entries: Vec<(String, String, bool)>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<RawConfig> {
        let mut entries: Vec<(String, String, bool)> = Vec::new();
        for raw_line in text.lines() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(line, "expected 'key = value'")
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(config_err(line, "empty key"));
            }
            if entries.iter().any(|(k, _, _)| *k == key) {
                return Err(config_err(&key, "duplicate key"));
            }
            entries.push((key, value, false));
        }
        Ok(RawConfig { entries })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        for (k, v, used) in self.entries.iter_mut() {
            if k == key {
                *used = true;
                return Some(v.clone());
            }
        }
        None
    }

    fn require(&mut self, key: &str) -> Result<String> {
        self.take(key).ok_or_else(|| config_err(key, "missing required key"))
    }

    fn take_f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.take(key) {
            Some(v) => parse_f64(key, &v),
            None => Ok(default),
        }
    }

    fn require_f64(&mut self, key: &str) -> Result<f64> {
        let v = self.require(key)?;
        parse_f64(key, &v)
    }

    fn require_usize(&mut self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        v.parse().map_err(|_| config_err(key, &format!("expected a non-negative integer, got '{v}'")))
    }

    fn take_usize(&mut self, key: &str, default: usize) -> Result<usize> {
        match self.take(key) {
            Some(v) => v
                .parse()
                .map_err(|_| config_err(key, &format!("expected a non-negative integer, got '{v}'"))),
            None => Ok(default),
        }
    }

    fn require_f64_list(&mut self, key: &str) -> Result<Vec<f64>> {
        let v = self.require(key)?;
        v.split_whitespace().map(|f| parse_f64(key, f)).collect()
    }

    /// Every key must have been consumed by now.
    fn finish(self) -> Result<()> {
        for (key, _, used) in &self.entries {
            if !used {
                return Err(config_err(key, "unknown or inapplicable key"));
            }
        }
        Ok(())
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    value
        .parse()
        .map_err(|_| config_err(key, &format!("expected a number, got '{value}'")))
}

fn parse_bc(raw: &mut RawConfig, side: &str) -> Result<BoundaryCondition> {
    let kind_key = format!("bc.{side}.kind");
    let kind = raw.require(&kind_key)?;
    match kind.as_str() {
        "wall" => Ok(BoundaryCondition::Wall),
        "reservoir_level" => Ok(BoundaryCondition::ReservoirLevel {
            level: raw.require_f64(&format!("bc.{side}.level"))?,
        }),
        "reservoir_ratio" => Ok(BoundaryCondition::ReservoirRatio {
            ratio: raw.require_f64(&format!("bc.{side}.ratio"))?,
        }),
        "discharge" => Ok(BoundaryCondition::Discharge {
            discharge: raw.require_f64(&format!("bc.{side}.discharge"))?,
        }),
        "valve" => Ok(BoundaryCondition::Valve {
            discharge: raw.require_f64(&format!("bc.{side}.discharge"))?,
            close_time: raw.require_f64(&format!("bc.{side}.close_time"))?,
        }),
        other => Err(config_err(&kind_key, &format!("unknown boundary kind '{other}'"))),
    }
}

fn parse_initial(raw: &mut RawConfig) -> Result<InitialCondition> {
    let kind = raw.require("init.kind")?;
    match kind.as_str() {
        "still_level" => Ok(InitialCondition::StillLevel {
            surface_elevation: raw.require_f64("init.surface_elevation")?,
        }),
        "uniform_ratio" => Ok(InitialCondition::UniformRatio {
            ratio: raw.require_f64("init.ratio")?,
            velocity: raw.take_f64("init.velocity", 0.0)?,
        }),
        "dam_break" => Ok(InitialCondition::DamBreak {
            split: raw.require_f64("init.split")?,
            left_elevation: raw.require_f64("init.left_elevation")?,
            right_elevation: raw.require_f64("init.right_elevation")?,
        }),
        "regions" => {
            let count = raw.require_usize("init.regions")?;
            if count == 0 {
                return Err(config_err("init.regions", "at least one region is required"));
            }
            let mut regions = Vec::with_capacity(count);
            for i in 1..=count {
                let p = format!("init.region{i}");
                let end = raw.require_f64(&format!("{p}.end"))?;
                let fill_kind = raw.require(&format!("{p}.fill"))?;
                let fill = match fill_kind.as_str() {
                    "elevation" => {
                        RegionFill::SurfaceElevation(raw.require_f64(&format!("{p}.elevation"))?)
                    }
                    "ratio" => RegionFill::Ratio(raw.require_f64(&format!("{p}.ratio"))?),
                    other => {
                        return Err(config_err(
                            &format!("{p}.fill"),
                            &format!("expected 'elevation' or 'ratio', got '{other}'"),
                        ))
                    }
                };
                let velocity = raw.take_f64(&format!("{p}.velocity"), 0.0)?;
                regions.push(Region { end, fill, velocity });
            }
            Ok(InitialCondition::Regions(regions))
        }
        other => Err(config_err("init.kind", &format!("unknown initial kind '{other}'"))),
    }
}

/// Parse a configuration text. Every present key must be known and
/// applicable to the chosen kinds; unknown, duplicate, or leftover keys are
/// rejected with the offending key named.
pub fn parse_config(text: &str) -> Result<SimConfig> {
    let mut raw = RawConfig::parse(text)?;
    let profile = if let Some(path) = raw.take("pipe.file") {
        if raw.take("pipe.x").is_some()
            || raw.take("pipe.elevation").is_some()
            || raw.take("pipe.radius").is_some()
        {
            return Err(config_err("pipe.file", "give either pipe.file or inline pipe arrays"));
        }
        ProfileSource::File { path }
    } else {
        ProfileSource::Samples {
            x: raw.require_f64_list("pipe.x")?,
            elevation: raw.require_f64_list("pipe.elevation")?,
            radius: raw.require_f64_list("pipe.radius")?,
        }
    };
    let config = SimConfig {
        profile,
        resolution: raw.take_usize("pipe.resolution", DEFAULT_RESOLUTION)?,
        cells: raw.require_usize("mesh.cells")?,
        t_end: raw.require_f64("time.t_end")?,
        cfl: raw.take_f64("time.cfl", DEFAULT_CFL)?,
        output_cadence: raw.require_f64("time.output_cadence")?,
        gravity: raw.take_f64("fluid.gravity", 9.81)?,
        rho0: raw.take_f64("fluid.rho0", 1000.0)?,
        beta0: raw.take_f64("fluid.beta0", 5e-10)?,
        strickler: raw.take_f64("fluid.strickler", f64::INFINITY)?,
        bc_left: parse_bc(&mut raw, "left")?,
        bc_right: parse_bc(&mut raw, "right")?,
        initial: parse_initial(&mut raw)?,
        probes: match raw.take("output.probes") {
            Some(v) => v
                .split_whitespace()
                .map(|f| {
                    f.parse().map_err(|_| {
                        config_err("output.probes", &format!("expected a cell index, got '{f}'"))
                    })
                })
                .collect::<Result<Vec<usize>>>()?,
            None => Vec::new(),
        },
    };
    raw.finish()?;
    config.validate()?;
    Ok(config)
}

/// Names of the built-in presets, in presentation order.
pub fn preset_names() -> &'static [&'static str] {
    &["still-water", "dam-break-fs", "water-hammer", "pipe-filling", "varying-section-steady"]
}

/// Build a named preset configuration.
pub fn preset(name: &str) -> Result<SimConfig> {
    let uniform = |length: f64, radius: f64| ProfileSource::Samples {
        x: vec![0.0, length],
        elevation: vec![0.0, 0.0],
        radius: vec![radius, radius],
    };
    match name {
        // A lake at rest in a horizontal pipe: nothing may move, ever.
        "still-water" => Ok(SimConfig {
            profile: uniform(100.0, 1.0),
            resolution: DEFAULT_RESOLUTION,
            cells: 100,
            t_end: 20.0,
            cfl: DEFAULT_CFL,
            output_cadence: 5.0,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::Wall,
            bc_right: BoundaryCondition::Wall,
            initial: InitialCondition::StillLevel { surface_elevation: 0.3 },
            probes: vec![],
        }),
        // Classic free-surface dam break between two walls.
        "dam-break-fs" => Ok(SimConfig {
            profile: uniform(100.0, 1.0),
            resolution: DEFAULT_RESOLUTION,
            cells: 200,
            t_end: 15.0,
            cfl: DEFAULT_CFL,
            output_cadence: 0.5,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::Wall,
            bc_right: BoundaryCondition::Wall,
            initial: InitialCondition::DamBreak {
                split: 50.0,
                left_elevation: 0.4,
                right_elevation: -0.2,
            },
            probes: vec![],
        }),
        // A moving pressurized column whose downstream valve slams shut at
        // t = 0, launching the classic surge oscillation.
        "water-hammer" => Ok(SimConfig {
            profile: uniform(1000.0, 1.0),
            resolution: DEFAULT_RESOLUTION,
            cells: 200,
            t_end: 8.5,
            cfl: DEFAULT_CFL,
            output_cadence: 0.02,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::ReservoirRatio { ratio: 1.0 },
            bc_right: BoundaryCondition::Valve {
                discharge: std::f64::consts::PI,
                close_time: 0.0,
            },
            initial: InitialCondition::UniformRatio { ratio: 1.0, velocity: 1.0 },
            probes: vec![199],
        }),
        // Supercritical inflow into a 56%-full dead-end pipe: the bore
        // stacks water against the far wall near t = 10 s until the whole
        // pipe pressurizes in well under one output interval, so the count
        // of pressurized cells rises monotonically from snapshot to
        // snapshot even though the switch chatters between steps.
        "pipe-filling" => Ok(SimConfig {
            profile: uniform(50.0, 1.0),
            resolution: DEFAULT_RESOLUTION,
            cells: 100,
            t_end: 12.0,
            cfl: DEFAULT_CFL,
            output_cadence: 2.0,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::Discharge { discharge: 2.0 * std::f64::consts::PI },
            bc_right: BoundaryCondition::Wall,
            initial: InitialCondition::StillLevel { surface_elevation: 0.1 },
            probes: vec![95],
        }),
        // Steady frictionless flow through a contraction: total head must
        // come out constant along the pipe.
        "varying-section-steady" => Ok(SimConfig {
            profile: ProfileSource::Samples {
                x: vec![0.0, 25.0, 50.0],
                elevation: vec![0.0, 0.0, 0.0],
                radius: vec![1.0, 0.85, 1.0],
            },
            resolution: DEFAULT_RESOLUTION,
            cells: 100,
            t_end: 200.0,
            cfl: DEFAULT_CFL,
            output_cadence: 50.0,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::Discharge { discharge: 0.5 },
            bc_right: BoundaryCondition::ReservoirLevel { level: 0.0 },
            initial: InitialCondition::StillLevel { surface_elevation: 0.0 },
            probes: vec![],
        }),
        other => Err(Error::UnknownPreset { name: other.into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn presets_parse_back_identically() {
        for name in preset_names() {
            let config = preset(name).unwrap();
            config.validate().unwrap();
            let text = config.to_text();
            let reparsed = parse_config(&text).unwrap_or_else(|e| {
                panic!("preset {name} did not reparse: {e}\n{text}")
            });
            assert_eq!(config, reparsed, "round trip changed preset {name}");
        }
    }

    #[test]
    fn unknown_preset_is_reported() {
        assert!(matches!(preset("geyser"), Err(Error::UnknownPreset { .. })));
    }

    #[test]
    fn parser_rejects_unknown_duplicate_and_leftover_keys() {
        let base = preset("still-water").unwrap().to_text();
        let with_unknown = format!("{base}solver.scheme = upwind\n");
        assert!(matches!(parse_config(&with_unknown), Err(Error::Config { .. })));
        let with_duplicate = format!("{base}mesh.cells = 50\n");
        assert!(matches!(parse_config(&with_duplicate), Err(Error::Config { .. })));
        // A key that exists but does not apply to the chosen kinds.
        let with_inapplicable = format!("{base}bc.left.level = 0.5\n");
        assert!(matches!(parse_config(&with_inapplicable), Err(Error::Config { .. })));
    }

    #[test]
    fn parser_reports_missing_and_malformed_values() {
        let mut config = preset("still-water").unwrap();
        config.cells = 100;
        let text = config.to_text().replace("mesh.cells = 100\n", "");
        match parse_config(&text) {
            Err(Error::Config { key, .. }) => assert_eq!(key, "mesh.cells"),
            other => panic!("expected a config error, got {other:?}"),
        }
        let text = config.to_text().replace("mesh.cells = 100", "mesh.cells = many");
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!(
            "# run configuration\n\n{}\n# trailing comment\n",
            preset("dam-break-fs").unwrap().to_text()
        );
        assert!(parse_config(&text).is_ok());
    }

    #[test]
    fn validation_catches_bad_ranges() {
        let mut config = preset("still-water").unwrap();
        config.cfl = 1.5;
        assert!(config.validate().is_err());
        let mut config = preset("still-water").unwrap();
        config.t_end = -1.0;
        assert!(config.validate().is_err());
        let mut config = preset("still-water").unwrap();
        config.probes = vec![100];
        assert!(matches!(config.validate(), Err(Error::ProbeOutOfRange { .. })));
        let mut config = preset("still-water").unwrap();
        config.cells = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn profile_tables_parse_and_reject_bad_rows() {
        let table = "# x  elevation  radius\n0.0  0.0  1.0\n50 1.0 0.9 # midpoint\n100 2 0.8\n";
        let samples = parse_profile_table(table).unwrap();
        assert_eq!(samples.len(), 3);
        assert_eq!(samples[1].x, 50.0);
        assert_eq!(samples[1].elevation, 1.0);
        assert_eq!(samples[1].radius, 0.9);
        assert!(parse_profile_table("0 0\n1 0\n").is_err());
        assert!(parse_profile_table("0 0 1\n1 zero 1\n").is_err());
        assert!(parse_profile_table("0 0 1\n").is_err());
    }

    #[test]
    fn hydrostatic_initial_states_cover_all_three_fillings() {
        // A pipe dipping from +2 to -2: the surface at 0 leaves the high end
        // dry, cuts the middle, and pressurizes the low end.
        let config = SimConfig {
            profile: ProfileSource::Samples {
                x: vec![0.0, 100.0],
                elevation: vec![2.0, -2.0],
                radius: vec![0.5, 0.5],
            },
            resolution: DEFAULT_RESOLUTION,
            cells: 50,
            t_end: 1.0,
            cfl: 0.9,
            output_cadence: 1.0,
            gravity: 9.81,
            rho0: 1000.0,
            beta0: 5e-10,
            strickler: f64::INFINITY,
            bc_left: BoundaryCondition::Wall,
            bc_right: BoundaryCondition::Wall,
            initial: InitialCondition::StillLevel { surface_elevation: 0.0 },
            probes: vec![],
        };
        let profile = config.build_profile().unwrap();
        let mesh = Mesh::from_profile(&profile, config.cells).unwrap();
        let states = config.initial_states(&mesh).unwrap();
        let first = &states[0];
        let last = &states[states.len() - 1];
        assert_eq!(first.regime, Regime::FreeSurface);
        assert!(first.area <= 1e-9 * mesh.cells[0].section_area, "high end should be dry");
        assert_eq!(last.regime, Regime::Pressurized);
        assert!(last.area > mesh.cells[49].section_area, "low end should be compressed");
        // Everything is at rest.
        assert!(states.iter().all(|s| s.discharge == 0.0));
    }

    /// Two-region fill of a horizontal 50 m pipe: pressurized and moving up
    /// front, still shallow water behind.
    fn regions_config() -> SimConfig {
        let mut config = preset("pipe-filling").unwrap();
        config.initial = InitialCondition::Regions(vec![
            Region { end: 15.0, fill: RegionFill::Ratio(1.0), velocity: 2.0 },
            Region { end: 50.0, fill: RegionFill::SurfaceElevation(-0.5), velocity: 0.0 },
        ]);
        config
    }

    #[test]
    fn region_initial_states_fill_piecewise() {
        let config = regions_config();
        let profile = config.build_profile().unwrap();
        let mesh = Mesh::from_profile(&profile, config.cells).unwrap();
        let states = config.initial_states(&mesh).unwrap();
        // First region: pressurized, ratio 1, moving.
        assert_eq!(states[0].regime, Regime::Pressurized);
        assert!((states[0].area - PI).abs() <= 1e-9);
        assert!((states[0].velocity() - 2.0).abs() <= 1e-12);
        // Second region: still shallow water.
        let tail = &states[mesh.n_cells() - 1];
        assert_eq!(tail.regime, Regime::FreeSurface);
        assert_eq!(tail.discharge, 0.0);
        assert!(tail.area < 0.25 * PI);
    }

    #[test]
    fn regions_must_cover_the_pipe() {
        let mut config = regions_config();
        if let InitialCondition::Regions(regions) = &mut config.initial {
            regions[1].end = 30.0;
        }
        let profile = config.build_profile().unwrap();
        let mesh = Mesh::from_profile(&profile, config.cells).unwrap();
        assert!(config.initial_states(&mesh).is_err());
    }

    #[test]
    fn region_configs_round_trip_through_text() {
        let config = regions_config();
        config.validate().unwrap();
        let reparsed = parse_config(&config.to_text()).unwrap();
        assert_eq!(config, reparsed);
    }
}
