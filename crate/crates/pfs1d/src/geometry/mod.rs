//! Pipe geometry: axis profile and cross sections.
//!
//! A pipe is described by samples of its axis elevation b(x) and section
//! radius R(x) against a horizontal coordinate x. The profile re-parametrizes
//! the axis by arc length (the curvilinear abscissa), carries the axis slope
//! angle, and serves per-station section geometry to the rest of the crate.

mod quadrature;
mod section;
mod spline;

pub use section::{pressure_integral_of, wet_area_of, CircularSection};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use quadrature::{integrate, REL_TOL};
use spline::MonotoneCubic;

/// One profile sample: horizontal position, axis elevation, section radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    /// Horizontal position [m].
    pub x: f64,
    /// Axis elevation above the datum [m].
    pub elevation: f64,
    /// Section radius [m].
    pub radius: f64,
}

/// Geometry of one mesh cell, evaluated at its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeometry {
    /// Curvilinear position of the cell center [m].
    pub arc_center: f64,
    /// Section radius [m].
    pub radius: f64,
    /// Full section area pi R^2 [m^2].
    pub section_area: f64,
    /// Derivative of the full section area along the axis [m].
    pub d_section_area: f64,
    /// Sine of the axis slope angle [-].
    pub sin_theta: f64,
    /// Cosine of the axis slope angle [-].
    pub cos_theta: f64,
    /// Derivative of cos(theta) along the axis [1/m].
    pub d_cos_theta: f64,
    /// Derivative of the axis elevation along the axis (equals sin_theta) [-].
    pub d_elevation: f64,
    /// Axis elevation above the datum [m].
    pub elevation: f64,
}

impl CellGeometry {
    /// The circular cross section at this cell.
    pub fn section(&self) -> CircularSection {
        CircularSection {
            radius: self.radius,
            d_radius: self.d_section_area / (2.0 * PI * self.radius),
        }
    }
}

/// Arc-length parametrized pipe profile built from samples.
#[derive(Debug, Clone)]
pub struct PipeProfile {
    samples: Vec<ProfileSample>,
    /// Axis elevation b(x), shape-preserving interpolant of the samples.
    elevation_spline: MonotoneCubic,
    /// Section radius R(x), shape-preserving interpolant of the samples.
    radius_spline: MonotoneCubic,
    /// Curvilinear abscissa X(x), tabulated by arc-length quadrature on a
    /// refined grid and interpolated monotonically.
    arc_spline: MonotoneCubic,
    /// Curvilinear abscissa of each raw sample [m].
    sample_arc: Vec<f64>,
    /// Axis slope angle at each raw sample [rad].
    sample_angle: Vec<f64>,
    /// Total curvilinear length [m].
    length: f64,
}

impl PipeProfile {
    /// Build a profile from samples; `resolution` sets the number of cells
    /// the mesh will carve out of it and therefore the density of the
    /// internal arc-length table.
    ///
    /// Fails on unordered or non-finite samples, non-positive radii, and on
    /// axis bends tighter than the local section radius (estimated from the
    /// circumscribed circle of each three consecutive samples).
    pub fn build(samples: &[ProfileSample], resolution: usize) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidProfile {
                index: 0,
                reason: "need at least two samples".to_string(),
            });
        }
        if resolution == 0 {
            return Err(Error::InvalidProfile {
                index: 0,
                reason: "resolution must be at least 1".to_string(),
            });
        }
        for (i, s) in samples.iter().enumerate() {
            if !(s.x.is_finite() && s.elevation.is_finite() && s.radius.is_finite()) {
                return Err(Error::InvalidProfile {
                    index: i,
                    reason: "non-finite sample".to_string(),
                });
            }
            if !(s.radius > 0.0) {
                return Err(Error::InvalidProfile {
                    index: i,
                    reason: format!("radius {:+.6e} m is not positive", s.radius),
                });
            }
            if i > 0 && !(s.x > samples[i - 1].x) {
                return Err(Error::InvalidProfile {
                    index: i,
                    reason: format!(
                        "x = {:+.6e} m does not increase past {:+.6e} m",
                        s.x,
                        samples[i - 1].x
                    ),
                });
            }
        }

        // Axis bends must stay wider than the section: compare the
        // circumscribed circle of three consecutive samples to the radius.
        for i in 1..samples.len() - 1 {
            let (a, b, c) = (samples[i - 1], samples[i], samples[i + 1]);
            if let Some(axis_radius) = circumradius(
                (a.x, a.elevation),
                (b.x, b.elevation),
                (c.x, c.elevation),
            ) {
                if axis_radius <= b.radius {
                    return Err(Error::CurvatureTooTight {
                        index: i,
                        axis_radius,
                        section_radius: b.radius,
                    });
                }
            }
        }

        let xs: Vec<f64> = samples.iter().map(|s| s.x).collect();
        let elevation_spline =
            MonotoneCubic::new(&xs, &samples.iter().map(|s| s.elevation).collect::<Vec<_>>())?;
        let radius_spline =
            MonotoneCubic::new(&xs, &samples.iter().map(|s| s.radius).collect::<Vec<_>>())?;

        // Refined node set: a uniform grid dense enough for the mesh, with
        // every raw sample included so their abscissae are quadrature-exact.
        let (x_lo, x_hi) = (xs[0], xs[xs.len() - 1]);
        let n_uniform = resolution.max(8 * (xs.len() - 1)).max(32);
        let mut nodes: Vec<f64> = (0..=n_uniform)
            .map(|k| x_lo + (x_hi - x_lo) * (k as f64) / (n_uniform as f64))
            .collect();
        nodes.extend_from_slice(&xs);
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        nodes.dedup();

        let speed = |x: f64| {
            let slope = elevation_spline.derivative(x);
            (1.0 + slope * slope).sqrt()
        };
        let mut arc = Vec::with_capacity(nodes.len());
        arc.push(0.0);
        for pair in nodes.windows(2) {
            let segment = integrate(&speed, pair[0], pair[1], REL_TOL, 0.0);
            arc.push(arc.last().unwrap() + segment);
        }
        let length = *arc.last().unwrap();
        let arc_spline = MonotoneCubic::new(&nodes, &arc)?;

        let sample_arc = xs
            .iter()
            .map(|&x| {
                let k = nodes.partition_point(|&n| n < x);
                arc[k]
            })
            .collect();
        let sample_angle = xs.iter().map(|&x| elevation_spline.derivative(x).atan()).collect();

        Ok(PipeProfile {
            samples: samples.to_vec(),
            elevation_spline,
            radius_spline,
            arc_spline,
            sample_arc,
            sample_angle,
            length,
        })
    }

    /// Total curvilinear length of the pipe [m].
    pub fn length(&self) -> f64 {
        self.length
    }

    /// The raw samples the profile was built from.
    pub fn samples(&self) -> &[ProfileSample] {
        &self.samples
    }

    /// Curvilinear abscissa of each raw sample [m].
    pub fn sample_arc(&self) -> &[f64] {
        &self.sample_arc
    }

    /// Axis slope angle at each raw sample [rad].
    pub fn sample_angle(&self) -> &[f64] {
        &self.sample_angle
    }

    /// Horizontal position for a curvilinear abscissa, by inverting the
    /// arc-length table with a bracketed Newton iteration.
    fn x_at(&self, arc: f64) -> Result<f64> {
        if !(arc >= -1e-9 * self.length.max(1.0) && arc <= self.length * (1.0 + 1e-12) + 1e-12) {
            return Err(Error::PositionOutOfRange { value: arc, lo: 0.0, hi: self.length });
        }
        let arc = arc.clamp(0.0, self.length);
        let (x_lo, x_hi) = (self.arc_spline.x_min(), self.arc_spline.x_max());
        let (mut lo, mut hi) = (x_lo, x_hi);
        let mut x = x_lo + (x_hi - x_lo) * (arc / self.length);
        let tol = 1e-13 * self.length.max(1.0);
        for _ in 0..100 {
            let f = self.arc_spline.value(x) - arc;
            if f.abs() <= tol {
                return Ok(x);
            }
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let df = self.arc_spline.derivative(x);
            let mut next = if df > 0.0 { x - f / df } else { f64::INFINITY };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if hi - lo <= f64::EPSILON * (x_hi - x_lo) {
                return Ok(next);
            }
            x = next;
        }
        Err(Error::RootSolveStalled {
            detail: format!("arc-length inversion at {arc:.6e} m"),
        })
    }

    /// Cross section at a curvilinear abscissa.
    pub fn section_at(&self, arc: f64) -> Result<CircularSection> {
        let x = self.x_at(arc)?;
        let slope = self.elevation_spline.derivative(x);
        let cos_theta = 1.0 / (1.0 + slope * slope).sqrt();
        Ok(CircularSection {
            radius: self.radius_spline.value(x),
            d_radius: self.radius_spline.derivative(x) * cos_theta,
        })
    }

    /// Full geometry of a cell centered at a curvilinear abscissa.
    pub fn geometry_at(&self, arc: f64) -> Result<CellGeometry> {
        let x = self.x_at(arc)?;
        let slope = self.elevation_spline.derivative(x);
        let cos_theta = 1.0 / (1.0 + slope * slope).sqrt();
        let sin_theta = slope * cos_theta;
        let radius = self.radius_spline.value(x);
        let d_radius = self.radius_spline.derivative(x) * cos_theta;

        // cos(theta(x)) is only C^1 through the interpolant, so its slope is
        // taken by a centered difference of the interpolated angle field.
        let span = self.arc_spline.x_max() - self.arc_spline.x_min();
        let h = 1e-7 * span;
        let cos_at = |x: f64| {
            let s = self.elevation_spline.derivative(x);
            1.0 / (1.0 + s * s).sqrt()
        };
        let d_cos_dx = (cos_at(x + h) - cos_at(x - h)) / (2.0 * h);

        Ok(CellGeometry {
            arc_center: arc,
            radius,
            section_area: PI * radius * radius,
            d_section_area: 2.0 * PI * radius * d_radius,
            sin_theta,
            cos_theta,
            d_cos_theta: d_cos_dx * cos_theta,
            d_elevation: sin_theta,
            elevation: self.elevation_spline.value(x),
        })
    }

    /// Section width at height `z` above the axis [m].
    pub fn width_at(&self, arc: f64, z: f64) -> Result<f64> {
        self.section_at(arc)?.width(z)
    }

    /// Full section area at a station [m^2].
    pub fn full_area(&self, arc: f64) -> Result<f64> {
        Ok(self.section_at(arc)?.area())
    }

    /// Wet area below `level` at a station [m^2].
    pub fn wet_area(&self, arc: f64, level: f64) -> Result<f64> {
        self.section_at(arc)?.wet_area(level)
    }

    /// Level holding `area` at a station [m].
    pub fn level_from_area(&self, arc: f64, area: f64) -> Result<f64> {
        self.section_at(arc)?.level_from_area(area)
    }

    /// Free-surface width for a wet area at a station [m].
    pub fn top_width(&self, arc: f64, area: f64) -> Result<f64> {
        self.section_at(arc)?.top_width(area)
    }

    /// Hydrostatic pressure integral at a station [m^3].
    pub fn pressure_integral(&self, arc: f64, level: f64) -> Result<f64> {
        self.section_at(arc)?.pressure_integral(level)
    }

    /// Pressure source integral at a station [m^2].
    pub fn pressure_source_integral(&self, arc: f64, level: f64) -> Result<f64> {
        self.section_at(arc)?.pressure_source_integral(level)
    }

    /// Wetted centroid height at a station [m].
    pub fn centroid_height(&self, arc: f64, phys_area: f64, level: f64) -> Result<f64> {
        self.section_at(arc)?.centroid_height(phys_area, level)
    }

    /// Wetted perimeter and hydraulic radius at a station ([m], [m]).
    pub fn hydraulic_radius(&self, arc: f64, phys_area: f64) -> Result<(f64, f64)> {
        self.section_at(arc)?.hydraulic_radius(phys_area)
    }
}

/// Radius of the circle through three points, or None when they are
/// (numerically) collinear.
fn circumradius(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<f64> {
    let ab = ((b.0 - a.0), (b.1 - a.1));
    let ac = ((c.0 - a.0), (c.1 - a.1));
    let bc = ((c.0 - b.0), (c.1 - b.1));
    let cross = ab.0 * ac.1 - ab.1 * ac.0;
    let la = (ab.0 * ab.0 + ab.1 * ab.1).sqrt();
    let lb = (ac.0 * ac.0 + ac.1 * ac.1).sqrt();
    let lc = (bc.0 * bc.0 + bc.1 * bc.1).sqrt();
    let scale = la.max(lb).max(lc);
    if cross.abs() <= 1e-14 * scale * scale {
        return None;
    }
    Some(la * lb * lc / (2.0 * cross.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn uniform_samples(length: f64, radius: f64) -> Vec<ProfileSample> {
        vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius },
            ProfileSample { x: length, elevation: 0.0, radius },
        ]
    }

    #[test]
    fn horizontal_pipe_arc_equals_x() {
        let p = PipeProfile::build(&uniform_samples(100.0, 1.0), 50).unwrap();
        assert!((p.length() - 100.0).abs() <= 1e-10);
        assert_eq!(p.sample_angle()[0], 0.0);
        assert_eq!(p.sample_angle()[1], 0.0);
        let g = p.geometry_at(37.5).unwrap();
        assert_eq!(g.sin_theta, 0.0);
        assert_eq!(g.cos_theta, 1.0);
        assert_eq!(g.d_cos_theta, 0.0);
        assert_eq!(g.d_section_area, 0.0);
        assert_eq!(g.elevation, 0.0);
        assert_eq!(g.radius, 1.0);
    }

    #[test]
    fn forty_five_degree_ramp() {
        let samples = vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius: 1.0 },
            ProfileSample { x: 50.0, elevation: 50.0, radius: 1.0 },
            ProfileSample { x: 100.0, elevation: 100.0, radius: 1.0 },
        ];
        let p = PipeProfile::build(&samples, 64).unwrap();
        let root2 = 2.0f64.sqrt();
        assert!((p.length() - 100.0 * root2).abs() <= 1e-9 * 100.0);
        for (i, &arc) in p.sample_arc().iter().enumerate() {
            assert!(
                (arc - root2 * samples[i].x).abs() <= 1e-9 * 100.0,
                "sample {i}: arc = {arc}"
            );
            assert!((p.sample_angle()[i] - FRAC_PI_4).abs() <= 1e-14);
        }
        let g = p.geometry_at(p.length() / 2.0).unwrap();
        assert!((g.sin_theta - 1.0 / root2).abs() <= 1e-12);
        assert!((g.cos_theta - 1.0 / root2).abs() <= 1e-12);
        assert!(g.d_cos_theta.abs() <= 1e-9);
        assert!((g.elevation - 50.0).abs() <= 1e-8 * 100.0);
    }

    #[test]
    fn rejects_repeated_abscissae() {
        let samples = vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius: 1.0 },
            ProfileSample { x: 1.0, elevation: 0.0, radius: 1.0 },
            ProfileSample { x: 1.0, elevation: 0.5, radius: 1.0 },
        ];
        let err = PipeProfile::build(&samples, 10).unwrap_err();
        assert!(matches!(err, Error::InvalidProfile { index: 2, .. }));
    }

    #[test]
    fn rejects_axis_bends_tighter_than_the_section() {
        // The circle through these axis points has radius 1.25 m; a 5 m
        // section cannot follow that bend.
        let samples = vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius: 5.0 },
            ProfileSample { x: 1.0, elevation: 0.5, radius: 5.0 },
            ProfileSample { x: 2.0, elevation: 0.0, radius: 5.0 },
        ];
        let err = PipeProfile::build(&samples, 10).unwrap_err();
        match err {
            Error::CurvatureTooTight { index, axis_radius, section_radius } => {
                assert_eq!(index, 1);
                assert!((axis_radius - 1.25).abs() <= 1e-12);
                assert_eq!(section_radius, 5.0);
            }
            other => panic!("unexpected error: {other:?}"),
        }
        // The same axis with a slim pipe is fine.
        let slim: Vec<ProfileSample> =
            samples.iter().map(|s| ProfileSample { radius: 0.5, ..*s }).collect();
        assert!(PipeProfile::build(&slim, 10).is_ok());
    }

    #[test]
    fn rejects_nonpositive_radius_and_short_tables() {
        let bad = vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius: 1.0 },
            ProfileSample { x: 1.0, elevation: 0.0, radius: 0.0 },
        ];
        assert!(matches!(
            PipeProfile::build(&bad, 10).unwrap_err(),
            Error::InvalidProfile { index: 1, .. }
        ));
        let short = vec![ProfileSample { x: 0.0, elevation: 0.0, radius: 1.0 }];
        assert!(PipeProfile::build(&short, 10).is_err());
        assert!(PipeProfile::build(&uniform_samples(1.0, 1.0), 0).is_err());
    }

    #[test]
    fn geometry_queries_outside_the_pipe_fail() {
        let p = PipeProfile::build(&uniform_samples(10.0, 1.0), 10).unwrap();
        assert!(p.geometry_at(-0.5).is_err());
        assert!(p.geometry_at(10.5).is_err());
    }

    #[test]
    fn tapered_pipe_has_consistent_derivatives() {
        // Radius shrinking linearly on a horizontal axis: dR/dX = -0.005,
        // dS/dX = 2 pi R dR/dX, and the arc coordinate equals x.
        let samples = vec![
            ProfileSample { x: 0.0, elevation: 0.0, radius: 1.0 },
            ProfileSample { x: 100.0, elevation: 0.0, radius: 0.5 },
        ];
        let p = PipeProfile::build(&samples, 40).unwrap();
        let g = p.geometry_at(50.0).unwrap();
        assert!((g.radius - 0.75).abs() <= 1e-12);
        let d_radius = -0.005;
        assert!((g.section().d_radius - d_radius).abs() <= 1e-12);
        assert!((g.d_section_area - 2.0 * PI * 0.75 * d_radius).abs() <= 1e-12);
    }

    #[test]
    fn arc_inversion_is_consistent_on_a_curved_profile() {
        let samples: Vec<ProfileSample> = (0..=20)
            .map(|k| {
                let x = f64::from(k) * 5.0;
                ProfileSample { x, elevation: 2.0 * (x / 30.0).sin(), radius: 1.0 }
            })
            .collect();
        let p = PipeProfile::build(&samples, 100).unwrap();
        assert!(p.length() > 100.0);
        // Sample abscissae must be strictly increasing and end at the length.
        for pair in p.sample_arc().windows(2) {
            assert!(pair[1] > pair[0]);
        }
        assert!((p.sample_arc().last().unwrap() - p.length()).abs() <= 1e-12 * p.length());
        // Geometry responds smoothly along the whole pipe.
        for k in 0..=50 {
            let arc = p.length() * f64::from(k) / 50.0;
            let g = p.geometry_at(arc).unwrap();
            assert!(g.cos_theta > 0.9 && g.cos_theta <= 1.0);
            assert!((g.sin_theta * g.sin_theta + g.cos_theta * g.cos_theta - 1.0).abs() <= 1e-14);
        }
    }
}
