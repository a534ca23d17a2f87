//! Circular cross-section geometry.
//!
//! A section at a given station is described by its radius `R` and the
//! derivative of that radius along the pipe axis. All wetted-geometry
//! integrals are evaluated by adaptive quadrature after the substitution
//! z = R sin(phi), which turns the half-circle width profile into a smooth
//! trigonometric integrand and removes the endpoint singularity of the
//! width gradient.
//!
//! The module also exposes the integrals for an arbitrary width profile
//! (`wet_area_of`, `pressure_integral_of`), which lets non-circular sections
//! back the same formulas; the test suite uses a rectangular width profile
//! there to recover the textbook hydrostatic term g·H²/2.

use std::f64::consts::{FRAC_PI_2, PI};

use super::quadrature::{integrate, REL_TOL};
use crate::error::{Error, Result};

/// Circular section of a pipe at one station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularSection {
    /// Section radius [m].
    pub radius: f64,
    /// Derivative of the radius along the curvilinear axis [-].
    pub d_radius: f64,
}

impl CircularSection {
    /// Water-surface width at height `z` above the pipe axis [m].
    ///
    /// Errors when `z` lies outside the section [-R, R].
    pub fn width(&self, z: f64) -> Result<f64> {
        let r = self.radius;
        if !(z >= -r && z <= r) {
            return Err(Error::LevelOutOfRange { value: z, radius: r });
        }
        Ok(2.0 * ((r - z) * (r + z)).max(0.0).sqrt())
    }

    /// Full (pressurized) section area pi R^2 [m^2].
    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    /// Wetted area below `level` [m^2], by adaptive quadrature of the width.
    pub fn wet_area(&self, level: f64) -> Result<f64> {
        let r = self.radius;
        if !(level >= -r && level <= r) {
            return Err(Error::LevelOutOfRange { value: level, radius: r });
        }
        let phi_top = (level / r).clamp(-1.0, 1.0).asin();
        let scale = 2.0 * r * r;
        Ok(integrate(
            &|phi: f64| {
                let c = phi.cos();
                scale * c * c
            },
            -FRAC_PI_2,
            phi_top,
            REL_TOL,
            scale,
        ))
    }

    /// Free-surface level holding exactly `area` of water [m].
    ///
    /// The result satisfies |wet_area(level) - area| <= 1e-12 * area(); the
    /// solve runs a closed-form seed first, then polishes against the
    /// quadrature definition of the wet area with a bracketed Newton loop.
    pub fn level_from_area(&self, area: f64) -> Result<f64> {
        let s = self.area();
        let r = self.radius;
        if !(area >= 0.0) {
            return Err(Error::AreaOutOfRange { value: area, bound: s });
        }
        if area == 0.0 {
            return Ok(-r);
        }
        if area >= s {
            // Tolerate rounding-level overshoot from quadrature round trips.
            if area <= s * (1.0 + 1e-12) {
                return Ok(r);
            }
            return Err(Error::AreaOutOfRange { value: area, bound: s });
        }

        // Closed-form seed: solve phi + sin(phi)cos(phi) + pi/2 = area / R^2
        // for the filling angle with a bracketed Newton iteration.
        let target = area / (r * r);
        let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
        let mut phi = PI * (area / s - 0.5);
        for _ in 0..80 {
            let f = phi + phi.sin() * phi.cos() + FRAC_PI_2 - target;
            if f > 0.0 {
                hi = phi;
            } else {
                lo = phi;
            }
            let df = 2.0 * phi.cos().powi(2);
            let mut next = if df > 0.0 { phi - f / df } else { f64::INFINITY };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - phi).abs() <= 1e-17 {
                phi = next;
                break;
            }
            phi = next;
        }
        let mut level = (r * phi.sin()).clamp(-r, r);

        // Polish against the quadrature wet area (the operative definition).
        let tol = 1e-12 * s;
        let (mut lo, mut hi) = (-r, r);
        for _ in 0..200 {
            let residual = self.wet_area(level)? - area;
            if residual.abs() <= tol {
                return Ok(level);
            }
            if residual > 0.0 {
                hi = level;
            } else {
                lo = level;
            }
            let w = self.width(level)?;
            let newton = if w > 0.0 { level - residual / w } else { f64::NAN };
            level = if newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON * r {
                // Bracket at machine resolution: residual is bounded by the
                // width times the bracket, far below the tolerance.
                return Ok(0.5 * (lo + hi));
            }
        }
        Err(Error::RootSolveStalled {
            detail: format!("level for area {area:.6e} m^2 in section of radius {r:.6e} m"),
        })
    }

    /// Free-surface width at the level holding `area` [m].
    ///
    /// Errors for `area` outside (0, area()]. Tends to zero as the section
    /// fills (the caller must treat a full section as pressurized).
    pub fn top_width(&self, area: f64) -> Result<f64> {
        let s = self.area();
        if !(area > 0.0) || area > s * (1.0 + 1e-12) {
            return Err(Error::AreaOutOfRange { value: area, bound: s });
        }
        let level = self.level_from_area(area)?;
        self.width(level)
    }

    /// Hydrostatic pressure integral: first moment of the wetted width about
    /// the surface level, ∫ (level - z) width(z) dz [m^3].
    pub fn pressure_integral(&self, level: f64) -> Result<f64> {
        let r = self.radius;
        if !(level >= -r && level <= r) {
            return Err(Error::LevelOutOfRange { value: level, radius: r });
        }
        let phi_top = (level / r).clamp(-1.0, 1.0).asin();
        let scale = 2.0 * r * r;
        // (level - r sin phi) cancels two O(r) terms near the invert, so one
        // evaluation carries rounding noise of order epsilon * r * scale.
        Ok(integrate(
            &|phi: f64| {
                let c = phi.cos();
                scale * c * c * (level - r * phi.sin())
            },
            -FRAC_PI_2,
            phi_top,
            REL_TOL,
            scale * r,
        ))
    }

    /// Pressure source integral: first moment of the axial width gradient,
    /// ∫ (level - z) ∂width/∂x dz [m^2].
    ///
    /// Identically zero for a uniform pipe. The substitution absorbs the
    /// width gradient's endpoint singularity.
    pub fn pressure_source_integral(&self, level: f64) -> Result<f64> {
        let r = self.radius;
        if !(level >= -r && level <= r) {
            return Err(Error::LevelOutOfRange { value: level, radius: r });
        }
        if self.d_radius == 0.0 {
            return Ok(0.0);
        }
        let phi_top = (level / r).clamp(-1.0, 1.0).asin();
        let base = integrate(&|phi: f64| level - r * phi.sin(), -FRAC_PI_2, phi_top, REL_TOL, r);
        Ok(2.0 * r * self.d_radius * base)
    }

    /// Height of the wetted centroid above the pipe axis [m]:
    /// level - pressure_integral(level) / phys_area.
    ///
    /// `phys_area` must be the wet area consistent with `level` (the full
    /// section area with level = R when pressurized).
    pub fn centroid_height(&self, phys_area: f64, level: f64) -> Result<f64> {
        if !(phys_area > 0.0) {
            return Err(Error::AreaOutOfRange { value: phys_area, bound: self.area() });
        }
        Ok(level - self.pressure_integral(level)? / phys_area)
    }

    /// Wetted perimeter for a physical wet area [m]: the circular arc below
    /// the corresponding level, or the full circumference when the section
    /// is full.
    pub fn wetted_perimeter(&self, phys_area: f64) -> Result<f64> {
        let r = self.radius;
        if !(phys_area > 0.0) {
            return Err(Error::AreaOutOfRange { value: phys_area, bound: self.area() });
        }
        if phys_area >= self.area() {
            return Ok(2.0 * PI * r);
        }
        let level = self.level_from_area(phys_area)?;
        Ok(2.0 * r * (FRAC_PI_2 + (level / r).clamp(-1.0, 1.0).asin()))
    }

    /// Wetted perimeter and hydraulic radius for a physical wet area:
    /// (perimeter [m], phys_area / perimeter [m]).
    pub fn hydraulic_radius(&self, phys_area: f64) -> Result<(f64, f64)> {
        let perimeter = self.wetted_perimeter(phys_area)?;
        Ok((perimeter, phys_area / perimeter))
    }
}

/// Wet area below `level` for an arbitrary width profile on
/// [-half_height, half_height]. Extension hook for non-circular sections;
/// integrates the width directly in z.
pub fn wet_area_of<W: Fn(f64) -> f64>(width: W, half_height: f64, level: f64) -> Result<f64> {
    if !(level >= -half_height && level <= half_height) {
        return Err(Error::LevelOutOfRange { value: level, radius: half_height });
    }
    Ok(integrate(&|z| width(z), -half_height, level, REL_TOL, 0.0))
}

/// Hydrostatic pressure integral for an arbitrary width profile.
/// See [`wet_area_of`].
pub fn pressure_integral_of<W: Fn(f64) -> f64>(
    width: W,
    half_height: f64,
    level: f64,
) -> Result<f64> {
    if !(level >= -half_height && level <= half_height) {
        return Err(Error::LevelOutOfRange { value: level, radius: half_height });
    }
    Ok(integrate(&|z| (level - z) * width(z), -half_height, level, REL_TOL, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn section(radius: f64) -> CircularSection {
        CircularSection { radius, d_radius: 0.0 }
    }

    #[test]
    fn width_vanishes_at_crown_and_invert() {
        let s = section(1.0);
        assert_eq!(s.width(1.0).unwrap(), 0.0);
        assert_eq!(s.width(-1.0).unwrap(), 0.0);
        assert!((s.width(0.5).unwrap() - 3.0f64.sqrt()).abs() <= 1e-15);
        assert!(s.width(1.5).is_err());
    }

    #[test]
    fn full_area_is_pi_r_squared() {
        assert_eq!(section(1.0).area(), PI);
        assert_eq!(section(0.5).area(), PI / 4.0);
        assert_eq!(section(2.0).area(), 4.0 * PI);
    }

    #[test]
    fn wet_area_matches_circular_segments() {
        let s = section(1.0);
        assert_eq!(s.wet_area(-1.0).unwrap(), 0.0);
        assert!((s.wet_area(0.0).unwrap() - PI / 2.0).abs() <= 1e-12);
        assert!((s.wet_area(1.0).unwrap() - PI).abs() <= 1e-12);
    }

    /// Closed-form circular segment area, used as an independent oracle:
    /// A(h) = R^2 (asin(h/R) + (h/R) sqrt(1-(h/R)^2) + pi/2).
    fn segment_area(r: f64, h: f64) -> f64 {
        let t = (h / r).clamp(-1.0, 1.0);
        r * r * (t.asin() + t * (1.0 - t * t).sqrt() + FRAC_PI_2)
    }

    #[test]
    fn wet_area_matches_closed_form_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let r = rng.gen_range(0.05..5.0);
            let h = rng.gen_range(-1.0..1.0) * r;
            let s = section(r);
            let got = s.wet_area(h).unwrap();
            let want = segment_area(r, h);
            assert!((got - want).abs() <= 1e-12 * s.area(), "R = {r}, h = {h}");
        }
    }

    #[test]
    fn level_from_area_handles_the_extremes() {
        let s = section(1.0);
        assert_eq!(s.level_from_area(0.0).unwrap(), -1.0);
        assert_eq!(s.level_from_area(PI).unwrap(), 1.0);
        assert!(s.level_from_area(0.0_f64.next_down()).is_err());
        assert!(s.level_from_area(PI * 1.001).is_err());
        assert!(s.level_from_area(PI / 2.0).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn level_and_area_are_mutual_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..1000 {
            let r = rng.gen_range(0.05..5.0);
            let h = rng.gen_range(-0.999_999..0.999_999) * r;
            let s = section(r);
            let area = s.wet_area(h).unwrap();
            let back = s.level_from_area(area).unwrap();
            assert!((back - h).abs() <= 1e-10 * r, "R = {r}, h = {h}, back = {back}");
            assert!(
                (s.wet_area(back).unwrap() - area).abs() <= 1e-12 * s.area(),
                "residual contract violated at R = {r}, h = {h}"
            );
        }
    }

    #[test]
    fn wet_area_derivative_is_the_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let r = rng.gen_range(0.1..4.0);
            let h = rng.gen_range(-0.9..0.9) * r;
            let s = section(r);
            let eps = 1e-5 * r;
            let fd = (s.wet_area(h + eps).unwrap() - s.wet_area(h - eps).unwrap()) / (2.0 * eps);
            let w = s.width(h).unwrap();
            assert!((fd - w).abs() <= 1e-6 * w.max(1e-9), "R = {r}, h = {h}");
        }
    }

    #[test]
    fn top_width_examples() {
        let s = section(1.0);
        assert!((s.top_width(PI / 2.0).unwrap() - 2.0).abs() <= 1e-10);
        // Filling the section closes the surface.
        assert_eq!(s.top_width(PI).unwrap(), 0.0);
        let a = s.wet_area(0.5).unwrap();
        assert!((s.top_width(a).unwrap() - 3.0f64.sqrt()).abs() <= 1e-10);
        assert!(s.top_width(0.0).is_err());
        assert!(s.top_width(-1.0).is_err());
    }

    #[test]
    fn pressure_integral_examples() {
        let s = section(1.0);
        // Independent oracle for the half-full case: 2 ∫_0^1 t sqrt(1-t^2) dt.
        let oracle = integrate(&|t: f64| 2.0 * t * (1.0 - t * t).sqrt(), 0.0, 1.0, REL_TOL, 0.0);
        assert!((oracle - 2.0 / 3.0).abs() <= 1e-11);
        assert!((s.pressure_integral(0.0).unwrap() - oracle).abs() <= 1e-11);
        // Full section: first moment equals R times the section area.
        assert!((s.pressure_integral(1.0).unwrap() - PI).abs() <= 1e-12);
        assert_eq!(s.pressure_integral(-1.0).unwrap(), 0.0);
    }

    #[test]
    fn pressure_integral_derivative_is_the_wet_area() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..100 {
            let r = rng.gen_range(0.1..4.0);
            let h = rng.gen_range(-0.9..0.95) * r;
            let s = section(r);
            let eps = 1e-5 * r;
            let fd = (s.pressure_integral(h + eps).unwrap()
                - s.pressure_integral(h - eps).unwrap())
                / (2.0 * eps);
            let a = s.wet_area(h).unwrap();
            assert!((fd - a).abs() <= 1e-6 * a.max(1e-9), "R = {r}, h = {h}");
        }
    }

    #[test]
    fn pressure_source_integral_examples() {
        // Uniform pipe: identically zero, bitwise.
        let s = section(1.3);
        assert_eq!(s.pressure_source_integral(0.7).unwrap(), 0.0);
        // Widening pipe, full section: 2 pi R^2 dR.
        let s = CircularSection { radius: 1.0, d_radius: 0.1 };
        assert!((s.pressure_source_integral(1.0).unwrap() - 0.2 * PI).abs() <= 1e-12);
        // Empty section: nothing to integrate.
        assert_eq!(s.pressure_source_integral(-1.0).unwrap(), 0.0);
    }

    #[test]
    fn centroid_height_examples() {
        let s = section(1.0);
        // Full section: centroid on the axis.
        let full = s.centroid_height(PI, 1.0).unwrap();
        assert!(full.abs() <= 1e-13);
        // Half-full: textbook centroid depth 4R/(3 pi) below the surface.
        let half = s.centroid_height(PI / 2.0, 0.0).unwrap();
        assert!((half + 4.0 / (3.0 * PI)).abs() <= 1e-12);
        assert!(s.centroid_height(0.0, 0.0).is_err());
    }

    #[test]
    fn centroid_height_increases_with_level() {
        let s = section(1.0);
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=40 {
            let level = -1.0 + 2.0 * f64::from(k) / 41.0;
            let area = s.wet_area(level).unwrap();
            let c = s.centroid_height(area, level).unwrap();
            assert!(c > prev, "centroid not increasing at level {level}");
            prev = c;
        }
    }

    #[test]
    fn hydraulic_radius_examples() {
        let s = section(1.0);
        let (p_full, rh_full) = s.hydraulic_radius(PI).unwrap();
        assert!((p_full - 2.0 * PI).abs() <= 1e-12);
        assert!((rh_full - 0.5).abs() <= 1e-12);
        let (p_half, rh_half) = s.hydraulic_radius(PI / 2.0).unwrap();
        assert!((p_half - PI).abs() <= 1e-10);
        assert!((rh_half - 0.5).abs() <= 1e-10);
        assert!(s.hydraulic_radius(0.0).is_err());
    }

    /// Rectangular width profile through the generic integral path recovers
    /// the textbook hydrostatic term: g I1 / width = g H^2 / 2 with H the
    /// water depth above the floor.
    #[test]
    fn rectangular_section_recovers_depth_squared_over_two() {
        let g = 9.81;
        for (w, half, level) in [(1.0, 0.5, 0.25), (2.5, 1.0, -0.3), (0.4, 2.0, 1.9)] {
            let i1 = pressure_integral_of(|_| w, half, level).unwrap();
            let depth = level + half;
            let want = g * depth * depth / 2.0;
            let got = g * i1 / w;
            assert!((got - want).abs() <= 1e-10 * want.max(1.0), "w = {w}, H = {depth}");
        }
    }

    /// The substituted circular integrals agree with the generic width-path
    /// integrals evaluated directly in z.
    #[test]
    fn substitution_agrees_with_direct_width_integration() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..50 {
            let r = rng.gen_range(0.1..3.0);
            let h = rng.gen_range(-0.98..0.98) * r;
            let s = section(r);
            let width = |z: f64| 2.0 * ((r - z) * (r + z)).max(0.0).sqrt();
            let a_direct = wet_area_of(width, r, h).unwrap();
            let i1_direct = pressure_integral_of(width, r, h).unwrap();
            assert!((s.wet_area(h).unwrap() - a_direct).abs() <= 1e-10 * s.area());
            assert!((s.pressure_integral(h).unwrap() - i1_direct).abs() <= 1e-10 * s.area() * r);
        }
    }
}
