//! Adaptive Gauss–Kronrod quadrature.
//!
//! A 7-point Gauss rule embedded in a 15-point Kronrod rule supplies both the
//! panel value and its error estimate; panels whose estimate exceeds their
//! share of the error budget are bisected. Section integrands are smooth once
//! the circular substitution is applied, so most calls accept the very first
//! panel; the generic width-function path may refine deeply near section
//! endpoints where the width has a square-root profile.
//!
//! Bisection stops once a panel's Gauss–Kronrod discrepancy falls below the
//! rounding noise of evaluating the integrand, which the caller characterizes
//! through `eval_scale`. Without that floor, an integrand that cancels
//! internally (so its values carry absolute rounding noise much larger than
//! the integral itself) would keep every panel above its ever-halving budget
//! and the refinement would degenerate into an exponential sweep of the
//! width floor.

/// Relative tolerance used for all geometric integrals.
pub(crate) const REL_TOL: f64 = 1e-12;

/// Multiple of one evaluation's rounding noise below which a panel's error
/// estimate is indistinguishable from round-off: the Gauss and Kronrod sums
/// weight the same evaluations differently, so their difference carries a
/// small multiple of the per-evaluation noise times the panel width.
const NOISE_SAFETY: f64 = 8.0;

/// Hard cap on refined panels per integral. Unreachable when `eval_scale` is
/// honest; bounds the work wasted on a pathological integrand to well under
/// a millisecond instead of an exponential tree walk.
const MAX_PANELS: u32 = 1 << 16;

/// Positive abscissae of the 15-point Kronrod rule on [-1, 1].
/// Odd entries (indices 1, 3, 5) plus the origin form the embedded Gauss rule.
const KRONROD_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

/// Kronrod weights matching `KRONROD_X`.
const KRONROD_W: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the abscissae at odd indices of `KRONROD_X` (and 0).
const GAUSS_W: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Kronrod value, Gauss value, and an estimate of the integral of |f|.
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    let mut kronrod = KRONROD_W[7] * f_center;
    let mut gauss = GAUSS_W[3] * f_center;
    let mut abs_sum = KRONROD_W[7] * f_center.abs();
    for i in 0..7 {
        let offset = half * KRONROD_X[i];
        let lo = f(center - offset);
        let hi = f(center + offset);
        kronrod += KRONROD_W[i] * (lo + hi);
        abs_sum += KRONROD_W[i] * (lo.abs() + hi.abs());
        if i % 2 == 1 {
            gauss += GAUSS_W[i / 2] * (lo + hi);
        }
    }
    (kronrod * half, gauss * half, abs_sum * half.abs())
}

/// Integrate `f` over [a, b] to a relative tolerance.
///
/// The tolerance is taken relative to the integral of |f|, so integrals that
/// vanish by cancellation are still resolved to a sensible absolute accuracy.
///
/// `eval_scale` is the characteristic magnitude of the terms evaluated
/// *inside* `f` — not of `f`'s result, which may be far smaller when those
/// terms cancel. One evaluation of `f` carries absolute rounding noise of
/// about `f64::EPSILON * eval_scale`, and no amount of refinement can push a
/// panel's error below that noise times its width, so such panels are
/// accepted as converged. Pass 0 when `f` cancels nowhere; the mean of |f|
/// over the interval then serves as the scale.
pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    eval_scale: f64,
) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -integrate(f, b, a, rel_tol, eval_scale);
    }
    let (_, _, abs_estimate) = panel(f, a, b);
    let budget = (rel_tol * abs_estimate).max(f64::MIN_POSITIVE);
    // Rounding noise of one evaluation of f, per unit of panel width. The
    // mean of |f| bounds the evaluation scale from below for any integrand.
    let noise = NOISE_SAFETY * f64::EPSILON * eval_scale.max(abs_estimate / (b - a));
    // Panels narrower than this cannot be refined meaningfully in f64.
    let width_floor = (b - a) * 1e-14;
    let mut panels = 0u32;
    refine(f, a, b, budget, noise, width_floor, &mut panels)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    budget: f64,
    noise: f64,
    width_floor: f64,
    panels: &mut u32,
) -> f64 {
    *panels += 1;
    let (kronrod, gauss, _) = panel(f, a, b);
    let error = (kronrod - gauss).abs();
    // A non-finite estimate can only propagate; splitting cannot repair it.
    if !error.is_finite() {
        return kronrod;
    }
    let width = b - a;
    if error <= budget.max(noise * width) || width <= width_floor || *panels >= MAX_PANELS {
        return kronrod;
    }
    let mid = 0.5 * (a + b);
    let left = refine(f, a, mid, 0.5 * budget, noise, width_floor, panels);
    let right = refine(f, mid, b, 0.5 * budget, noise, width_floor, panels);
    left + right
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 15-point Kronrod rule is exact for polynomials up to degree 22;
    /// a single panel must therefore nail monomial integrals to rounding.
    /// This pins every node and weight above to full precision.
    #[test]
    fn kronrod_rule_is_exact_on_monomials() {
        for k in 0..=22u32 {
            let (value, _, _) = panel(&|x: f64| x.powi(k as i32), 0.0, 1.0);
            let exact = 1.0 / f64::from(k + 1);
            assert!(
                (value - exact).abs() <= 5e-15 * exact,
                "degree {k}: got {value:.17e}, want {exact:.17e}"
            );
        }
    }

    #[test]
    fn embedded_gauss_rule_is_exact_on_monomials() {
        for k in 0..=13u32 {
            let (_, value, _) = panel(&|x: f64| x.powi(k as i32), 0.0, 1.0);
            let exact = 1.0 / f64::from(k + 1);
            assert!(
                (value - exact).abs() <= 5e-15 * exact,
                "degree {k}: got {value:.17e}, want {exact:.17e}"
            );
        }
    }

    #[test]
    fn smooth_integrand_hits_machine_accuracy() {
        let value = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, REL_TOL, 0.0);
        assert!((value - 2.0).abs() <= 1e-13);
    }

    #[test]
    fn square_root_endpoint_behaviour_is_resolved() {
        let value = integrate(&|x: f64| x.sqrt(), 0.0, 1.0, REL_TOL, 0.0);
        assert!(((value - 2.0 / 3.0) / (2.0 / 3.0)).abs() <= 1e-11);
    }

    #[test]
    fn cancelling_integrand_is_resolved_absolutely() {
        let value = integrate(&|x: f64| x * x * x, -1.0, 1.0, REL_TOL, 0.0);
        assert!(value.abs() <= 1e-12);
    }

    #[test]
    fn empty_and_reversed_intervals() {
        assert_eq!(integrate(&|_| 1.0, 2.0, 2.0, REL_TOL, 0.0), 0.0);
        let forward = integrate(&|x: f64| x.exp(), 0.0, 1.0, REL_TOL, 0.0);
        let backward = integrate(&|x: f64| x.exp(), 1.0, 0.0, REL_TOL, 0.0);
        assert_eq!(forward, -backward);
    }

    /// An integrand whose value is the difference of two O(1) terms carries
    /// absolute rounding noise near machine epsilon no matter how small the
    /// true integral is. With an honest evaluation scale the refinement must
    /// settle in a handful of panels instead of sweeping the width floor,
    /// and the answer must still be correct to that noise times the width.
    #[test]
    fn noise_dominated_cancellation_terminates_fast() {
        let delta = 1e-9;
        let f = |x: f64| (1.0 + delta) - (1.0 - 0.5 * x * x);
        // Integrand is delta + x^2/2 evaluated through a 1-vs-1 cancellation;
        // exact integral over [0, w]: delta w + w^3 / 6.
        let w = 1e-3;
        let exact = delta * w + w * w * w / 6.0;
        let start = std::time::Instant::now();
        let value = integrate(&f, 0.0, w, REL_TOL, 1.0);
        assert!(start.elapsed() < std::time::Duration::from_millis(50));
        assert!((value - exact).abs() <= 1e-12 * w, "got {value:.6e}, want {exact:.6e}");
    }

    /// A non-finite evaluation must come straight back out instead of
    /// driving the subdivision into the width floor.
    #[test]
    fn non_finite_values_propagate_immediately() {
        let start = std::time::Instant::now();
        let value = integrate(&|x: f64| (x - 0.5).ln(), 0.0, 1.0, REL_TOL, 0.0);
        assert!(start.elapsed() < std::time::Duration::from_millis(50));
        assert!(value.is_nan());
    }
}
