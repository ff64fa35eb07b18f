//! Adaptive Simpson quadrature for smooth integrands.

use crate::num;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol` by recursive
/// Simpson bisection with the standard 1/15 error estimate.
///
/// Intended for smooth integrands (mode profiles, elliptic integrands);
/// recursion depth is capped at 60, far beyond what such integrands need.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_rule(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[inline]
fn simpson_rule(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, m, fa, flm, fm);
    let right = simpson_rule(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || num::abs(delta) <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        let half_tol = 0.5 * tol;
        recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
    }
}
