//! Bracketed scalar root finding: uniform sign-change scan, bisection, and a
//! final secant polish.
//!
//! Characteristic equations solved elsewhere in the crate contain tangent
//! terms with poles. A pole between two scan points looks like a sign change
//! (two large finite values of opposite sign), so a contracted bracket is
//! only accepted when |f| shrank under contraction; otherwise the scan
//! resumes beyond the offending subinterval.

use crate::num;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError {
    /// No sign change was found on any scan subinterval.
    NoSignChange { lo: f64, hi: f64 },
    /// The function returned a non-finite value during the scan.
    NonFinite { at: f64 },
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::NoSignChange { lo, hi } => {
                write!(f, "no sign change isolated on [{lo}, {hi}]")
            }
            RootError::NonFinite { at } => {
                write!(f, "function value not finite at {at}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for RootError {}

/// Scans `[lo, hi]` with `n` uniform subintervals and returns the first
/// subinterval whose endpoints have opposite (nonzero) signs.
///
/// Endpoints at which `f` is not finite are skipped rather than treated as
/// sign changes. A sign change straddling a finite-valued pole is still
/// reported; `solve_bracketed` weeds those out by their residual.
pub fn scan_sign_change<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<(f64, f64), RootError> {
    scan_from(f, lo, hi, n, 0).map(|(a, b, _)| (a, b))
}

/// Scan starting at grid index `start`; also returns the right-endpoint
/// index of the found subinterval so the caller can resume past it.
fn scan_from<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    start: usize,
) -> Result<(f64, f64, usize), RootError> {
    let grid = |i: usize| lo + (hi - lo) * (i as f64) / (n as f64);
    let mut prev_x = grid(start);
    let mut prev_f = f(prev_x);
    for i in start + 1..=n {
        let x = grid(i);
        let fx = f(x);
        if prev_f.is_finite() && fx.is_finite() {
            if prev_f == 0.0 {
                return Ok((prev_x, prev_x, i - 1));
            }
            if fx == 0.0 {
                return Ok((x, x, i));
            }
            if (prev_f < 0.0) != (fx < 0.0) {
                return Ok((prev_x, x, i));
            }
        }
        prev_x = x;
        prev_f = fx;
    }
    Err(RootError::NoSignChange { lo, hi })
}

/// Bisects a verified sign-change bracket down to relative width `rel_tol`,
/// then applies one secant step for a last digit of polish.
///
/// The secant iterate is kept only if it stays inside the final bracket and
/// does not increase |f|.
pub fn bisect_refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return a;
    }
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!((flo < 0.0) != (fhi < 0.0), "bracket must straddle a root");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if num::abs(hi - lo) <= rel_tol * num::max(num::abs(lo), num::abs(hi)) {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if (fmid < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let fa = f(lo);
    let fb = f(hi);
    let mid = 0.5 * (lo + hi);
    if fa == fb {
        return mid;
    }
    let secant = lo - fa * (hi - lo) / (fb - fa);
    if secant.is_finite() && secant >= lo && secant <= hi {
        let fs = f(secant);
        let fm = f(mid);
        if fs.is_finite() && num::abs(fs) <= num::abs(fm) {
            return secant;
        }
    }
    mid
}

/// Convenience wrapper: scan, then contract. `n` subintervals, bisection to
/// relative width `rel_tol`.
///
/// A contracted point is accepted only if |f| there is no larger than at the
/// ends of its scan subinterval; a sign change caused by a finite-valued
/// pole fails that test (|f| blows up under contraction) and the scan
/// resumes beyond it.
pub fn solve_bracketed<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    rel_tol: f64,
) -> Result<f64, RootError> {
    let mut start = 0;
    loop {
        let (a, b, next) = scan_from(f, lo, hi, n, start)?;
        let root = bisect_refine(f, a, b, rel_tol);
        let residual = num::abs(f(root));
        if residual <= num::min(num::abs(f(a)), num::abs(f(b))) {
            return Ok(root);
        }
        start = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_root() {
        let f = |x: f64| num::cos(x);
        let r = solve_bracketed(&f, 0.0, 3.0, 64, 1e-13).unwrap();
        assert!((r - core::f64::consts::FRAC_PI_2).abs() < 1e-12, "got {r}");
    }

    #[test]
    fn skips_tangent_pole() {
        // tan has a pole at π/2 but its root on (1, 4) is at π.
        let f = |x: f64| num::tan(x);
        let r = solve_bracketed(&f, 1.0, 4.0, 64, 1e-13).unwrap();
        assert!((r - core::f64::consts::PI).abs() < 1e-12, "got {r}");
    }

    #[test]
    fn reports_missing_root() {
        let f = |x: f64| 1.0 + x * x;
        assert!(matches!(
            solve_bracketed(&f, -1.0, 1.0, 64, 1e-13),
            Err(RootError::NoSignChange { .. })
        ));
    }

    #[test]
    fn polish_hits_quadratic_root_tightly() {
        let f = |x: f64| x * x - 2.0;
        let r = solve_bracketed(&f, 0.0, 2.0, 64, 1e-13).unwrap();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-14, "got {r}");
    }
}
