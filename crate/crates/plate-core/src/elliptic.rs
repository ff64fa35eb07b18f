//! Jacobi elliptic functions sn, cn, dn and the complete elliptic integral of
//! the first kind, by arithmetic-geometric mean iteration.
//!
//! These support two jobs elsewhere in the crate: the periodic drive waveform
//! A·b·sn(bt,k)·dn(bt,k), and the exact single-mode benchmark solution
//! z(t) = −(A/δ)·cn(bt,k), whose period is τ = 4K(k)/b.

use crate::num;
use core::fmt;

/// Modulus k of the elliptic functions, restricted to [0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus(f64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EllipticError {
    /// Modulus outside [0, 1).
    ModulusOutOfRange { k: f64 },
}

impl fmt::Display for EllipticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EllipticError::ModulusOutOfRange { k } => {
                write!(f, "elliptic modulus {k} outside [0, 1)")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EllipticError {}

impl Modulus {
    pub fn new(k: f64) -> Result<Self, EllipticError> {
        if k.is_finite() && (0.0..1.0).contains(&k) {
            Ok(Modulus(k))
        } else {
            Err(EllipticError::ModulusOutOfRange { k })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Complete elliptic integral K(k) = ∫₀^{π/2} dφ/√(1 − k²sin²φ).
///
/// AGM iteration: quadratic convergence, exact π/2 at k = 0.
pub fn complete_k(k: Modulus) -> f64 {
    let mut a = 1.0f64;
    let mut b = num::sqrt(1.0 - k.0 * k.0);
    for _ in 0..64 {
        if num::abs(a - b) <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = num::sqrt(a * b);
        a = an;
    }
    core::f64::consts::FRAC_PI_2 / a
}

/// Jacobi elliptic functions evaluated by the descending AGM/Landen
/// backward recurrence; below k = 1e−8 a small-modulus series is used.
///
/// Returns (sn, cn, dn) at argument `u`.
pub fn jacobi(u: f64, k: Modulus) -> (f64, f64, f64) {
    let k = k.0;
    if k < 1e-8 {
        // Small-modulus expansion: accurate to O(k⁴), below round-off here.
        let (s, c) = (num::sin(u), num::cos(u));
        let corr = 0.25 * k * k * (u - s * c);
        let sn = s - corr * c;
        let cn = c + corr * s;
        let dn = 1.0 - 0.5 * k * k * s * s;
        return (sn, cn, dn);
    }

    let mut a_seq = [0.0f64; 64];
    let mut c_seq = [0.0f64; 64];
    let mut a = 1.0f64;
    let mut b = num::sqrt(1.0 - k * k);
    let mut n = 0usize;
    loop {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = num::sqrt(a * b);
        a = an;
        n += 1;
        a_seq[n] = a;
        c_seq[n] = c;
        if num::abs(c) <= f64::EPSILON * a || n + 1 == a_seq.len() {
            break;
        }
    }

    // φ_n = 2ⁿ aₙ u, then φ_{i−1} = (φ_i + asin((c_i/a_i) sin φ_i)) / 2.
    let mut phi = (1u64 << n) as f64 * a * u;
    let mut phi_next = phi;
    for i in (1..=n).rev() {
        phi_next = phi;
        let arg = (c_seq[i] / a_seq[i]) * num::sin(phi);
        phi = 0.5 * (phi + num::asin(arg));
    }
    let sn = num::sin(phi);
    let cn = num::cos(phi);
    // dn = cos φ₀ / cos(φ₁ − φ₀) degrades to 0/0 as cn → 0 (quarter
    // period); switch to the defining identity there.
    let dn = if num::abs(cn) < 0.01 {
        num::sqrt(1.0 - k * k * sn * sn)
    } else {
        cn / num::cos(phi_next - phi)
    };
    (sn, cn, dn)
}

/// Period τ = 4K(k)/b of the cn-wave and of the sn·dn drive.
pub fn period_tau(b: f64, k: Modulus) -> f64 {
    debug_assert!(b > 0.0, "frequency scale b must be positive");
    4.0 * complete_k(k) / b
}

/// Exact periodic single-mode solution z(t) = −(A/δ)·cn(bt, k).
///
/// With b² = μ + S m⁴A²/δ² and k² = S m⁴A²/(2(μδ² + S m⁴A²)), this solves
/// z̈ + δż + μz + S m⁴z³ = A·b·sn(bt,k)·dn(bt,k) exactly.
pub fn exact_cn_solution(amplitude: f64, delta: f64, b: f64, k: Modulus, t: f64) -> f64 {
    let (_, cn, _) = jacobi(b * t, k);
    -(amplitude / delta) * cn
}
