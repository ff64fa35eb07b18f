//! Eigenvalue problem Δ²w = λw on Ω = (0, π) × (−ℓ, ℓ), hinged at x ∈ {0, π}
//! and free at y = ±ℓ, in separated form w(x, y) = C·φ(y)·sin(mx).
//!
//! Writing s = √λ, a = √(m² + s), and, depending on the branch, b = √(m² − s)
//! or b̂ = √(s − m²), the y-profile φ is a two-term combination of hyperbolic
//! and/or trigonometric functions and the free-edge conditions
//! φ'' − σm²φ = 0 and φ''' − (2 − σ)m²φ' = 0 at y = ±ℓ reduce to one
//! transcendental characteristic equation per family. With
//! A = s − (1 − σ)m² and B = s + (1 − σ)m² the four families are:
//!
//! * even profile, s < m² (one root per m, written μ_{m,1}):
//!   A²a·tanh(aℓ) = B²b·tanh(bℓ) on s ∈ (√(1−σ²)·m², m²);
//! * even profile, s > m² (μ_{m,k}, k ≥ 2):
//!   A²a·tanh(aℓ) + B²b̂·tan(b̂ℓ) = 0 on b̂ℓ ∈ ((k−3/2)π, (k−1)π);
//! * odd profile, s > m² (ν_{m,k}, k ≥ 2):
//!   A²a·tan(b̂ℓ) = B²b̂·tanh(aℓ) on b̂ℓ ∈ ((k−2)π, (k−3/2)π);
//! * odd profile, s < m² (ν_{m,1}, existing only when
//!   tanh(√2·mℓ) < (σ/(2−σ))²·√2·mℓ):
//!   A²a·tanh(bℓ) = B²b·tanh(aℓ) on s ∈ (√μ_{m,1}, m²).
//!
//! Even profiles model vertical (longitudinal) deck oscillation, odd profiles
//! torsional oscillation. Roots are isolated by a uniform sign-change scan
//! inside the stated bracket and contracted by bisection; profiles are
//! normalized so that ∫_Ω w² = 1.

use crate::geometry::PlateGeometry;
use crate::num;
use crate::prelude::*;
use crate::quadrature::adaptive_simpson;
use crate::rootfind;
use core::fmt;

const PI: f64 = core::f64::consts::PI;

/// Classification of an eigenmode: family and index pair (m, k).
///
/// `Longitudinal` modes are even in y (μ family), `Torsional` modes odd in y
/// (ν family). k = 1 selects the sub-m² branch of either family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    LongitudinalMu { m: u32, k: u32 },
    TorsionalNu { m: u32, k: u32 },
}

impl ModeKind {
    pub fn m(self) -> u32 {
        match self {
            ModeKind::LongitudinalMu { m, .. } | ModeKind::TorsionalNu { m, .. } => m,
        }
    }

    pub fn k(self) -> u32 {
        match self {
            ModeKind::LongitudinalMu { k, .. } | ModeKind::TorsionalNu { k, .. } => k,
        }
    }

    pub fn is_torsional(self) -> bool {
        matches!(self, ModeKind::TorsionalNu { .. })
    }
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeKind::LongitudinalMu { m, k } => write!(f, "mu_{{{m},{k}}}"),
            ModeKind::TorsionalNu { m, k } => write!(f, "nu_{{{m},{k}}}"),
        }
    }
}

/// Second term of the y-profile: hyperbolic (s < m² branch) or trigonometric
/// (s > m² branch), with its argument scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SecondTerm {
    /// cosh(b·y) or sinh(b·y) with b = √(m² − s), edge-ratio normalized.
    Hyperbolic { b: f64 },
    /// cos(b̂·y) or sin(b̂·y) with b̂ = √(s − m²).
    Trigonometric { b_hat: f64 },
}

/// Unnormalized y-profile φ̂(y) = p·t₁(y) + q·t₂(y).
///
/// t₁ is cosh(ay)/cosh(aℓ) for even profiles and sinh(ay)/cosh(aℓ) for odd
/// ones; t₂ follows `second` with matching parity. The edge-ratio form keeps
/// every term in [−1, 1], so large arguments cannot overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YProfile {
    pub even: bool,
    pub a: f64,
    pub p: f64,
    pub second: SecondTerm,
    pub q: f64,
    half_width: f64,
}

/// cosh(x·y)/cosh(x·ℓ) in exp-difference form, safe for large x·ℓ.
fn ratio_cosh(x: f64, y: f64, ell: f64) -> f64 {
    let ay = num::abs(y);
    let e = num::exp(x * (ay - ell));
    e * (1.0 + num::exp(-2.0 * x * ay)) / (1.0 + num::exp(-2.0 * x * ell))
}

/// sinh(x·y)/cosh(x·ℓ), odd in y, same guarded form.
fn ratio_sinh(x: f64, y: f64, ell: f64) -> f64 {
    let ay = num::abs(y);
    let e = num::exp(x * (ay - ell));
    let v = e * (1.0 - num::exp(-2.0 * x * ay)) / (1.0 + num::exp(-2.0 * x * ell));
    if y < 0.0 {
        -v
    } else {
        v
    }
}

impl YProfile {
    /// φ̂(y).
    pub fn eval(&self, y: f64) -> f64 {
        self.derivatives(y)[0]
    }

    /// [φ̂, φ̂′, φ̂″, φ̂‴] at y.
    pub fn derivatives(&self, y: f64) -> [f64; 4] {
        let ell = self.half_width;
        let a = self.a;
        let (t1, d1) = if self.even {
            (ratio_cosh(a, y, ell), ratio_sinh(a, y, ell))
        } else {
            (ratio_sinh(a, y, ell), ratio_cosh(a, y, ell))
        };
        let first = [t1, a * d1, a * a * t1, a * a * a * d1];
        let second = match self.second {
            SecondTerm::Hyperbolic { b } => {
                let (t2, d2) = if self.even {
                    (ratio_cosh(b, y, ell), ratio_sinh(b, y, ell))
                } else {
                    (ratio_sinh(b, y, ell), ratio_cosh(b, y, ell))
                };
                [t2, b * d2, b * b * t2, b * b * b * d2]
            }
            SecondTerm::Trigonometric { b_hat } => {
                let (s, c) = (num::sin(b_hat * y), num::cos(b_hat * y));
                let b2 = b_hat * b_hat;
                if self.even {
                    [c, -b_hat * s, -b2 * c, b2 * b_hat * s]
                } else {
                    [s, b_hat * c, -b2 * s, -b2 * b_hat * c]
                }
            }
        };
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = self.p * first[i] + self.q * second[i];
        }
        out
    }
}

/// One separated eigenmode w(x, y) = C·φ̂(y)·sin(mx), L²(Ω)-normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenmode {
    pub kind: ModeKind,
    /// Eigenvalue λ (note √λ = s is the root of the characteristic equation).
    pub lambda: f64,
    /// x-wavenumber m.
    pub m: u32,
    pub profile: YProfile,
    /// C with ∫_{|y|<ℓ} (C·φ̂)² dy = 2/π, hence ∫_Ω w² = 1.
    pub norm_const: f64,
    /// γ = ∫_Ω w (0 for torsional kinds and for even m).
    pub gamma: f64,
    /// Display amplitude of the mode; see `sup_norm_of`.
    pub sup_norm: f64,
}

impl Eigenmode {
    /// √λ.
    pub fn s(&self) -> f64 {
        num::sqrt(self.lambda)
    }

    pub fn k(&self) -> u32 {
        self.kind.k()
    }

    pub fn is_torsional(&self) -> bool {
        self.kind.is_torsional()
    }

    /// w(x, y) = C·φ̂(y)·sin(mx).
    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.norm_const * self.profile.eval(y) * num::sin(self.m as f64 * x)
    }

    /// Normalized profile C·φ̂ and its first three y-derivatives.
    pub fn profile_derivatives(&self, y: f64) -> [f64; 4] {
        let mut d = self.profile.derivatives(y);
        for v in &mut d {
            *v *= self.norm_const;
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumError {
    /// m must be ≥ 1; k must be ≥ 1 (≥ 2 for `solve_nu`).
    BadIndex { m: u32, k: u32 },
    /// The bracket scan found no sign change of the characteristic equation
    /// (geometry outside the validated regime).
    RootNotIsolated { m: u32, k: u32, torsional: bool },
    /// `solve_nu` was called for a wavenumber in the first-torsional regime;
    /// use `solve_nu_first`.
    LowTorsionalRegime { m: u32 },
    /// `solve_nu_first` was called where no first torsional eigenvalue
    /// exists (the threshold condition fails for this wavenumber).
    LowTorsionalAbsent { m: u32 },
    /// The computed profile is identically zero within tolerance (root-finder
    /// failure).
    ProfileCollapse { m: u32, k: u32 },
}

impl fmt::Display for SpectrumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumError::BadIndex { m, k } => {
                write!(f, "invalid mode indices m={m}, k={k}")
            }
            SpectrumError::RootNotIsolated { m, k, torsional } => {
                let fam = if *torsional { "nu" } else { "mu" };
                write!(
                    f,
                    "characteristic equation root not isolated for {fam}_{{{m},{k}}}"
                )
            }
            SpectrumError::LowTorsionalRegime { m } => {
                write!(
                    f,
                    "wavenumber m={m} lies in the first-torsional regime; use solve_nu_first"
                )
            }
            SpectrumError::LowTorsionalAbsent { m } => {
                write!(f, "no first torsional eigenvalue exists for m={m}")
            }
            SpectrumError::ProfileCollapse { m, k } => {
                write!(f, "profile collapse for mode (m={m}, k={k})")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SpectrumError {}

/// Coefficients A = s − (1−σ)m², B = s + (1−σ)m² of the free-edge conditions.
fn edge_coefficients(s: f64, m: f64, sigma: f64) -> (f64, f64) {
    let q = (1.0 - sigma) * m * m;
    (s - q, s + q)
}

/// Characteristic function of the even s < m² family.
fn char_mu_first(s: f64, m: f64, geom: &PlateGeometry) -> f64 {
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let b = num::sqrt(m * m - s);
    ca * ca * a * num::tanh(a * ell) - cb * cb * b * num::tanh(b * ell)
}

/// Characteristic function of the even s > m² family.
fn char_mu_higher(s: f64, m: f64, geom: &PlateGeometry) -> f64 {
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let bh = num::sqrt(s - m * m);
    ca * ca * a * num::tanh(a * ell) + cb * cb * bh * num::tan(bh * ell)
}

/// Characteristic function of the odd s > m² family.
fn char_nu_higher(s: f64, m: f64, geom: &PlateGeometry) -> f64 {
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let bh = num::sqrt(s - m * m);
    ca * ca * a * num::tan(bh * ell) - cb * cb * bh * num::tanh(a * ell)
}

/// Characteristic function of the odd s < m² family.
fn char_nu_first(s: f64, m: f64, geom: &PlateGeometry) -> f64 {
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let b = num::sqrt(m * m - s);
    ca * ca * a * num::tanh(b * ell) - cb * cb * b * num::tanh(a * ell)
}

/// Magnitude scale of the characteristic equation (sum of its two terms'
/// absolute values), used to express residuals relatively.
fn char_scale(mode: &Eigenmode, geom: &PlateGeometry) -> f64 {
    let s = mode.s();
    let m = mode.m as f64;
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let t1 = num::abs(ca * ca * a * num::tanh(a * ell));
    let t2 = match mode.profile.second {
        SecondTerm::Hyperbolic { b } => num::abs(cb * cb * b * num::tanh(b * ell)),
        SecondTerm::Trigonometric { b_hat } => {
            if mode.is_torsional() {
                num::abs(cb * cb * b_hat * num::tanh(a * ell))
            } else {
                num::abs(cb * cb * b_hat * num::tan(b_hat * ell))
            }
        }
    };
    t1 + t2
}

/// |characteristic(√λ)| divided by the equation's magnitude scale.
pub fn characteristic_residual(mode: &Eigenmode, geom: &PlateGeometry) -> f64 {
    let s = mode.s();
    let m = mode.m as f64;
    let raw = match (mode.kind, mode.profile.second) {
        (ModeKind::LongitudinalMu { .. }, SecondTerm::Hyperbolic { .. }) => {
            char_mu_first(s, m, geom)
        }
        (ModeKind::LongitudinalMu { .. }, SecondTerm::Trigonometric { .. }) => {
            char_mu_higher(s, m, geom)
        }
        (ModeKind::TorsionalNu { .. }, SecondTerm::Trigonometric { .. }) => {
            char_nu_higher(s, m, geom)
        }
        (ModeKind::TorsionalNu { .. }, SecondTerm::Hyperbolic { .. }) => {
            char_nu_first(s, m, geom)
        }
    };
    num::abs(raw) / num::max(char_scale(mode, geom), f64::MIN_POSITIVE)
}

/// Whether the odd s < m² eigenvalue exists for this wavenumber:
/// tanh(√2·mℓ) < (σ/(2−σ))²·√2·mℓ. At the default geometry the crossing
/// sits at m ≈ 2734.7, so the condition first holds at m = 2735.
pub fn first_torsional_exists(m: u32, geom: &PlateGeometry) -> bool {
    let t = core::f64::consts::SQRT_2 * m as f64 * geom.half_width;
    let r = geom.poisson / (2.0 - geom.poisson);
    num::tanh(t) < r * r * t
}

/// Wavenumbers m ≤ m_max at which the measure-zero degenerate eigenvalue
/// λ = m⁴ nearly occurs: |tanh(√2·sℓ) − (σ/(2−σ))²·√2·sℓ| < 1e−10 at s = m².
/// Callers may warn and proceed; the spectrum itself is unaffected.
pub fn degenerate_wavenumbers(geom: &PlateGeometry, m_max: u32) -> Vec<u32> {
    let r = geom.poisson / (2.0 - geom.poisson);
    (1..=m_max)
        .filter(|&m| {
            let s = (m as f64) * (m as f64);
            let t = core::f64::consts::SQRT_2 * s * geom.half_width;
            num::abs(num::tanh(t) - r * r * t) < 1e-10
        })
        .collect()
}

/// Fractional inset applied to each bracket before scanning: the
/// characteristic functions vanish degenerately at some bracket endpoints
/// (b = 0 or b̂ = 0) without an eigenvalue there.
const BRACKET_INSET: f64 = 1e-10;

const SCAN_SUBINTERVALS: usize = 64;
const BISECT_REL_TOL: f64 = 1e-13;

fn solve_family<F: Fn(f64) -> f64>(
    f: &F,
    s_lo: f64,
    s_hi: f64,
    m: u32,
    k: u32,
    torsional: bool,
) -> Result<f64, SpectrumError> {
    let span = s_hi - s_lo;
    let lo = s_lo + BRACKET_INSET * span;
    let hi = s_hi - BRACKET_INSET * span;
    rootfind::solve_bracketed(f, lo, hi, SCAN_SUBINTERVALS, BISECT_REL_TOL)
        .map_err(|_| SpectrumError::RootNotIsolated { m, k, torsional })
}

fn build_mode(
    kind: ModeKind,
    s: f64,
    geom: &PlateGeometry,
) -> Result<Eigenmode, SpectrumError> {
    let m = kind.m() as f64;
    let ell = geom.half_width;
    let (ca, cb) = edge_coefficients(s, m, geom.poisson);
    let a = num::sqrt(m * m + s);
    let (even, p, second, q) = match kind {
        ModeKind::LongitudinalMu { k: 1, .. } => {
            let b = num::sqrt(m * m - s);
            (true, ca, SecondTerm::Hyperbolic { b }, cb)
        }
        ModeKind::LongitudinalMu { .. } => {
            let b_hat = num::sqrt(s - m * m);
            (
                true,
                ca * num::cos(b_hat * ell),
                SecondTerm::Trigonometric { b_hat },
                cb,
            )
        }
        ModeKind::TorsionalNu { k: 1, .. } => {
            let b = num::sqrt(m * m - s);
            (
                false,
                ca * num::tanh(b * ell),
                SecondTerm::Hyperbolic { b },
                cb * num::tanh(a * ell),
            )
        }
        ModeKind::TorsionalNu { .. } => {
            let b_hat = num::sqrt(s - m * m);
            (
                false,
                ca * num::sin(b_hat * ell),
                SecondTerm::Trigonometric { b_hat },
                cb * num::tanh(a * ell),
            )
        }
    };
    let scale = num::max(num::abs(p), num::abs(q));
    if scale == 0.0 {
        return Err(SpectrumError::ProfileCollapse {
            m: kind.m(),
            k: kind.k(),
        });
    }
    let profile = YProfile {
        even,
        a,
        p: p / scale,
        second,
        q: q / scale,
        half_width: ell,
    };
    let raw = Eigenmode {
        kind,
        lambda: s * s,
        m: kind.m(),
        profile,
        norm_const: 1.0,
        gamma: 0.0,
        sup_norm: 0.0,
    };
    normalize(raw, geom)
}

/// Quadrature tolerance for profile integrals (profiles are rescaled to O(1)
/// before integration, so an absolute tolerance is meaningful).
const QUAD_TOL: f64 = 1e-12;

/// Recomputes the normalization constant, γ, and the display amplitude of a
/// mode from its profile shape: C is fixed by ∫ φ² dy = 2/π over (−ℓ, ℓ), so
/// that ∫_Ω w² = 1. Idempotent.
pub fn normalize(mode: Eigenmode, geom: &PlateGeometry) -> Result<Eigenmode, SpectrumError> {
    let ell = geom.half_width;
    let shape = mode.profile;
    let ii = adaptive_simpson(&|y| shape.eval(y) * shape.eval(y), -ell, ell, QUAD_TOL);
    if !(ii > 1e-60) || !ii.is_finite() {
        return Err(SpectrumError::ProfileCollapse {
            m: mode.m,
            k: mode.k(),
        });
    }
    let c = num::sqrt(2.0 / PI / ii);
    let mut out = Eigenmode {
        norm_const: c,
        ..mode
    };
    out.gamma = gamma_of(&out, geom);
    out.sup_norm = sup_norm_of(&out, geom);
    Ok(out)
}

/// γ = ∫_Ω w: identically 0 for torsional kinds (odd profile) and for even m
/// (the sin(mx) factor integrates to zero); otherwise (2/m)·C·∫φ̂ dy.
pub fn gamma_of(mode: &Eigenmode, geom: &PlateGeometry) -> f64 {
    if mode.is_torsional() || mode.m.is_multiple_of(2) {
        return 0.0;
    }
    let ell = geom.half_width;
    let shape = mode.profile;
    let iy = adaptive_simpson(&|y| shape.eval(y), -ell, ell, QUAD_TOL);
    2.0 / (mode.m as f64) * mode.norm_const * iy
}

/// Display amplitude of the mode.
///
/// For the k = 1 longitudinal family this is the edge value |C·φ(ℓ)| scaled
/// by √(m³/2), the per-half-wave convention under which the reference
/// amplitude tables and the resonance analysis are stated. For every other
/// family it is the plain maximum of |C·φ| over the width.
pub fn sup_norm_of(mode: &Eigenmode, geom: &PlateGeometry) -> f64 {
    let ell = geom.half_width;
    let c = mode.norm_const;
    if let ModeKind::LongitudinalMu { m, k: 1 } = mode.kind {
        let mf = m as f64;
        return num::abs(c * mode.profile.eval(ell)) * num::sqrt(mf * mf * mf / 2.0);
    }
    // Parity makes [0, ℓ] sufficient; dense scan plus golden-section refine.
    let shape = mode.profile;
    let n = 2048usize;
    let mut best_i = 0usize;
    let mut best = 0.0f64;
    for i in 0..=n {
        let y = ell * (i as f64) / (n as f64);
        let v = num::abs(shape.eval(y));
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = ell * ((best_i.saturating_sub(1)) as f64) / (n as f64);
    let hi = ell * ((best_i + 1).min(n) as f64) / (n as f64);
    let inv_phi = 0.5 * (num::sqrt(5.0) - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = num::abs(shape.eval(x1));
    let mut f2 = num::abs(shape.eval(x2));
    for _ in 0..80 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = num::abs(shape.eval(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = num::abs(shape.eval(x1));
        }
    }
    c * num::max(best, num::max(f1, f2))
}

/// w(x, y) of a normalized mode.
pub fn eigenfunction_value(mode: &Eigenmode, x: f64, y: f64) -> f64 {
    mode.value(x, y)
}

/// Longitudinal eigenvalue μ_{m,k}: unique root of the even-family
/// characteristic equation inside its bracket.
pub fn solve_mu(m: u32, k: u32, geom: &PlateGeometry) -> Result<Eigenmode, SpectrumError> {
    if m < 1 || k < 1 {
        return Err(SpectrumError::BadIndex { m, k });
    }
    let mf = m as f64;
    let s = if k == 1 {
        let s_lo = num::sqrt(1.0 - geom.poisson * geom.poisson) * mf * mf;
        let s_hi = mf * mf;
        solve_family(&|s| char_mu_first(s, mf, geom), s_lo, s_hi, m, k, false)?
    } else {
        let rate = PI / geom.half_width;
        let kf = k as f64;
        let s_lo = mf * mf + rate * rate * (kf - 1.5) * (kf - 1.5);
        let s_hi = mf * mf + rate * rate * (kf - 1.0) * (kf - 1.0);
        solve_family(&|s| char_mu_higher(s, mf, geom), s_lo, s_hi, m, k, false)?
    };
    build_mode(ModeKind::LongitudinalMu { m, k }, s, geom)
}

/// Torsional eigenvalue ν_{m,k} for k ≥ 2: unique root of the odd-family
/// characteristic equation inside its bracket.
pub fn solve_nu(m: u32, k: u32, geom: &PlateGeometry) -> Result<Eigenmode, SpectrumError> {
    if m < 1 || k < 2 {
        return Err(SpectrumError::BadIndex { m, k });
    }
    if first_torsional_exists(m, geom) {
        return Err(SpectrumError::LowTorsionalRegime { m });
    }
    solve_nu_higher(m, k, geom)
}

/// Core of `solve_nu` without the regime guard. The bracket isolates the
/// root whether or not ν_{m,1} exists, so the eigenvalue enumeration can use
/// this for every wavenumber.
fn solve_nu_higher(m: u32, k: u32, geom: &PlateGeometry) -> Result<Eigenmode, SpectrumError> {
    let mf = m as f64;
    let rate = PI / geom.half_width;
    let kf = k as f64;
    let s_lo = mf * mf + rate * rate * (kf - 2.0) * (kf - 2.0);
    let s_hi = mf * mf + rate * rate * (kf - 1.5) * (kf - 1.5);
    let s = solve_family(&|s| char_nu_higher(s, mf, geom), s_lo, s_hi, m, k, true)?;
    build_mode(ModeKind::TorsionalNu { m, k }, s, geom)
}

/// First torsional eigenvalue ν_{m,1} ∈ (μ_{m,1}, m⁴), which exists only for
/// wavenumbers with tanh(√2·mℓ) < (σ/(2−σ))²·√2·mℓ.
pub fn solve_nu_first(m: u32, geom: &PlateGeometry) -> Result<Eigenmode, SpectrumError> {
    if m < 1 {
        return Err(SpectrumError::BadIndex { m, k: 1 });
    }
    if !first_torsional_exists(m, geom) {
        return Err(SpectrumError::LowTorsionalAbsent { m });
    }
    let mu = solve_mu(m, 1, geom)?;
    let mf = m as f64;
    let s = solve_family(
        &|s| char_nu_first(s, mf, geom),
        mu.s(),
        mf * mf,
        m,
        1,
        true,
    )?;
    build_mode(ModeKind::TorsionalNu { m, k: 1 }, s, geom)
}

/// Lower bound (in s = √λ) for a family/index pair: the left endpoint of the
/// bracket its root lives in. Used to schedule the enumeration in
/// `least_eigenvalues`.
fn family_lower_bound(kind: ModeKind, geom: &PlateGeometry) -> f64 {
    let m = kind.m() as f64;
    let rate = PI / geom.half_width;
    match kind {
        ModeKind::LongitudinalMu { k: 1, .. } | ModeKind::TorsionalNu { k: 1, .. } => {
            num::sqrt(1.0 - geom.poisson * geom.poisson) * m * m
        }
        ModeKind::LongitudinalMu { k, .. } => {
            let kf = k as f64;
            m * m + rate * rate * (kf - 1.5) * (kf - 1.5)
        }
        ModeKind::TorsionalNu { k, .. } => {
            let kf = k as f64;
            m * m + rate * rate * (kf - 2.0) * (kf - 2.0)
        }
    }
}

/// Pending work item in the eigenvalue enumeration: either the next
/// unsolved member of an already-opened (family, m) stream, or the opener
/// for the next wavenumber.
#[derive(Debug, Clone, Copy)]
enum Candidate {
    Mode(ModeKind),
    OpenWavenumber(u32),
}

fn candidate_bound(c: Candidate, geom: &PlateGeometry) -> f64 {
    match c {
        Candidate::Mode(kind) => family_lower_bound(kind, geom),
        Candidate::OpenWavenumber(m) => {
            family_lower_bound(ModeKind::LongitudinalMu { m, k: 1 }, geom)
        }
    }
}

/// The n smallest eigenvalues across all four families, ascending, each
/// classified and normalized.
///
/// Within a family at fixed m the eigenvalues increase with k, and every
/// family member has a bracket whose left endpoint lower-bounds its √λ, so
/// the streams can be merged lazily: repeatedly solve the candidate with the
/// smallest lower bound, and a solved eigenvalue is final once no unsolved
/// candidate could undercut it.
pub fn least_eigenvalues(n: usize, geom: &PlateGeometry) -> Result<Vec<Eigenmode>, SpectrumError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut frontier: Vec<Candidate> = vec![Candidate::OpenWavenumber(1)];
    let mut solved: Vec<Eigenmode> = Vec::new();
    loop {
        solved.sort_by(|x, y| x.lambda.partial_cmp(&y.lambda).unwrap());
        let (idx, bound) = frontier
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, candidate_bound(c, geom)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .expect("frontier always holds the next wavenumber opener");
        if solved.len() >= n && solved[n - 1].s() <= bound {
            solved.truncate(n);
            return Ok(solved);
        }
        match frontier.swap_remove(idx) {
            Candidate::OpenWavenumber(m) => {
                frontier.push(Candidate::OpenWavenumber(m + 1));
                frontier.push(Candidate::Mode(ModeKind::LongitudinalMu { m, k: 1 }));
                let first_k = if first_torsional_exists(m, geom) { 1 } else { 2 };
                frontier.push(Candidate::Mode(ModeKind::TorsionalNu { m, k: first_k }));
            }
            Candidate::Mode(kind) => {
                frontier.push(Candidate::Mode(match kind {
                    ModeKind::LongitudinalMu { m, k } => {
                        ModeKind::LongitudinalMu { m, k: k + 1 }
                    }
                    ModeKind::TorsionalNu { m, k } => ModeKind::TorsionalNu { m, k: k + 1 },
                }));
                let mode = match kind {
                    ModeKind::LongitudinalMu { m, k } => solve_mu(m, k, geom)?,
                    ModeKind::TorsionalNu { m, k: 1 } => solve_nu_first(m, geom)?,
                    ModeKind::TorsionalNu { m, k } => solve_nu_higher(m, k, geom)?,
                };
                solved.push(mode);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_containment_mu_first() {
        let geom = PlateGeometry::default();
        for m in 1..=6u32 {
            let mode = solve_mu(m, 1, &geom).unwrap();
            let mf = m as f64;
            let s = mode.s();
            assert!(s > num::sqrt(1.0 - 0.04) * mf * mf && s < mf * mf, "m={m}, s={s}");
        }
    }

    #[test]
    fn first_torsional_threshold_matches_regime() {
        let geom = PlateGeometry::default();
        assert!(!first_torsional_exists(1, &geom));
        assert!(!first_torsional_exists(2734, &geom));
        assert!(first_torsional_exists(2735, &geom));
        assert!(first_torsional_exists(3000, &geom));
    }

    #[test]
    fn solve_nu_first_errors_for_small_m() {
        let geom = PlateGeometry::default();
        assert_eq!(
            solve_nu_first(1, &geom).unwrap_err(),
            SpectrumError::LowTorsionalAbsent { m: 1 }
        );
    }

    #[test]
    fn solve_nu_first_finds_root_in_regime() {
        let geom = PlateGeometry::default();
        for m in [2735u32, 3000] {
            let mode = solve_nu_first(m, &geom).unwrap();
            let mu = solve_mu(m, 1, &geom).unwrap();
            let mf = m as f64;
            assert!(mode.lambda > mu.lambda && mode.lambda < mf.powi(4));
            assert!(characteristic_residual(&mode, &geom) < 1e-9);
        }
    }

    #[test]
    fn profiles_have_stated_parity() {
        let geom = PlateGeometry::default();
        let mu = solve_mu(1, 1, &geom).unwrap();
        let nu = solve_nu(1, 2, &geom).unwrap();
        let y = 0.7 * geom.half_width;
        assert!((mu.value(1.0, y) - mu.value(1.0, -y)).abs() < 1e-12);
        assert!((nu.value(1.0, y) + nu.value(1.0, -y)).abs() < 1e-12);
        assert_eq!(nu.value(1.0, 0.0), 0.0);
    }

    #[test]
    fn hinged_edge_vanishes() {
        let geom = PlateGeometry::default();
        let mode = solve_mu(3, 1, &geom).unwrap();
        assert_eq!(mode.value(0.0, 0.001), 0.0);
        assert!(mode.value(PI, 0.001).abs() < 1e-12);
    }

    #[test]
    fn free_edge_conditions_hold() {
        let geom = PlateGeometry::default();
        for mode in [
            solve_mu(2, 1, &geom).unwrap(),
            solve_mu(1, 2, &geom).unwrap(),
            solve_nu(1, 2, &geom).unwrap(),
        ] {
            let ell = geom.half_width;
            let m2 = (mode.m as f64) * (mode.m as f64);
            let d = mode.profile_derivatives(ell);
            let scale = d.iter().fold(0.0f64, |acc, v| num::max(acc, num::abs(*v)));
            let bc1 = d[2] - geom.poisson * m2 * d[0];
            let bc2 = d[3] - (2.0 - geom.poisson) * m2 * d[1];
            assert!(num::abs(bc1) / scale < 1e-9, "bc1 residual {bc1:e}");
            assert!(num::abs(bc2) / scale < 1e-9, "bc2 residual {bc2:e}");
        }
    }

    #[test]
    fn gamma_zero_cases_are_exact() {
        let geom = PlateGeometry::default();
        assert_eq!(solve_mu(2, 1, &geom).unwrap().gamma, 0.0);
        assert_eq!(solve_nu(1, 2, &geom).unwrap().gamma, 0.0);
    }

    #[test]
    fn least_eigenvalues_sorted_strictly() {
        let geom = PlateGeometry::default();
        let modes = least_eigenvalues(12, &geom).unwrap();
        assert_eq!(modes.len(), 12);
        for w in modes.windows(2) {
            assert!(w[0].lambda < w[1].lambda);
        }
    }

    #[test]
    fn degenerate_scan_is_empty_at_default_geometry() {
        let geom = PlateGeometry::default();
        assert!(degenerate_wavenumbers(&geom, 50).is_empty());
    }
}
