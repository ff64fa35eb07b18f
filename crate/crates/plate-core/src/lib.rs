//! Spectral-dynamical core for a rectangular plate Ω = (0, π) × (−ℓ, ℓ) with
//! hinged short edges and free long edges, as a model of a suspension-bridge
//! deck.
//!
//! The crate covers five layers:
//!
//! * [`spectrum`]: the biharmonic eigenvalue problem Δ²w = λw on Ω, solved in
//!   separated form w(x, y) = C·φ(y)·sin(mx). Eigenvalues come in four
//!   families (two even in y, "longitudinal"; two odd in y, "torsional"),
//!   each the root of a transcendental characteristic equation inside a known
//!   bracket. Modes carry their L²-normalization constant, forcing projection
//!   γ = ∫_Ω w, and display amplitude.
//! * [`modal`]: Galerkin reduction of the plate equation
//!   u_tt + δu_t + Δ²u + [P − S‖u_x‖²_{L²}] u_xx = g to the modal system
//!   ḧ_k + δḣ_k + λ_k h_k + m_k²[−P + S Σ_j m_j² h_j²] h_k = g_k(t),
//!   integrated by a classical fourth-order one-step scheme (fixed or
//!   adaptive step), with per-sample energy splitting into longitudinal,
//!   torsional, and coupling parts.
//! * [`elliptic`]: Jacobi elliptic functions sn, cn, dn and the complete
//!   elliptic integral K, supporting an exact cn-wave benchmark solution of
//!   the single-mode Duffing equation under the matched sn·dn drive.
//! * [`stability`]: trajectory classification (torsional decay, persistence,
//!   local-instability flag), asymptotic energy/norm bound monitors, an
//!   explicit certified threshold on ‖u_x‖² for exponential torsional decay,
//!   and decay-rate fitting.
//! * [`prevailing`]: closed-form damped-driven response of the linearized
//!   modes, resonance amplitudes A_k(ω), and the prevailing-mode map with its
//!   crossover frequencies.
//! * [`physical`]: conversion of dimensional deck/wind parameters into the
//!   nondimensional model parameters (δ, S, scaled geometry and forcing).
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the default
//! `std` feature for embedded use. All operations are pure and deterministic.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN,
// which the suggested `x <= 0.0` rewrite would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

#[cfg(not(feature = "std"))]
extern crate alloc;

#[cfg(not(feature = "std"))]
pub(crate) mod prelude {
    #[allow(unused_imports)]
    pub use alloc::format;
    #[allow(unused_imports)]
    pub use alloc::string::String;
    pub use alloc::vec;
    pub use alloc::vec::Vec;
}

#[cfg(feature = "std")]
pub(crate) mod prelude {
    #[allow(unused_imports)]
    pub use std::format;
    #[allow(unused_imports)]
    pub use std::string::String;
    pub use std::vec;
    pub use std::vec::Vec;
}

pub mod elliptic;
pub mod geometry;
pub mod modal;
pub mod num;
pub mod physical;
pub mod prevailing;
pub mod quadrature;
pub mod rootfind;
pub mod spectrum;
pub mod stability;

pub use geometry::PlateGeometry;
