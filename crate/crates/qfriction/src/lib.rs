//! Quantum friction on a two-level atom moving parallel to a Drude-metal
//! surface, in the quasi-static (near-field) regime.
//!
//! The library computes the plasmon-mediated decay rates `Γ±`, the lateral
//! (friction) force on the atom, and the excited-state population dynamics,
//! both in the lossless limit (closed forms in modified Bessel functions)
//! and for a dissipative Drude substrate (adaptive quadrature over the
//! plasmon spectrum). Everything is expressed in dimensionless units:
//!
//! * frequencies in units of the surface-plasmon resonance `ω_sp`,
//! * wave numbers in `ω_sp/c`, lengths in `c/ω_sp`, velocities in `c`,
//! * decay rates in `Γ₀ = (1/4πε₀ħ)(ω_sp/c)³|γ|²`,
//! * forces in `|F₀|` with `F₀ = −(|γ|²/4πε₀)(ω_sp/c)⁴`,
//! * the transition dipole normalized to `|γ|² = 1`.
//!
//! In these units `ħΓ₀(ω_sp/c)/|F₀| = 1`, so the lossless force is a
//! prefactor-free combination of the decay rates.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait (`f64` for production use, `f32` compiles and runs at
//! reduced accuracy); concrete `f64` aliases live at the crate root.
//!
//! ```
//! use qfriction::friction::{decay_rates_lossless, friction_force_lossless, AtomState};
//! use qfriction::{AtomKinematics64, TransitionDipole64};
//!
//! // omega0 = 0.1 omega_sp, d = 0.1 c/omega_sp, v = 0.05 c.
//! let kin = AtomKinematics64::new(0.1, 0.1, 0.05).unwrap();
//! let dip = TransitionDipole64::chiral_minus();
//! let rates = decay_rates_lossless(&kin, &dip);
//! let force = friction_force_lossless(&kin, &dip, &AtomState::ground());
//! assert!(rates.gamma_minus() > rates.gamma_plus()); // chiral ground-channel boost
//! assert!(force.total < 0.0); // drag opposes the motion
//! ```

// Validity checks on generic scalars use `!(a < b)` on purpose: the negated
// form rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

pub mod friction;
pub mod material;
pub mod polarization;
pub mod quadrature;
pub mod specfun;
pub mod validate;

/// Scalar type the numerical core is generic over.
///
/// Implemented for `f32` and `f64` via the blanket impl; all tolerances and
/// tabulated constants are stored as `f64` and converted on use, so `f32`
/// instantiations are exercised at `f32` accuracy.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Convert an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

// Complex numbers are part of the public API surface.
pub use num_complex;

pub use friction::{
    AtomKinematics, AtomState, DecayRates, ForceValue, SubstrateModel, TrajectoryPoint,
};
pub use material::DrudeMetal;
pub use polarization::{SpectralPoint, TransitionDipole};
pub use quadrature::{Peak, PeakSet, Quadrature, QuadratureSpec};

/// `f64` instantiations used by the CLI and in most applications.
pub type DrudeMetal64 = material::DrudeMetal<f64>;
pub type TransitionDipole64 = polarization::TransitionDipole<f64>;
pub type SpectralPoint64 = polarization::SpectralPoint<f64>;
pub type QuadratureSpec64 = quadrature::QuadratureSpec<f64>;
pub type PeakSet64 = quadrature::PeakSet<f64>;
pub type AtomKinematics64 = friction::AtomKinematics<f64>;
pub type AtomState64 = friction::AtomState<f64>;
pub type DecayRates64 = friction::DecayRates<f64>;
pub type ForceValue64 = friction::ForceValue<f64>;
pub type SubstrateModel64 = friction::SubstrateModel<f64>;
