//! The physics core: plasmon-mediated decay rates `Γ±`, the lateral
//! (friction) force on the moving atom, steady-state limits, population
//! dynamics, and the two closed-form scaling estimates.
//!
//! Everything is dimensionless (see the crate docs): rates in `Γ₀`, forces
//! in `|F₀|`, and with `ω_sp = 1` the lossless force is prefactor-free,
//!
//! `F = pe·((ω₀−1)/v)·Γ̄⁺ − (1−pe)·((ω₀+1)/v)·Γ̄⁻`.
//!
//! The lossless rates sample the reduced kernel at the plasmon selection
//! wave numbers `k_P,± = −(ω₀ ∓ 1)/v`: `Γ̄± = W(k_P,±)/(2v)`. For a lossy
//! substrate the delta peaks broaden into Lorentzians and the rates/force
//! become 1D spectral integrals of `W(kx)·Im R(ω₀ + kx v)`, evaluated with
//! peak-aware adaptive quadrature. The lossless case is always routed to
//! the analytic expressions, never through a numerically broadened limit.

use thiserror::Error;

use crate::material::{im_reflection_real_axis, DrudeMetal, MaterialError};
use crate::polarization::{ky_reduced_kernel, pol_factor, SpectralPoint, TransitionDipole};
use crate::quadrature::{
    integrate, integrate_2d_iterated, locate_peaks, Domain, Peak, Quadrature, QuadratureError,
    QuadratureSpec,
};
use crate::{cst, Real};

/// Rates below this (in `Γ₀`) are reported as exponentially negligible:
/// the `e^{−2ξ}` envelope at small velocity underflows long before any
/// physics becomes questionable, and a hard zero with a flag beats a
/// denormal masquerading as signal.
const NEGLIGIBLE_RATE: f64 = 1e-280;

/// Velocity above which the Galilean (non-relativistic) treatment is
/// strained and results should be taken qualitatively.
const GALILEAN_STRAIN_V: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum FrictionError<T: Real> {
    #[error(
        "invalid kinematics: omega0={omega0}, d={d}, v={v} (need omega0 >= 0, d > 0, 0 < v < 1)"
    )]
    InvalidKinematics { omega0: T, d: T, v: T },
    #[error("excited-state probability must lie in [0, 1], got {pe}")]
    InvalidState { pe: T },
    #[error("both decay rates are negligible; the population dynamics is undefined")]
    DegenerateRates,
    #[error("substrate has gamma_c = 0; use the lossless (analytic) operations")]
    LosslessSubstrate,
    #[error("trajectory times must be non-negative and sorted")]
    InvalidTimes,
    #[error(transparent)]
    Quadrature(#[from] QuadratureError<T>),
    #[error(transparent)]
    Material(#[from] MaterialError<T>),
}

/// Transition frequency `ω₀` (units `ω_sp`), height `d` (units `c/ω_sp`)
/// and velocity `v` (units `c`) of the moving atom. All formulas assume
/// `v > 0`; negative-velocity problems map onto `v > 0` with the mirrored
/// dipole (`γx → −γx`), which the CLI performs at its boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomKinematics<T> {
    omega0: T,
    d: T,
    v: T,
}

impl<T: Real> AtomKinematics<T> {
    pub fn new(omega0: T, d: T, v: T) -> Result<Self, FrictionError<T>> {
        let ok = omega0 >= T::zero()
            && omega0.is_finite()
            && d > T::zero()
            && d.is_finite()
            && v > T::zero()
            && v < T::one();
        if !ok {
            return Err(FrictionError::InvalidKinematics { omega0, d, v });
        }
        Ok(Self { omega0, d, v })
    }

    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn d(&self) -> T {
        self.d
    }

    pub fn v(&self) -> T {
        self.v
    }

    /// Warning flag: `v > 0.3 c` stretches the Galilean approximation.
    pub fn galilean_strained(&self) -> bool {
        self.v > cst(GALILEAN_STRAIN_V)
    }
}

/// Excited-state probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomState<T> {
    pe: T,
}

impl<T: Real> AtomState<T> {
    pub fn new(pe: T) -> Result<Self, FrictionError<T>> {
        if pe >= T::zero() && pe <= T::one() {
            Ok(Self { pe })
        } else {
            Err(FrictionError::InvalidState { pe })
        }
    }

    pub fn ground() -> Self {
        Self { pe: T::zero() }
    }

    pub fn excited() -> Self {
        Self { pe: T::one() }
    }

    pub fn pe(&self) -> T {
        self.pe
    }
}

/// Decay rates `Γ̄± = Γ±/Γ₀ ≥ 0`: excited→ground (`plus`) and the
/// motion-enabled ground→excited channel (`minus`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRates<T> {
    gamma_plus: T,
    gamma_minus: T,
}

impl<T: Real> DecayRates<T> {
    fn new(gamma_plus: T, gamma_minus: T) -> Self {
        debug_assert!(gamma_plus >= -T::epsilon() && gamma_minus >= -T::epsilon());
        Self {
            gamma_plus: gamma_plus.max(T::zero()),
            gamma_minus: gamma_minus.max(T::zero()),
        }
    }

    pub fn gamma_plus(&self) -> T {
        self.gamma_plus
    }

    pub fn gamma_minus(&self) -> T {
        self.gamma_minus
    }

    pub fn total(&self) -> T {
        self.gamma_plus + self.gamma_minus
    }

    /// Exponential-envelope underflow flags (value below 1e-280 `Γ₀`).
    pub fn plus_negligible(&self) -> bool {
        self.gamma_plus < cst(NEGLIGIBLE_RATE)
    }

    pub fn minus_negligible(&self) -> bool {
        self.gamma_minus < cst(NEGLIGIBLE_RATE)
    }

    pub fn both_negligible(&self) -> bool {
        self.plus_negligible() && self.minus_negligible()
    }

    /// Steady-state excited population `Γ̄⁻/(Γ̄⁻+Γ̄⁺)`.
    pub fn pe_infinity(&self) -> Result<T, FrictionError<T>> {
        if self.both_negligible() {
            return Err(FrictionError::DegenerateRates);
        }
        Ok(self.gamma_minus / self.total())
    }
}

/// A force in `|F₀|` units, decomposed into the two state channels:
/// `total = pe·excited_channel + (1−pe)·ground_channel`, recorded at
/// construction. The ground channel is a drag (`≤ 0`) always; the excited
/// channel's sign is unconstrained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceValue<T> {
    pub total: T,
    pub excited_channel: T,
    pub ground_channel: T,
    pub err_estimate: T,
}

impl<T: Real> ForceValue<T> {
    fn compose(pe: T, excited_channel: T, ground_channel: T, err_estimate: T) -> Self {
        Self {
            total: pe * excited_channel + (T::one() - pe) * ground_channel,
            excited_channel,
            ground_channel,
            err_estimate,
        }
    }
}

/// Substrate description for the model-dispatched operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SubstrateModel<T> {
    /// `Γ_c → 0⁺`: analytic delta-limit formulas.
    Lossless,
    /// Dissipative Drude metal, integrated numerically.
    Drude {
        metal: DrudeMetal<T>,
        quad: QuadratureSpec<T>,
    },
}

/// Plasmon selection wave numbers `k_P,± = −(ω₀ ∓ ω_sp)/v`. `k_minus` is
/// always negative; `k_plus` is positive exactly when `ω₀ < ω_sp`.
pub fn plasmon_wavenumbers<T: Real>(kin: &AtomKinematics<T>) -> (T, T) {
    let k_plus = (T::one() - kin.omega0) / kin.v;
    let k_minus = -(T::one() + kin.omega0) / kin.v;
    (k_plus, k_minus)
}

/// Lossless decay rates `Γ̄± = W(k_P,±)/(2v)` (equivalently
/// `(1/v)k_P,±²[(px−py)K₀ + ((py+pz)/2)(K₀+K₂) + sgn(k_P,±)·s_y·K₁]` with
/// Bessel arguments `2|k_P,±|d`).
pub fn decay_rates_lossless<T: Real>(
    kin: &AtomKinematics<T>,
    dip: &TransitionDipole<T>,
) -> DecayRates<T> {
    let (k_plus, k_minus) = plasmon_wavenumbers(kin);
    let two_v = kin.v + kin.v;
    DecayRates::new(
        ky_reduced_kernel(k_plus, dip, kin.d) / two_v,
        ky_reduced_kernel(k_minus, dip, kin.d) / two_v,
    )
}

fn channels_from_rates<T: Real>(kin: &AtomKinematics<T>, rates: &DecayRates<T>) -> (T, T) {
    let excited = (kin.omega0 - T::one()) / kin.v * rates.gamma_plus();
    let ground = -(kin.omega0 + T::one()) / kin.v * rates.gamma_minus();
    (excited, ground)
}

/// Lossless friction force
/// `F/|F₀| = pe·((ω₀−1)/v)·Γ̄⁺ − (1−pe)·((ω₀+1)/v)·Γ̄⁻`.
pub fn friction_force_lossless<T: Real>(
    kin: &AtomKinematics<T>,
    dip: &TransitionDipole<T>,
    state: &AtomState<T>,
) -> ForceValue<T> {
    let rates = decay_rates_lossless(kin, dip);
    let (excited, ground) = channels_from_rates(kin, &rates);
    ForceValue::compose(state.pe, excited, ground, T::zero())
}

/// Steady-state (`t → ∞`) lossless force `−(2/v)·Γ̄⁻Γ̄⁺/(Γ̄⁻+Γ̄⁺)`,
/// strictly negative: the atom is always slowed down once it forgets its
/// initial state.
pub fn steady_state_force_lossless<T: Real>(
    kin: &AtomKinematics<T>,
    dip: &TransitionDipole<T>,
) -> Result<ForceValue<T>, FrictionError<T>> {
    let rates = decay_rates_lossless(kin, dip);
    let pe_inf = rates.pe_infinity()?;
    let (excited, ground) = channels_from_rates(kin, &rates);
    Ok(ForceValue::compose(pe_inf, excited, ground, T::zero()))
}

/// Decay constant for the semi-infinite spectral tails: the Bessel envelope
/// of `W` is `e^{−2|kx|d}`.
fn tail_scale<T: Real>(kin: &AtomKinematics<T>) -> T {
    T::one() / (kin.d + kin.d)
}

fn check_lossy<T: Real>(metal: &DrudeMetal<T>) -> Result<(), FrictionError<T>> {
    if metal.is_lossless() {
        Err(FrictionError::LosslessSubstrate)
    } else {
        Ok(())
    }
}

/// Peaks of the spectral integrand plus a structural breakpoint at `kx = 0`
/// where `W` has a weak derivative kink.
fn spectral_peaks<T: Real>(metal: &DrudeMetal<T>, kin: &AtomKinematics<T>) -> Vec<Peak<T>> {
    let mut peaks = locate_peaks(metal, kin.omega0, kin.v).peaks;
    peaks.push(Peak::delta(T::zero()));
    peaks
}

/// Lossy decay rates, 1D-reduced:
/// `Γ̄⁺ = (1/π)∫_{−ω₀/v}^{∞} dkx W(kx)·(−Im R(ω₀+kx v))` and
/// `Γ̄⁻ = −(1/π)∫_{−∞}^{−ω₀/v} dkx W(kx)·(−Im R(ω₀+kx v))`; both
/// integrands are pointwise non-negative with those orientations.
pub fn decay_rates_lossy<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    spec: &QuadratureSpec<T>,
) -> Result<DecayRates<T>, FrictionError<T>> {
    check_lossy(metal)?;
    let split = -kin.omega0 / kin.v;
    let peaks = spectral_peaks(metal, kin);
    let scale = tail_scale(kin);
    let pi = T::PI();

    let f = |kx: T| {
        ky_reduced_kernel(kx, dip, kin.d)
            * (-im_reflection_real_axis(metal, kin.omega0 + kx * kin.v).expect("gamma_c > 0"))
    };
    let plus = integrate(
        f,
        Domain::HalfLineAbove {
            a: split,
            decay_scale: scale,
        },
        &peaks,
        spec,
    )?;
    let minus = integrate(
        f,
        Domain::HalfLineBelow {
            b: split,
            decay_scale: scale,
        },
        &peaks,
        spec,
    )?;
    Ok(DecayRates::new(plus.value / pi, -minus.value / pi))
}

struct LossyChannels<T> {
    excited: T,
    ground: T,
    err: T,
}

/// Both force channels; they do not depend on the atomic state, which only
/// weighs them in the composition.
fn lossy_force_channels<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    spec: &QuadratureSpec<T>,
) -> Result<LossyChannels<T>, FrictionError<T>> {
    let excited = lossy_ground_or_excited(kin, metal, dip, spec, true)?;
    let ground = lossy_ground_or_excited(kin, metal, dip, spec, false)?;
    Ok(LossyChannels {
        excited: excited.value,
        ground: ground.value,
        err: excited.err_estimate.max(ground.err_estimate),
    })
}

fn lossy_ground_or_excited<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    spec: &QuadratureSpec<T>,
    excited: bool,
) -> Result<Quadrature<T>, FrictionError<T>> {
    check_lossy(metal)?;
    let split = -kin.omega0 / kin.v;
    let peaks = spectral_peaks(metal, kin);
    let scale = tail_scale(kin);
    let pi = T::PI();

    let f = |kx: T| {
        kx * ky_reduced_kernel(kx, dip, kin.d)
            * im_reflection_real_axis(metal, kin.omega0 + kx * kin.v).expect("gamma_c > 0")
    };
    let domain = if excited {
        Domain::HalfLineAbove {
            a: split,
            decay_scale: scale,
        }
    } else {
        Domain::HalfLineBelow {
            b: split,
            decay_scale: scale,
        }
    };
    let mut q = integrate(f, domain, &peaks, spec)?;
    q.value = q.value / pi;
    q.err_estimate = q.err_estimate / pi;
    Ok(q)
}

/// Lossy friction force, 1D-reduced:
/// `F/|F₀| = (1/π)[pe·∫_{−ω₀/v}^{∞} + (1−pe)·∫_{−∞}^{−ω₀/v}] dkx·kx·W(kx)·Im R(ω₀+kx v)`.
pub fn friction_force_lossy<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    state: &AtomState<T>,
    spec: &QuadratureSpec<T>,
) -> Result<ForceValue<T>, FrictionError<T>> {
    let ch = lossy_force_channels(kin, metal, dip, spec)?;
    Ok(ForceValue::compose(state.pe, ch.excited, ch.ground, ch.err))
}

/// Ground channel only (`pe = 0` fast path for parameter maps); identical
/// integral and value as `friction_force_lossy(.., pe=0).ground_channel`.
pub fn ground_state_force_lossy<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Quadrature<T>, FrictionError<T>> {
    lossy_ground_or_excited(kin, metal, dip, spec, false)
}

/// The 2D spectral integrand `e^{−2k∥d}·A(kx,ky)`, with the removable
/// `k∥ → 0` point filled by its limit (zero).
fn envelope_pol<T: Real>(kx: T, ky: T, dip: &TransitionDipole<T>, d: T) -> T {
    let p = SpectralPoint::new(kx, ky);
    match pol_factor(p, dip) {
        Ok(a) => a * (-(p.kpar() + p.kpar()) * d).exp(),
        Err(_) => T::zero(),
    }
}

/// Brute-force oracle: the friction force evaluated as the full 2D
/// `(kx, ky)` integral without the Bessel reduction. Used only to cross
/// check [`friction_force_lossy`]; accuracy is oracle-grade (~1e-6).
pub fn friction_force_lossy_2d<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    state: &AtomState<T>,
    spec: &QuadratureSpec<T>,
) -> Result<ForceValue<T>, FrictionError<T>> {
    check_lossy(metal)?;
    let f = |kx: T, ky: T| {
        kx * envelope_pol(kx, ky, dip, kin.d)
            * im_reflection_real_axis(metal, kin.omega0 + kx * kin.v).expect("gamma_c > 0")
    };
    let (excited, ground) = both_channels_2d(kin, metal, &f, spec)?;
    let err = excited.err_estimate.max(ground.err_estimate) / T::PI();
    Ok(ForceValue::compose(
        state.pe,
        excited.value / T::PI(),
        ground.value / T::PI(),
        err,
    ))
}

/// Brute-force oracle for the decay rates, as the full 2D integral.
pub fn decay_rates_lossy_2d<T: Real>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    dip: &TransitionDipole<T>,
    spec: &QuadratureSpec<T>,
) -> Result<DecayRates<T>, FrictionError<T>> {
    check_lossy(metal)?;
    let f = |kx: T, ky: T| {
        envelope_pol(kx, ky, dip, kin.d)
            * (-im_reflection_real_axis(metal, kin.omega0 + kx * kin.v).expect("gamma_c > 0"))
    };
    let (plus, minus) = both_channels_2d(kin, metal, &f, spec)?;
    Ok(DecayRates::new(
        plus.value / T::PI(),
        -minus.value / T::PI(),
    ))
}

fn both_channels_2d<T: Real, F: Fn(T, T) -> T>(
    kin: &AtomKinematics<T>,
    metal: &DrudeMetal<T>,
    f: &F,
    spec: &QuadratureSpec<T>,
) -> Result<(Quadrature<T>, Quadrature<T>), FrictionError<T>> {
    let split = -kin.omega0 / kin.v;
    let peaks = spectral_peaks(metal, kin);
    let scale = tail_scale(kin);
    let inner = Domain::RealLine { decay_scale: scale };
    let above = integrate_2d_iterated(
        f,
        Domain::HalfLineAbove {
            a: split,
            decay_scale: scale,
        },
        &peaks,
        inner,
        spec,
    )?;
    let below = integrate_2d_iterated(
        f,
        Domain::HalfLineBelow {
            b: split,
            decay_scale: scale,
        },
        &peaks,
        inner,
        spec,
    )?;
    Ok((above, below))
}

/// Excited-state probability
/// `P_e(t) = P_e(0)e^{−Γt} + (Γ̄⁻/Γ)(1−e^{−Γt})`, `Γ = Γ̄⁺+Γ̄⁻`;
/// monotone approach to `Γ̄⁻/Γ`, always inside `[0, 1]`.
pub fn excited_probability<T: Real>(
    t: T,
    pe0: T,
    rates: &DecayRates<T>,
) -> Result<T, FrictionError<T>> {
    if !(pe0 >= T::zero() && pe0 <= T::one()) {
        return Err(FrictionError::InvalidState { pe: pe0 });
    }
    if t < T::zero() {
        return Err(FrictionError::InvalidTimes);
    }
    let pe_inf = rates.pe_infinity()?;
    let decay = (-rates.total() * t).exp();
    Ok((pe0 * decay + pe_inf * (T::one() - decay))
        .max(T::zero())
        .min(T::one()))
}

/// One row of a force trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint<T> {
    pub t: T,
    pub pe: T,
    pub force: ForceValue<T>,
}

/// Force and population along a list of times (non-negative, sorted). The
/// state relaxes per `excited_probability`; with a lossy substrate both the
/// rates and the force channels are the lossy ones, so the trajectory is
/// consistent with the dissipative dynamics throughout.
pub fn force_trajectory<T: Real>(
    kin: &AtomKinematics<T>,
    model: &SubstrateModel<T>,
    dip: &TransitionDipole<T>,
    pe0: T,
    times: &[T],
) -> Result<Vec<TrajectoryPoint<T>>, FrictionError<T>> {
    if times.windows(2).any(|w| w[0] > w[1]) || times.first().is_some_and(|&t| t < T::zero()) {
        return Err(FrictionError::InvalidTimes);
    }
    let (rates, excited, ground, err) = match model {
        SubstrateModel::Lossless => {
            let rates = decay_rates_lossless(kin, dip);
            let (e, g) = channels_from_rates(kin, &rates);
            (rates, e, g, T::zero())
        }
        SubstrateModel::Drude { metal, quad } => {
            let rates = decay_rates_lossy(kin, metal, dip, quad)?;
            let ch = lossy_force_channels(kin, metal, dip, quad)?;
            (rates, ch.excited, ch.ground, ch.err)
        }
    };
    times
        .iter()
        .map(|&t| {
            let pe = excited_probability(t, pe0, &rates)?;
            Ok(TrajectoryPoint {
                t,
                pe,
                force: ForceValue::compose(pe, excited, ground, err),
            })
        })
        .collect()
}

/// Velocity maximizing the ground-state friction force,
/// `v_opt ≈ (4/7)(ω₀ + ω_sp)d` (valid in the near-field regime
/// `ω_sp·d ≪ 1`; the Bessel envelope argument `u = |k_P,−|d` peaks the
/// force at `u = 7/4`).
pub fn optimal_velocity<T: Real>(kin: &AtomKinematics<T>) -> T {
    cst::<T>(4.0 / 7.0) * (kin.omega0 + T::one()) * kin.d
}

/// Transition frequency maximizing the ground-state force at fixed `v, d`:
/// `ω₀,opt ≈ max{0, (5/4)(v/d) − ω_sp}` (the envelope peaks at `u = 5/4`).
pub fn optimal_frequency<T: Real>(v: T, d: T) -> T {
    (cst::<T>(1.25) * v / d - T::one()).max(T::zero())
}
