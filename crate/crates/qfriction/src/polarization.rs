//! Transition-dipole algebra: the polarization factor `A`, the dipole spin
//! projection `s_y`, and the analytic `k_y`-reduced kernel `W` that turns
//! every 2D spectral integral of this problem into a 1D one.
//!
//! For a dipole `γ` (normalized to `|γ|² = 1`) and in-plane wave vector
//! `k∥ = (kx, ky)` the quasi-static coupling strength is
//!
//! `A(kx, ky) = |(k∥ − i k∥ ẑ)·γ|² / k∥`,
//!
//! and the `k_y` integral of `e^{−2k∥d} A` evaluates in closed form to
//!
//! `W(kx) = 2kx²[(px−py)K₀(ξ) + ((py+pz)/2)(K₀+K₂)(ξ) + sgn(kx)·s_y·K₁(ξ)]`
//!
//! with `ξ = 2|kx|d`, `p_m = |γ_m|²` and `s_y = −i(γ×γ*)·ŷ`. `W` is the
//! single source of truth for the spectral integrals; 2D quadrature of `A`
//! exists in the test/oracle path only.

use std::str::FromStr;

use num_complex::Complex;
use thiserror::Error;

use crate::material::{reflection, DrudeMetal, MaterialError};
use crate::specfun::bessel_k_all;
use crate::{cst, Real};

/// Tolerated drift of `|γ|²` from 1 before the constructor records that it
/// had to renormalize.
const NORM_DRIFT: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolarizationError<T: Real> {
    #[error("transition dipole must be finite and nonzero")]
    InvalidDipole,
    #[error("polarization factor is undefined at kx = ky = 0")]
    DegenerateSpectralPoint,
    #[error("cannot parse dipole component {0:?}: expected complex numbers like \"0.7+0.7i\"")]
    Parse(String),
    #[error("dipole needs exactly three comma-separated components, got {0}")]
    ComponentCount(usize),
    #[error(transparent)]
    Material(#[from] MaterialError<T>),
}

/// Complex transition dipole `γ`, stored normalized to `|γ|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionDipole<T> {
    gx: Complex<T>,
    gy: Complex<T>,
    gz: Complex<T>,
    renormalized: bool,
}

impl<T: Real> TransitionDipole<T> {
    /// Build from raw components; the dipole is scaled to unit intensity.
    /// `was_renormalized` reports whether the input deviated from unit norm
    /// by more than 1e-12 (all outputs are in `|γ|²`-scaled units, so a
    /// silently wrong normalization would rescale every result).
    pub fn new(
        gx: Complex<T>,
        gy: Complex<T>,
        gz: Complex<T>,
    ) -> Result<Self, PolarizationError<T>> {
        let norm2 = gx.norm_sqr() + gy.norm_sqr() + gz.norm_sqr();
        if !(norm2 > T::zero()) || !norm2.is_finite() {
            return Err(PolarizationError::InvalidDipole);
        }
        let norm = norm2.sqrt();
        let renormalized = (norm2 - T::one()).abs() > cst(NORM_DRIFT);
        Ok(Self {
            gx: gx / norm,
            gy: gy / norm,
            gz: gz / norm,
            renormalized,
        })
    }

    pub fn linear_x() -> Self {
        Self::cardinal(1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn linear_y() -> Self {
        Self::cardinal(0.0, 0.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn linear_z() -> Self {
        Self::cardinal(0.0, 0.0, 0.0, 0.0, 1.0, 0.0)
    }

    /// `γ₊ = (x̂ + iẑ)/√2`, the handedness matching co-propagating plasmons.
    pub fn chiral_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::cardinal(s, 0.0, 0.0, 0.0, 0.0, s)
    }

    /// `γ₋ = (x̂ − iẑ)/√2`, the handedness that boosts ground-state friction.
    pub fn chiral_minus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::cardinal(s, 0.0, 0.0, 0.0, 0.0, -s)
    }

    fn cardinal(xr: f64, xi: f64, yr: f64, yi: f64, zr: f64, zi: f64) -> Self {
        Self::new(
            Complex::new(cst(xr), cst(xi)),
            Complex::new(cst(yr), cst(yi)),
            Complex::new(cst(zr), cst(zi)),
        )
        .expect("cardinal dipoles are valid")
    }

    pub fn gx(&self) -> Complex<T> {
        self.gx
    }

    pub fn gy(&self) -> Complex<T> {
        self.gy
    }

    pub fn gz(&self) -> Complex<T> {
        self.gz
    }

    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    /// Component intensities `(px, py, pz)`, summing to 1.
    pub fn intensities(&self) -> (T, T, T) {
        (self.gx.norm_sqr(), self.gy.norm_sqr(), self.gz.norm_sqr())
    }

    /// Spin projection `s_y = −i(γ×γ*)·ŷ = −2 Im(γx γz*) ∈ [−1, 1]`; the
    /// sign encodes the handedness of the polarization in the xz plane.
    pub fn spin_y(&self) -> T {
        let a = self.gx * self.gz.conj();
        -(a.im + a.im)
    }

    /// Complex conjugate dipole (opposite handedness).
    pub fn conjugate(&self) -> Self {
        Self {
            gx: self.gx.conj(),
            gy: self.gy.conj(),
            gz: self.gz.conj(),
            renormalized: self.renormalized,
        }
    }

    /// Mirror through the yz plane (`γx → −γx`); combined with `v → −v`
    /// this maps a negative-velocity problem onto the `v > 0` formulas.
    pub fn mirror_x(&self) -> Self {
        Self {
            gx: -self.gx,
            gy: self.gy,
            gz: self.gz,
            renormalized: self.renormalized,
        }
    }
}

/// Free-function form of [`TransitionDipole::spin_y`].
pub fn spin_y<T: Real>(dip: &TransitionDipole<T>) -> T {
    dip.spin_y()
}

impl<T: Real + FromStr> FromStr for TransitionDipole<T> {
    type Err = PolarizationError<T>;

    /// Parses the CLI dipole format: three comma-separated complex numbers,
    /// e.g. `"0.70710678+0i,0+0i,0-0.70710678i"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(PolarizationError::ComponentCount(parts.len()));
        }
        let mut comps = [Complex::new(T::zero(), T::zero()); 3];
        for (dst, part) in comps.iter_mut().zip(&parts) {
            let trimmed = part.trim();
            *dst = Complex::from_str(trimmed)
                .map_err(|_| PolarizationError::Parse(trimmed.to_string()))?;
        }
        Self::new(comps[0], comps[1], comps[2])
    }
}

/// A point of the in-plane spectral domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T> {
    pub kx: T,
    pub ky: T,
}

impl<T: Real> SpectralPoint<T> {
    pub fn new(kx: T, ky: T) -> Self {
        Self { kx, ky }
    }

    pub fn kpar(&self) -> T {
        self.kx.hypot(self.ky)
    }
}

/// Polarization factor `A = |(k∥ − i k∥ ẑ)·γ|²/k∥ ≥ 0`; vanishes exactly
/// where the chiral projection of the dipole onto the plasmon field is zero.
pub fn pol_factor<T: Real>(
    p: SpectralPoint<T>,
    dip: &TransitionDipole<T>,
) -> Result<T, PolarizationError<T>> {
    let k = p.kpar();
    if !(k > T::zero()) {
        return Err(PolarizationError::DegenerateSpectralPoint);
    }
    let proj = dip.gx * p.kx + dip.gy * p.ky - Complex::<T>::i() * dip.gz * k;
    Ok(proj.norm_sqr() / k)
}

/// The scaled products `ξ²K₀`, `ξ²K₁`, `ξ²K₂`, finite all the way to
/// `ξ → 0⁺` (limits 0, ξ, 2) and exactly zero past the underflow guard.
fn scaled_k_products<T: Real>(xi: T) -> (T, T, T) {
    debug_assert!(xi > T::zero());
    if xi < cst(1e-8) {
        let g0 = xi * xi * (-(xi / cst::<T>(2.0)).ln() - cst(0.577_215_664_901_532_9));
        return (g0, xi, cst(2.0));
    }
    let t = bessel_k_all(xi).expect("xi > 0");
    if t.negligible {
        return (T::zero(), T::zero(), T::zero());
    }
    let xi2 = xi * xi;
    (xi2 * t.k0, xi2 * t.k1, xi2 * t.k2)
}

/// Closed form of `∫ dk_y e^{−2k∥d} A(kx, ky)`:
/// `W(kx) = 2kx²[(px−py)K₀ + ((py+pz)/2)(K₀+K₂) + sgn(kx)·s_y·K₁](2|kx|d)`,
/// continuous at `kx = 0` with `W(0) = (py+pz)/(2d²)` and non-negative
/// everywhere (it integrates a non-negative integrand).
pub fn ky_reduced_kernel<T: Real>(kx: T, dip: &TransitionDipole<T>, d: T) -> T {
    assert!(d > T::zero(), "ky_reduced_kernel requires d > 0");
    let (px, py, pz) = dip.intensities();
    let half = cst::<T>(0.5);
    let inv_2d2 = half / (d * d);
    if kx == T::zero() {
        return (py + pz) * inv_2d2;
    }
    let xi = cst::<T>(2.0) * kx.abs() * d;
    let (g0, g1, g2) = scaled_k_products(xi);
    let bracket = (px - py) * g0 + (py + pz) * half * (g0 + g2) + kx.signum() * dip.spin_y() * g1;
    // Clamp the exact zeros of the chiral null against rounding residue.
    (inv_2d2 * bracket).max(T::zero())
}

/// The `k_y`-integrated quasi-static reflected Green tensor at the atom
/// position, in units where `1/4πε₀ = 1`. Nonzero entries, with `ξ = 2|kx|d`
/// and `R` the TM reflection coefficient:
///
/// * `G_xx = −R·2kx²K₀(ξ)`
/// * `G_yy = −R·kx²(K₂−K₀)(ξ)`
/// * `G_zz = −R·kx²(K₀+K₂)(ξ)`
/// * `G_xz = −G_zx = −R·(−i)·kx·2|kx|·K₁(ξ)`
///
/// The `k_y`-odd entries (xy, yx, yz, zy) vanish identically. The quadratic
/// form satisfies `γ*·G·γ = −R·W(kx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensTensor<T> {
    entries: [[Complex<T>; 3]; 3],
}

impl<T: Real> GreensTensor<T> {
    pub fn entries(&self) -> &[[Complex<T>; 3]; 3] {
        &self.entries
    }

    pub fn component(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row][col]
    }

    /// `γ*·G·γ`.
    pub fn quadratic_form(&self, dip: &TransitionDipole<T>) -> Complex<T> {
        let g = [dip.gx, dip.gy, dip.gz];
        let mut acc = Complex::new(T::zero(), T::zero());
        for (row, gi) in g.iter().enumerate() {
            for (col, gj) in g.iter().enumerate() {
                acc = acc + gi.conj() * self.entries[row][col] * gj;
            }
        }
        acc
    }
}

/// Quasi-static reflected Green tensor `G(kx, ω)` at the atom position.
pub fn greens_kx_qs<T: Real>(
    kx: T,
    omega: Complex<T>,
    metal: &DrudeMetal<T>,
    d: T,
) -> Result<GreensTensor<T>, MaterialError<T>> {
    assert!(d > T::zero(), "greens_kx_qs requires d > 0");
    let refl = reflection(metal, omega)?;
    let zero = Complex::new(T::zero(), T::zero());
    let half = cst::<T>(0.5);
    let quarter = cst::<T>(0.25);
    let inv_d2 = T::one() / (d * d);

    let (g0, g1, g2) = if kx == T::zero() {
        (T::zero(), T::zero(), cst(2.0))
    } else {
        scaled_k_products(cst::<T>(2.0) * kx.abs() * d)
    };

    // 2kx^2 K0 = g0/(2d^2), kx^2 (K2 -/+ K0) = (g2 -/+ g0)/(4d^2),
    // 2 kx |kx| K1 = sgn(kx) g1/(2d^2).
    let xx = -refl * (g0 * half * inv_d2);
    let yy = -refl * ((g2 - g0) * quarter * inv_d2);
    let zz = -refl * ((g0 + g2) * quarter * inv_d2);
    let xz = refl * Complex::<T>::i() * (kx.signum() * g1 * half * inv_d2);
    let entries = [[xx, zero, xz], [zero, yy, zero], [-xz, zero, zz]];
    Ok(GreensTensor { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, Domain, QuadratureSpec};
    use num_complex::Complex64;

    type Dip = TransitionDipole<f64>;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_and_flag() {
        let d = Dip::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(d.was_renormalized());
        let (px, py, pz) = d.intensities();
        assert!((px - 1.0).abs() < 1e-15 && py == 0.0 && pz == 0.0);
        assert!(!Dip::linear_z().was_renormalized());
        assert!(Dip::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(Dip::new(c(f64::NAN, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn spin_examples() {
        assert!((Dip::chiral_minus().spin_y() + 1.0).abs() < 1e-15);
        assert!((Dip::chiral_plus().spin_y() - 1.0).abs() < 1e-15);
        assert_eq!(Dip::linear_z().spin_y(), 0.0);
        assert_eq!(Dip::linear_x().spin_y(), 0.0);
    }

    #[test]
    fn pol_factor_examples() {
        // Vertical dipole: A = kpar.
        let a = pol_factor(SpectralPoint::new(3.0, 4.0), &Dip::linear_z()).unwrap();
        assert!((a - 5.0).abs() < 1e-14);

        // Chiral nulls: gamma_minus decouples from kx > 0, gamma_plus from
        // kx < 0 (spin-momentum locking of the quasi-static field).
        let a = pol_factor(SpectralPoint::new(2.0, 0.0), &Dip::chiral_minus()).unwrap();
        assert!(a.abs() < 1e-14);
        let a = pol_factor(SpectralPoint::new(-2.0, 0.0), &Dip::chiral_minus()).unwrap();
        assert!((a - 4.0).abs() < 1e-14);
        let a = pol_factor(SpectralPoint::new(-2.0, 0.0), &Dip::chiral_plus()).unwrap();
        assert!(a.abs() < 1e-14);

        assert!(matches!(
            pol_factor(SpectralPoint::new(0.0, 0.0), &Dip::linear_z()),
            Err(PolarizationError::DegenerateSpectralPoint)
        ));
    }

    #[test]
    fn kernel_at_zero_and_vertical() {
        let d = 0.13;
        for dip in [Dip::linear_z(), Dip::chiral_minus(), Dip::linear_y()] {
            let (_, py, pz) = dip.intensities();
            let w0 = ky_reduced_kernel(0.0, &dip, d);
            assert!((w0 - (py + pz) / (2.0 * d * d)).abs() < 1e-12 * w0.max(1.0));
            // Continuity from both sides.
            for kx in [1e-9, -1e-9, 1e-6, -1e-6] {
                let w = ky_reduced_kernel(kx, &dip, d);
                assert!((w - w0).abs() < 1e-5 * w0, "kx={kx} w={w} w0={w0}");
            }
        }
        // gamma = z: W = kx^2 (K0+K2)(2|kx|d).
        let t = crate::specfun::bessel_k_all(2.0 * 3.0 * 0.13).unwrap();
        let w = ky_reduced_kernel(3.0, &Dip::linear_z(), 0.13);
        assert!((w - 9.0 * (t.k0 + t.k2)).abs() < 1e-12 * w);
    }

    #[test]
    fn kernel_chiral_golden() {
        // W(-22, (x - iz)/sqrt2, d=0.1) = 968*(0.75 K0 + 0.25 K2 + K1)(4.4),
        // mpmath: 15.4616062069997773.
        let w = ky_reduced_kernel(-22.0, &Dip::chiral_minus(), 0.1);
        assert!((w / 15.461_606_206_999_777 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn kernel_matches_ky_quadrature() {
        // Reduction identity spot checks (full 50-config sweep runs in the
        // acceptance suite).
        let spec = QuadratureSpec::<f64>::oracle();
        let cases = [
            (3.0, 0.1, Dip::linear_z()),
            (-5.0, 0.2, Dip::chiral_minus()),
            (
                0.7,
                0.35,
                Dip::new(c(0.3, 0.1), c(-0.2, 0.4), c(0.5, -0.3)).unwrap(),
            ),
        ];
        for (kx, d, dip) in cases {
            let f = |ky: f64| {
                let p = SpectralPoint::new(kx, ky);
                match pol_factor(p, &dip) {
                    Ok(a) => a * (-2.0 * p.kpar() * d).exp(),
                    Err(_) => 0.0,
                }
            };
            let q = integrate(
                f,
                Domain::RealLine {
                    decay_scale: 0.5 / d,
                },
                &[],
                &spec,
            )
            .unwrap();
            let w = ky_reduced_kernel(kx, &dip, d);
            assert!(
                (q.value / w - 1.0).abs() < 1e-3,
                "kx={kx} d={d} quad={} closed={w}",
                q.value
            );
        }
    }

    #[test]
    fn greens_tensor_structure() {
        let metal = DrudeMetal::normalized(0.2).unwrap();
        let w = c(0.8, 0.01);
        let g = greens_kx_qs(5.0, w, &metal, 0.1).unwrap();
        // ky-odd components vanish identically.
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            assert_eq!(g.component(i, j), c(0.0, 0.0));
        }
        // Antisymmetric chiral block.
        assert_eq!(g.component(2, 0), -g.component(0, 2));

        // gamma = z contraction picks out G_zz = -R W|_z.
        let r = reflection(&metal, w).unwrap();
        let wz = ky_reduced_kernel(5.0, &Dip::linear_z(), 0.1);
        let qf = g.quadratic_form(&Dip::linear_z());
        assert!((qf - (-r * wz)).norm() < 1e-12 * qf.norm());
    }

    #[test]
    fn quadratic_form_is_minus_r_w() {
        let metal = DrudeMetal::normalized(0.3).unwrap();
        let d = 0.15;
        let dips = [
            Dip::linear_x(),
            Dip::chiral_plus(),
            Dip::new(c(0.3, -0.7), c(0.1, 0.2), c(-0.4, 0.5)).unwrap(),
        ];
        for dip in dips {
            for kx in [-7.0, -0.3, 0.4, 3.3] {
                for w in [c(0.5, 0.0), c(-1.2, 0.4), c(0.0, 1.5)] {
                    let g = greens_kx_qs(kx, w, &metal, d).unwrap();
                    let r = reflection(&metal, w).unwrap();
                    let lhs = g.quadratic_form(&dip);
                    let rhs = -r * ky_reduced_kernel(kx, &dip, d);
                    assert!(
                        (lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-30),
                        "kx={kx} w={w} lhs={lhs} rhs={rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn greens_tensor_components_match_ky_quadrature() {
        // Each nonzero entry against its defining ky integral (in units
        // 1/4 pi eps0 = 1 the prefactor of the reduced tensor is -R/k per
        // dyadic entry): xx ~ kx^2/k, yy ~ ky^2/k, zz ~ k, xz ~ -i kx.
        let metal = DrudeMetal::normalized(0.2).unwrap();
        let (kx, d) = (5.0, 0.1);
        let w = c(0.8, 0.01);
        let g = greens_kx_qs(kx, w, &metal, d).unwrap();
        let r = reflection(&metal, w).unwrap();

        let spec = QuadratureSpec::<f64>::oracle();
        let quad = |weight: &dyn Fn(f64, f64) -> f64| {
            integrate(
                |ky: f64| {
                    let k = kx.hypot(ky);
                    weight(ky, k) * (-2.0 * k * d).exp()
                },
                Domain::RealLine {
                    decay_scale: 0.5 / d,
                },
                &[],
                &spec,
            )
            .unwrap()
            .value
        };
        let i_xx = quad(&|_, k| kx * kx / k);
        let i_yy = quad(&|ky, k| ky * ky / k);
        let i_zz = quad(&|_, k| k);
        let i_x = quad(&|_, _| 1.0);

        let pairs = [
            (g.component(0, 0), -r * i_xx),
            (g.component(1, 1), -r * i_yy),
            (g.component(2, 2), -r * i_zz),
            (g.component(0, 2), -r * -Complex64::i() * kx * i_x),
            (g.component(2, 0), -r * Complex64::i() * kx * i_x),
        ];
        for (got, want) in pairs {
            assert!((got - want).norm() < 1e-3 * want.norm(), "{got} vs {want}");
        }
    }

    #[test]
    fn greens_imaginary_axis_reality_structure() {
        // R(i xi) is real, so diagonal entries are real and the chiral
        // off-diagonal entries are purely imaginary.
        let metal = DrudeMetal::normalized(0.2).unwrap();
        let g = greens_kx_qs(3.0, c(0.0, 0.7), &metal, 0.1).unwrap();
        for i in 0..3 {
            assert!(g.component(i, i).im.abs() < 1e-14 * g.component(i, i).re.abs());
        }
        assert!(g.component(0, 2).re.abs() < 1e-14 * g.component(0, 2).im.abs());
    }

    #[test]
    fn parse_dipole_format() {
        let d: Dip = "0.70710678+0i,0+0i,0-0.70710678i".parse().unwrap();
        assert!((d.spin_y() + 1.0).abs() < 1e-8);
        let d: Dip = "1+0i, 0+0i, 0+0i".parse().unwrap();
        assert_eq!(d.intensities().0, 1.0);
        assert!(matches!(
            "1+0i,2".parse::<Dip>(),
            Err(PolarizationError::ComponentCount(2))
        ));
        assert!(matches!(
            "1+0i,abc,0".parse::<Dip>(),
            Err(PolarizationError::Parse(_))
        ));
        assert!("0,0,0".parse::<Dip>().is_err());
    }

    proptest::proptest! {
        #[test]
        fn global_phase_invariance(
            phi in 0.0_f64..std::f64::consts::TAU,
            xr in -1.0_f64..1.0, xi in -1.0_f64..1.0,
            zr in -1.0_f64..1.0, zi in -1.0_f64..1.0,
            kx in -10.0_f64..10.0,
        ) {
            proptest::prop_assume!(xr.abs() + xi.abs() + zr.abs() + zi.abs() > 1e-3);
            let d1 = Dip::new(c(xr, xi), c(0.1, -0.2), c(zr, zi)).unwrap();
            let phase = Complex64::from_polar(1.0, phi);
            let d2 = Dip::new(phase * c(xr, xi), phase * c(0.1, -0.2), phase * c(zr, zi)).unwrap();
            proptest::prop_assert!((d1.spin_y() - d2.spin_y()).abs() < 1e-12);
            let w1 = ky_reduced_kernel(kx, &d1, 0.1);
            let w2 = ky_reduced_kernel(kx, &d2, 0.1);
            proptest::prop_assert!((w1 - w2).abs() <= 1e-10 * w1.abs().max(1e-12));
            let a1 = pol_factor(SpectralPoint::new(kx, 0.7), &d1).unwrap();
            let a2 = pol_factor(SpectralPoint::new(kx, 0.7), &d2).unwrap();
            proptest::prop_assert!((a1 - a2).abs() <= 1e-10 * a1.max(1e-12));
        }

        #[test]
        fn conjugation_flips_handedness(
            xr in -1.0_f64..1.0, xi in -1.0_f64..1.0,
            zr in -1.0_f64..1.0, zi in -1.0_f64..1.0,
            kx in -10.0_f64..10.0,
        ) {
            proptest::prop_assume!(xr.abs() + xi.abs() + zr.abs() + zi.abs() > 1e-3);
            let d = Dip::new(c(xr, xi), c(0.0, 0.0), c(zr, zi)).unwrap();
            let dc = d.conjugate();
            proptest::prop_assert!((dc.spin_y() + d.spin_y()).abs() < 1e-12);
            // W(kx, conj gamma) = W(-kx, gamma): conjugation negates s_y and
            // the sgn(kx) factor restores it.
            let w1 = ky_reduced_kernel(kx, &dc, 0.2);
            let w2 = ky_reduced_kernel(-kx, &d, 0.2);
            proptest::prop_assert!((w1 - w2).abs() <= 1e-10 * w1.abs().max(1e-12));
        }

        #[test]
        fn kernel_nonnegative(
            xr in -1.0_f64..1.0, xi in -1.0_f64..1.0,
            yr in -1.0_f64..1.0, yi in -1.0_f64..1.0,
            zr in -1.0_f64..1.0, zi in -1.0_f64..1.0,
            kx in -40.0_f64..40.0,
            d in 0.02_f64..0.5,
        ) {
            let norm = xr.abs() + xi.abs() + yr.abs() + yi.abs() + zr.abs() + zi.abs();
            proptest::prop_assume!(norm > 1e-3);
            let dip = Dip::new(c(xr, xi), c(yr, yi), c(zr, zi)).unwrap();
            proptest::prop_assert!(ky_reduced_kernel(kx, &dip, d) >= 0.0);
            let sy = dip.spin_y();
            let (px, _, pz) = dip.intensities();
            proptest::prop_assert!(sy.abs() <= 2.0 * (px * pz).sqrt() + 1e-12);
        }

        #[test]
        fn hermitian_mirror_on_imaginary_axis(
            kx in -20.0_f64..20.0,
            xi_freq in 0.05_f64..5.0,
            gc in 1e-3_f64..1.0,
        ) {
            proptest::prop_assume!(kx.abs() > 1e-6);
            let metal = DrudeMetal::normalized(gc).unwrap();
            let w = c(0.0, xi_freq);
            let g1 = greens_kx_qs(kx, w, &metal, 0.1).unwrap();
            let g2 = greens_kx_qs(-kx, w, &metal, 0.1).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let lhs = g1.component(i, j);
                    let rhs = g2.component(i, j).conj();
                    proptest::prop_assert!(
                        (lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1e-12),
                        "({i},{j}): {lhs} vs {rhs}"
                    );
                }
            }
        }
    }
}
