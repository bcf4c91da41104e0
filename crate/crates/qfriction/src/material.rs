//! Drude permittivity and the quasi-static TM reflection coefficient, in
//! both rational and pole (partial-fraction) form.
//!
//! The substrate is a Drude metal with `ε(ω) = 1 − 2ω_sp²/(ω(ω + iΓ_c))`,
//! which puts the surface-plasmon resonance (`ε = −1`) at `ω = ω_sp`. The
//! short-wavelength TM reflection coefficient `R = −(ε−1)/(ε+1)` then has
//! simple poles at `ω = ±ω_sp′ − iΓ_c/2` with `ω_sp′ = √(ω_sp² − Γ_c²/4)`,
//! and on the real axis
//!
//! `Im R(ω) = −ω_sp² Γ_c ω / ((ω² − ω_sp²)² + Γ_c² ω²)`.
//!
//! In the `Γ_c → 0⁺` limit `Im R` degenerates into a pair of delta
//! functions; that regime is handled analytically by the friction module,
//! never by quadrature over a near-delta peak.

use num_complex::Complex;
use thiserror::Error;

use crate::{cst, Real};

/// Radius around a pole inside which evaluations are rejected instead of
/// returning huge, ill-conditioned values.
const POLE_RADIUS: f64 = 1e-8;

/// Drude-metal parameters, in units of `ω_sp` (so `omega_sp` is 1 after
/// normalization, but it is kept explicit for the material-level algebra).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeMetal<T> {
    omega_sp: T,
    gamma_c: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MaterialError<T: Real> {
    #[error("invalid Drude parameters: omega_sp={omega_sp}, gamma_c={gamma_c} (need omega_sp > 0, 0 <= gamma_c < 2 omega_sp)")]
    InvalidParameters { omega_sp: T, gamma_c: T },
    #[error("permittivity pole at omega = {re} + {im}i")]
    PermittivityPole { re: T, im: T },
    #[error("reflection pole at omega = {re} + {im}i")]
    ReflectionPole { re: T, im: T },
    #[error("Im R at omega = {omega} is a delta distribution for gamma_c = 0; use the lossless formulas")]
    DeltaRegime { omega: T },
}

impl<T: Real> DrudeMetal<T> {
    /// `omega_sp > 0`, `0 ≤ gamma_c < 2 omega_sp` (so that `ω_sp′` is real).
    pub fn new(omega_sp: T, gamma_c: T) -> Result<Self, MaterialError<T>> {
        let ok = omega_sp > T::zero()
            && gamma_c >= T::zero()
            && gamma_c < (omega_sp + omega_sp)
            && omega_sp.is_finite()
            && gamma_c.is_finite();
        if !ok {
            return Err(MaterialError::InvalidParameters { omega_sp, gamma_c });
        }
        Ok(Self { omega_sp, gamma_c })
    }

    /// Metal in normalized units (`ω_sp = 1`), the form every friction-level
    /// computation expects.
    pub fn normalized(gamma_c: T) -> Result<Self, MaterialError<T>> {
        Self::new(T::one(), gamma_c)
    }

    pub fn omega_sp(&self) -> T {
        self.omega_sp
    }

    pub fn gamma_c(&self) -> T {
        self.gamma_c
    }

    pub fn is_lossless(&self) -> bool {
        self.gamma_c == T::zero()
    }

    /// Damped plasmon frequency `ω_sp′ = √(ω_sp² − (Γ_c/2)²)`.
    pub fn omega_sp_prime(&self) -> T {
        let half_gc = self.gamma_c / cst(2.0);
        (self.omega_sp * self.omega_sp - half_gc * half_gc).sqrt()
    }

    fn pole_radius(&self) -> T {
        cst(POLE_RADIUS)
    }
}

/// Drude permittivity `ε(ω) = 1 − 2ω_sp²/(ω(ω + iΓ_c))`.
pub fn permittivity<T: Real>(
    metal: &DrudeMetal<T>,
    omega: Complex<T>,
) -> Result<Complex<T>, MaterialError<T>> {
    let pole_b = Complex::new(T::zero(), -metal.gamma_c);
    if omega.norm() < metal.pole_radius() || (omega - pole_b).norm() < metal.pole_radius() {
        return Err(MaterialError::PermittivityPole {
            re: omega.re,
            im: omega.im,
        });
    }
    let wsp2 = metal.omega_sp * metal.omega_sp;
    let denom = omega * (omega + Complex::new(T::zero(), metal.gamma_c));
    Ok(Complex::new(T::one(), T::zero()) - Complex::new(wsp2 + wsp2, T::zero()) / denom)
}

fn reflection_poles<T: Real>(metal: &DrudeMetal<T>) -> [Complex<T>; 2] {
    let half_gc = metal.gamma_c / cst(2.0);
    let wp = metal.omega_sp_prime();
    [Complex::new(wp, -half_gc), Complex::new(-wp, -half_gc)]
}

fn check_reflection_pole<T: Real>(
    metal: &DrudeMetal<T>,
    omega: Complex<T>,
) -> Result<(), MaterialError<T>> {
    for p in reflection_poles(metal) {
        if (omega - p).norm() < metal.pole_radius() {
            return Err(MaterialError::ReflectionPole {
                re: omega.re,
                im: omega.im,
            });
        }
    }
    Ok(())
}

/// TM reflection coefficient `R = −(ε−1)/(ε+1)`, evaluated through the
/// permittivity (the rational route).
pub fn reflection<T: Real>(
    metal: &DrudeMetal<T>,
    omega: Complex<T>,
) -> Result<Complex<T>, MaterialError<T>> {
    check_reflection_pole(metal, omega)?;
    let eps = permittivity(metal, omega)?;
    let one = Complex::new(T::one(), T::zero());
    Ok(-(eps - one) / (eps + one))
}

/// The same coefficient in partial-fraction form,
/// `R = −(ω_sp²/2ω_sp′)·[1/(ω_sp′ − iΓ_c/2 − ω) + 1/(ω_sp′ + iΓ_c/2 + ω)]`,
/// algebraically identical to [`reflection`] wherever both are defined.
pub fn reflection_pole_form<T: Real>(
    metal: &DrudeMetal<T>,
    omega: Complex<T>,
) -> Result<Complex<T>, MaterialError<T>> {
    check_reflection_pole(metal, omega)?;
    let wp = metal.omega_sp_prime();
    let half_gc = metal.gamma_c / cst(2.0);
    let a = Complex::new(wp, -half_gc) - omega;
    let b = Complex::new(wp, half_gc) + omega;
    let g = a.inv() + b.inv();
    let scale = metal.omega_sp * metal.omega_sp / (wp + wp);
    Ok(-g * Complex::new(scale, T::zero()))
}

/// `Im R` on the real axis in closed form; odd in `ω` and negative for
/// `ω > 0` when the metal is lossy.
pub fn im_reflection_real_axis<T: Real>(
    metal: &DrudeMetal<T>,
    omega: T,
) -> Result<T, MaterialError<T>> {
    if metal.is_lossless() {
        // Off resonance Im R vanishes identically; at the resonance it is a
        // delta distribution and must be handled analytically.
        if (omega.abs() - metal.omega_sp).abs() < metal.pole_radius() {
            return Err(MaterialError::DeltaRegime { omega });
        }
        return Ok(T::zero());
    }
    let wsp2 = metal.omega_sp * metal.omega_sp;
    let detune = omega * omega - wsp2;
    let gw = metal.gamma_c * omega;
    Ok(-(wsp2 * gw) / (detune * detune + gw * gw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_adaptive, Peak, QuadratureSpec};
    use num_complex::Complex64;

    fn metal(gc: f64) -> DrudeMetal<f64> {
        DrudeMetal::normalized(gc).unwrap()
    }

    fn crel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn invariants_on_construction() {
        assert!(DrudeMetal::new(1.0, 2.0).is_err());
        assert!(DrudeMetal::new(0.0, 0.1).is_err());
        assert!(DrudeMetal::new(1.0, -0.1).is_err());
        let m = metal(0.2);
        assert!((m.omega_sp_prime() - (1.0_f64 - 0.01).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn permittivity_examples() {
        let m = metal(0.0);
        let sqrt2 = std::f64::consts::SQRT_2;
        let e = permittivity(&m, Complex64::new(sqrt2, 0.0)).unwrap();
        assert!(e.norm() < 1e-15);
        let e = permittivity(&m, Complex64::new(1.0, 0.0)).unwrap();
        assert!(crel(e, Complex64::new(-1.0, 0.0)) < 1e-15);
        // mpmath: 1 - 2/(0.5*(0.5+0.2i))
        let e = permittivity(&metal(0.2), Complex64::new(0.5, 0.0)).unwrap();
        let want = Complex64::new(-5.896_551_724_137_931, 2.758_620_689_655_172_4);
        assert!(crel(e, want) < 1e-15);
    }

    #[test]
    fn reflection_examples() {
        let m = metal(0.0);
        let sqrt2 = std::f64::consts::SQRT_2;
        let r = reflection(&m, Complex64::new(sqrt2, 0.0)).unwrap();
        assert!(crel(r, Complex64::new(1.0, 0.0)) < 1e-14);

        // Perfect-conductor limit along the real axis.
        let r = reflection(&metal(0.2), Complex64::new(1e-6, 0.0)).unwrap();
        assert!((r - Complex64::new(-1.0, 0.0)).norm() < 1e-5);

        let r = reflection(&metal(0.2), Complex64::new(0.5, 0.0)).unwrap();
        let want = Complex64::new(-1.310_043_668_122_270_7, -0.174_672_489_082_969_43);
        assert!(crel(r, want) < 1e-14);
    }

    #[test]
    fn pole_form_matches_rational() {
        let m = metal(0.2);
        for &(re, im) in &[
            (0.5, 0.0),
            (1.0, 0.3),
            (-0.7, -0.2),
            (0.0, 2.0),
            (3.0, -1.0),
        ] {
            let w = Complex64::new(re, im);
            let a = reflection(&m, w).unwrap();
            let b = reflection_pole_form(&m, w).unwrap();
            assert!(crel(a, b) < 1e-12, "omega={w}");
        }
    }

    #[test]
    fn pole_form_golden_near_resonance() {
        let m = metal(0.02);
        let wp = m.omega_sp_prime();
        let w = Complex64::new(wp, 0.0);
        let want = Complex64::new(-0.250_018_751_406_355_5, -50.001_250_031_249_22);
        assert!(crel(reflection(&m, w).unwrap(), want) < 1e-14);
        assert!(crel(reflection_pole_form(&m, w).unwrap(), want) < 1e-14);
        // Dominant imaginary part is (omega_sp^2 / 2 omega_sp') * (2/gamma_c).
        let dominant = 1.0 / (2.0 * wp) * (2.0 / 0.02);
        assert!((want.im.abs() - dominant).abs() / dominant < 1e-3);
    }

    #[test]
    fn pole_evaluations_rejected() {
        let m = metal(0.2);
        let [p1, _] = [
            Complex64::new(m.omega_sp_prime(), -0.1),
            Complex64::new(-m.omega_sp_prime(), -0.1),
        ];
        assert!(matches!(
            reflection(&m, p1),
            Err(MaterialError::ReflectionPole { .. })
        ));
        assert!(matches!(
            reflection_pole_form(&m, p1 + Complex64::new(1e-9, 0.0)),
            Err(MaterialError::ReflectionPole { .. })
        ));
        assert!(matches!(
            permittivity(&m, Complex64::new(0.0, 0.0)),
            Err(MaterialError::PermittivityPole { .. })
        ));
        // Lossless plasmon resonance: epsilon = -1 pole of R.
        assert!(reflection(&metal(0.0), Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn im_reflection_examples_and_consistency() {
        let m = metal(0.2);
        assert!((im_reflection_real_axis(&m, 1.0).unwrap() + 5.0).abs() < 1e-14);
        assert!((im_reflection_real_axis(&m, -1.0).unwrap() - 5.0).abs() < 1e-14);
        // gc=0.1, omega=0.5: -0.1*0.5/((0.25-1)^2 + 0.01*0.25), checked
        // against the complex-arithmetic route below.
        let v = im_reflection_real_axis(&metal(0.1), 0.5).unwrap();
        assert!((v - (-0.088_495_575_221_238_94)).abs() < 1e-15);
        for &gc in &[0.05, 0.1, 0.2, 0.5] {
            let m = metal(gc);
            for i in -40..=40 {
                let w = 0.05 * i as f64;
                if w == 0.0 {
                    continue;
                }
                let direct = reflection(&m, Complex64::new(w, 0.0)).unwrap().im;
                let closed = im_reflection_real_axis(&m, w).unwrap();
                assert!((direct - closed).abs() <= 1e-12 * closed.abs().max(1.0));
            }
        }
    }

    #[test]
    fn im_reflection_sign_and_oddness() {
        let m = metal(0.3);
        for i in 1..100 {
            let w = 0.03 * i as f64;
            let v = im_reflection_real_axis(&m, w).unwrap();
            assert!(v < 0.0);
            let vm = im_reflection_real_axis(&m, -w).unwrap();
            assert!((v + vm).abs() < 1e-16 * v.abs().max(1.0));
        }
    }

    #[test]
    fn lossless_im_reflection_delta_regime() {
        let m = metal(0.0);
        assert_eq!(im_reflection_real_axis(&m, 0.5).unwrap(), 0.0);
        assert!(matches!(
            im_reflection_real_axis(&m, 1.0),
            Err(MaterialError::DeltaRegime { .. })
        ));
        assert!(im_reflection_real_axis(&m, -1.0).is_err());
    }

    #[test]
    fn reflection_real_on_imaginary_axis() {
        let m = metal(0.2);
        for i in 1..50 {
            let xi = 0.1 * i as f64;
            let r = reflection(&m, Complex64::new(0.0, xi)).unwrap();
            assert!(r.im.abs() < 1e-14 * r.re.abs());
        }
    }

    #[test]
    fn delta_limit_against_quadrature() {
        // For small gamma_c, (1/pi) * Im g integrates a smooth test function
        // to phi(omega_sp) to first order in gamma_c.
        let phi = |w: f64| 2.0 + (3.0 * w).sin();
        let spec = QuadratureSpec::default();
        let mut prev_err = f64::INFINITY;
        for &gc in &[1e-2, 1e-3, 1e-4] {
            let m = metal(gc);
            let wp = m.omega_sp_prime();
            let scale = -2.0 * wp; // Im g = Im R * (-2 omega_sp' / omega_sp^2)
            let f = |w: f64| im_reflection_real_axis(&m, w).unwrap() * scale * phi(w);
            let peaks = [Peak::new(wp, gc / 2.0).unwrap()];
            let q = integrate_adaptive(f, 0.5, 1.5, &peaks, &spec).unwrap();
            let got = q.value / std::f64::consts::PI;
            let err = (got / phi(1.0) - 1.0).abs();
            assert!(err < 2.0 * gc, "gc={gc} err={err}");
            assert!(err < prev_err, "first-order shrink failed at gc={gc}");
            prev_err = err;
        }
    }

    proptest::proptest! {
        #[test]
        fn pole_and_rational_forms_agree(
            re in -3.0_f64..3.0,
            im in -2.0_f64..2.0,
            gc in 1e-3_f64..1.0,
        ) {
            let m = metal(gc);
            let w = Complex64::new(re, im);
            let clear = reflection_poles(&m)
                .iter()
                .all(|p| (w - p).norm() > 1e-3);
            proptest::prop_assume!(clear && w.norm() > 1e-3);
            let a = reflection(&m, w).unwrap();
            let b = reflection_pole_form(&m, w).unwrap();
            proptest::prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
        }

        #[test]
        fn im_sign_convention(w in 1e-3_f64..4.0, gc in 1e-3_f64..1.0) {
            let m = metal(gc);
            let r = reflection(&m, Complex64::new(w, 0.0)).unwrap();
            proptest::prop_assert!(r.im < 0.0);
            let r = reflection(&m, Complex64::new(-w, 0.0)).unwrap();
            proptest::prop_assert!(r.im > 0.0);
        }
    }
}
