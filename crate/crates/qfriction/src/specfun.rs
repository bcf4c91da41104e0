//! Modified Bessel functions of the second kind `K₀`, `K₁`, `K₂` for
//! positive real arguments — the only special functions the rest of the
//! crate needs.
//!
//! `K₀` and `K₁` are computed with the ascending series (A&S 9.6.11/9.6.13)
//! for `x ≤ 2` and with the Steed/Thompson–Barnett continued fraction for
//! the ratio of confluent hypergeometric functions for `x > 2` (the same
//! scheme used by the SciPy/Boost `K_ν` implementations, specialized to
//! ν = 0). `K₂` is always formed by the recurrence `K₂ = K₀ + (2/x)K₁`, so
//! the recurrence identity holds to rounding wherever it is relied upon.

use thiserror::Error;

use crate::{cst, Real};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 500;

/// Order of the modified Bessel function; only 0, 1, 2 are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Zero,
    One,
    Two,
}

/// A `K_n(x)` evaluation. `negligible` marks arguments past the underflow
/// guard, where the returned value is an exact zero standing in for a
/// quantity below ~e⁻⁷⁰⁰; callers treat it as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK<T> {
    pub value: T,
    pub negligible: bool,
}

/// All three orders at one argument, sharing a single evaluation of the
/// underlying `K₀`/`K₁` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselKTriple<T> {
    pub k0: T,
    pub k1: T,
    pub k2: T,
    pub negligible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpecFunError<T: Real> {
    #[error("bessel_k requires x > 0, got {x}")]
    Domain { x: T },
    #[error("continued fraction failed to converge at x = {x}")]
    NoConvergence { x: T },
}

/// Largest argument evaluated directly; beyond it `e⁻ˣ` is within a few
/// orders of the smallest normal value and the result is flagged negligible.
fn underflow_cutoff<T: Real>() -> T {
    let headroom = -T::min_positive_value().ln() - cst(4.0);
    cst::<T>(700.0).min(headroom)
}

/// `K_n(x)` for `n ∈ {0, 1, 2}` and `x > 0`.
///
/// Relative error is below 1e-10 over `x ∈ [1e-6, 700]` in `f64`
/// (in practice a few ulp; see the oracle comparison in the test suite).
pub fn bessel_k<T: Real>(order: BesselOrder, x: T) -> Result<BesselK<T>, SpecFunError<T>> {
    let t = bessel_k_all(x)?;
    let value = match order {
        BesselOrder::Zero => t.k0,
        BesselOrder::One => t.k1,
        BesselOrder::Two => t.k2,
    };
    Ok(BesselK {
        value,
        negligible: t.negligible,
    })
}

/// `K₀(x)`, `K₁(x)`, `K₂(x)` in one call.
pub fn bessel_k_all<T: Real>(x: T) -> Result<BesselKTriple<T>, SpecFunError<T>> {
    if !(x > T::zero()) {
        return Err(SpecFunError::Domain { x });
    }
    if x > underflow_cutoff::<T>() {
        return Ok(BesselKTriple {
            k0: T::zero(),
            k1: T::zero(),
            k2: T::zero(),
            negligible: true,
        });
    }
    let (k0, k1) = if x <= cst(2.0) {
        k01_series(x)
    } else {
        k01_steed(x)?
    };
    let two = cst::<T>(2.0);
    Ok(BesselKTriple {
        k0,
        k1,
        k2: k0 + two / x * k1,
        negligible: false,
    })
}

/// Ascending series for `K₀`, `K₁` (A&S 9.6.11, 9.6.13), `0 < x ≤ 2`.
fn k01_series<T: Real>(x: T) -> (T, T) {
    let one = T::one();
    let q = x * x / cst(4.0);
    let log_half_x = (x / cst(2.0)).ln();
    let gamma = cst::<T>(EULER_GAMMA);

    // Running term q^k/(k!)² and its companions.
    let mut term = one;
    let mut i0 = one;
    let mut s0 = T::zero(); // Σ H_k q^k/(k!)²
    let mut i1s = one; // Σ q^k/(k!(k+1)!)
    let mut s1 = one; // Σ (H_k + H_{k+1}) q^k/(k!(k+1)!)
    let mut harmonic = T::zero();

    for k in 1..MAX_ITER {
        let kf = cst::<T>(k as f64);
        term = term * q / (kf * kf);
        harmonic += one / kf;
        i0 += term;
        s0 += term * harmonic;
        let term1 = term / (kf + one);
        i1s += term1;
        s1 += term1 * (harmonic + harmonic + one / (kf + one));
        if term < i0 * T::epsilon() {
            break;
        }
    }

    let i1 = x / cst(2.0) * i1s;
    let k0 = -(log_half_x + gamma) * i0 + s0;
    let k1 = one / x + log_half_x * i1 - x / cst(4.0) * (s1 - (gamma + gamma) * i1s);
    (k0, k1)
}

/// Steed's continued fraction (Thompson & Barnett, J. Comput. Phys. 64, 490)
/// for `K₀`, `K₁`, valid for `x > 2`.
fn k01_steed<T: Real>(x: T) -> Result<(T, T), SpecFunError<T>> {
    let one = T::one();
    let two = cst::<T>(2.0);
    let quarter = cst::<T>(0.25);

    let mut a = -quarter;
    let mut b = two * (x + one);
    let mut d = one / b;
    let mut delta = d;
    let mut f = d;
    let mut prev = T::zero();
    let mut cur = one;
    let mut q = quarter;
    let mut c = quarter;
    let mut s = one + q * delta;

    for k in 2..MAX_ITER {
        let kf = cst::<T>(k as f64);
        a -= two * (kf - one);
        b += two;
        d = one / (a * d + b);
        delta *= b * d - one;
        f += delta;
        let t = (prev - (b - two) * cur) / a;
        prev = cur;
        cur = t;
        c = c * (-a) / kf;
        q += c * t;
        s += q * delta;
        if (q * delta).abs() < s.abs() * T::epsilon() {
            let k0 = (T::PI() / (two * x)).sqrt() * (-x).exp() / s;
            let k1 = k0 * (x + cst(0.5) - quarter * f) / x;
            return Ok((k0, k1));
        }
    }
    Err(SpecFunError::NoConvergence { x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // Reference values from mpmath (dps=40); see tools/goldens.py.
    const K0_1: f64 = 0.421_024_438_240_708_34;
    const K1_1: f64 = 0.601_907_230_197_234_6;
    const K2_1: f64 = 1.624_838_898_635_177_4;
    const K0_2: f64 = 0.113_893_872_749_533_44;
    const K1_2: f64 = 0.139_865_881_816_522_43;

    #[test]
    fn golden_values_at_one() {
        let t = bessel_k_all(1.0_f64).unwrap();
        assert!(rel(t.k0, K0_1) < 1e-14);
        assert!(rel(t.k1, K1_1) < 1e-14);
        assert!(rel(t.k2, K2_1) < 1e-14);
        assert!(!t.negligible);
    }

    #[test]
    fn golden_values_at_branch_point() {
        // x = 2 exercises the series side of the split, x = 2 + ulp the CF side.
        let t = bessel_k_all(2.0_f64).unwrap();
        assert!(rel(t.k0, K0_2) < 1e-14);
        assert!(rel(t.k1, K1_2) < 1e-14);
        let up = 2.0_f64.next_up();
        let t2 = bessel_k_all(up).unwrap();
        assert!(rel(t2.k0, K0_2) < 1e-13);
        assert!(rel(t2.k1, K1_2) < 1e-13);
    }

    #[test]
    fn order_selector_matches_triple() {
        let x = 4.4_f64;
        let t = bessel_k_all(x).unwrap();
        assert_eq!(bessel_k(BesselOrder::Zero, x).unwrap().value, t.k0);
        assert_eq!(bessel_k(BesselOrder::One, x).unwrap().value, t.k1);
        assert_eq!(bessel_k(BesselOrder::Two, x).unwrap().value, t.k2);
    }

    #[test]
    fn recurrence_is_exact_by_construction() {
        for &x in &[1e-4, 1e-2, 0.5, 1.0, 2.0, 3.0, 7.7, 20.0, 100.0] {
            let t = bessel_k_all(x_f(x)).unwrap();
            let resid = (t.k2 - t.k0 - 2.0 / x * t.k1).abs();
            assert!(resid <= 1e-12 * t.k2, "x={x} resid={resid}");
        }
    }

    fn x_f(x: f64) -> f64 {
        x
    }

    #[test]
    fn ordering_and_positivity() {
        for i in 0..400 {
            let x = 1e-4 * 1.04_f64.powi(i);
            let t = bessel_k_all(x).unwrap();
            if t.negligible {
                continue;
            }
            assert!(t.k0 > 0.0, "x={x}");
            assert!(t.k1 > t.k0, "x={x}");
            assert!(t.k2 > t.k1, "x={x}");
        }
    }

    #[test]
    fn strictly_decreasing_on_grid() {
        let grid: Vec<f64> = (0..500).map(|i| 1e-3 + 0.6 * i as f64).collect();
        let mut prev = bessel_k_all(grid[0]).unwrap();
        for &x in &grid[1..] {
            let t = bessel_k_all(x).unwrap();
            if t.negligible {
                break;
            }
            assert!(t.k0 < prev.k0);
            assert!(t.k1 < prev.k1);
            assert!(t.k2 < prev.k2);
            prev = t;
        }
    }

    #[test]
    fn asymptotic_envelope() {
        // K_n(x) ≈ sqrt(π/2x) e^{-x} for large x, so the scaled value is near 1.
        for &x in &[20.0_f64, 50.0, 120.0, 400.0, 650.0] {
            let t = bessel_k_all(x).unwrap();
            let scale = x.exp() * (2.0 * x / std::f64::consts::PI).sqrt();
            for k in [t.k0, t.k1, t.k2] {
                let s = k * scale;
                assert!((0.9..=1.1).contains(&s), "x={x} scaled={s}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            bessel_k_all(0.0_f64),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            bessel_k_all(-3.0_f64),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(bessel_k_all(f64::NAN).is_err());
    }

    #[test]
    fn underflow_is_flagged_not_silent() {
        let t = bessel_k_all(701.0_f64).unwrap();
        assert!(t.negligible);
        assert_eq!(t.k0, 0.0);
        assert_eq!(t.k2, 0.0);
        // Just inside the guard the value is tiny but real.
        let t = bessel_k_all(699.0_f64).unwrap();
        assert!(!t.negligible);
        assert!(t.k0 > 0.0);
        assert!(rel(t.k0, 1.270_284_188_032_741_8e-305) < 1e-10);
    }

    #[test]
    fn f32_instantiation_runs() {
        let t = bessel_k_all(1.0_f32).unwrap();
        assert!((t.k0 - K0_1 as f32).abs() < 1e-5);
        assert!((t.k1 - K1_1 as f32).abs() < 1e-5);
        let t = bessel_k_all(10.0_f32).unwrap();
        assert!(t.k0 > 0.0 && t.k1 > t.k0);
        // The f32 cutoff sits where e^{-x} leaves the normal range.
        assert!(bessel_k_all(100.0_f32).unwrap().negligible);
    }

    proptest::proptest! {
        #[test]
        fn recurrence_and_ordering_hold(x in 1e-4_f64..600.0) {
            let t = bessel_k_all(x).unwrap();
            proptest::prop_assume!(!t.negligible);
            proptest::prop_assert!(t.k2 > t.k1 && t.k1 > t.k0 && t.k0 > 0.0);
            let resid = (t.k2 - t.k0 - 2.0 / x * t.k1).abs();
            proptest::prop_assert!(resid <= 1e-12 * t.k2);
        }
    }
}
