//! Runtime validation suite: the oracle and property checks behind the
//! `validate` CLI subcommand and the acceptance test target.
//!
//! Each criterion pins its tolerance here, draws any random configurations
//! from a fixed-seed ChaCha stream (so every run is bit-reproducible), and
//! reports pass/fail with the worst observed deviation. The independent
//! Bessel oracle lives here too: it evaluates the defining integral
//! representation by trapezoidal summation and shares no code with the
//! series/continued-fraction production path it is used to check.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::friction::{
    decay_rates_lossless, decay_rates_lossy, decay_rates_lossy_2d, excited_probability,
    force_trajectory, friction_force_lossless, friction_force_lossy, friction_force_lossy_2d,
    ground_state_force_lossy, optimal_velocity, steady_state_force_lossless, AtomKinematics,
    AtomState, SubstrateModel,
};
use crate::material::{reflection, reflection_pole_form, DrudeMetal};
use crate::polarization::{
    greens_kx_qs, ky_reduced_kernel, pol_factor, SpectralPoint, TransitionDipole,
};
use crate::quadrature::{integrate, Domain, QuadratureSpec};
use crate::specfun::bessel_k_all;

/// One validation check: its acceptance tolerance and the observed result.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub tolerance: &'static str,
    pub passed: bool,
    pub detail: String,
    pub runtime_s: f64,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} [{}] tol {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.tolerance,
            self.runtime_s,
            self.detail
        )
    }
}

fn timed<F: FnOnce() -> (bool, String)>(
    id: usize,
    name: &'static str,
    tolerance: &'static str,
    budget_s: f64,
    f: F,
) -> CriterionReport {
    let start = Instant::now();
    let (mut passed, mut detail) = f();
    let runtime_s = start.elapsed().as_secs_f64();
    if runtime_s > budget_s {
        passed = false;
        detail = format!("{detail}; RUNTIME {runtime_s:.1}s exceeds budget {budget_s}s");
    }
    CriterionReport {
        id,
        name,
        tolerance,
        passed,
        detail,
        runtime_s,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn random_dipole(rng: &mut ChaCha8Rng) -> TransitionDipole<f64> {
    loop {
        let c: [f64; 6] = core::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm2: f64 = c.iter().map(|x| x * x).sum();
        if norm2 > 1e-2 {
            return TransitionDipole::new(
                Complex64::new(c[0], c[1]),
                Complex64::new(c[2], c[3]),
                Complex64::new(c[4], c[5]),
            )
            .expect("nonzero");
        }
    }
}

/// Modified Bessel `K_n(x)` (n = 0, 1) from the integral representation
/// `∫_0^∞ e^{−x cosh t} cosh(nt) dt`, evaluated by trapezoidal summation
/// with a step scaled to the saddle width. Independent oracle: shares no
/// algorithm with the production series or continued fraction.
pub fn bessel_k_oracle(order: u8, x: f64) -> f64 {
    assert!(order <= 1 && x > 0.0);
    let h = 0.2 / (x / 2.0).sqrt().max(1.0);
    // Truncate when the integrand has fallen by e^{-45} from its t=0 value.
    let z = 1.0 + 45.0 / x;
    let t_max = (z + (z * z - 1.0).sqrt()).ln();
    let f = |t: f64| {
        let e = (-x * t.cosh()).exp();
        if order == 0 {
            e
        } else {
            e * t.cosh()
        }
    };
    let mut sum = 0.5 * f(0.0);
    let mut k = 1usize;
    loop {
        let t = h * k as f64;
        if t > t_max {
            break;
        }
        sum += f(t);
        k += 1;
    }
    sum * h
}

/// Reference configuration of the acceptance suite.
fn reference() -> AtomKinematics<f64> {
    AtomKinematics::new(0.1, 0.1, 0.05).unwrap()
}

fn cardinal_dipoles() -> [(&'static str, TransitionDipole<f64>); 5] {
    [
        ("x", TransitionDipole::linear_x()),
        ("y", TransitionDipole::linear_y()),
        ("z", TransitionDipole::linear_z()),
        ("c+", TransitionDipole::chiral_plus()),
        ("c-", TransitionDipole::chiral_minus()),
    ]
}

/// 1. Rational vs pole-form reflection coefficient on 10⁴ random complex
///    frequencies in both half-planes.
pub fn criterion_1() -> CriterionReport {
    timed(
        1,
        "reflection-identity",
        "1e-12 rel, 1e4 samples",
        1.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let mut worst = 0.0_f64;
            let mut n = 0usize;
            while n < 10_000 {
                let gc = rng.gen_range(1e-3..1.0);
                let metal = DrudeMetal::normalized(gc).unwrap();
                let w = Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0));
                let wp = metal.omega_sp_prime();
                let hg = gc / 2.0;
                let clear = (w - Complex64::new(wp, -hg)).norm() > 1e-3
                    && (w - Complex64::new(-wp, -hg)).norm() > 1e-3
                    && w.norm() > 1e-3
                    && (w - Complex64::new(0.0, -gc)).norm() > 1e-3;
                if !clear {
                    continue;
                }
                n += 1;
                let a = reflection(&metal, w).unwrap();
                let b = reflection_pole_form(&metal, w).unwrap();
                worst = worst.max((a - b).norm() / b.norm());
            }
            (worst <= 1e-12, format!("worst rel diff {worst:.3e}"))
        },
    )
}

/// 2. Bessel goldens against the independent integral-representation
///    oracle, plus the recurrence residual across the working range.
pub fn criterion_2() -> CriterionReport {
    timed(
        2,
        "bessel-goldens",
        "1e-10 goldens, 1e-12 recurrence",
        1.0,
        || {
            let t1 = bessel_k_all(1.0).unwrap();
            let e0 = rel(t1.k0, bessel_k_oracle(0, 1.0));
            let e1 = rel(t1.k1, bessel_k_oracle(1, 1.0));
            let mut worst_resid = 0.0_f64;
            for i in 0..=400 {
                let x = 1e-4 * 10f64.powf(6.0 * i as f64 / 400.0); // [1e-4, 1e2]
                let t = bessel_k_all(x).unwrap();
                worst_resid = worst_resid.max((t.k2 - t.k0 - 2.0 / x * t.k1).abs() / t.k2);
            }
            let pass = e0 <= 1e-10 && e1 <= 1e-10 && worst_resid <= 1e-12;
            (
                pass,
                format!(
                    "K0(1) vs oracle {e0:.2e}, K1(1) {e1:.2e}, worst recurrence {worst_resid:.2e}"
                ),
            )
        },
    )
}

/// 3. Closed-form `W(kx)` against adaptive quadrature of the polarization
///    factor with its exponential envelope, on 50 random configurations.
pub fn criterion_3() -> CriterionReport {
    timed(3, "ky-reduction", "0.1% rel, 50 samples", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = QuadratureSpec::oracle();
        let mut worst = 0.0_f64;
        for _ in 0..50 {
            let kx = rng.gen_range(-30.0..30.0);
            let d = rng.gen_range(0.05..0.3);
            let dip = random_dipole(&mut rng);
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
            worst = worst.max(rel(q.value, w));
        }
        (worst <= 1e-3, format!("worst rel diff {worst:.3e}"))
    })
}

/// 4. 1D-reduced rates and force against the brute-force 2D integrals on
///    20 random lossy configurations.
pub fn criterion_4() -> CriterionReport {
    timed(4, "2d-vs-1d", "0.1% rel, 20 lossy configs", 120.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let spec_1d = QuadratureSpec::default();
        let spec_2d = QuadratureSpec::oracle();
        let mut worst = 0.0_f64;
        let mut n = 0usize;
        while n < 20 {
            let gc = rng.gen_range(0.05..0.5);
            let omega0: f64 = rng.gen_range(0.0..1.2);
            let d = rng.gen_range(0.07..0.25);
            let v = rng.gen_range(0.02..0.2);
            let pe = rng.gen_range(0.0..1.0);
            let dip = random_dipole(&mut rng);
            // Keep the Bessel arguments at the plasmon wave numbers inside a
            // numerically meaningful window.
            let xi_m = 2.0 * (omega0 + 1.0) / v * d;
            let xi_p = 2.0 * (omega0 - 1.0).abs() / v * d;
            if !(0.3..25.0).contains(&xi_m) || xi_p > 25.0 {
                continue;
            }
            n += 1;
            let kin = AtomKinematics::new(omega0, d, v).unwrap();
            let metal = DrudeMetal::normalized(gc).unwrap();
            let state = AtomState::new(pe).unwrap();

            let r1 = decay_rates_lossy(&kin, &metal, &dip, &spec_1d).unwrap();
            let r2 = decay_rates_lossy_2d(&kin, &metal, &dip, &spec_2d).unwrap();
            worst = worst.max(rel(r2.gamma_plus(), r1.gamma_plus()));
            worst = worst.max(rel(r2.gamma_minus(), r1.gamma_minus()));

            let f1 = friction_force_lossy(&kin, &metal, &dip, &state, &spec_1d).unwrap();
            let f2 = friction_force_lossy_2d(&kin, &metal, &dip, &state, &spec_2d).unwrap();
            worst = worst.max(rel(f2.excited_channel, f1.excited_channel));
            worst = worst.max(rel(f2.ground_channel, f1.ground_channel));
        }
        (worst <= 1e-3, format!("worst rel diff {worst:.3e}"))
    })
}

/// 5. Lossless limit: lossy rates and force channels at `Γ_c = 1e-4`
///    against the analytic closed forms, over v × dipole grid.
pub fn criterion_5() -> CriterionReport {
    timed(5, "lossless-limit", "1% rel at gamma_c=1e-4", 120.0, || {
        let metal = DrudeMetal::normalized(1e-4).unwrap();
        let spec = QuadratureSpec::default();
        let mut worst = 0.0_f64;
        let mut worst_at = String::new();
        let mut failures = Vec::new();
        for v in [0.02_f64, 0.05, 0.1] {
            for (name, dip) in cardinal_dipoles() {
                let kin = AtomKinematics::new(0.1, 0.1, v).unwrap();
                let ll_r = decay_rates_lossless(&kin, &dip);
                let lo_r = decay_rates_lossy(&kin, &metal, &dip, &spec).unwrap();
                let ll_f = friction_force_lossless(&kin, &dip, &AtomState::ground());
                let lo_f =
                    friction_force_lossy(&kin, &metal, &dip, &AtomState::ground(), &spec).unwrap();
                for (tag, got, want) in [
                    ("G+", lo_r.gamma_plus(), ll_r.gamma_plus()),
                    ("G-", lo_r.gamma_minus(), ll_r.gamma_minus()),
                    ("Fe", lo_f.excited_channel, ll_f.excited_channel),
                    ("Fg", lo_f.ground_channel, ll_f.ground_channel),
                ] {
                    let e = rel(got, want);
                    if e > 1e-2 {
                        failures.push(format!("{tag}(v={v},{name})={e:.2e}"));
                    }
                    if e > worst {
                        worst = e;
                        worst_at = format!("{tag} at v={v}, gamma={name}");
                    }
                }
            }
        }
        let detail = if failures.is_empty() {
            format!("worst rel diff {worst:.3e} ({worst_at})")
        } else {
            // Known physics: exponentially suppressed chiral rate channels
            // carry an O(gamma_c) off-resonant background that exceeds 1%
            // of their tiny resonant value at the lowest velocity.
            format!(
                "worst rel diff {worst:.3e} ({worst_at}); over 1%: [{}]",
                failures.join(", ")
            )
        };
        (worst <= 1e-2, detail)
    })
}

/// 6. Sign and positivity: `Γ̄± ≥ 0`, ground-state force `≤ 0` on 10³
///    random configurations; steady-state force strictly negative.
pub fn criterion_6() -> CriterionReport {
    timed(
        6,
        "sign-positivity",
        ">= 0 / <= 0 exact, 1e3 configs",
        60.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let spec = QuadratureSpec::default();
            let mut violations = 0usize;
            let mut lossy_done = 0usize;
            for i in 0..1000 {
                let omega0 = rng.gen_range(0.0..2.0);
                let d = rng.gen_range(0.05..0.4);
                let v = rng.gen_range(0.01..0.6);
                let dip = random_dipole(&mut rng);
                let kin = AtomKinematics::new(omega0, d, v).unwrap();
                // Every 4th config exercises the lossy path (it costs ~1000x).
                if i % 4 == 0 {
                    let gc = rng.gen_range(0.02..0.8);
                    let metal = DrudeMetal::normalized(gc).unwrap();
                    let r = decay_rates_lossy(&kin, &metal, &dip, &spec).unwrap();
                    let f = friction_force_lossy(&kin, &metal, &dip, &AtomState::ground(), &spec)
                        .unwrap();
                    if r.gamma_plus() < 0.0 || r.gamma_minus() < 0.0 || f.total > 0.0 {
                        violations += 1;
                    }
                    lossy_done += 1;
                } else {
                    let r = decay_rates_lossless(&kin, &dip);
                    let f = friction_force_lossless(&kin, &dip, &AtomState::ground());
                    if r.gamma_plus() < 0.0 || r.gamma_minus() < 0.0 || f.total > 0.0 {
                        violations += 1;
                    }
                    if !r.both_negligible() && r.gamma_plus() > 0.0 && r.gamma_minus() > 0.0 {
                        let ss = steady_state_force_lossless(&kin, &dip).unwrap();
                        if !(ss.total < 0.0) {
                            violations += 1;
                        }
                    }
                }
            }
            (
                violations == 0,
                format!("{violations} violations in 1000 configs ({lossy_done} lossy)"),
            )
        },
    )
}

/// 7. Chirality: enhancement ratio, channel dominance swap, and exact
///    conjugation symmetry of the rates.
pub fn criterion_7() -> CriterionReport {
    timed(7, "chirality", "ratio > 10; swap; 1e-12 conj", 10.0, || {
        let kin = reference();
        let minus = TransitionDipole::chiral_minus();
        let plus = TransitionDipole::chiral_plus();

        let f_minus = friction_force_lossless(&kin, &minus, &AtomState::ground());
        let f_plus = friction_force_lossless(&kin, &plus, &AtomState::ground());
        let ratio = f_minus.total.abs() / f_plus.total.abs();

        // gamma_minus is ground-dominated, gamma_plus excited-dominated.
        let fm_e = friction_force_lossless(&kin, &minus, &AtomState::excited());
        let fp_e = friction_force_lossless(&kin, &plus, &AtomState::excited());
        let dominance =
            f_minus.total.abs() > fm_e.total.abs() && fp_e.total.abs() > f_plus.total.abs();

        // Conjugation: rates of the conjugate dipole equal the rates with
        // the spin term negated (for the cardinal pair: each other's).
        let mut conj_err = 0.0_f64;
        let rm = decay_rates_lossless(&kin, &minus);
        let rp = decay_rates_lossless(&kin, &plus);
        let rmc = decay_rates_lossless(&kin, &minus.conjugate());
        conj_err = conj_err.max(rel(rmc.gamma_plus(), rp.gamma_plus()));
        conj_err = conj_err.max(rel(rmc.gamma_minus(), rp.gamma_minus()));
        let rpc = decay_rates_lossless(&kin, &plus.conjugate());
        conj_err = conj_err.max(rel(rpc.gamma_plus(), rm.gamma_plus()));
        conj_err = conj_err.max(rel(rpc.gamma_minus(), rm.gamma_minus()));

        let pass = ratio > 10.0 && dominance && conj_err <= 1e-12;
        (
            pass,
            format!("ratio {ratio:.1}, dominance swap {dominance}, conj err {conj_err:.2e}"),
        )
    })
}

/// 8. Scaling laws: velocity argmax vs `(4/7)(ω₀+ω_sp)d` at `d = 0.02`,
///    and the per-distance frequency argmax of the Fig.-6-style map sitting
///    in the lowest bin.
pub fn criterion_8() -> CriterionReport {
    timed(
        8,
        "scaling-laws",
        "argmax within 15%; lowest bin",
        60.0,
        || {
            let dip = TransitionDipole::linear_z();
            let d = 0.02;
            let mut best = (0.0_f64, 0.0_f64);
            for i in 0..200 {
                let v = 0.003 + 0.0002 * i as f64;
                let kin = AtomKinematics::new(0.1, d, v).unwrap();
                let f = friction_force_lossless(&kin, &dip, &AtomState::ground());
                if f.total.abs() > best.0 {
                    best = (f.total.abs(), v);
                }
            }
            let kin = AtomKinematics::new(0.1, d, 0.01).unwrap();
            let v_est = optimal_velocity(&kin);
            let v_err = (best.1 / v_est - 1.0).abs();

            // Ground-state force map on a coarse Fig.-6 grid.
            let metal = DrudeMetal::normalized(0.2).unwrap();
            let spec = QuadratureSpec::default();
            let chiral = TransitionDipole::chiral_minus();
            let mut lowest_bin_everywhere = true;
            let mut column_at_low_omega0 = Vec::new();
            for j in 0..6 {
                let dj = 0.07 + 0.04 * j as f64; // 0.07 .. 0.27
                let mut argmax = 0usize;
                let mut max_abs = 0.0_f64;
                for i in 0..21 {
                    let omega0 = 0.05 * i as f64;
                    let kin = AtomKinematics::new(omega0, dj, 0.05).unwrap();
                    let g = ground_state_force_lossy(&kin, &metal, &chiral, &spec).unwrap();
                    if g.value.abs() > max_abs {
                        max_abs = g.value.abs();
                        argmax = i;
                    }
                    if i == 1 {
                        column_at_low_omega0.push(g.value.abs());
                    }
                }
                if argmax != 0 {
                    lowest_bin_everywhere = false;
                }
            }
            // The drag weakens monotonically with distance at fixed omega0.
            let monotone_in_d = column_at_low_omega0.windows(2).all(|w| w[1] < w[0]);
            let pass = v_err <= 0.15 && lowest_bin_everywhere && monotone_in_d;
            (
            pass,
            format!(
                "v argmax {:.4} vs estimate {v_est:.4} ({:.1}%), freq argmax in lowest bin: {lowest_bin_everywhere}, |F| monotone in d: {monotone_in_d}",
                best.1,
                100.0 * v_err
            ),
        )
        },
    )
}

/// 9. Dissipation crossover: loss strengthens the drag at low velocity and
///    weakens it at high velocity.
pub fn criterion_9() -> CriterionReport {
    timed(
        9,
        "dissipation-crossover",
        "strict inequalities",
        10.0,
        || {
            let metal = DrudeMetal::normalized(0.2).unwrap();
            let spec = QuadratureSpec::default();
            let dip = TransitionDipole::linear_z();
            let mut ok = true;
            let mut detail = String::new();
            for (v, lossy_stronger) in [(0.01_f64, true), (0.1, false)] {
                let kin = AtomKinematics::new(0.1, 0.1, v).unwrap();
                let ll = friction_force_lossless(&kin, &dip, &AtomState::ground());
                let lo =
                    friction_force_lossy(&kin, &metal, &dip, &AtomState::ground(), &spec).unwrap();
                let holds = (lo.total.abs() > ll.total.abs()) == lossy_stronger;
                ok &= holds;
                detail.push_str(&format!(
                    "v={v}: |lossy|={:.4e} |lossless|={:.4e}; ",
                    lo.total.abs(),
                    ll.total.abs()
                ));
            }
            (ok, detail)
        },
    )
}

/// 10. Dynamics: the stationary population identity, the high-velocity
///     half-probability limit, and the trajectory reaching steady state.
pub fn criterion_10() -> CriterionReport {
    timed(
        10,
        "dynamics",
        "exact pe_inf; |pe-1/2|<0.05; 0.1% traj",
        10.0,
        || {
            let kin = reference();
            let dip = TransitionDipole::linear_z();
            let rates = decay_rates_lossless(&kin, &dip);
            let pe_inf = rates.pe_infinity().unwrap();
            let ident =
                (pe_inf - rates.gamma_minus() / (rates.gamma_minus() + rates.gamma_plus())).abs();
            let late = excited_probability(1e4, 0.25, &rates).unwrap();
            let settle = (late - pe_inf).abs();

            let fast = AtomKinematics::new(0.1, 0.1, 0.5).unwrap();
            let half_dev = (decay_rates_lossless(&fast, &dip).pe_infinity().unwrap() - 0.5).abs();

            let t_relax = 20.0 / rates.total();
            let traj =
                force_trajectory(&kin, &SubstrateModel::Lossless, &dip, 0.0, &[t_relax]).unwrap();
            let ss = steady_state_force_lossless(&kin, &dip).unwrap();
            let traj_dev = rel(traj[0].force.total, ss.total);

            let pass = ident == 0.0 && settle < 1e-12 && half_dev < 0.05 && traj_dev < 1e-3;
            (
            pass,
            format!(
                "pe_inf identity {ident:.1e}, settle {settle:.1e}, |pe(v=0.5)-1/2|={half_dev:.3}, traj dev {traj_dev:.2e}"
            ),
        )
        },
    )
}

/// 11. Hermitian mirror symmetry of the reduced Green tensor on the
///     imaginary frequency axis: `G(kx, iξ) = conj(G(−kx, iξ))`.
pub fn criterion_11() -> CriterionReport {
    timed(
        11,
        "imaginary-axis-symmetry",
        "1e-10 rel, 1e3 samples",
        10.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let mut worst = 0.0_f64;
            for _ in 0..1000 {
                let kx: f64 = rng.gen_range(-30.0..30.0);
                if kx.abs() < 1e-6 {
                    continue;
                }
                let xi = rng.gen_range(0.05..5.0);
                let gc = rng.gen_range(1e-3..1.0);
                let d = rng.gen_range(0.05..0.3);
                let metal = DrudeMetal::normalized(gc).unwrap();
                let w = Complex64::new(0.0, xi);
                let g1 = greens_kx_qs(kx, w, &metal, d).unwrap();
                let g2 = greens_kx_qs(-kx, w, &metal, d).unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        let lhs = g1.component(i, j);
                        let rhs = g2.component(i, j).conj();
                        let scale = lhs.norm().max(1e-300);
                        worst = worst.max((lhs - rhs).norm() / scale);
                    }
                }
            }
            (worst <= 1e-10, format!("worst rel asymmetry {worst:.3e}"))
        },
    )
}

/// 12. Performance envelope: one lossy force evaluation, the 100×100
///     ground-state force map (single-threaded), and the suite total that
///     the caller folds in.
pub fn criterion_12() -> CriterionReport {
    timed(12, "performance", "<10 ms force; <30 s map", 120.0, || {
        let kin = reference();
        let metal = DrudeMetal::normalized(0.2).unwrap();
        let spec = QuadratureSpec::default();
        let dip = TransitionDipole::chiral_minus();

        // Median of 5 single lossy force evaluations.
        let mut times = Vec::new();
        for _ in 0..5 {
            let t0 = Instant::now();
            let f = friction_force_lossy(&kin, &metal, &dip, &AtomState::ground(), &spec).unwrap();
            std::hint::black_box(f.total);
            times.push(t0.elapsed().as_secs_f64());
        }
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let single_ms = times[2] * 1e3;

        // 100x100 Fig.-6-style map, ground channel, single thread.
        let t0 = Instant::now();
        let mut acc = 0.0;
        for j in 0..100 {
            let d = 0.07 + 0.23 * j as f64 / 99.0;
            for i in 0..100 {
                let omega0 = i as f64 / 99.0;
                let k = AtomKinematics::new(omega0, d, 0.05).unwrap();
                acc += ground_state_force_lossy(&k, &metal, &dip, &spec)
                    .unwrap()
                    .value;
            }
        }
        std::hint::black_box(acc);
        let map_s = t0.elapsed().as_secs_f64();

        let pass = single_ms < 10.0 && map_s < 30.0;
        (
            pass,
            format!("single force {single_ms:.2} ms, 100x100 map {map_s:.1} s"),
        )
    })
}

/// Run every criterion in order. The final report also enforces the
/// whole-suite runtime budget (< 5 min).
pub fn run_all() -> Vec<CriterionReport> {
    let start = Instant::now();
    let mut reports = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
        criterion_12(),
    ];
    let total = start.elapsed().as_secs_f64();
    if total > 300.0 {
        if let Some(last) = reports.last_mut() {
            last.passed = false;
            last.detail
                .push_str(&format!("; SUITE total {total:.0}s exceeds 300s"));
        }
    } else if let Some(last) = reports.last_mut() {
        last.detail.push_str(&format!("; suite total {total:.0}s"));
    }
    reports
}
