//! The five subcommands: force-sweep, evolve, map, rates, validate.

use rayon::prelude::*;
use serde::Serialize;

use qfriction::friction::{
    decay_rates_lossless, decay_rates_lossy, force_trajectory, friction_force_lossless,
    friction_force_lossy, ground_state_force_lossy, plasmon_wavenumbers, FrictionError,
    SubstrateModel,
};
use qfriction::{AtomKinematics64, AtomState64, DrudeMetal64, ForceValue64, TransitionDipole64};

use crate::output::{Cell, Sheet, UNITS_COMMENT};
use crate::params::{grid_points, quad_spec, Params, SweepRange, SweepVar};
use crate::CliError;

fn dipole_comment(dip: &TransitionDipole64) -> String {
    let c = |z: qfriction::num_complex::Complex64| format!("{:.16e}{:+.16e}i", z.re, z.im);
    format!(
        "gamma (normalized): gx={}, gy={}, gz={}, s_y={:.16e}",
        c(dip.gx()),
        c(dip.gy()),
        c(dip.gz()),
        dip.spin_y()
    )
}

fn substrate_comment(model: &SubstrateModel<f64>) -> String {
    match model {
        SubstrateModel::Lossless => "substrate: lossless (gamma_c -> 0+), analytic limit".into(),
        SubstrateModel::Drude { metal, quad } => format!(
            "substrate: Drude, gamma_c={:.16e}, quadrature rel_tol={:.3e}",
            metal.gamma_c(),
            quad.rel_tol
        ),
    }
}

fn base_comments(title: &str, p: &Params) -> Vec<String> {
    let mut out = vec![
        format!("qfriction {title}"),
        UNITS_COMMENT.to_string(),
        format!(
            "params: omega0={:.16e}, d={:.16e}, v={:.16e}, pe={:.16e}, pe0={:.16e}",
            p.kin.omega0(),
            p.kin.d(),
            p.kin.v(),
            p.pe,
            p.pe0
        ),
        substrate_comment(&p.model),
        dipole_comment(&p.dip),
    ];
    if p.velocity_mirrored {
        out.push("note: negative input velocity mapped to the mirrored dipole (v, gamma_x) -> (-v, -gamma_x)".into());
    }
    if let Some(si) = &p.si {
        out.push(format!(
            "si: omega_sp={:.16e} rad/s, length unit c/omega_sp={:.16e} m",
            si.omega_sp_rad_s, si.length_m
        ));
        if let (Some(g0), Some(f0)) = (si.gamma0_per_s, si.f0_newtons) {
            out.push(format!("si: Gamma_0={:.16e} 1/s, |F_0|={:.16e} N", g0, f0));
        }
    }
    out
}

fn force_at(
    kin: &AtomKinematics64,
    model: &SubstrateModel<f64>,
    dip: &TransitionDipole64,
    pe: f64,
) -> Result<ForceValue64, FrictionError<f64>> {
    let state = AtomState64::new(pe)?;
    match model {
        SubstrateModel::Lossless => Ok(friction_force_lossless(kin, dip, &state)),
        SubstrateModel::Drude { metal, quad } => {
            friction_force_lossy(kin, metal, dip, &state, quad)
        }
    }
}

fn run_rows<T: Sync, F: Fn(&T) -> Result<Vec<Cell>, String> + Sync>(
    inputs: &[T],
    threads: usize,
    f: F,
) -> (Vec<Vec<Cell>>, bool) {
    let results: Vec<Result<Vec<Cell>, String>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| inputs.par_iter().map(&f).collect())
    } else {
        inputs.iter().map(&f).collect()
    };
    let mut any_failed = false;
    let rows = results
        .into_iter()
        .map(|r| match r {
            Ok(cells) => cells,
            Err(note) => {
                eprintln!("warning: row failed: {note}");
                any_failed = true;
                vec![Cell::Num(f64::NAN)]
            }
        })
        .collect();
    (rows, any_failed)
}

/// `force-sweep`: one force evaluation per grid point of the swept
/// variable; columns `var,value,F_total,F_excited,F_ground,err`.
pub fn cmd_force_sweep(
    p: &Params,
    sweep: &SweepRange,
    rel_tol: Option<f64>,
    threads: usize,
) -> Result<(Sheet, bool), CliError> {
    if sweep.var == SweepVar::GammaC && matches!(p.model, SubstrateModel::Lossless) {
        // The base substrate flags are ignored by a gamma_c sweep except
        // that --lossless contradicts sweeping the damping.
        if sweep.min > 0.0 {
            return Err(CliError::Usage(
                "--lossless is mutually exclusive with sweeping gamma_c > 0".into(),
            ));
        }
    }
    let quad = quad_spec(rel_tol)?;
    let grid = sweep.grid();
    let var = sweep.var;

    let compute = |value: &f64| -> Result<Vec<Cell>, String> {
        let value = *value;
        let mut kin = p.kin;
        let mut model = p.model;
        let mut pe = p.pe;
        match var {
            SweepVar::V => {
                kin = AtomKinematics64::new(kin.omega0(), kin.d(), value)
                    .map_err(|e| format!("{var:?}={value}: {e}", var = var.name()))?;
            }
            SweepVar::Omega0 => {
                kin = AtomKinematics64::new(value, kin.d(), kin.v())
                    .map_err(|e| format!("omega0={value}: {e}"))?;
            }
            SweepVar::D => {
                kin = AtomKinematics64::new(kin.omega0(), value, kin.v())
                    .map_err(|e| format!("d={value}: {e}"))?;
            }
            SweepVar::Pe => pe = value,
            SweepVar::GammaC => {
                model = if value == 0.0 {
                    SubstrateModel::Lossless
                } else {
                    SubstrateModel::Drude {
                        metal: DrudeMetal64::normalized(value)
                            .map_err(|e| format!("gamma_c={value}: {e}"))?,
                        quad,
                    }
                };
            }
        }
        let f = force_at(&kin, &model, &p.dip, pe).map_err(|e| format!("value={value}: {e}"))?;
        Ok(vec![
            Cell::Text(var.name().into()),
            Cell::Num(value),
            Cell::Num(f.total),
            Cell::Num(f.excited_channel),
            Cell::Num(f.ground_channel),
            Cell::Num(f.err_estimate),
        ])
    };

    let (mut rows, any_failed) = run_rows(&grid, threads, compute);
    // Failed rows keep the grid value so the output stays alignable.
    for (row, value) in rows.iter_mut().zip(&grid) {
        if row.len() == 1 {
            *row = vec![
                Cell::Text(var.name().into()),
                Cell::Num(*value),
                Cell::Num(f64::NAN),
                Cell::Num(f64::NAN),
                Cell::Num(f64::NAN),
                Cell::Num(f64::NAN),
            ];
        }
    }

    let mut comments = base_comments("force-sweep", p);
    comments.push(format!(
        "sweep: var={}, min={:.16e}, max={:.16e}, steps={}, spacing={}",
        var.name(),
        sweep.min,
        sweep.max,
        sweep.steps,
        if sweep.log { "log" } else { "linear" }
    ));
    Ok((
        Sheet {
            comments,
            columns: vec!["var", "value", "F_total", "F_excited", "F_ground", "err"],
            rows,
        },
        any_failed,
    ))
}

/// `evolve`: population relaxation and force along a uniform time grid
/// (`steps` points from 0 to `tmax`, in units of `1/Γ₀`).
pub fn cmd_evolve(p: &Params, tmax: f64, steps: usize) -> Result<(Sheet, bool), CliError> {
    if !(tmax > 0.0) || steps < 2 {
        return Err(CliError::Usage(
            "evolve needs --tmax > 0 and --steps >= 2".into(),
        ));
    }
    let times = grid_points(0.0, tmax, steps, false);
    let traj = force_trajectory(&p.kin, &p.model, &p.dip, p.pe0, &times)
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    let rows = traj
        .iter()
        .map(|pt| {
            vec![
                Cell::Num(pt.t),
                Cell::Num(pt.pe),
                Cell::Num(pt.force.total),
                Cell::Num(pt.force.excited_channel),
                Cell::Num(pt.force.ground_channel),
                Cell::Num(pt.force.err_estimate),
            ]
        })
        .collect();
    let mut comments = base_comments("evolve", p);
    comments.push(format!("time grid: tmax={tmax:.16e}, steps={steps}"));
    Ok((
        Sheet {
            comments,
            columns: vec!["t", "pe", "F_total", "F_excited", "F_ground", "err"],
            rows,
        },
        false,
    ))
}

/// `map`: ground-state force over an (omega0, d) grid, row-major with
/// omega0 fastest; columns `omega0,d,F_total`.
pub fn cmd_map(
    p: &Params,
    omega0_axis: (f64, f64, usize),
    d_axis: (f64, f64, usize),
    threads: usize,
) -> Result<(Sheet, bool), CliError> {
    let omega0s = grid_points(omega0_axis.0, omega0_axis.1, omega0_axis.2.max(1), false);
    let ds = grid_points(d_axis.0, d_axis.1, d_axis.2.max(1), false);
    let omega0s = &omega0s[..omega0_axis.2];
    let ds = &ds[..d_axis.2];

    let cells: Vec<(f64, f64)> = ds
        .iter()
        .flat_map(|&d| omega0s.iter().map(move |&w| (w, d)))
        .collect();

    let compute = |&(omega0, d): &(f64, f64)| -> Result<Vec<Cell>, String> {
        let kin = AtomKinematics64::new(omega0, d, p.kin.v())
            .map_err(|e| format!("omega0={omega0}, d={d}: {e}"))?;
        let total = match (&p.model, p.pe == 0.0) {
            (SubstrateModel::Drude { metal, quad }, true) => {
                ground_state_force_lossy(&kin, metal, &p.dip, quad)
                    .map_err(|e| format!("omega0={omega0}, d={d}: {e}"))?
                    .value
            }
            _ => {
                force_at(&kin, &p.model, &p.dip, p.pe)
                    .map_err(|e| format!("omega0={omega0}, d={d}: {e}"))?
                    .total
            }
        };
        Ok(vec![Cell::Num(omega0), Cell::Num(d), Cell::Num(total)])
    };

    let (mut rows, any_failed) = run_rows(&cells, threads, compute);
    for (row, &(omega0, d)) in rows.iter_mut().zip(&cells) {
        if row.len() == 1 {
            *row = vec![Cell::Num(omega0), Cell::Num(d), Cell::Num(f64::NAN)];
        }
    }

    let mut comments = base_comments("map", p);
    comments.push(format!(
        "grid: omega0 {:.16e}..{:.16e} x{}, d {:.16e}..{:.16e} x{}, row-major omega0-fastest",
        omega0_axis.0, omega0_axis.1, omega0_axis.2, d_axis.0, d_axis.1, d_axis.2
    ));
    Ok((
        Sheet {
            comments,
            columns: vec!["omega0", "d", "F_total"],
            rows,
        },
        any_failed,
    ))
}

#[derive(Debug, Serialize)]
pub struct RatesOutput {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub pe_infinity: Option<f64>,
    pub k_p_plus: f64,
    pub k_p_minus: f64,
}

/// `rates`: the two decay rates, the stationary population, and the
/// plasmon selection wave numbers, as a JSON object.
pub fn cmd_rates(p: &Params) -> Result<RatesOutput, CliError> {
    let rates = match &p.model {
        SubstrateModel::Lossless => decay_rates_lossless(&p.kin, &p.dip),
        SubstrateModel::Drude { metal, quad } => decay_rates_lossy(&p.kin, metal, &p.dip, quad)
            .map_err(|e| CliError::Numerical(e.to_string()))?,
    };
    let (k_p_plus, k_p_minus) = plasmon_wavenumbers(&p.kin);
    Ok(RatesOutput {
        gamma_plus: rates.gamma_plus(),
        gamma_minus: rates.gamma_minus(),
        pe_infinity: rates.pe_infinity().ok(),
        k_p_plus,
        k_p_minus,
    })
}

/// `validate`: run the acceptance criteria and print one line each.
/// Returns true iff everything passed.
pub fn cmd_validate(w: &mut dyn std::io::Write) -> Result<bool, CliError> {
    let reports = qfriction::validate::run_all();
    let mut all = true;
    for r in &reports {
        writeln!(w, "{}", r.line()).map_err(|e| CliError::Io(e.to_string()))?;
        all &= r.passed;
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(w, "{passed}/{} criteria passed", reports.len())
        .map_err(|e| CliError::Io(e.to_string()))?;
    Ok(all)
}
