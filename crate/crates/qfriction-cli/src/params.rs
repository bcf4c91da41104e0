//! Parameter plumbing: flag/config-file merging, dipole and sweep parsing,
//! and construction of the library-side inputs.
//!
//! Everything is dimensionless per the library convention (frequencies in
//! `ω_sp`, lengths in `c/ω_sp`, velocities in `c`, forces in `|F₀|`, times
//! in `1/Γ₀`). A JSON config file may provide any of the same keys; flags
//! override file values.

use std::fs;
use std::str::FromStr;

use serde::Deserialize;

use qfriction::friction::SubstrateModel;
use qfriction::quadrature::QuadratureSpec;
use qfriction::{AtomKinematics64, DrudeMetal64, TransitionDipole64};

use crate::CliError;

/// Keys accepted in the `--config` JSON file (same names as the flags,
/// with `-` replaced by `_`).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub omega0: Option<f64>,
    pub d: Option<f64>,
    pub v: Option<f64>,
    pub gamma_c: Option<f64>,
    pub lossless: Option<bool>,
    pub gamma: Option<String>,
    pub pe: Option<f64>,
    pub pe0: Option<f64>,
    pub sweep: Option<String>,
    pub out: Option<String>,
    pub format: Option<String>,
    pub rel_tol: Option<f64>,
    pub threads: Option<usize>,
    pub tmax: Option<f64>,
    pub steps: Option<usize>,
    pub omega0_grid: Option<String>,
    pub d_grid: Option<String>,
    pub si_omega_sp: Option<f64>,
    pub si_dipole: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &str) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {path}: {e}")))
    }
}

/// SI scales recorded in output headers when inputs were given in
/// laboratory units.
#[derive(Debug, Clone, Copy)]
pub struct SiScales {
    pub omega_sp_rad_s: f64,
    pub length_m: f64,
    /// Set when a dipole magnitude (C·m) was supplied.
    pub gamma0_per_s: Option<f64>,
    pub f0_newtons: Option<f64>,
}

/// Fully resolved physical parameters shared by the compute subcommands.
#[derive(Debug, Clone)]
pub struct Params {
    pub kin: AtomKinematics64,
    pub model: SubstrateModel<f64>,
    pub dip: TransitionDipole64,
    pub pe: f64,
    pub pe0: f64,
    /// Set when a negative `--v` was mapped onto the mirrored problem.
    pub velocity_mirrored: bool,
    pub si: Option<SiScales>,
}

pub struct RawParams {
    pub omega0: f64,
    pub d: f64,
    pub v: f64,
    pub gamma_c: Option<f64>,
    pub lossless: bool,
    pub gamma: String,
    pub pe: f64,
    pub pe0: f64,
    pub rel_tol: Option<f64>,
    /// When set, omega0/gamma_c are read in rad/s, d in metres and v in
    /// m/s, and everything is normalized here at the boundary.
    pub si_omega_sp: Option<f64>,
    /// Dipole magnitude |gamma| in C·m (only sets the output scales).
    pub si_dipole: Option<f64>,
}

pub fn quad_spec(rel_tol: Option<f64>) -> Result<QuadratureSpec<f64>, CliError> {
    let mut spec = QuadratureSpec::default();
    if let Some(r) = rel_tol {
        if !(r > 0.0) {
            return Err(CliError::Usage(format!(
                "--rel-tol must be positive, got {r}"
            )));
        }
        spec.rel_tol = r;
    }
    Ok(spec)
}

impl RawParams {
    pub fn resolve(&self) -> Result<Params, CliError> {
        if self.lossless && self.gamma_c.is_some_and(|g| g > 0.0) {
            return Err(CliError::Usage(
                "--lossless and --gamma-c > 0 are mutually exclusive".into(),
            ));
        }

        // SI boundary: normalize laboratory inputs before anything else.
        let (omega0, d, v, gamma_c, si) = match self.si_omega_sp {
            None => (self.omega0, self.d, self.v, self.gamma_c, None),
            Some(omega_sp) => {
                if !(omega_sp > 0.0) {
                    return Err(CliError::Usage(format!(
                        "--si-omega-sp must be positive, got {omega_sp}"
                    )));
                }
                let scales = SiScales {
                    omega_sp_rad_s: omega_sp,
                    length_m: crate::si::length_scale_m(omega_sp),
                    gamma0_per_s: self.si_dipole.map(|g| crate::si::gamma0_per_s(omega_sp, g)),
                    f0_newtons: self.si_dipole.map(|g| crate::si::f0_newtons(omega_sp, g)),
                };
                (
                    crate::si::frequency_dimensionless(self.omega0, omega_sp),
                    crate::si::height_dimensionless(self.d, omega_sp),
                    crate::si::velocity_dimensionless(self.v),
                    self.gamma_c
                        .map(|g| crate::si::frequency_dimensionless(g, omega_sp)),
                    Some(scales),
                )
            }
        };

        let model = if self.lossless || gamma_c == Some(0.0) {
            SubstrateModel::Lossless
        } else if let Some(gc) = gamma_c {
            let metal = DrudeMetal64::normalized(gc)
                .map_err(|e| CliError::Usage(format!("invalid --gamma-c: {e}")))?;
            SubstrateModel::Drude {
                metal,
                quad: quad_spec(self.rel_tol)?,
            }
        } else {
            return Err(CliError::Usage(
                "specify a substrate: --lossless or --gamma-c <f>".into(),
            ));
        };

        let mut dip = TransitionDipole64::from_str(&self.gamma)
            .map_err(|e| CliError::Usage(format!("invalid --gamma: {e}")))?;
        if dip.was_renormalized() {
            eprintln!("note: dipole renormalized to |gamma|^2 = 1");
        }

        // Negative velocities map onto the mirrored dipole with v > 0; the
        // reported force is then the component along the motion direction.
        let mut v = v;
        let mut velocity_mirrored = false;
        if v < 0.0 {
            v = -v;
            dip = dip.mirror_x();
            velocity_mirrored = true;
            eprintln!("note: v < 0 mapped to (v, gamma_x) -> (-v, -gamma_x); forces are reported along the motion direction");
        }

        let kin =
            AtomKinematics64::new(omega0, d, v).map_err(|e| CliError::Usage(e.to_string()))?;
        if kin.galilean_strained() {
            eprintln!("warning: v > 0.3 c strains the Galilean approximation");
        }
        for (name, pe) in [("--pe", self.pe), ("--pe0", self.pe0)] {
            if !(0.0..=1.0).contains(&pe) {
                return Err(CliError::Usage(format!(
                    "{name} must lie in [0, 1], got {pe}"
                )));
            }
        }
        Ok(Params {
            kin,
            model,
            dip,
            pe: self.pe,
            pe0: self.pe0,
            velocity_mirrored,
            si,
        })
    }
}

/// Sweep variable of `--sweep <var:min:max:steps[:log]>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    V,
    GammaC,
    Omega0,
    D,
    Pe,
}

impl SweepVar {
    pub fn name(&self) -> &'static str {
        match self {
            SweepVar::V => "v",
            SweepVar::GammaC => "gamma_c",
            SweepVar::Omega0 => "omega0",
            SweepVar::D => "d",
            SweepVar::Pe => "pe",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRange {
    pub var: SweepVar,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub log: bool,
}

impl SweepRange {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(4..=5).contains(&parts.len()) {
            return Err(CliError::Usage(format!(
                "--sweep expects var:min:max:steps[:log], got {s:?}"
            )));
        }
        let var = match parts[0] {
            "v" => SweepVar::V,
            "gamma_c" | "gamma-c" => SweepVar::GammaC,
            "omega0" => SweepVar::Omega0,
            "d" => SweepVar::D,
            "pe" => SweepVar::Pe,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown sweep variable {other:?} (expected v, gamma_c, omega0, d, pe)"
                )))
            }
        };
        let min: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::Usage(format!("bad sweep min {:?}", parts[1])))?;
        let max: f64 = parts[2]
            .parse()
            .map_err(|_| CliError::Usage(format!("bad sweep max {:?}", parts[2])))?;
        let steps: usize = parts[3]
            .parse()
            .map_err(|_| CliError::Usage(format!("bad sweep steps {:?}", parts[3])))?;
        let log = match parts.get(4) {
            None => false,
            Some(&"log") => true,
            Some(&"linear") => false,
            Some(other) => {
                return Err(CliError::Usage(format!(
                    "bad sweep spacing {other:?} (expected log or linear)"
                )))
            }
        };
        if !(min < max) || steps < 2 {
            return Err(CliError::Usage(format!(
                "sweep needs min < max and steps >= 2, got {s:?}"
            )));
        }
        if log && min <= 0.0 {
            return Err(CliError::Usage("log spacing needs min > 0".into()));
        }
        Ok(Self {
            var,
            min,
            max,
            steps,
            log,
        })
    }

    pub fn grid(&self) -> Vec<f64> {
        grid_points(self.min, self.max, self.steps, self.log)
    }
}

pub fn grid_points(min: f64, max: f64, steps: usize, log: bool) -> Vec<f64> {
    let n = steps.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if log {
                (min.ln() + (max.ln() - min.ln()) * t).exp()
            } else {
                min + (max - min) * t
            }
        })
        .collect()
}

/// `min:max:steps` grid axis (for the map subcommand).
pub fn parse_axis(s: &str, what: &str) -> Result<(f64, f64, usize), CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "{what} expects min:max:steps, got {s:?}"
        )));
    }
    let min: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} min {:?}", parts[0])))?;
    let max: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} max {:?}", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} steps {:?}", parts[2])))?;
    if steps == 0 || (steps > 1 && !(min < max)) {
        return Err(CliError::Usage(format!(
            "{what}: need min < max (or steps = 1)"
        )));
    }
    Ok((min, max, steps))
}
