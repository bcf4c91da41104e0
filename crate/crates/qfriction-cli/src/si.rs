//! SI conversion helpers at the CLI boundary.
//!
//! The library works in dimensionless units throughout; these helpers turn
//! laboratory inputs (`ω_sp` in rad/s, distances in m, dipole moments in
//! C·m) into the dimensionless quantities the subcommands accept, and give
//! the scales `Γ₀` and `|F₀|` that convert emitted rates and forces back
//! to SI.

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0; // m/s
pub const HBAR: f64 = 1.054_571_817e-34; // J s
pub const EPSILON_0: f64 = 8.854_187_812_8e-12; // F/m

/// Length unit `c/ω_sp` in metres.
pub fn length_scale_m(omega_sp_rad_s: f64) -> f64 {
    SPEED_OF_LIGHT / omega_sp_rad_s
}

/// Rate unit `Γ₀ = (1/4πε₀ħ)(ω_sp/c)³|γ|²` in 1/s.
pub fn gamma0_per_s(omega_sp_rad_s: f64, dipole_cm: f64) -> f64 {
    let k = omega_sp_rad_s / SPEED_OF_LIGHT;
    dipole_cm * dipole_cm * k.powi(3) / (4.0 * std::f64::consts::PI * EPSILON_0 * HBAR)
}

/// Force unit `|F₀| = (|γ|²/4πε₀)(ω_sp/c)⁴` in newtons.
pub fn f0_newtons(omega_sp_rad_s: f64, dipole_cm: f64) -> f64 {
    let k = omega_sp_rad_s / SPEED_OF_LIGHT;
    dipole_cm * dipole_cm * k.powi(4) / (4.0 * std::f64::consts::PI * EPSILON_0)
}

pub fn height_dimensionless(d_m: f64, omega_sp_rad_s: f64) -> f64 {
    d_m / length_scale_m(omega_sp_rad_s)
}

pub fn velocity_dimensionless(v_m_s: f64) -> f64 {
    v_m_s / SPEED_OF_LIGHT
}

pub fn frequency_dimensionless(omega_rad_s: f64, omega_sp_rad_s: f64) -> f64 {
    omega_rad_s / omega_sp_rad_s
}
