//! Average-Hamiltonian compilation of one effective step into the
//! symmetrized rf-pulse / free-precession cycle
//! `(H_rf, τ_p/2) – (H_NMR, τ_prec) – (H_rf, τ_p/2)`.
//!
//! `H_NMR = ω_L/2 (σ_z¹+σ_z²) + J₁₂/4 σ_z¹σ_z²` with both Larmor offsets equal,
//! `H_rf = ω_rf/2 (σ_x¹+σ_x²)`. The offset acts only during precession.

use core::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian_generator, ops, spectral_norm, ComplexMatrix};
use crate::model::{hamiltonian, ModelParams};

/// Scalar coupling of ¹³C-labelled chloroform, Hz.
pub const CHLOROFORM_J12_HZ: f64 = 214.94;

pub const DEFAULT_RF_HZ: f64 = 25_000.0;

/// Half-pulse flip angle (rad) above which the small-angle picture is flagged.
pub const SMALL_ANGLE_LIMIT: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HardwareParams {
    /// `J₁₂` in rad/s.
    pub j_12: f64,
    /// rf nutation frequency in rad/s, equal on both channels.
    pub omega_rf: f64,
}

impl Default for HardwareParams {
    fn default() -> Self {
        Self { j_12: TAU * CHLOROFORM_J12_HZ, omega_rf: TAU * DEFAULT_RF_HZ }
    }
}

impl HardwareParams {
    pub fn new(j_12: f64, omega_rf: f64) -> Result<Self> {
        if !(j_12 > 0.0 && j_12.is_finite()) {
            return Err(Error::InvalidParameter("j_12 must be positive"));
        }
        if !(omega_rf > 0.0 && omega_rf.is_finite()) {
            return Err(Error::InvalidParameter("omega_rf must be positive"));
        }
        Ok(Self { j_12, omega_rf })
    }

    pub fn from_hz(j_12_hz: f64, rf_hz: f64) -> Result<Self> {
        Self::new(TAU * j_12_hz, TAU * rf_hz)
    }
}

/// Hardware timing for one effective-Hamiltonian step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSegment {
    /// Effective step duration, s.
    pub tau: f64,
    /// Total pulse duration, s. Negative values encode a 180° rf phase.
    pub tau_p: f64,
    /// Free-precession duration, s.
    pub tau_prec: f64,
    /// Larmor offset applied to both spins during precession, rad/s.
    pub omega_l: f64,
    pub omega_rf: f64,
    pub target: ModelParams,
    /// Half-pulse flip angle exceeds [`SMALL_ANGLE_LIMIT`].
    pub small_angle_violation: bool,
}

impl PulseSegment {
    /// Pulse plus precession time, s.
    pub fn physical_duration(&self) -> f64 {
        self.tau_p.abs() + self.tau_prec
    }

    pub fn half_pulse_angle(&self) -> f64 {
        (self.omega_rf * self.tau_p / 2.0).abs()
    }
}

/// Solves the matching relations
/// `τ_prec = 4J_I/J₁₂·τ`, `τ_p = ω_x/ω_rf·τ`, `ω_L = τ/τ_prec·ω_z`.
pub fn compile_step(target: &ModelParams, tau: f64, hw: &HardwareParams) -> Result<PulseSegment> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::NonPositiveTau);
    }
    let tau_prec = 4.0 * target.j_i / hw.j_12 * tau;
    let tau_p = target.omega_x() / hw.omega_rf * tau;
    let omega_l = tau / tau_prec * target.omega_z();
    let mut seg = PulseSegment {
        tau,
        tau_p,
        tau_prec,
        omega_l,
        omega_rf: hw.omega_rf,
        target: *target,
        small_angle_violation: false,
    };
    seg.small_angle_violation = seg.half_pulse_angle() > SMALL_ANGLE_LIMIT;
    Ok(seg)
}

/// rf Hamiltonian in rad/s.
pub fn rf_hamiltonian(omega_rf: f64) -> ComplexMatrix {
    ops::collective(&ops::sigma_x()).scale_real(omega_rf / 2.0)
}

/// Natural Hamiltonian in rad/s with equal Larmor offsets on both spins.
pub fn nmr_hamiltonian(omega_l: f64, hw: &HardwareParams) -> ComplexMatrix {
    ops::collective(&ops::sigma_z()).scale_real(omega_l / 2.0) + ops::zz().scale_real(hw.j_12 / 4.0)
}

/// Exact propagator of the symmetrized cycle.
pub fn segment_unitary(seg: &PulseSegment, hw: &HardwareParams) -> ComplexMatrix {
    let precession =
        expm_hermitian_generator(&nmr_hamiltonian(seg.omega_l, hw), seg.tau_prec).expect("H_NMR is Hermitian");
    if seg.tau_p == 0.0 {
        return precession;
    }
    let half_pulse =
        expm_hermitian_generator(&rf_hamiltonian(seg.omega_rf), seg.tau_p / 2.0).expect("H_rf is Hermitian");
    half_pulse * precession * half_pulse
}

/// `exp(-i·H_target·τ)` for the segment's target fields.
pub fn ideal_step_unitary(seg: &PulseSegment) -> ComplexMatrix {
    let h = hamiltonian(seg.target.g_x, seg.target.g_z).scale_real(seg.target.j_i);
    expm_hermitian_generator(&h, seg.tau).expect("target Hamiltonian is Hermitian")
}

/// Spectral-norm distance between the compiled cycle and the ideal step.
pub fn trotter_error(seg: &PulseSegment, hw: &HardwareParams) -> f64 {
    spectral_norm(&(segment_unitary(seg, hw) - ideal_step_unitary(seg)))
}
