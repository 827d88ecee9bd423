//! Phenomenological per-step noise and the stepwise open-system scan.
//!
//! Each qubit sees amplitude damping (`T1`, relaxing toward `|↑⟩`) and pure
//! dephasing, with `1/T2 = 1/(2T1) + 1/T2'`. A per-cycle dephasing kick
//! stands in for the switching transients of the pulse hardware, which grow
//! with the number of cycles rather than with elapsed time.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{apply_channel_unchecked, compose_kraus, ops, tensor_kraus, ComplexMatrix, DensityOperator};
use crate::model::ModelParams;
use crate::observables::{Trajectory, TrajectoryRecord};
use crate::pulse::{compile_step, segment_unitary, HardwareParams};
use crate::sweep::{ScheduleMode, SweepSchedule};

/// Aggregate decoherence time that reproduces the measured concurrence, s.
pub const DEFAULT_DECOHERENCE_TIME: f64 = 0.130;

pub const DEFAULT_T1_OVER_T2: f64 = 10.0;

/// Phase-damping parameter applied to each qubit once per pulse cycle.
pub const DEFAULT_TRANSIENT_DEPHASING: f64 = 1e-3;

/// How the aggregate decoherence time maps onto per-qubit `T2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoherenceInterpretation {
    /// `t2` is the coherence time of each qubit.
    PerQubit,
    /// `t2` is the decay time of the two-spin `|↑↓⟩⟨↓↑|` coherence, i.e. `T2 = 2·t2` per qubit.
    EntangledCoherence,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoherenceParams {
    /// Dephasing time, s; see [`DecoherenceInterpretation`].
    pub t2: f64,
    /// Amplitude-damping time per qubit, s. `f64::INFINITY` disables it.
    pub t1: f64,
    pub enabled: bool,
    pub interpretation: DecoherenceInterpretation,
    /// Per-qubit phase-damping parameter applied after every cycle.
    pub transient_dephasing: f64,
}

impl Default for DecoherenceParams {
    fn default() -> Self {
        Self::from_total_time(DEFAULT_DECOHERENCE_TIME)
    }
}

impl DecoherenceParams {
    pub fn disabled() -> Self {
        Self { enabled: false, ..Self::default() }
    }

    /// `t2 = total`, `t1 = 10·t2`, per-qubit interpretation, default transient.
    pub fn from_total_time(total: f64) -> Self {
        Self {
            t2: total,
            t1: DEFAULT_T1_OVER_T2 * total,
            enabled: true,
            interpretation: DecoherenceInterpretation::PerQubit,
            transient_dephasing: DEFAULT_TRANSIENT_DEPHASING,
        }
    }

    /// Per-qubit `T2`.
    pub fn qubit_t2(&self) -> f64 {
        match self.interpretation {
            DecoherenceInterpretation::PerQubit => self.t2,
            DecoherenceInterpretation::EntangledCoherence => 2.0 * self.t2,
        }
    }

    /// Pure-dephasing time `T2'` from `1/T2 = 1/(2T1) + 1/T2'`.
    pub fn pure_dephasing_time(&self) -> f64 {
        let rate = 1.0 / self.qubit_t2() - 0.5 / self.t1;
        if rate <= 0.0 {
            f64::INFINITY
        } else {
            1.0 / rate
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.enabled {
            return Ok(());
        }
        let t2 = self.qubit_t2();
        if !(self.t2 > 0.0) || !(self.t1 > 0.0) {
            return Err(Error::InvalidParameter("decoherence times must be positive"));
        }
        if self.t1 < t2 / 2.0 {
            return Err(Error::Unphysical { t1: self.t1, t2 });
        }
        if !(0.0..1.0).contains(&self.transient_dephasing) {
            return Err(Error::InvalidParameter("transient dephasing must lie in [0, 1)"));
        }
        Ok(())
    }
}

/// Single-qubit phase damping: off-diagonals scale by `√(1−λ)`.
pub fn phase_damping_kraus(lambda: f64) -> [ComplexMatrix; 2] {
    [ComplexMatrix::diagonal(&[1.0, libm::sqrt(1.0 - lambda)]), ComplexMatrix::diagonal(&[0.0, libm::sqrt(lambda)])]
}

/// Single-qubit amplitude damping toward `|↑⟩`.
pub fn amplitude_damping_kraus(gamma: f64) -> [ComplexMatrix; 2] {
    let mut decay = ComplexMatrix::zeros(2);
    decay.set(0, 1, libm::sqrt(gamma).into());
    [ComplexMatrix::diagonal(&[1.0, libm::sqrt(1.0 - gamma)]), decay]
}

fn nonzero(kraus: impl IntoIterator<Item = ComplexMatrix>) -> Vec<ComplexMatrix> {
    kraus.into_iter().filter(|k| k.frobenius_norm() > 0.0).collect()
}

/// Two-qubit Kraus set for free decay over `dt`.
pub fn step_channel(dt: f64, p: &DecoherenceParams) -> Result<Vec<ComplexMatrix>> {
    if !(dt >= 0.0) {
        return Err(Error::InvalidParameter("channel duration must be non-negative"));
    }
    p.validate()?;
    if !p.enabled || dt == 0.0 {
        return Ok(alloc::vec![ops::identity4()]);
    }
    // Coherence factor e^{-dt/T2'} per qubit, so (1 − λ) = e^{-2dt/T2'}.
    let lambda = 1.0 - libm::exp(-2.0 * dt / p.pure_dephasing_time());
    let gamma = if p.t1.is_infinite() { 0.0 } else { 1.0 - libm::exp(-dt / p.t1) };
    let single = compose_kraus(&nonzero(phase_damping_kraus(lambda)), &nonzero(amplitude_damping_kraus(gamma)));
    Ok(tensor_kraus(&single, &single))
}

/// Per-cycle transient dephasing on both qubits.
pub fn cycle_channel(p: &DecoherenceParams) -> Result<Vec<ComplexMatrix>> {
    p.validate()?;
    if !p.enabled || p.transient_dephasing == 0.0 {
        return Ok(alloc::vec![ops::identity4()]);
    }
    let single = nonzero(phase_damping_kraus(p.transient_dephasing));
    Ok(tensor_kraus(&single, &single))
}

/// Runs a discretized scan: per step, the compiled cycle's unitary, then the
/// free-decay channel for `τ`, then the cycle channel. Records every step,
/// including the initial state as step 0.
pub fn evolve_scan(
    rho0: &DensityOperator,
    schedule: &SweepSchedule,
    j_i: f64,
    hw: &HardwareParams,
    p: &DecoherenceParams,
) -> Result<Trajectory> {
    if !matches!(schedule.mode, ScheduleMode::Discretized { .. }) {
        return Err(Error::ScheduleMode("evolve_scan needs a discretized schedule"));
    }
    if rho0.dim() != 4 {
        return Err(Error::InvalidDensity("scan state must be a two-qubit density operator"));
    }
    p.validate()?;
    let cycle = cycle_channel(p)?;

    let g_x = schedule.g_x;
    let mut rho = *rho0;
    let mut records = Vec::with_capacity(schedule.knots.len());
    let first = schedule.knots[0];
    records.push(TrajectoryRecord::observe(0, first.t, g_x, first.g_z, rho));

    for (m, pair) in schedule.knots.windows(2).enumerate() {
        let (prev, knot) = (pair[0], pair[1]);
        let tau = knot.t - prev.t;
        let target = ModelParams::new(g_x, knot.g_z, j_i)?;
        let seg = compile_step(&target, tau, hw)?;
        rho = rho.evolve(&segment_unitary(&seg, hw));
        if p.enabled {
            rho = apply_channel_unchecked(&rho, &step_channel(tau, p)?);
            rho = apply_channel_unchecked(&rho, &cycle);
        }
        records.push(TrajectoryRecord::observe(m + 1, knot.t, g_x, knot.g_z, rho));
    }
    Ok(Trajectory { records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply_channel, completeness_defect, ops::*};
    use crate::observables::concurrence;

    fn dephasing_only(t2: f64) -> DecoherenceParams {
        DecoherenceParams { t2, t1: f64::INFINITY, transient_dephasing: 0.0, ..DecoherenceParams::default() }
    }

    #[test]
    fn zero_duration_is_identity() {
        let k = step_channel(0.0, &DecoherenceParams::default()).unwrap();
        assert_eq!(k, alloc::vec![identity4()]);
    }

    #[test]
    fn kraus_sets_are_complete() {
        for &dt in &[1e-4, 1.8e-3, 0.05, 3.0] {
            let k = step_channel(dt, &DecoherenceParams::default()).unwrap();
            assert!(completeness_defect(&k) < 1e-12);
        }
        assert!(completeness_defect(&cycle_channel(&DecoherenceParams::default()).unwrap()) < 1e-12);
    }

    #[test]
    fn long_dephasing_erases_coherence() {
        let k = step_channel(f64::INFINITY, &dephasing_only(0.1)).unwrap();
        let rho = apply_channel(&DensityOperator::pure(&psi_plus()).unwrap(), &k).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 0.5, 0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn bell_state_after_one_t2() {
        let p = dephasing_only(0.13);
        let k = step_channel(0.13, &p).unwrap();
        let rho = apply_channel(&DensityOperator::pure(&psi_plus()).unwrap(), &k).unwrap();
        // Off-diagonal decays e^{-2}; for this X-state C = 2|ρ_{↑↓,↓↑}|.
        assert!((rho.matrix().get(1, 2).re - 0.5 * (-2.0f64).exp()).abs() < 1e-14);
        assert!((concurrence(&rho) - (-2.0f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn rejects_unphysical_times() {
        let p = DecoherenceParams { t2: 1.0, t1: 0.4, ..DecoherenceParams::default() };
        assert!(matches!(step_channel(1e-3, &p), Err(Error::Unphysical { .. })));
        let p = DecoherenceParams {
            t2: 1.0,
            t1: 0.9,
            interpretation: DecoherenceInterpretation::EntangledCoherence,
            ..DecoherenceParams::default()
        };
        assert!(matches!(p.validate(), Err(Error::Unphysical { .. })));
        assert!(step_channel(-1.0, &DecoherenceParams::default()).is_err());
    }

    #[test]
    fn interpretation_doubles_qubit_t2() {
        let p = DecoherenceParams {
            interpretation: DecoherenceInterpretation::EntangledCoherence,
            t1: f64::INFINITY,
            transient_dephasing: 0.0,
            ..DecoherenceParams::default()
        };
        let k = step_channel(0.13, &p).unwrap();
        let rho = apply_channel(&DensityOperator::pure(&psi_plus()).unwrap(), &k).unwrap();
        assert!((concurrence(&rho) - (-1.0f64).exp()).abs() < 1e-10);
    }
}
