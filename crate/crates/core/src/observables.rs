//! Order parameters and state preparation: pseudo-pure states, Wootters
//! concurrence, ground-state fidelity and the `⟨σ_z¹σ_z²⟩` correlator.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ops, ComplexMatrix, DensityOperator, Ket, C64};
use crate::model::ground_state;

/// Typical NMR polarization of the pseudo-pure component.
pub const DEFAULT_ALPHA: f64 = 1e-5;

/// Eigenvalues of ρ down to `-CLAMP_TOL` are treated as rounding noise.
pub const CLAMP_TOL: f64 = 1e-9;

/// Eigenvalues of ρ and of `√ρ ρ̃ √ρ` below this are flushed to zero before
/// taking square roots; otherwise rounding noise of order 1e-17 turns into 3e-9 after the root.
pub const ROUNDING_FLOOR: f64 = 64.0 * f64::EPSILON;

/// `ρ = (1/4 + α|ψ⟩⟨ψ|)/(1+α)` with the projector kept alongside, so the
/// deviation part is recovered exactly rather than by cancellation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudoPureState {
    deviation: DensityOperator,
    alpha: f64,
}

impl PseudoPureState {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Weight `α' = α/(1+α)` of the pure part in `(1−α')·1/4 + α'|ψ⟩⟨ψ|`.
    pub fn pure_weight(&self) -> f64 {
        self.alpha / (1.0 + self.alpha)
    }

    /// Full trace-one density operator.
    pub fn rho(&self) -> DensityOperator {
        let w = self.pure_weight();
        let mixed = ComplexMatrix::identity(4).scale_real((1.0 - w) / 4.0);
        DensityOperator::from_matrix_unchecked(mixed + self.deviation.matrix().scale_real(w))
    }

    pub fn deviation(&self) -> &DensityOperator {
        &self.deviation
    }
}

pub fn pseudo_pure(psi: &Ket, alpha: f64) -> Result<PseudoPureState> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter("pseudo-pure polarization alpha must be positive"));
    }
    if psi.dim() != 4 {
        return Err(Error::InvalidParameter("pseudo-pure states live on two qubits"));
    }
    Ok(PseudoPureState { deviation: DensityOperator::pure(psi)?, alpha })
}

/// Deviation part of a tracked pseudo-pure state.
pub fn extract_deviation(state: &PseudoPureState) -> DensityOperator {
    state.deviation
}

/// Deviation part of an arbitrary ρ: subtract `λ_min·1` and renormalize.
pub fn extract_deviation_spectral(rho: &DensityOperator) -> Result<DensityOperator> {
    let dim = rho.dim();
    let eig = hermitian_eigensystem(rho.matrix())?;
    let floor = eig.value(0);
    let remainder = *rho.matrix() - ComplexMatrix::identity(dim).scale_real(floor);
    let weight = remainder.trace().re;
    if !(weight >= 1e-12) {
        return Err(Error::DegenerateDeviation);
    }
    Ok(DensityOperator::from_matrix_unchecked(remainder.scale_real(1.0 / weight).hermitian_part()))
}

/// Wootters concurrence.
///
/// The `λᵢ` (square roots of the spectrum of `ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y)`) are
/// taken from the Hermitian matrix `√ρ ρ̃ √ρ`, which has the same spectrum.
pub fn concurrence(rho: &DensityOperator) -> f64 {
    assert_eq!(rho.dim(), 4, "concurrence is defined for two qubits");
    let eig = hermitian_eigensystem(rho.matrix()).expect("density operators are Hermitian");
    let sqrt_rho = eig.spectral_map(|l| C64::new(if l < ROUNDING_FLOOR { 0.0 } else { libm::sqrt(l) }, 0.0));
    let yy = ops::yy();
    let flipped = yy * rho.matrix().conj() * yy;
    let r = (sqrt_rho * flipped * sqrt_rho).hermitian_part();
    let spec = hermitian_eigensystem(&r).expect("√ρ ρ̃ √ρ is Hermitian");
    let mut lambdas = [0.0f64; 4];
    for (slot, &mu) in lambdas.iter_mut().zip(spec.values()) {
        *slot = if mu < ROUNDING_FLOOR { 0.0 } else { libm::sqrt(mu) };
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0)
}

/// `⟨ψ₁(g_x, g_z)|ρ|ψ₁(g_x, g_z)⟩`. Pseudo-pure states should pass their deviation.
pub fn fidelity_vs_ground(rho: &DensityOperator, g_x: f64, g_z: f64) -> f64 {
    fidelity_with(rho, &ground_state(g_x, g_z))
}

pub fn fidelity_with(rho: &DensityOperator, psi: &Ket) -> f64 {
    psi.inner(&rho.matrix().apply(psi)).re.clamp(0.0, 1.0)
}

/// `Tr(ρ σ_z¹σ_z²)`.
pub fn zz_correlator(rho: &DensityOperator) -> f64 {
    let v = rho.expectation(&ops::zz());
    debug_assert!(v.im.abs() < 1e-12, "imaginary correlator {}", v.im);
    v.re.clamp(-1.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRecord {
    pub step: usize,
    /// Effective time, s.
    pub t: f64,
    pub g_z: f64,
    pub rho: DensityOperator,
    pub fidelity: f64,
    pub concurrence: f64,
    pub zz: f64,
}

impl TrajectoryRecord {
    pub fn observe(step: usize, t: f64, g_x: f64, g_z: f64, rho: DensityOperator) -> Self {
        Self {
            step,
            t,
            g_z,
            fidelity: fidelity_vs_ground(&rho, g_x, g_z),
            concurrence: concurrence(&rho),
            zz: zz_correlator(&rho),
            rho,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub records: Vec<TrajectoryRecord>,
}

impl Trajectory {
    pub fn min_fidelity(&self) -> f64 {
        self.records.iter().map(|r| r.fidelity).fold(f64::INFINITY, f64::min)
    }

    pub fn max_concurrence(&self) -> f64 {
        self.records.iter().map(|r| r.concurrence).fold(0.0, f64::max)
    }

    pub fn last(&self) -> Option<&TrajectoryRecord> {
        self.records.last()
    }

    /// Record whose `g_z` is closest to `g_z`.
    pub fn nearest(&self, g_z: f64) -> Option<&TrajectoryRecord> {
        self.records.iter().min_by(|a, b| (a.g_z - g_z).abs().total_cmp(&(b.g_z - g_z).abs()))
    }
}
