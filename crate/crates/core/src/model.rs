//! Two-spin Ising Hamiltonian with longitudinal and transverse fields.
//!
//! All Hamiltonians here are in units of the coupling `J_I`:
//! `H/J_I = g_z(σ_z¹+σ_z²) + g_x(σ_x¹+σ_x²) + σ_z¹σ_z²`.
//! The singlet `|Ψ⁻⟩` decouples, so the physics lives in the triplet block
//! spanned by `(|↑↑⟩, |Ψ⁺⟩, |↓↓⟩)`.

use core::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ops, ComplexMatrix, Ket, C64};

/// Below this `|g_x|` the closed-form amplitudes are 0/0.
pub const CLOSED_FORM_MIN_GX: f64 = 1e-8;

/// Above this `|g_x|` the small-transverse-field picture stops being accurate.
pub const LARGE_TRANSVERSE_FIELD: f64 = 0.5;

/// Dimensionless fields and the coupling that sets the energy scale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// `ω_x / 2J_I`.
    pub g_x: f64,
    /// `ω_z / 2J_I`.
    pub g_z: f64,
    /// `J_I` in rad/s.
    pub j_i: f64,
}

impl ModelParams {
    pub fn new(g_x: f64, g_z: f64, j_i: f64) -> Result<Self> {
        if !(j_i > 0.0 && j_i.is_finite()) {
            return Err(Error::InvalidParameter("coupling j_i must be positive and finite"));
        }
        if !g_x.is_finite() || !g_z.is_finite() {
            return Err(Error::InvalidParameter("fields must be finite"));
        }
        Ok(Self { g_x, g_z, j_i })
    }

    /// Set when `|g_x| > 0.5`; such values are accepted but leave the weak-field regime.
    pub fn large_transverse_field(&self) -> bool {
        self.g_x.abs() > LARGE_TRANSVERSE_FIELD
    }

    pub fn omega_x(&self) -> f64 {
        2.0 * self.j_i * self.g_x
    }

    pub fn omega_z(&self) -> f64 {
        2.0 * self.j_i * self.g_z
    }

    pub fn with_g_z(&self, g_z: f64) -> Self {
        Self { g_z, ..*self }
    }
}

/// `H/J_I` on the full two-qubit space.
pub fn hamiltonian(g_x: f64, g_z: f64) -> ComplexMatrix {
    ops::collective(&ops::sigma_z()).scale_real(g_z) + ops::collective(&ops::sigma_x()).scale_real(g_x) + ops::zz()
}

pub fn build_hamiltonian(p: &ModelParams) -> ComplexMatrix {
    hamiltonian(p.g_x, p.g_z)
}

/// Unitary whose columns are `|↑↑⟩, |Ψ⁺⟩, |↓↓⟩, |Ψ⁻⟩` in the product basis.
pub fn symmetry_basis() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_row_major(
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, h, 0.0, h, //
            0.0, h, 0.0, -h, //
            0.0, 0.0, 1.0, 0.0,
        ],
    )
}

/// Upper 3×3 block of `B† (H/J_I) B` in the symmetry basis.
pub fn triplet_block(g_x: f64, g_z: f64) -> ComplexMatrix {
    let b = symmetry_basis();
    (b.adjoint() * hamiltonian(g_x, g_z) * b).leading_block(3)
}

/// Embeds a triplet-block vector `(a_↑↑, a_Ψ⁺, a_↓↓)` into the product basis.
pub fn triplet_to_product(k: &Ket) -> Ket {
    assert_eq!(k.dim(), 3, "triplet kets have dimension 3");
    let s = k.get(1) * FRAC_1_SQRT_2;
    Ket::from_slice(&[k.get(0), s, s, k.get(2)])
}

/// Projects a product-basis vector onto `(|↑↑⟩, |Ψ⁺⟩, |↓↓⟩)`.
pub fn product_to_triplet(k: &Ket) -> Ket {
    assert_eq!(k.dim(), 4);
    Ket::from_slice(&[k.get(0), (k.get(1) + k.get(2)) * FRAC_1_SQRT_2, k.get(3)])
}

/// Closed-form eigenvalues of the triplet block (ascending) with the
/// trigonometric auxiliaries `r` and `θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripletSpectrum {
    pub xi: [f64; 3],
    pub r: f64,
    pub theta: f64,
}

pub fn triplet_spectrum(g_x: f64, g_z: f64) -> TripletSpectrum {
    let r = 2.0 * libm::sqrt(3.0 * (g_x * g_x + g_z * g_z) + 1.0);
    let arg = 4.0 * (18.0 * g_z * g_z - 9.0 * g_x * g_x - 2.0) / (r * r * r);
    let theta = libm::acos(arg.clamp(-1.0, 1.0)) / 3.0;
    let xi = [
        (1.0 - 2.0 * r * libm::cos(theta - PI / 3.0)) / 3.0,
        (1.0 - 2.0 * r * libm::cos(theta + PI / 3.0)) / 3.0,
        (2.0 * r * libm::cos(theta) + 1.0) / 3.0,
    ];
    TripletSpectrum { xi, r, theta }
}

/// Triplet eigenpairs. `states[i]` is in the basis `(|↑↑⟩, |Ψ⁺⟩, |↓↓⟩)`
/// with the largest component real and positive.
#[derive(Clone, Copy, Debug)]
pub struct TripletEigensystem {
    pub xi: [f64; 3],
    pub r: f64,
    pub theta: f64,
    /// Squared norms of the unnormalized amplitude triples; `1` when the
    /// vectors came from the numeric solver.
    pub m: [f64; 3],
    pub states: [Ket; 3],
}

impl TripletEigensystem {
    /// `εᵢ = J_I ξᵢ` in rad/s.
    pub fn energies(&self, j_i: f64) -> [f64; 3] {
        self.xi.map(|x| j_i * x)
    }

    pub fn ground(&self) -> &Ket {
        &self.states[0]
    }

    pub fn gap(&self) -> f64 {
        self.xi[1] - self.xi[0]
    }
}

/// Eigenpairs from the closed-form amplitude triple
/// `((ξ²+2(ξ+1)g_z−1−2g_x²)/(2g_x²), (ξ−1+2g_z)/(√2 g_x), 1)`.
pub fn triplet_eigensystem_analytic(g_x: f64, g_z: f64) -> Result<TripletEigensystem> {
    if g_x.abs() < CLOSED_FORM_MIN_GX {
        return Err(Error::DegenerateFormulation(
            "closed-form triplet amplitudes divide by g_x^2; use the numeric eigensolver",
        ));
    }
    let spec = triplet_spectrum(g_x, g_z);
    let mut m = [0.0; 3];
    let mut states = [Ket::zeros(3); 3];
    for (i, &xi) in spec.xi.iter().enumerate() {
        let a_up = (xi * xi + 2.0 * (xi + 1.0) * g_z - 1.0 - 2.0 * g_x * g_x) / (2.0 * g_x * g_x);
        let a_psi = (xi - 1.0 + 2.0 * g_z) / (SQRT_2 * g_x);
        let raw = Ket::from_real(&[a_up, a_psi, 1.0]);
        m[i] = a_up * a_up + a_psi * a_psi + 1.0;
        states[i] = raw.scale(C64::new(1.0 / libm::sqrt(m[i]), 0.0)).with_canonical_phase();
    }
    Ok(TripletEigensystem { xi: spec.xi, r: spec.r, theta: spec.theta, m, states })
}

/// Jacobi diagonalization of the triplet block.
pub fn triplet_eigensystem_numeric(g_x: f64, g_z: f64) -> TripletEigensystem {
    let spec = triplet_spectrum(g_x, g_z);
    let eig = hermitian_eigensystem(&triplet_block(g_x, g_z)).expect("triplet block is Hermitian by construction");
    let mut xi = [0.0; 3];
    xi.copy_from_slice(eig.values());
    let mut states = [Ket::zeros(3); 3];
    states.copy_from_slice(eig.vectors());
    TripletEigensystem { xi, r: spec.r, theta: spec.theta, m: [1.0; 3], states }
}

/// Closed form where it is defined, numeric solver at `g_x ≈ 0`.
pub fn triplet_eigensystem(g_x: f64, g_z: f64) -> TripletEigensystem {
    triplet_eigensystem_analytic(g_x, g_z).unwrap_or_else(|_| triplet_eigensystem_numeric(g_x, g_z))
}

/// Instantaneous ground state in the product basis.
pub fn ground_state(g_x: f64, g_z: f64) -> Ket {
    triplet_to_product(triplet_eigensystem(g_x, g_z).ground())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhaseLabel {
    /// `|↑↑⟩`, `g_z < -1`.
    FerroUp,
    /// `|Ψ⁺⟩`, `|g_z| < 1`.
    Entangled,
    /// `|↓↓⟩`, `g_z > 1`.
    FerroDown,
    /// `|g_z| = 1`.
    Critical,
}

pub const CRITICAL_TOL: f64 = 1e-9;

pub fn classify_phase(g_z: f64) -> PhaseLabel {
    if (g_z.abs() - 1.0).abs() < CRITICAL_TOL {
        PhaseLabel::Critical
    } else if g_z < -1.0 {
        PhaseLabel::FerroUp
    } else if g_z > 1.0 {
        PhaseLabel::FerroDown
    } else {
        PhaseLabel::Entangled
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigensystem;

    #[test]
    fn pure_ising_is_diagonal() {
        let h = hamiltonian(0.0, 0.0);
        assert_eq!(h, ComplexMatrix::diagonal(&[1.0, -1.0, -1.0, 1.0]));
        let h = hamiltonian(0.0, 2.0);
        assert_eq!(h, ComplexMatrix::diagonal(&[5.0, -1.0, -1.0, -3.0]));
        let eig = hermitian_eigensystem(&h).unwrap();
        assert_eq!(eig.value(0), -3.0);
        assert_eq!(*eig.vector(0), ops::down_down());
    }

    #[test]
    fn singlet_is_eigenvector_at_minus_one() {
        for &(gx, gz) in &[(0.129, 0.0), (0.4, -2.2), (-0.3, 1.7), (0.0, 0.5)] {
            let hs = hamiltonian(gx, gz).apply(&ops::psi_minus());
            for i in 0..4 {
                assert!((hs.get(i) + ops::psi_minus().get(i)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn triplet_block_entries() {
        let (gx, gz) = (0.129, 0.7);
        let t = triplet_block(gx, gz);
        let s = SQRT_2 * gx;
        let want = ComplexMatrix::from_real_row_major(3, &[1.0 + 2.0 * gz, s, 0.0, s, -1.0, s, 0.0, s, 1.0 - 2.0 * gz]);
        assert!(t.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn zero_field_spectrum() {
        let spec = triplet_spectrum(0.0, 0.0);
        assert!((spec.r - 2.0).abs() < 1e-15);
        assert!((spec.theta - PI / 3.0).abs() < 1e-15);
        let want = [-1.0, 1.0, 1.0];
        for (x, w) in spec.xi.iter().zip(want) {
            assert!((x - w).abs() < 1e-14);
        }
    }

    #[test]
    fn transverse_field_lowers_ground_level() {
        // (1 - 2r cos(θ - π/3))/3 evaluated as a bare scalar expression.
        let (gx, gz) = (0.129_f64, 0.0_f64);
        let r = 2.0 * (3.0 * (gx * gx + gz * gz) + 1.0).sqrt();
        let theta = ((4.0 * (18.0 * gz * gz - 9.0 * gx * gx - 2.0)) / (r * r * r)).acos() / 3.0;
        let scalar = (1.0 - 2.0 * r * (theta - PI / 3.0).cos()) / 3.0;
        assert!(scalar < -1.0);

        let block = hermitian_eigensystem(&triplet_block(gx, gz)).unwrap();
        assert!((block.value(0) - scalar).abs() < 1e-12);
        let full = hermitian_eigensystem(&hamiltonian(gx, gz)).unwrap();
        assert!((full.value(0) - scalar).abs() < 1e-10);
    }

    #[test]
    fn analytic_pairs_satisfy_eigen_equation() {
        for &(gx, gz) in &[(0.129, 0.0), (0.129, -3.0), (0.01, 0.999), (0.5, 2.5), (-0.2, -0.4)] {
            let sys = triplet_eigensystem_analytic(gx, gz).unwrap();
            let t = triplet_block(gx, gz);
            for (xi, v) in sys.xi.iter().zip(&sys.states) {
                let tv = t.apply(v);
                for i in 0..3 {
                    assert!((tv.get(i) - v.get(i) * *xi).norm() < 1e-9, "gx={gx} gz={gz}");
                }
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ground_state_shapes() {
        let sys = triplet_eigensystem_analytic(0.129, 0.0).unwrap();
        let g = sys.ground();
        assert!(g.get(1).norm_sqr() > 0.95);
        assert!((g.get(0) - g.get(2)).norm() < 1e-12);
        assert!(g.get(0).norm() > 0.0 && g.get(0).norm() < 0.2);

        let numeric = triplet_eigensystem_numeric(0.129, -3.0);
        assert!(numeric.ground().get(0).norm_sqr() > 0.99);
        let analytic = triplet_eigensystem_analytic(0.129, -3.0).unwrap();
        assert!(analytic.ground().get(0).norm_sqr() > 0.99);
    }

    #[test]
    fn closed_form_rejects_vanishing_transverse_field() {
        assert!(matches!(triplet_eigensystem_analytic(0.0, 0.5), Err(Error::DegenerateFormulation(_))));
        let fallback = triplet_eigensystem(0.0, 2.0);
        for (got, want) in fallback.xi.iter().zip([-3.0, -1.0, 5.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert_eq!(*fallback.ground(), Ket::basis(3, 2));
    }

    #[test]
    fn phase_labels() {
        assert_eq!(classify_phase(-3.0), PhaseLabel::FerroUp);
        assert_eq!(classify_phase(0.0), PhaseLabel::Entangled);
        assert_eq!(classify_phase(1.0), PhaseLabel::Critical);
        assert_eq!(classify_phase(-1.0), PhaseLabel::Critical);
        assert_eq!(classify_phase(2.0), PhaseLabel::FerroDown);
        assert_eq!(classify_phase(1.0 + 1e-6), PhaseLabel::FerroDown);
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(0.1, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.1, 0.0, -1.0).is_err());
        let p = ModelParams::new(0.6, 0.0, 1.0).unwrap();
        assert!(p.large_transverse_field());
        assert!(!ModelParams::new(0.129, 0.0, 1.0).unwrap().large_transverse_field());
    }
}
