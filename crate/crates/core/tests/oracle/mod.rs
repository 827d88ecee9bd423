//! Brute-force reference implementations and random generators shared by the
//! integration tests. Nothing here reuses the library's eigen-solvers.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qpt_core::linalg::{ComplexMatrix, DensityOperator};
use rand::Rng;

/// Characteristic polynomial coefficients `c[0..=n]` of `det(λI − A)`,
/// `c[n] = 1`, by Faddeev–LeVerrier.
pub fn char_poly(a: &ComplexMatrix) -> Vec<C64> {
    let n = a.dim();
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        m = *a * m + ComplexMatrix::identity(n).scale(c[n - k + 1]);
        c[n - k] = -(*a * m).trace() / k as f64;
    }
    c
}

fn eval_poly(c: &[C64], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &ci| acc * z + ci)
}

/// All roots of a monic polynomial by Durand–Kerner iteration.
pub fn poly_roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let seed = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval_poly(c, z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Concurrence from the eigenvalues of the non-Hermitian `ρ ρ̃`.
pub fn concurrence_brute_force(rho: &DensityOperator) -> f64 {
    let m = *rho.matrix();
    let y = ComplexMatrix::from_row_major(
        2,
        &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    );
    let yy = y.kron(&y);
    let r = m * yy * m.conj() * yy;
    let mut lambdas: Vec<f64> = poly_roots(&char_poly(&r)).iter().map(|z| z.re.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Real eigenvalues of a Hermitian matrix, ascending, via its characteristic polynomial.
pub fn hermitian_eigenvalues_brute_force(h: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = poly_roots(&char_poly(h)).iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box–Muller.
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

pub fn ginibre(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| C64::new(gaussian(rng), gaussian(rng)))
}

pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityOperator {
    let g = ginibre(dim, rng);
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::new(m.scale_real(1.0 / tr).hermitian_part()).unwrap()
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ginibre(dim, rng);
    (g + g.adjoint()).scale_real(0.5)
}

/// Unitary from a random Hermitian generator, by a scaled Taylor series and squaring.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let h = random_hermitian(dim, rng);
    let a = h.scale(C64::new(0.0, -1.0 / 64.0));
    let mut term = ComplexMatrix::identity(dim);
    let mut sum = ComplexMatrix::identity(dim);
    for k in 1..30 {
        term = (term * a).scale_real(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..6 {
        sum = sum * sum;
    }
    sum
}

/// Werner state `p|Ψ⁺⟩⟨Ψ⁺| + (1−p)·I/4`.
pub fn werner(p: f64) -> DensityOperator {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let psi = qpt_core::Ket::from_real(&[0.0, s, s, 0.0]);
    DensityOperator::new(psi.projector().scale_real(p) + ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0))
        .unwrap()
}
