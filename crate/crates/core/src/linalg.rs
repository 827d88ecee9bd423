//! Dense complex linear algebra on spaces of dimension at most four.
//!
//! Everything here is stack allocated. Qubit 1 is the left tensor factor and
//! the two-qubit product basis is ordered `(↑↑, ↑↓, ↓↑, ↓↓)`, with `|↑⟩` the
//! `+1` eigenstate of `σ_z`.

use core::ops::{Add, Mul, Neg, Sub};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const MAX_DIM: usize = 4;

/// Inputs whose anti-Hermitian part reaches this size are rejected.
pub const HERMITIAN_REJECT: f64 = 1e-9;

/// Kraus completeness tolerance.
pub const COMPLETENESS_TOL: f64 = 1e-10;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const JACOBI_MAX_SWEEPS: usize = 64;

/// Square complex matrix, row-major, `dim <= 4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: [C64; MAX_DIM * MAX_DIM],
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "matrix dimension {dim} out of range 1..=4");
        Self { dim, data: [ZERO; MAX_DIM * MAX_DIM] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Builds from a row-major slice of length `dim * dim`.
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {} entries", dim * dim);
        Self::from_fn(dim, |r, c| entries[r * dim + c])
    }

    pub fn from_real_row_major(dim: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {} entries", dim * dim);
        Self::from_fn(dim, |r, c| C64::new(entries[r * dim + c], 0.0))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, C64::new(v, 0.0));
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        debug_assert!(r < self.dim && c < self.dim);
        self.data[r * MAX_DIM + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        debug_assert!(r < self.dim && c < self.dim);
        self.data[r * MAX_DIM + c] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c) * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c) * s)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((self.get(r, c) - other.get(r, c)).norm());
            }
        }
        worst
    }

    /// `max |A - A†|` over all entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |U†U - I|` over all entries.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Self::identity(self.dim))
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |r, c| (self.get(r, c) + self.get(c, r).conj()) * 0.5)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data[..].iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn apply(&self, v: &Ket) -> Ket {
        assert_eq!(self.dim, v.dim(), "dimension mismatch");
        let mut out = Ket::zeros(self.dim);
        for r in 0..self.dim {
            let mut acc = ZERO;
            for c in 0..self.dim {
                acc += self.get(r, c) * v.get(c);
            }
            out.set(r, acc);
        }
        out
    }

    /// Kronecker product; `self` is the left (qubit 1) factor.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (da, db) = (self.dim, rhs.dim);
        let dim = da * db;
        assert!(dim <= MAX_DIM, "kron result dimension {dim} exceeds {MAX_DIM}");
        Self::from_fn(dim, |r, c| self.get(r / db, c / db) * rhs.get(r % db, c % db))
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &Self) -> Self {
        *self * *m * self.adjoint()
    }

    /// Matrix formed by the leading `dim x dim` block.
    pub fn leading_block(&self, dim: usize) -> Self {
        assert!(dim <= self.dim);
        Self::from_fn(dim, |r, c| self.get(r, c))
    }
}

/// Standalone form of [`ComplexMatrix::kron`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * MAX_DIM + c] += a * rhs.get(k, c);
                }
            }
        }
        out
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// State vector, `dim <= 4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ket {
    dim: usize,
    amps: [C64; MAX_DIM],
}

impl Ket {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "ket dimension {dim} out of range 1..=4");
        Self { dim, amps: [ZERO; MAX_DIM] }
    }

    pub fn from_slice(amps: &[C64]) -> Self {
        let mut k = Self::zeros(amps.len());
        k.amps[..amps.len()].copy_from_slice(amps);
        k
    }

    pub fn from_real(amps: &[f64]) -> Self {
        let mut k = Self::zeros(amps.len());
        for (slot, &a) in k.amps.iter_mut().zip(amps) {
            *slot = C64::new(a, 0.0);
        }
        k
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut k = Self::zeros(dim);
        k.amps[index] = ONE;
        k
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize) -> C64 {
        debug_assert!(i < self.dim);
        self.amps[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: C64) {
        debug_assert!(i < self.dim);
        self.amps[i] = v;
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps[..self.dim]
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.amplitudes().iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for a in out.amps[..self.dim].iter_mut() {
            *a *= s;
        }
        out
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Ket) -> C64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.amplitudes().iter().zip(other.amplitudes()).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|self⟩⟨self|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |r, c| self.amps[r] * self.amps[c].conj())
    }

    pub fn kron(&self, rhs: &Ket) -> Ket {
        let dim = self.dim * rhs.dim;
        assert!(dim <= MAX_DIM, "kron result dimension {dim} exceeds {MAX_DIM}");
        let mut out = Ket::zeros(dim);
        for i in 0..self.dim {
            for j in 0..rhs.dim {
                out.amps[i * rhs.dim + j] = self.amps[i] * rhs.amps[j];
            }
        }
        out
    }

    /// Rotates the global phase so the largest-magnitude component is real
    /// and positive. Ties go to the lowest index.
    pub fn with_canonical_phase(&self) -> Ket {
        let max = self.amplitudes().iter().map(|a| a.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return *self;
        }
        let pivot = self.amplitudes().iter().position(|a| a.norm() >= max * (1.0 - 1e-10)).unwrap_or(0);
        let a = self.amps[pivot];
        self.scale(a.conj() / a.norm())
    }
}

/// Single-qubit and two-qubit operators and states in the fixed basis convention.
pub mod ops {
    use super::{ComplexMatrix, Ket, C64};

    pub fn identity2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn identity4() -> ComplexMatrix {
        ComplexMatrix::identity(4)
    }

    pub fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_row_major(2, &[0.0, 1.0, 1.0, 0.0])
    }

    pub fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::from_row_major(
            2,
            &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        )
    }

    pub fn sigma_z() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[1.0, -1.0])
    }

    /// `a ⊗ 1`.
    pub fn on_qubit1(a: &ComplexMatrix) -> ComplexMatrix {
        a.kron(&identity2())
    }

    /// `1 ⊗ a`.
    pub fn on_qubit2(a: &ComplexMatrix) -> ComplexMatrix {
        identity2().kron(a)
    }

    /// `a ⊗ 1 + 1 ⊗ a`.
    pub fn collective(a: &ComplexMatrix) -> ComplexMatrix {
        on_qubit1(a) + on_qubit2(a)
    }

    pub fn zz() -> ComplexMatrix {
        sigma_z().kron(&sigma_z())
    }

    pub fn yy() -> ComplexMatrix {
        sigma_y().kron(&sigma_y())
    }

    /// Exchange of the two qubits.
    pub fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real_row_major(
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 1.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0,
            ],
        )
    }

    pub fn up() -> Ket {
        Ket::basis(2, 0)
    }

    pub fn down() -> Ket {
        Ket::basis(2, 1)
    }

    pub fn up_up() -> Ket {
        Ket::basis(4, 0)
    }

    pub fn down_down() -> Ket {
        Ket::basis(4, 3)
    }

    /// `(|↑↓⟩ + |↓↑⟩)/√2`.
    pub fn psi_plus() -> Ket {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        Ket::from_real(&[0.0, h, h, 0.0])
    }

    /// `(|↑↓⟩ - |↓↑⟩)/√2`.
    pub fn psi_minus() -> Ket {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        Ket::from_real(&[0.0, h, -h, 0.0])
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Copy, Debug)]
pub struct HermitianEigen {
    dim: usize,
    values: [f64; MAX_DIM],
    vectors: [Ket; MAX_DIM],
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values[..self.dim]
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors[..self.dim]
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values()[i]
    }

    pub fn vector(&self, i: usize) -> &Ket {
        &self.vectors()[i]
    }

    /// `Σ f(λᵢ) |vᵢ⟩⟨vᵢ|`.
    pub fn spectral_map(&self, mut f: impl FnMut(f64) -> C64) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        for (&lambda, v) in self.values().iter().zip(self.vectors()) {
            let w = f(lambda);
            out = out + v.projector().scale(w);
        }
        out
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let defect = h.hermiticity_defect();
    if !(defect < HERMITIAN_REJECT) {
        return Err(Error::NotHermitian { max_deviation: defect });
    }
    Ok(())
}

/// Cyclic complex Jacobi diagonalization.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation.
pub fn hermitian_eigensystem(h: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            if off <= (1e-34 * scale) * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    let order = &mut order[..n];
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));

    let mut values = [0.0; MAX_DIM];
    let mut vectors = [Ket::zeros(n); MAX_DIM];
    for (slot, &col) in order.iter().enumerate() {
        values[slot] = a.get(col, col).re;
        let mut vec = Ket::zeros(n);
        for r in 0..n {
            vec.set(r, v.get(r, col));
        }
        vectors[slot] = vec.with_canonical_phase();
    }
    Ok(HermitianEigen { dim: n, values, vectors })
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let alpha = a.get(p, p).re;
    let beta = a.get(q, q).re;
    let theta = 0.5 * libm::atan2(2.0 * mag, beta - alpha);
    let (s, c) = (libm::sin(theta), libm::cos(theta));

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on the (p, q) plane.
    let j_pp = C64::new(c, 0.0);
    let j_pq = C64::new(s, 0.0);
    let j_qp = -phase.conj() * s;
    let j_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * j_pp + akq * j_qp);
        a.set(k, q, akp * j_pq + akq * j_qq);
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, vkp * j_pp + vkq * j_qp);
        v.set(k, q, vkp * j_pq + vkq * j_qq);
    }
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, j_pp.conj() * apk + j_qp.conj() * aqk);
        a.set(q, k, j_pq.conj() * apk + j_qq.conj() * aqk);
    }
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    a.set(p, p, C64::new(a.get(p, p).re, 0.0));
    a.set(q, q, C64::new(a.get(q, q).re, 0.0));
}

/// `exp(-i·h·t)` through the eigen-decomposition of `h`.
pub fn expm_hermitian_generator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eigensystem(h)?;
    Ok(eig.spectral_map(|lambda| {
        let phi = -lambda * t;
        C64::new(libm::cos(phi), libm::sin(phi))
    }))
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> f64 {
    let gram = m.adjoint() * *m;
    match hermitian_eigensystem(&gram) {
        Ok(eig) => libm::sqrt(eig.values().iter().copied().fold(0.0, f64::max)),
        // m†m is Hermitian to rounding; this branch is unreachable for finite input.
        Err(_) => f64::NAN,
    }
}

/// Largest entry of `|Σ K†K - I|`.
pub fn completeness_defect(kraus: &[ComplexMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let dim = first.dim();
    let sum = kraus.iter().fold(ComplexMatrix::zeros(dim), |acc, k| acc + k.adjoint() * *k);
    sum.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityOperator(ComplexMatrix);

impl DensityOperator {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-10;
    pub const EIGEN_TOL: f64 = 1e-10;

    /// Validates and wraps a matrix.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !(m.hermiticity_defect() < Self::HERMITIAN_TOL) {
            return Err(Error::InvalidDensity("not Hermitian"));
        }
        if !((m.trace() - C64::new(1.0, 0.0)).norm() < Self::TRACE_TOL) {
            return Err(Error::InvalidDensity("trace differs from 1"));
        }
        let eig = hermitian_eigensystem(&m)?;
        if eig.values()[0] < -Self::EIGEN_TOL {
            return Err(Error::InvalidDensity("negative eigenvalue"));
        }
        Ok(Self(m.hermitian_part()))
    }

    /// Wraps without validation. Callers guarantee the invariants.
    pub fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn pure(psi: &Ket) -> Result<Self> {
        let psi = psi.normalized()?;
        Ok(Self(psi.projector()))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `Tr(ρ·A)`.
    pub fn expectation(&self, a: &ComplexMatrix) -> C64 {
        (self.0 * *a).trace()
    }

    /// `U ρ U†`.
    pub fn evolve(&self, u: &ComplexMatrix) -> Self {
        Self(u.conjugate(&self.0).hermitian_part())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigensystem(&self.0).map(|e| e.value(0)).unwrap_or(f64::NAN)
    }
}

/// `ρ' = Σ K ρ K†`, symmetrized so the result is exactly Hermitian.
pub fn apply_channel(rho: &DensityOperator, kraus: &[ComplexMatrix]) -> Result<DensityOperator> {
    let defect = completeness_defect(kraus);
    if !(defect < COMPLETENESS_TOL) {
        return Err(Error::NotTracePreserving { max_deviation: defect });
    }
    Ok(apply_channel_unchecked(rho, kraus))
}

pub(crate) fn apply_channel_unchecked(rho: &DensityOperator, kraus: &[ComplexMatrix]) -> DensityOperator {
    let dim = rho.dim();
    let acc = kraus.iter().fold(ComplexMatrix::zeros(dim), |acc, k| acc + k.conjugate(rho.matrix()));
    DensityOperator(acc.hermitian_part())
}

/// Every pairwise product `a ⊗ b` of two single-qubit Kraus sets.
pub fn tensor_kraus(first: &[ComplexMatrix], second: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    first.iter().flat_map(|a| second.iter().map(move |b| a.kron(b))).collect()
}

/// Every product `a · b` (apply `b` first, then `a`) of two Kraus sets on the same space.
pub fn compose_kraus(after: &[ComplexMatrix], before: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    after.iter().flat_map(|a| before.iter().map(move |b| *a * *b)).collect()
}

#[cfg(test)]
mod tests {
    use super::ops::*;
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity_and_zz() {
        assert_eq!(kron(&identity2(), &identity2()), identity4());
        assert_eq!(kron(&sigma_z(), &sigma_z()), ComplexMatrix::diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_bit_flip_on_qubit_one() {
        let flipped = kron(&sigma_x(), &identity2()).apply(&up_up());
        assert_eq!(flipped, down().kron(&up()));
        assert_eq!(flipped, Ket::basis(4, 2));
    }

    #[test]
    fn eigensystem_of_paulis() {
        let ez = hermitian_eigensystem(&sigma_z()).unwrap();
        assert_eq!(ez.values(), &[-1.0, 1.0]);
        assert!(ez.vector(0).scale(c(1.0, 0.0)).inner(&down()).norm() > 1.0 - 1e-15);
        assert_eq!(*ez.vector(0), down());
        assert_eq!(*ez.vector(1), up());

        let ex = hermitian_eigensystem(&sigma_x()).unwrap();
        assert!((ex.value(0) + 1.0).abs() < 1e-14 && (ex.value(1) - 1.0).abs() < 1e-14);
        let minus = Ket::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        let plus = Ket::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        for (got, want) in ex.vectors().iter().zip([minus, plus]) {
            for i in 0..2 {
                assert!((got.get(i) - want.get(i)).norm() < 1e-14, "{got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn eigensystem_complex_hermitian() {
        let h = ComplexMatrix::from_row_major(
            3,
            &[
                c(2.0, 0.0),
                c(0.3, -0.7),
                c(-1.1, 0.2),
                c(0.3, 0.7),
                c(-0.5, 0.0),
                c(0.0, 0.4),
                c(-1.1, -0.2),
                c(0.0, -0.4),
                c(1.0, 0.0),
            ],
        );
        let eig = hermitian_eigensystem(&h).unwrap();
        for (lambda, v) in eig.values().iter().zip(eig.vectors()) {
            let hv = h.apply(v);
            for i in 0..3 {
                assert!((hv.get(i) - v.get(i) * *lambda).norm() < 1e-12);
            }
        }
        assert!(eig.values().windows(2).all(|w| w[0] <= w[1]));
        for v in eig.vectors() {
            let pivot = v.amplitudes().iter().map(|a| a.norm()).fold(0.0, f64::max);
            let first = v.amplitudes().iter().find(|a| a.norm() >= pivot * (1.0 - 1e-10)).unwrap();
            assert!(first.im.abs() < 1e-15 && first.re > 0.0);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_row_major(2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_eigensystem(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(expm_hermitian_generator(&m, 1.0), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn expm_examples() {
        let h = kron(&sigma_x(), &sigma_z()) + identity4().scale_real(0.3);
        assert!(expm_hermitian_generator(&h, 0.0).unwrap().max_abs_diff(&identity4()) < 1e-14);

        let u = expm_hermitian_generator(&sigma_z(), PI / 2.0).unwrap();
        let want = ComplexMatrix::from_row_major(2, &[c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
        assert!(u.max_abs_diff(&want) < 1e-14);

        let u = expm_hermitian_generator(&sigma_x(), PI).unwrap();
        assert!(u.max_abs_diff(&(-identity2())) < 1e-14);
    }

    #[test]
    fn full_dephasing_kills_coherence() {
        let z = sigma_z().scale_real(FRAC_1_SQRT_2);
        let keep = identity2().scale_real(FRAC_1_SQRT_2);
        let kraus = tensor_kraus(&[keep, z], &[keep, z]);
        let rho = DensityOperator::pure(&psi_plus()).unwrap();
        let out = apply_channel(&rho, &kraus).unwrap();
        assert!(out.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[0.0, 0.5, 0.5, 0.0])) < 1e-15);
    }

    #[test]
    fn identity_channel_and_incomplete_set() {
        let rho = DensityOperator::pure(&psi_plus()).unwrap();
        assert_eq!(apply_channel(&rho, &[identity4()]).unwrap(), rho);
        let half = identity4().scale_real(0.5);
        assert!(matches!(apply_channel(&rho, &[half]), Err(Error::NotTracePreserving { .. })));
        assert!(matches!(apply_channel(&rho, &[]), Err(Error::NotTracePreserving { .. })));
    }

    #[test]
    fn phase_damping_scales_singlet_triplet_coherence() {
        // Explicit operator sum, entry by entry, against the channel routine.
        let lambda = 0.37_f64;
        let k0 = ComplexMatrix::diagonal(&[1.0, (1.0 - lambda).sqrt()]);
        let k1 = ComplexMatrix::diagonal(&[0.0, lambda.sqrt()]);
        let kraus = [k0.kron(&identity2()), k1.kron(&identity2())];
        let rho = DensityOperator::pure(&psi_plus()).unwrap();
        let out = apply_channel(&rho, &kraus).unwrap();

        let r = rho.matrix();
        let mut brute = ComplexMatrix::zeros(4);
        for k in &kraus {
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = C64::new(0.0, 0.0);
                    for a in 0..4 {
                        for b in 0..4 {
                            acc += k.get(i, a) * r.get(a, b) * k.get(j, b).conj();
                        }
                    }
                    brute.set(i, j, brute.get(i, j) + acc);
                }
            }
        }
        assert!(out.matrix().max_abs_diff(&brute) < 1e-15);
        let expected = 0.5 * (1.0 - lambda).sqrt();
        assert!((out.matrix().get(1, 2).re - expected).abs() < 1e-15);
        assert!((out.matrix().get(2, 1).re - expected).abs() < 1e-15);
        assert!((out.matrix().get(1, 1).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        assert!(DensityOperator::new(identity4()).is_err());
        assert!(DensityOperator::new(ComplexMatrix::diagonal(&[1.5, -0.5])).is_err());
        assert!(DensityOperator::new(ComplexMatrix::diagonal(&[0.25; 4])).is_ok());
    }

    #[test]
    fn spectral_norm_of_diagonal() {
        let m = ComplexMatrix::diagonal(&[0.5, -3.0, 2.0]);
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-12);
    }
}
