//! Dense complex linear algebra on 2^n-dimensional spaces.
//!
//! Provides the matrix and state types everything else builds on:
//! Kronecker products, partial trace / partial transpose by qubit index,
//! Hermitian spectra, Haar-random sampling, and the named-state library.

mod random;
mod states;

pub use random::{haar_random_local_unitary, haar_random_pure_state, haar_random_unitary_2x2};
pub(crate) use random::{haar_pure_state_from_rng, local_unitary_from_rng};
pub use states::{basis_state, ghz_state, hs_state, w_state};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{QrError, Result};

pub type Complex64 = num_complex::Complex<f64>;

/// Tolerance for algebraic identities (traces, norms, unitarity).
pub const TOL_ALGEBRA: f64 = 1e-12;
/// Tolerance for spectral computations (eigenvalues, reconstruction).
pub const TOL_SPECTRAL: f64 = 1e-10;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major slice of entries; length must be dim².
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self {
            dim,
            data: entries.to_vec(),
        }
    }

    pub fn pauli_x() -> Self {
        Self::from_rows(2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows(
            2,
            &[
                c(0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                c(0.0),
            ],
        )
    }

    pub fn pauli_z() -> Self {
        Self::from_rows(2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    #[inline]
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j];
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max |m - m†| over entries.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..=i {
                let diff = (self.data[i * d + j] - self.data[j * d + i].conj()).norm();
                worst = worst.max(diff);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }
}

#[inline]
fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Kronecker product; block (r, c) of the result is a[r][c] · b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let da = a.dim();
    let db = b.dim();
    let d = da * db;
    let mut out = ComplexMatrix::zeros(d);
    for ra in 0..da {
        for ca in 0..da {
            let f = a.get(ra, ca);
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for rb in 0..db {
                for cb in 0..db {
                    out.set(ra * db + rb, ca * db + cb, f * b.get(rb, cb));
                }
            }
        }
    }
    out
}

/// Real spectrum of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let defect = m.hermiticity_defect();
    if defect > TOL_SPECTRAL {
        return Err(QrError::NotHermitian {
            max_asym: defect,
            tol: TOL_SPECTRAL,
        });
    }
    let mut vals: Vec<f64> = m.to_nalgebra().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

/// Full spectral decomposition: (eigenvalues ascending, matrix of column eigenvectors).
pub fn hermitian_eigendecomposition(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let defect = m.hermiticity_defect();
    if defect > TOL_SPECTRAL {
        return Err(QrError::NotHermitian {
            max_asym: defect,
            tol: TOL_SPECTRAL,
        });
    }
    let eig = nalgebra::SymmetricEigen::new(m.to_nalgebra());
    let d = m.dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = ComplexMatrix::zeros(d);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..d {
            vecs.set(row, col, eig.eigenvectors[(row, src)]);
        }
    }
    Ok((vals, vecs))
}

/// N-qubit density matrix. Qubit 1 is the most significant bit of the
/// computational-basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Wrap a matrix after checking Hermiticity, unit trace, and positivity.
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        let d = 1usize << n_qubits;
        if matrix.dim() != d {
            return Err(QrError::DimensionMismatch(matrix.dim(), d));
        }
        let rho = Self { n_qubits, matrix };
        rho.validate()?;
        Ok(rho)
    }

    /// Wrap without validation; caller guarantees the invariants.
    pub(crate) fn new_unchecked(n_qubits: usize, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1usize << n_qubits);
        Self { n_qubits, matrix }
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.matrix.hermiticity_defect();
        if defect > TOL_ALGEBRA {
            return Err(QrError::InvalidState(format!(
                "hermiticity defect {defect:.3e}"
            )));
        }
        let tr = self.matrix.trace();
        if (tr - c(1.0)).norm() > TOL_ALGEBRA {
            return Err(QrError::InvalidState(format!("trace {tr} != 1")));
        }
        let min = hermitian_eigenvalues(&self.matrix)?[0];
        if min < -TOL_SPECTRAL {
            return Err(QrError::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(())
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        Self::new_unchecked(n_qubits, ComplexMatrix::identity(d).scale(c(1.0 / d as f64)))
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// ρ → UρU†.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Self {
        let m = u.matmul(&self.matrix).matmul(&u.adjoint());
        Self::new_unchecked(self.n_qubits, m)
    }
}

/// N-qubit pure state |q₁q₂…q_n⟩ with q₁ the most significant bit.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = 1usize << n_qubits;
        if amplitudes.len() != d {
            return Err(QrError::DimensionMismatch(amplitudes.len(), d));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > TOL_ALGEBRA {
            return Err(QrError::InvalidState(format!("norm² = {norm2}")));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Normalize and wrap arbitrary non-zero amplitudes.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(QrError::InvalidState("zero vector".into()));
        }
        let s = 1.0 / norm2.sqrt();
        Self::new(
            n_qubits,
            amplitudes.into_iter().map(|a| a * s).collect(),
        )
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn to_density(&self) -> DensityMatrix {
        let d = self.amplitudes.len();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        DensityMatrix::new_unchecked(self.n_qubits, m)
    }

    /// |ψ⟩ → U|ψ⟩.
    pub fn apply_unitary(&self, u: &ComplexMatrix) -> Self {
        let d = self.amplitudes.len();
        assert_eq!(u.dim(), d);
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, a) in self.amplitudes.iter().enumerate() {
                *o += u.get(i, j) * a;
            }
        }
        Self {
            n_qubits: self.n_qubits,
            amplitudes: out,
        }
    }
}

/// Bit mask of qubit `q` (1-based, qubit 1 most significant) in an n-qubit index.
#[inline]
pub(crate) fn qubit_mask(n_qubits: usize, q: usize) -> usize {
    1usize << (n_qubits - q)
}

fn subset_mask(n_qubits: usize, subset: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &q in subset {
        if q < 1 || q > n_qubits {
            return Err(QrError::BadQubitIndex {
                index: q,
                n_qubits,
            });
        }
        mask |= qubit_mask(n_qubits, q);
    }
    Ok(mask)
}

/// Trace out every qubit not in `keep`; `keep` must be a non-empty proper subset.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() == n {
        return Err(QrError::BadSubset(format!(
            "keep set {keep:?} must be a non-empty proper subset of 1..={n}"
        )));
    }
    subset_mask(n, &keep)?;
    let traced: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();

    // Map (kept-index, traced-index) pairs back into full indices.
    let compose = |k: usize, t: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            if k & (1 << (keep.len() - 1 - pos)) != 0 {
                idx |= qubit_mask(n, q);
            }
        }
        for (pos, &q) in traced.iter().enumerate() {
            if t & (1 << (traced.len() - 1 - pos)) != 0 {
                idx |= qubit_mask(n, q);
            }
        }
        idx
    };

    let mut out = ComplexMatrix::zeros(dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..dt {
                sum += rho.matrix().get(compose(a, t), compose(b, t));
            }
            out.set(a, b, sum);
        }
    }
    Ok(DensityMatrix::new_unchecked(keep.len(), out))
}

/// Transpose the indices of the qubits in `subset`; empty subset is the identity.
pub fn partial_transpose(rho: &DensityMatrix, subset: &[usize]) -> Result<ComplexMatrix> {
    let n = rho.n_qubits();
    let mask = subset_mask(n, subset)?;
    let d = rho.dim();
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for col in 0..d {
            let r2 = (r & !mask) | (col & mask);
            let c2 = (col & !mask) | (r & mask);
            out.set(r2, c2, rho.matrix().get(r, col));
        }
    }
    Ok(out)
}

/// Serialization schema shared by states and matrices:
/// `{n_qubits, entries: [[re, im], …]}` row-major (amplitude order for states).
#[derive(Serialize, Deserialize)]
struct EntriesJson {
    n_qubits: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        EntriesJson {
            n_qubits: self.n_qubits,
            entries: self
                .matrix
                .entries()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = EntriesJson::deserialize(de)?;
        let d = 1usize << raw.n_qubits;
        if raw.entries.len() != d * d {
            return Err(serde::de::Error::custom(format!(
                "expected {} entries, got {}",
                d * d,
                raw.entries.len()
            )));
        }
        let data: Vec<Complex64> = raw
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        DensityMatrix::new(raw.n_qubits, ComplexMatrix::from_rows(d, &data))
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        EntriesJson {
            n_qubits: self.n_qubits,
            entries: self.amplitudes.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = EntriesJson::deserialize(de)?;
        let amps: Vec<Complex64> = raw
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        PureState::new(raw.n_qubits, amps).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_pauli_entry() {
        // entry (row 01₂, col 11₂) of σ_x ⊗ σ_z
        let m = kron(&ComplexMatrix::pauli_x(), &ComplexMatrix::pauli_z());
        assert_eq!(m.get(0b01, 0b11), cx(-1.0, 0.0));
    }

    #[test]
    fn kron_trace_multiplicative() {
        let a = ComplexMatrix::from_rows(
            2,
            &[cx(0.3, 0.1), cx(1.0, -2.0), cx(0.5, 0.5), cx(-0.7, 0.2)],
        );
        let b = ComplexMatrix::from_rows(
            2,
            &[cx(1.1, 0.0), cx(0.2, 0.9), cx(-0.4, 0.3), cx(0.8, -0.6)],
        );
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn eigenvalues_identity_and_pauli() {
        let vals = hermitian_eigenvalues(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(vals.len(), 4);
        for v in vals {
            assert!((v - 1.0).abs() < 1e-12);
        }
        let vals = hermitian_eigenvalues(&ComplexMatrix::pauli_x()).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenvalues_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(
            2,
            &[cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)],
        );
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(QrError::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigendecomposition_reconstructs() {
        let psi = haar_random_pure_state(3, 7);
        let rho = psi.to_density();
        let (vals, vecs) = hermitian_eigendecomposition(rho.matrix()).unwrap();
        let d = rho.dim();
        let mut recon = ComplexMatrix::zeros(d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    let t = vecs.get(i, k) * vecs.get(j, k).conj() * vals[k];
                    recon.set(i, j, recon.get(i, j) + t);
                }
            }
        }
        assert!(recon.max_abs_diff(rho.matrix()) < 1e-10);
    }

    fn bell_phi_plus() -> DensityMatrix {
        let s = 1.0 / 2f64.sqrt();
        PureState::new(2, vec![cx(s, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(s, 0.0)])
            .unwrap()
            .to_density()
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let rho = bell_phi_plus();
        let pt = partial_transpose(&rho, &[1]).unwrap();
        let vals = hermitian_eigenvalues(&pt).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (v, e) in vals.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }
    }

    #[test]
    fn partial_transpose_empty_is_identity() {
        let psi = haar_random_pure_state(2, 3);
        let rho = psi.to_density();
        let pt = partial_transpose(&rho, &[]).unwrap();
        assert!(pt.max_abs_diff(rho.matrix()) == 0.0);
    }

    #[test]
    fn partial_transpose_involution() {
        let psi = haar_random_pure_state(3, 11);
        let rho = psi.to_density();
        let once = partial_transpose(&rho, &[1, 3]).unwrap();
        let once_dm = DensityMatrix::new_unchecked(3, once);
        let twice = partial_transpose(&once_dm, &[1, 3]).unwrap();
        assert!(twice.max_abs_diff(rho.matrix()) == 0.0);
    }

    #[test]
    fn partial_transpose_factorizes_on_products() {
        let a = haar_random_pure_state(1, 5).to_density();
        let b = haar_random_pure_state(1, 6).to_density();
        let prod = DensityMatrix::new_unchecked(2, kron(a.matrix(), b.matrix()));
        let pt = partial_transpose(&prod, &[1]).unwrap();
        let expected = kron(&a.matrix().transpose(), b.matrix());
        assert!(pt.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_is_mixed() {
        let rho = bell_phi_plus();
        let red = partial_trace(&rho, &[1]).unwrap();
        let expected = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
        assert!(red.matrix().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn partial_trace_factorizes_on_products() {
        let a = haar_random_pure_state(1, 21).to_density();
        let b = haar_random_pure_state(2, 22).to_density();
        let prod = DensityMatrix::new_unchecked(3, kron(a.matrix(), b.matrix()));
        let red = partial_trace(&prod, &[1]).unwrap();
        assert!(red.matrix().max_abs_diff(a.matrix()) < 1e-14);
        let red_b = partial_trace(&prod, &[2, 3]).unwrap();
        assert!(red_b.matrix().max_abs_diff(b.matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_subsets() {
        let rho = bell_phi_plus();
        assert!(matches!(
            partial_trace(&rho, &[]),
            Err(QrError::BadSubset(_))
        ));
        assert!(matches!(
            partial_trace(&rho, &[1, 2]),
            Err(QrError::BadSubset(_))
        ));
    }

    #[test]
    fn hs_state_marginals_maximally_mixed() {
        let rho = hs_state().to_density();
        for q in 1..=4 {
            let red = partial_trace(&rho, &[q]).unwrap();
            let expected = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
            assert!(
                red.matrix().max_abs_diff(&expected) < 1e-14,
                "marginal {q} not I/2"
            );
        }
    }

    #[test]
    fn state_library_normalized() {
        for st in [hs_state(), ghz_state(4), w_state(4)] {
            assert!((st.inner(&st).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn serde_round_trip() {
        let psi = haar_random_pure_state(4, 99);
        let json = serde_json::to_string(&psi).unwrap();
        let back: PureState = serde_json::from_str(&json).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() <= 1e-15);
        }
        let rho = psi.to_density();
        let json = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        assert!(rho.matrix().max_abs_diff(back.matrix()) <= 1e-15);
    }
}
