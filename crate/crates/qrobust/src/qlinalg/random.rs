//! Haar-random sampling of pure states and local unitaries.
//!
//! All samplers are seeded explicitly so parallel sweeps stay deterministic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{kron, Complex64, ComplexMatrix, PureState};

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed pure state: normalized vector of iid complex Gaussians.
pub fn haar_random_pure_state(n_qubits: usize, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_pure_state_from_rng(n_qubits, &mut rng)
}

pub(crate) fn haar_pure_state_from_rng<R: Rng>(n_qubits: usize, rng: &mut R) -> PureState {
    let d = 1usize << n_qubits;
    let amps: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
    PureState::normalized(n_qubits, amps).expect("gaussian vector is nonzero a.s.")
}

/// Haar-distributed 2×2 unitary: Gram-Schmidt orthonormalization of a
/// complex Gaussian matrix. Normalizing by positive real norms fixes the
/// phases of the R diagonal, which makes the Q factor Haar.
pub fn haar_random_unitary_2x2<R: Rng>(rng: &mut R) -> ComplexMatrix {
    // columns of the Gaussian matrix
    let mut c0 = [gaussian_complex(rng), gaussian_complex(rng)];
    let mut c1 = [gaussian_complex(rng), gaussian_complex(rng)];
    let n0 = (c0[0].norm_sqr() + c0[1].norm_sqr()).sqrt();
    c0 = [c0[0] / n0, c0[1] / n0];
    let proj = c0[0].conj() * c1[0] + c0[1].conj() * c1[1];
    c1 = [c1[0] - proj * c0[0], c1[1] - proj * c0[1]];
    let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
    c1 = [c1[0] / n1, c1[1] / n1];
    ComplexMatrix::from_rows(2, &[c0[0], c1[0], c0[1], c1[1]])
}

/// Tensor product U₁⊗…⊗U_n of independent Haar single-qubit unitaries.
pub fn haar_random_local_unitary(n_qubits: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    local_unitary_from_rng(n_qubits, &mut rng)
}

pub(crate) fn local_unitary_from_rng<R: Rng>(n_qubits: usize, rng: &mut R) -> ComplexMatrix {
    let mut u = haar_random_unitary_2x2(rng);
    for _ in 1..n_qubits {
        u = kron(&u, &haar_random_unitary_2x2(rng));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_states_unit_norm_and_deterministic() {
        for seed in 0..20 {
            let a = haar_random_pure_state(4, seed);
            let norm2: f64 = a.amplitudes().iter().map(|z| z.norm_sqr()).sum();
            assert!((norm2 - 1.0).abs() < 1e-12);
            let b = haar_random_pure_state(4, seed);
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
    }

    #[test]
    fn local_unitary_is_unitary() {
        for seed in 0..20 {
            let u = haar_random_local_unitary(4, seed);
            let prod = u.adjoint().matmul(&u);
            assert!(prod.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-12);
        }
    }

    #[test]
    fn unitary_determinant_modulus_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let u = haar_random_unitary_2x2(&mut rng);
            let det = u.get(0, 0) * u.get(1, 1) - u.get(0, 1) * u.get(1, 0);
            assert!((det.norm() - 1.0).abs() < 1e-12);
        }
    }

    // Known Haar average: mean marginal purity is (d_A+d_B)/(d_A·d_B+1),
    // i.e. 4/5 for a single-qubit marginal at n=2.
    #[test]
    fn haar_marginal_purity_average() {
        let samples = 10_000u64;
        let mut acc = 0.0;
        for seed in 0..samples {
            let psi = haar_random_pure_state(2, 1_000_000 + seed);
            let red = crate::qlinalg::partial_trace(&psi.to_density(), &[1]).unwrap();
            acc += red.purity();
        }
        let mean = acc / samples as f64;
        assert!((mean - 0.8).abs() < 0.01, "mean purity {mean}");
    }
}
