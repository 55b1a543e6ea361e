//! Named-state library: computational basis states, |GHZ⟩, |W⟩, and the
//! Higuchi–Sudbery four-qubit state |HS⟩.

use super::{Complex64, PureState};

/// |q₁q₂…q_n⟩ for the given basis index (qubit 1 most significant).
pub fn basis_state(n_qubits: usize, index: usize) -> PureState {
    let d = 1usize << n_qubits;
    assert!(index < d);
    let mut amps = vec![Complex64::new(0.0, 0.0); d];
    amps[index] = Complex64::new(1.0, 0.0);
    PureState::new(n_qubits, amps).unwrap()
}

/// (|0…0⟩ + |1…1⟩)/√2.
pub fn ghz_state(n_qubits: usize) -> PureState {
    let d = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); d];
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = s;
    amps[d - 1] = s;
    PureState::new(n_qubits, amps).unwrap()
}

/// Uniform superposition of the n single-excitation basis states.
pub fn w_state(n_qubits: usize) -> PureState {
    let d = 1usize << n_qubits;
    let mut amps = vec![Complex64::new(0.0, 0.0); d];
    let s = Complex64::new(1.0 / (n_qubits as f64).sqrt(), 0.0);
    for q in 0..n_qubits {
        amps[1 << q] = s;
    }
    PureState::new(n_qubits, amps).unwrap()
}

/// The Higuchi–Sudbery four-qubit state:
/// (1/√6)[|1100⟩ + |0011⟩ + ω(|1001⟩ + |0110⟩) + ω²(|1010⟩ + |0101⟩)]
/// with ω = −1/2 + i√3/2. All single-qubit marginals are maximally mixed.
pub fn hs_state() -> PureState {
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let omega2 = omega * omega;
    let s = 1.0 / 6f64.sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); 16];
    amps[0b1100] = Complex64::new(s, 0.0);
    amps[0b0011] = Complex64::new(s, 0.0);
    amps[0b1001] = omega * s;
    amps[0b0110] = omega * s;
    amps[0b1010] = omega2 * s;
    amps[0b0101] = omega2 * s;
    PureState::new(4, amps).unwrap()
}
