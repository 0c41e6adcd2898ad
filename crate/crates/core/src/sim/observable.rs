//! Pauli-string observables and exact expectation values.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{SimError, StateVector};

/// A single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// A tensor product of Pauli factors (identity on unlisted qubits).
///
/// The factor map is ordered by qubit index, so iteration — and thus every
/// computation built on it — is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PauliObservable {
    factors: BTreeMap<usize, Pauli>,
}

impl PauliObservable {
    /// The identity observable (expectation 1 on any normalized state).
    pub fn identity() -> Self {
        Self::default()
    }

    /// Single `Z` factor on one qubit — the usual classifier readout.
    pub fn z(qubit: usize) -> Self {
        Self::identity().with(qubit, Pauli::Z)
    }

    /// Adds (or replaces) a factor; builder-style.
    pub fn with(mut self, qubit: usize, pauli: Pauli) -> Self {
        self.factors.insert(qubit, pauli);
        self
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, Pauli)> + '_ {
        self.factors.iter().map(|(&q, &p)| (q, p))
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.factors.keys().next_back().copied()
    }
}

/// Exact `⟨ψ|P|ψ⟩` for a Pauli string `P`.
///
/// `P` maps basis state `|i⟩` to `f(i)·|i ⊕ flip⟩` where `flip` collects
/// the X/Y qubits and `f` the Y/Z phases; the expectation is a single pass
/// over the amplitudes. The imaginary part vanishes analytically (Pauli
/// strings are Hermitian) and is dropped.
pub(super) fn expectation(state: &StateVector, obs: &PauliObservable) -> Result<f64, SimError> {
    let n = state.num_qubits();
    if let Some(q) = obs.max_qubit() {
        if q >= n {
            return Err(SimError::QubitOutOfRange {
                index: q,
                num_qubits: n,
            });
        }
    }
    let mut flip = 0usize;
    let mut y_qubits = Vec::new();
    let mut z_mask = 0usize;
    for (q, p) in obs.factors() {
        match p {
            Pauli::X => flip |= 1 << q,
            Pauli::Y => {
                flip |= 1 << q;
                y_qubits.push(q);
            }
            Pauli::Z => z_mask |= 1 << q,
        }
    }
    let amps = state.amplitudes();
    let mut acc = Complex64::ZERO;
    for (k, amp) in amps.iter().enumerate() {
        let source = k ^ flip;
        let mut phase = Complex64::ONE;
        for &q in &y_qubits {
            // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩ — the phase depends on the source bit.
            phase *= if source & (1 << q) == 0 {
                Complex64::I
            } else {
                -Complex64::I
            };
        }
        if (source & z_mask).count_ones() % 2 == 1 {
            phase = -phase;
        }
        acc += amp.conj() * phase * amps[source];
    }
    Ok(acc.re)
}
