//! The statevector type: `2^n` complex amplitudes plus its invariants.

use num_complex::Complex64;

use super::{SimError, MAX_QUBITS};

/// Full statevector of an `n`-qubit register.
///
/// Invariants enforced at construction: the amplitude count is exactly
/// `2^n` for `1 ≤ n ≤ MAX_QUBITS`, and the squared amplitudes sum to 1
/// within `1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self, SimError> {
        check_register_width(num_qubits)?;
        let mut amplitudes = vec![Complex64::ZERO; 1 << num_qubits];
        amplitudes[0] = Complex64::ONE;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Builds a state from raw amplitudes, inferring the qubit count.
    ///
    /// Fails when the length is not a power of two in range, or when the
    /// vector is not normalized within `1e-9`.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::BadAmplitudeCount { len });
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_register_width(num_qubits)?;
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(SimError::NotNormalized { norm });
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Euclidean norm `√(Σ |amplitude|²)`; 1 for any valid state.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(Complex64::norm_sqr)
            .sum::<f64>()
            .sqrt()
    }

    /// Probability of measuring basis state `index`.
    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }
}

fn check_register_width(num_qubits: usize) -> Result<(), SimError> {
    if num_qubits == 0 {
        return Err(SimError::EmptyRegister);
    }
    if num_qubits > MAX_QUBITS {
        return Err(SimError::TooManyQubits {
            requested: num_qubits,
        });
    }
    Ok(())
}
