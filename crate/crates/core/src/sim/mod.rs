//! Exact statevector simulation of small quantum circuits.
//!
//! The register is stored as the full vector of `2^n` complex amplitudes.
//! Conventions, fixed here once and relied on everywhere else:
//!
//! * **Bit ordering** — qubit 0 is the *least-significant* bit of the
//!   amplitude index, so `amplitudes[5]` of a 3-qubit register is the
//!   component of basis state `|101⟩` with qubit 0 = 1, qubit 1 = 0,
//!   qubit 2 = 1. Bitstrings returned by [`sample_measurements`] are
//!   rendered in plain binary, i.e. qubit 0 is the rightmost character.
//! * **Rotation convention** — `R_P(θ) = exp(−i·θ/2·P)` for
//!   `P ∈ {X, Y, Z}`, and the two-qubit couplings follow the same
//!   half-angle rule: `XX(θ) = exp(−i·θ/2·X⊗X)`,
//!   `ZZ(θ) = exp(−i·θ/2·Z⊗Z)`.
//! * **In-place kernels** — gates act on the amplitude array via bit
//!   arithmetic; no `2^n × 2^n` matrix is ever materialized. Registers are
//!   capped at [`MAX_QUBITS`] qubits to keep memory bounded.
//!
//! All operations are pure: they take shared references and return fresh
//! values, so states and circuits can be shared freely across threads.
//! Randomness enters only through the explicit seed of
//! [`sample_measurements`].

mod circuit;
mod gate;
mod observable;
mod state;

pub use circuit::Circuit;
pub use gate::{Gate, GateKind, Param};
pub use observable::{Pauli, PauliObservable};
pub use state::StateVector;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Hard upper bound on register width; `2^24` amplitudes ≈ 256 MiB.
pub const MAX_QUBITS: usize = 24;

/// Errors produced by the simulation layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    /// A register was requested with zero qubits.
    #[error("a register needs at least one qubit")]
    EmptyRegister,
    /// A register was requested beyond the supported width.
    #[error("{requested} qubits exceeds the supported maximum of {MAX_QUBITS}")]
    TooManyQubits { requested: usize },
    /// An amplitude vector's length is not a power of two (or is too short).
    #[error("amplitude vector of length {len} is not 2^n for 1 ≤ n ≤ {MAX_QUBITS}")]
    BadAmplitudeCount { len: usize },
    /// An amplitude vector is not normalized.
    #[error("state norm {norm} deviates from 1 beyond tolerance")]
    NotNormalized { norm: f64 },
    /// A gate or observable addressed a qubit outside the register.
    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    /// A two-qubit gate addressed the same qubit twice.
    #[error("two-qubit gate targets must be distinct (both were {index})")]
    DuplicateTargets { index: usize },
    /// A gate carrying a free parameter was applied without binding it.
    #[error("gate parameter #{index} is unbound")]
    UnboundParameter { index: usize },
    /// A free-parameter index exceeds the circuit's declared parameter count.
    #[error("free parameter index {index} outside the declared count {count}")]
    ParameterIndexOutOfRange { index: usize, count: usize },
    /// The number of parameter values does not match the circuit.
    #[error("expected {expected} parameter values, got {actual}")]
    ParameterCountMismatch { expected: usize, actual: usize },
    /// Two states (or a state and a circuit) disagree on register width.
    #[error("qubit-count mismatch: expected {expected}, got {actual}")]
    QubitCountMismatch { expected: usize, actual: usize },
    /// A circuit with unbound parameters cannot be inverted or appended.
    #[error("operation requires a fully bound circuit ({free} parameters are free)")]
    CircuitNotBound { free: usize },
    /// Measurement sampling needs at least one shot.
    #[error("shots must be ≥ 1")]
    ZeroShots,
}

/// Applies a single gate (with a bound parameter) to a state.
///
/// Returns the new state; the input is untouched. Like every unitary here,
/// the application preserves the norm to well below 1e-12.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector, SimError> {
    let mut out = state.clone();
    gate::apply_in_place(out.amplitudes_mut(), state.num_qubits(), gate, &[])?;
    Ok(out)
}

/// Runs a circuit with the given free-parameter values.
///
/// `initial` defaults to `|0…0⟩`; when provided it must have the circuit's
/// qubit count. Gates are applied in order with symbolic parameters
/// substituted from `parameter_values`.
pub fn run_circuit(
    circuit: &Circuit,
    parameter_values: &[f64],
    initial: Option<&StateVector>,
) -> Result<StateVector, SimError> {
    if parameter_values.len() != circuit.num_free_parameters() {
        return Err(SimError::ParameterCountMismatch {
            expected: circuit.num_free_parameters(),
            actual: parameter_values.len(),
        });
    }
    let mut state = match initial {
        Some(s) => {
            if s.num_qubits() != circuit.num_qubits() {
                return Err(SimError::QubitCountMismatch {
                    expected: circuit.num_qubits(),
                    actual: s.num_qubits(),
                });
            }
            s.clone()
        }
        None => StateVector::zero(circuit.num_qubits())?,
    };
    let n = state.num_qubits();
    for gate in circuit.gates() {
        gate::apply_in_place(state.amplitudes_mut(), n, gate, parameter_values)?;
    }
    Ok(state)
}

/// Expectation value `⟨ψ|P|ψ⟩` of a Pauli-string observable.
///
/// Exact (no sampling noise); the result of a normalized state always lies
/// in `[−1, 1]`.
pub fn expectation(state: &StateVector, obs: &PauliObservable) -> Result<f64, SimError> {
    observable::expectation(state, obs)
}

/// Squared overlap `|⟨b|a⟩|²` of two equally sized states.
pub fn fidelity_overlap(a: &StateVector, b: &StateVector) -> Result<f64, SimError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(SimError::QubitCountMismatch {
            expected: a.num_qubits(),
            actual: b.num_qubits(),
        });
    }
    let inner: Complex64 = b
        .amplitudes()
        .iter()
        .zip(a.amplitudes())
        .map(|(bi, ai)| bi.conj() * ai)
        .sum();
    Ok(inner.norm_sqr())
}

/// Draws `shots` measurement outcomes in the computational basis.
///
/// Outcomes follow the exact `|amplitude|²` distribution and are keyed by
/// bitstring (qubit 0 rightmost). The map is deterministic for a fixed
/// `(state, shots, seed)` triple and its counts always sum to `shots`.
pub fn sample_measurements(
    state: &StateVector,
    shots: u64,
    seed: u64,
) -> Result<BTreeMap<String, u64>, SimError> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let mut cumulative = Vec::with_capacity(state.amplitudes().len());
    let mut total = 0.0;
    for amp in state.amplitudes() {
        total += amp.norm_sqr();
        cumulative.push(total);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let last = cumulative.len() - 1;
    for _ in 0..shots {
        // `total` can sit a hair below 1.0; scaling the draw keeps the
        // search in range without biasing any outcome measurably.
        let u: f64 = rng.gen::<f64>() * total;
        let index = cumulative.partition_point(|&c| c <= u).min(last);
        *counts.entry(index).or_insert(0) += 1;
    }
    let width = state.num_qubits();
    Ok(counts
        .into_iter()
        .map(|(index, count)| (format!("{index:0width$b}"), count))
        .collect())
}
