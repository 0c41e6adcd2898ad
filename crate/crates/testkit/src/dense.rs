//! Dense-matrix reference simulator (the oracle).
//!
//! Every gate becomes an explicit `2^n × 2^n` unitary built by embedding
//! its 2×2 or 4×4 definition at the target qubits; a circuit is the plain
//! matrix product of its gates. This is exponentially wasteful on purpose:
//! the value of the oracle is that it exercises a completely different
//! code path than the in-place production kernels. Intended for ≤ 3–4
//! qubits; it panics instead of returning errors because it only ever runs
//! inside tests.
//!
//! Conventions mirror the production simulator: qubit 0 is the
//! least-significant amplitude-index bit and rotations use
//! `R_P(θ) = exp(−i·θ/2·P)`.

// Explicit row/column indices keep the matrix arithmetic legible; the
// indices also feed bit decompositions, so enumerate() buys nothing.
#![allow(clippy::needless_range_loop)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qmlbench_core::sim::{Circuit, Gate, GateKind, Pauli, PauliObservable, StateVector};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

type Local2 = [[Complex64; 2]; 2];
type Local4 = [[Complex64; 4]; 4];

fn pauli_2x2(p: Pauli) -> Local2 {
    match p {
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, c(-1.0, 0.0)]],
    }
}

/// `cos(θ/2)·I − i·sin(θ/2)·G` for a 2×2 generator `G` with `G² = I`.
fn rotation_2x2(generator: Local2, theta: f64) -> Local2 {
    let cos = c((theta / 2.0).cos(), 0.0);
    let misin = c(0.0, -(theta / 2.0).sin());
    let mut out = [[ZERO; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (col, entry) in row.iter_mut().enumerate() {
            let id = if r == col { ONE } else { ZERO };
            *entry = cos * id + misin * generator[r][col];
        }
    }
    out
}

/// `cos(θ/2)·I₄ − i·sin(θ/2)·(P⊗P)` in the local basis
/// `index = bit(first) + 2·bit(second)`.
fn coupling_4x4(p: Pauli, theta: f64) -> Local4 {
    let g = pauli_2x2(p);
    let cos = c((theta / 2.0).cos(), 0.0);
    let misin = c(0.0, -(theta / 2.0).sin());
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for col in 0..4 {
            let (rf, rs) = (r & 1, r >> 1);
            let (cf, cs) = (col & 1, col >> 1);
            let kron = g[rf][cf] * g[rs][cs];
            let id = if r == col { ONE } else { ZERO };
            out[r][col] = cos * id + misin * kron;
        }
    }
    out
}

fn single_qubit_matrix(kind: GateKind, theta: Option<f64>) -> Local2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::H => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        GateKind::X => pauli_2x2(Pauli::X),
        GateKind::Z => pauli_2x2(Pauli::Z),
        GateKind::Rx => rotation_2x2(pauli_2x2(Pauli::X), theta.unwrap()),
        GateKind::Ry => rotation_2x2(pauli_2x2(Pauli::Y), theta.unwrap()),
        GateKind::Rz => rotation_2x2(pauli_2x2(Pauli::Z), theta.unwrap()),
        other => panic!("{other:?} is not a single-qubit gate"),
    }
}

fn two_qubit_matrix(kind: GateKind, theta: Option<f64>) -> Local4 {
    match kind {
        // |control, target⟩ → |control, target ⊕ control⟩ with
        // local index = control_bit + 2·target_bit.
        GateKind::Cnot => {
            let mut m = [[ZERO; 4]; 4];
            for col in 0..4 {
                let (ctrl, tgt) = (col & 1, col >> 1);
                let row = ctrl + 2 * (tgt ^ ctrl);
                m[row][col] = ONE;
            }
            m
        }
        GateKind::Cz => {
            let mut m = [[ZERO; 4]; 4];
            for col in 0..4 {
                m[col][col] = if col == 3 { c(-1.0, 0.0) } else { ONE };
            }
            m
        }
        GateKind::Xx => coupling_4x4(Pauli::X, theta.unwrap()),
        GateKind::Zz => coupling_4x4(Pauli::Z, theta.unwrap()),
        other => panic!("{other:?} is not a two-qubit gate"),
    }
}

/// Embeds a gate's local matrix into the full `2^n × 2^n` space.
pub fn gate_unitary(gate: &Gate, num_qubits: usize, values: &[f64]) -> DMatrix<Complex64> {
    let dim = 1usize << num_qubits;
    let theta = gate.angle(values).expect("parameter must be bindable");
    let targets = gate.targets();
    let mut full = DMatrix::from_element(dim, dim, ZERO);
    match targets.len() {
        1 => {
            let local = single_qubit_matrix(gate.kind(), theta);
            let bit = 1usize << targets[0];
            for col in 0..dim {
                let cb = usize::from(col & bit != 0);
                for rb in 0..2 {
                    let entry = local[rb][cb];
                    if entry != ZERO {
                        let row = (col & !bit) | (rb * bit);
                        full[(row, col)] += entry;
                    }
                }
            }
        }
        2 => {
            let local = two_qubit_matrix(gate.kind(), theta);
            let (b0, b1) = (1usize << targets[0], 1usize << targets[1]);
            for col in 0..dim {
                let lc = usize::from(col & b0 != 0) + 2 * usize::from(col & b1 != 0);
                for lr in 0..4 {
                    let entry = local[lr][lc];
                    if entry != ZERO {
                        let row = (col & !(b0 | b1)) | ((lr & 1) * b0) | ((lr >> 1) * b1);
                        full[(row, col)] += entry;
                    }
                }
            }
        }
        n => panic!("unsupported gate arity {n}"),
    }
    full
}

/// The full unitary of a circuit: the product of its gate matrices.
pub fn circuit_unitary(circuit: &Circuit, values: &[f64]) -> DMatrix<Complex64> {
    let dim = 1usize << circuit.num_qubits();
    let mut unitary = DMatrix::from_diagonal_element(dim, dim, ONE);
    for gate in circuit.gates() {
        unitary = gate_unitary(gate, circuit.num_qubits(), values) * unitary;
    }
    unitary
}

/// Runs a circuit by dense matrix-vector products; `initial` defaults to
/// `|0…0⟩`.
pub fn run_dense(
    circuit: &Circuit,
    values: &[f64],
    initial: Option<&StateVector>,
) -> Vec<Complex64> {
    let dim = 1usize << circuit.num_qubits();
    let start = match initial {
        Some(state) => {
            assert_eq!(state.num_qubits(), circuit.num_qubits());
            DMatrix::from_column_slice(dim, 1, state.amplitudes())
        }
        None => {
            let mut v = DMatrix::from_element(dim, 1, ZERO);
            v[(0, 0)] = ONE;
            v
        }
    };
    let finished = circuit_unitary(circuit, values) * start;
    finished.column(0).iter().copied().collect()
}

/// Dense matrix of a Pauli-string observable.
pub fn pauli_unitary(obs: &PauliObservable, num_qubits: usize) -> DMatrix<Complex64> {
    let dim = 1usize << num_qubits;
    let mut full = DMatrix::from_diagonal_element(dim, dim, ONE);
    for (qubit, pauli) in obs.factors() {
        assert!(qubit < num_qubits, "observable qubit out of range");
        let local = pauli_2x2(pauli);
        let bit = 1usize << qubit;
        let mut factor = DMatrix::from_element(dim, dim, ZERO);
        for col in 0..dim {
            let cb = usize::from(col & bit != 0);
            for rb in 0..2 {
                let entry = local[rb][cb];
                if entry != ZERO {
                    factor[((col & !bit) | (rb * bit), col)] += entry;
                }
            }
        }
        full = factor * full;
    }
    full
}

/// `⟨ψ|P|ψ⟩` computed densely (real part; Pauli strings are Hermitian).
pub fn dense_expectation(amps: &[Complex64], obs: &PauliObservable) -> f64 {
    let num_qubits = amps.len().trailing_zeros() as usize;
    assert_eq!(1usize << num_qubits, amps.len());
    let p = pauli_unitary(obs, num_qubits);
    let psi = DMatrix::from_column_slice(amps.len(), 1, amps);
    let product = p * &psi;
    psi.column(0)
        .iter()
        .zip(product.column(0).iter())
        .map(|(a, b)| a.conj() * b)
        .sum::<Complex64>()
        .re
}

/// Largest elementwise modulus difference between two amplitude vectors.
pub fn max_amp_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
